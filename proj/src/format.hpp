#pragma once

#include <sstream>
#include <string>

namespace chscatter::detail {

// Round-trip decimal form for error messages.
inline std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace chscatter::detail
