#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "chscatter/jost.hpp"
#include "chscatter/liouville.hpp"

namespace chscatter::cli {

enum ExitCode : int {
  kSuccess = 0,
  kInputError = 2,   ///< unparsable input, invariant violation, bad flag
  kRangeError = 3,   ///< domain or range error (e.g. x-grid outside what H admits)
  kSolverError = 4,  ///< non-finite march or Volterra non-convergence
};

/// Settings shared by all subcommands. Built from defaults, then the JSON config
/// file (--config, else $CHSCATTER_CONFIG), then command-line flags.
struct RunConfig {
  std::optional<double> xmin, xmax, dx;
  std::optional<double> ymin, ymax, dy;
  std::optional<double> c;
  double y0 = 0.0;
  JostMethod method = JostMethod::ode;
  double volterra_tol = 1e-12;
  int max_iter = 50;
  double spectrum_tol = 1e-10;
  double decay_tol = kDefaultDecayTol;
  bool exact_fast_path = true;
  std::optional<std::string> output;

  /// Spacings and tolerances positive, bounds ordered; InputError otherwise.
  void validate() const;
};

/// Overlays the keys of a JSON object read from `path` onto `base`. Unknown
/// keys and mistyped values raise InputError.
RunConfig load_config_file(const std::string& path, RunConfig base = {});

/// Runs one subcommand (forward, invert, roundtrip, solitary, spectrum).
/// args excludes the program name. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace chscatter::cli
