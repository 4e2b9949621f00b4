#pragma once

#include <optional>

#include "chscatter/jost.hpp"
#include "chscatter/liouville.hpp"
#include "chscatter/numerics.hpp"

namespace chscatter {

struct RecoveryDiagnostics {
  double tail_correction = 0.0;  ///< e^{y_min} / amp_minus^2, the part of H left of the grid
  double min_f = 0.0;
  double amp_minus = 0.0;
  double h_min = 0.0;  ///< H(y_min)
  double h_max = 0.0;  ///< H(y_max)
  double x_admissible_lo = 0.0;  ///< ln H(y_min)
  double x_admissible_hi = 0.0;  ///< ln H(y_max)
  std::optional<double> jost_residual;  ///< filled by invert_pipeline
};

struct RecoveryResult {
  MomentumProfile m;
  MonotoneMap H;
  JostFunction f;
  RecoveryDiagnostics diagnostics;
};

/// H(y) = int_{-inf}^y f^{-2}, with the part left of the grid taken from
/// f ~ amp_minus e^{-y/2}. Integrated with the 4th-order cumulative rule.
MonotoneMap compute_H(const JostFunction& f);

/// m(x) + 1 = e^{2x} f^4(H^{-1}(e^x)) on every node of xgrid.
///
/// Throws RangeError naming the admissible interval [ln H(y_min), ln H(y_max)]
/// when xgrid leaves it; nothing is extrapolated.
RecoveryResult recover_m(const JostFunction& f, const Grid1D& xgrid);

/// solve_jost_* then recover_m.
RecoveryResult invert_pipeline(const PotentialProfile& Q, const Grid1D& xgrid, JostMethod method,
                               const VolterraOptions& opts = {});

/// Largest grid with spacing dx inside the admissible x-interval of f, shrunk by
/// margin on both sides.
Grid1D admissible_xgrid(const JostFunction& f, double dx, double margin = 0.0);

}  // namespace chscatter
