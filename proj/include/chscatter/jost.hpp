#pragma once

#include "chscatter/liouville.hpp"
#include "chscatter/numerics.hpp"

namespace chscatter {

/// Solution of f'' = (Q + 1/4) f with f ~ e^{-y/2} as y -> +inf, sampled on the
/// potential's y-grid.
///
/// Invariants: f > 0 at every node (mu = -1/4 lies below the discrete spectrum),
/// and |f(y_max) e^{y_max/2} - 1| <= kJostNormalizationTol.
class JostFunction {
 public:
  explicit JostFunction(SampledFunction f);

  const SampledFunction& samples() const noexcept { return f_; }
  const Grid1D& grid() const noexcept { return f_.grid(); }

  /// A with f(y) ~ A e^{-y/2} as y -> -inf, read off at the left end.
  double amp_minus() const noexcept { return amp_minus_; }

 private:
  SampledFunction f_;
  double amp_minus_;
};

inline constexpr double kJostNormalizationTol = 1e-6;

enum class JostMethod { ode, volterra };

struct VolterraOptions {
  double tol = 1e-12;
  int max_iter = 50;
  /// Cell rule for the moment integrals. The cubic rule reaches one node to the
  /// left of each cell; that value comes from the previous sweep.
  QuadratureRule rule = QuadratureRule::trapezoid;
};

/// Classic RK4, marching from y_max to y_min with step dy; Q at half steps by
/// cubic interpolation.
JostFunction solve_jost_ode(const PotentialProfile& Q);

/// Backward sweep of
///   f(y) = e^{-y/2} + int_y^inf (e^{(xi-y)/2} - e^{(y-xi)/2}) Q(xi) f(xi) dxi
/// with the kernel split into the moments I+ = int e^{xi/2} Q f and
/// I- = int e^{-xi/2} Q f, so f(y) = e^{-y/2} (1 + I+) - e^{y/2} I-.
/// The kernel vanishes on the diagonal, which makes each node explicit.
/// Sweeps repeat until two consecutive sweeps agree to opts.tol (relative, sup
/// norm); SolverError otherwise. The tail beyond y_max is dropped.
JostFunction solve_jost_volterra(const PotentialProfile& Q, const VolterraOptions& opts = {});

JostFunction solve_jost(const PotentialProfile& Q, JostMethod method, const VolterraOptions& opts = {});

/// sup |f'' - (Q + 1/4) f| / sup |f| over the nodes at least 5 away from either end.
double jost_residual(const SampledFunction& f, const PotentialProfile& Q);
inline double jost_residual(const JostFunction& f, const PotentialProfile& Q) {
  return jost_residual(f.samples(), Q);
}

}  // namespace chscatter
