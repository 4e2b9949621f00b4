#include "chscatter/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "chscatter/error.hpp"
#include "format.hpp"

namespace chscatter {

using detail::fmt;

MonotoneMap compute_H(const JostFunction& f) {
  const SampledFunction& s = f.samples();
  std::vector<double> inv_sq(s.size());
  for (std::size_t i = 0; i < inv_sq.size(); ++i) {
    if (!(s[i] > 0.0)) throw InvariantError("H needs f > 0, got f = " + fmt(s[i]));
    inv_sq[i] = 1.0 / (s[i] * s[i]);
  }
  const double a = f.amp_minus();
  const double tail = std::exp(s.grid().front()) / (a * a);
  auto h = cumulative_integral(SampledFunction(s.grid(), std::move(inv_sq)), tail, QuadratureRule::cubic);
  return MonotoneMap(std::move(h));
}

RecoveryResult recover_m(const JostFunction& f, const Grid1D& xgrid) {
  MonotoneMap H = compute_H(f);
  RecoveryDiagnostics diag;
  diag.amp_minus = f.amp_minus();
  diag.tail_correction = H.min_value();
  diag.h_min = H.min_value();
  diag.h_max = H.max_value();
  diag.x_admissible_lo = std::log(diag.h_min);
  diag.x_admissible_hi = std::log(diag.h_max);
  const auto fv = f.samples().values();
  diag.min_f = *std::min_element(fv.begin(), fv.end());

  // Accept grid ends that round onto the admissible interval.
  const double lo = diag.x_admissible_lo, hi = diag.x_admissible_hi;
  const double slack = 1e-12 * std::max(1.0, std::max(std::abs(lo), std::abs(hi)));
  if (xgrid.front() < lo - slack || xgrid.back() > hi + slack)
    throw RangeError("x-grid [" + fmt(xgrid.front()) + ", " + fmt(xgrid.back()) +
                         "] leaves the admissible interval [" + fmt(lo) + ", " + fmt(hi) + "] = [ln H(y_min), ln H(y_max)]",
                     lo, hi, xgrid.front() < lo - slack ? xgrid.front() : xgrid.back());

  std::vector<double> m(xgrid.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    const double x = xgrid.point(i);
    const double target = std::clamp(std::exp(x), diag.h_min, diag.h_max);
    const double y = invert_monotone(H, target);
    // e^{2x} f^4 = (e^{x/2} f)^4 keeps every factor near unit scale.
    const double s = std::exp(0.5 * x) * interpolate(f.samples(), y);
    const double s2 = s * s;
    m[i] = s2 * s2 - 1.0;
  }
  return RecoveryResult{MomentumProfile(SampledFunction(xgrid, std::move(m)), kNoDecayCheck), std::move(H), f,
                        diag};
}

RecoveryResult invert_pipeline(const PotentialProfile& Q, const Grid1D& xgrid, JostMethod method,
                               const VolterraOptions& opts) {
  JostFunction f = solve_jost(Q, method, opts);
  RecoveryResult r = recover_m(f, xgrid);
  if (f.grid().size() > 10) r.diagnostics.jost_residual = jost_residual(f, Q);
  return r;
}

Grid1D admissible_xgrid(const JostFunction& f, double dx, double margin) {
  const MonotoneMap H = compute_H(f);
  const double lo = std::log(H.min_value()) + margin;
  const double hi = std::log(H.max_value()) - margin;
  // Snap onto multiples of dx so that grids from different runs line up.
  const double start = std::ceil(lo / dx) * dx;
  return Grid1D::from_bounds(start, hi, dx);
}

}  // namespace chscatter
