#include "chscatter/solitary.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "chscatter/error.hpp"
#include "format.hpp"

namespace chscatter {

using detail::fmt;

namespace {

constexpr std::size_t kResidualTrim = 5;

}  // namespace

SolitaryWaveSpec::SolitaryWaveSpec(double c, double y0) : c_(c), y0_(y0) {
  if (!(c > 2.0) || !std::isfinite(c)) throw DomainError("speed must exceed 2, got c = " + fmt(c), c);
  if (!std::isfinite(y0)) throw DomainError("y0 must be finite", y0);
}

double SolitaryWaveSpec::kappa() const noexcept { return std::sqrt((c_ - 2.0) / (4.0 * c_)); }
double SolitaryWaveSpec::depth() const noexcept { return (c_ - 2.0) / (2.0 * c_); }
bool SolitaryWaveSpec::has_exact_jost() const noexcept { return c_ == 8.0 / 3.0 && y0_ == 0.0; }

double solitary_potential(const SolitaryWaveSpec& spec, double y) {
  const double ch = std::cosh(spec.kappa() * (y - spec.y0()));
  return -spec.depth() / (ch * ch);
}

double solitary_jost_exact(double y) {
  return (3.0 * std::exp(-0.25 * y) + std::exp(-0.75 * y)) / (6.0 * std::cosh(0.25 * y));
}

double verify_homogeneous_solution(double y) {
  const double ch = std::cosh(0.25 * y);
  return 4.0 * ch * ch;
}

SampledFunction reduction_of_order_integral(const Grid1D& ygrid) {
  const auto integrand = SampledFunction::sample(ygrid, [](double y) {
    const double g = verify_homogeneous_solution(y);
    return 1.0 / (g * g);
  });
  const auto cells = cell_integrals(integrand, QuadratureRule::cubic);
  // int_Y^inf (1/16) sech^4(xi/4) = (1/4)(e^2 - e^3/3), e = 1 - tanh(Y/4).
  const double w = std::exp(-0.5 * ygrid.back());
  const double e = 2.0 * w / (1.0 + w);
  std::vector<double> out(ygrid.size());
  out.back() = 0.25 * (e * e - e * e * e / 3.0);
  for (std::size_t i = out.size() - 1; i-- > 0;) out[i] = out[i + 1] + cells[i];
  return SampledFunction(ygrid, std::move(out));
}

SampledFunction reduction_of_order_jost(const Grid1D& ygrid) {
  const auto integral = reduction_of_order_integral(ygrid);
  std::vector<double> sol(ygrid.size());
  for (std::size_t i = 0; i < sol.size(); ++i) sol[i] = verify_homogeneous_solution(ygrid.point(i)) * integral[i];
  const double amplitude = sol.back() * std::exp(0.5 * ygrid.back());
  for (double& v : sol) v /= amplitude;
  return SampledFunction(ygrid, std::move(sol));
}

Grid1D solitary_ygrid(const SolitaryWaveSpec& spec, double dy, double decay_tol) {
  if (!(dy > 0.0)) throw DomainError("dy must be positive", dy);
  // |Q| <= 4 depth e^{-2 kappa L} at distance L from the centre.
  const double k = spec.kappa();
  const double half = std::max(8.0 / k, std::log(4.0 * spec.depth() / (0.01 * decay_tol)) / (2.0 * k));
  const auto cells = static_cast<std::size_t>(std::ceil(half / dy));
  return Grid1D(spec.y0() - static_cast<double>(cells) * dy, dy, 2 * cells + 1);
}

PotentialProfile solitary_potential_profile(const SolitaryWaveSpec& spec, const Grid1D& ygrid, double decay_tol) {
  return PotentialProfile(SampledFunction::sample(ygrid, [&](double y) { return solitary_potential(spec, y); }),
                          decay_tol);
}

namespace {

JostFunction solitary_jost(const SolitaryWaveSpec& spec, const SolitaryOptions& opts) {
  const Grid1D ygrid = solitary_ygrid(spec, opts.dy, opts.decay_tol);
  if (opts.exact_fast_path && spec.has_exact_jost())
    return JostFunction(SampledFunction::sample(ygrid, solitary_jost_exact));
  return solve_jost(solitary_potential_profile(spec, ygrid, opts.decay_tol), opts.method, opts.volterra);
}

}  // namespace

RecoveryResult solitary_profile(const SolitaryWaveSpec& spec, const Grid1D& xgrid, const SolitaryOptions& opts) {
  return recover_m(solitary_jost(spec, opts), xgrid);
}

RecoveryResult solitary_profile(const SolitaryWaveSpec& spec, double dx, const SolitaryOptions& opts) {
  const JostFunction f = solitary_jost(spec, opts);
  return recover_m(f, admissible_xgrid(f, dx));
}

SampledFunction helmholtz_inverse(const MomentumProfile& m) {
  const SampledFunction& s = m.samples();
  const std::size_t n = s.size();
  const double h = s.grid().dx();
  const double decay = std::exp(-h);
  // left[i] = int_{x_0}^{x_i} e^{-(x_i - xi)} m,  right[i] = int_{x_i}^{x_end} e^{-(xi - x_i)} m
  std::vector<double> left(n, 0.0), right(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) left[i] = decay * left[i - 1] + 0.5 * h * (decay * s[i - 1] + s[i]);
  for (std::size_t i = n - 1; i-- > 0;) right[i] = decay * right[i + 1] + 0.5 * h * (s[i] + decay * s[i + 1]);
  std::vector<double> u(n);
  for (std::size_t i = 0; i < n; ++i) u[i] = 0.5 * (left[i] + right[i]);
  return SampledFunction(s.grid(), std::move(u));
}

double traveling_wave_residual(const MomentumProfile& phi, double c) {
  if (!(c > 2.0)) throw DomainError("speed must exceed 2, got c = " + fmt(c), c);
  const SampledFunction& p = phi.samples();
  const std::size_t n = p.size();
  if (n <= 2 * kResidualTrim) throw GridError("traveling-wave residual: grid too small for the trimmed window");
  const auto u = helmholtz_inverse(phi);
  const auto dp = derivative(p, 1);
  const auto du = derivative(u, 1);
  double worst = 0.0, scale = 0.0;
  for (std::size_t i = kResidualTrim; i + kResidualTrim < n; ++i) {
    const double r = -c * dp[i] + 2.0 * du[i] + u[i] * dp[i] + 2.0 * p[i] * du[i];
    worst = std::max(worst, std::abs(r));
    scale = std::max(scale, std::abs(dp[i]));
  }
  return scale > 0.0 ? worst / (c * scale) : 0.0;
}

}  // namespace chscatter
