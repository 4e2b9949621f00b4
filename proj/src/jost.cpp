#include "chscatter/jost.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "chscatter/error.hpp"
#include "format.hpp"

namespace chscatter {

namespace {

constexpr std::size_t kResidualTrim = 5;

// Q at the midpoint of every cell, from the 4-point interpolant.
std::vector<double> cell_midpoints(std::span<const double> q) {
  const std::size_t n = q.size();
  std::vector<double> mid(n - 1);
  if (n < 4) {
    for (std::size_t i = 0; i + 1 < n; ++i) mid[i] = 0.5 * (q[i] + q[i + 1]);
    return mid;
  }
  mid[0] = (5.0 * q[0] + 15.0 * q[1] - 5.0 * q[2] + q[3]) / 16.0;
  for (std::size_t i = 1; i + 2 < n; ++i) mid[i] = (-q[i - 1] + 9.0 * q[i] + 9.0 * q[i + 1] - q[i + 2]) / 16.0;
  mid[n - 2] = (q[n - 4] - 5.0 * q[n - 3] + 15.0 * q[n - 2] + 5.0 * q[n - 1]) / 16.0;
  return mid;
}

// Stencil of the integral over cell [i, i+1]: node indices and weights (in units of dy).
struct CellStencil {
  std::array<std::size_t, 4> node{};
  std::array<double, 4> weight{};
  int count = 0;
};

CellStencil cell_stencil(std::size_t i, std::size_t n, QuadratureRule rule) {
  CellStencil s;
  if (rule == QuadratureRule::trapezoid || n < 4) {
    s.node = {i, i + 1, 0, 0};
    s.weight = {0.5, 0.5, 0.0, 0.0};
    s.count = 2;
    return s;
  }
  s.count = 4;
  if (i == 0) {
    s.node = {0, 1, 2, 3};
    s.weight = {9.0 / 24, 19.0 / 24, -5.0 / 24, 1.0 / 24};
  } else if (i + 2 >= n) {
    s.node = {n - 4, n - 3, n - 2, n - 1};
    s.weight = {1.0 / 24, -5.0 / 24, 19.0 / 24, 9.0 / 24};
  } else {
    s.node = {i - 1, i, i + 1, i + 2};
    s.weight = {-1.0 / 24, 13.0 / 24, 13.0 / 24, -1.0 / 24};
  }
  return s;
}

}  // namespace

JostFunction::JostFunction(SampledFunction f) : f_(std::move(f)) {
  const auto v = f_.values();
  const Grid1D& g = f_.grid();
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!(v[i] > 0.0))
      throw InvariantError("Jost function is not positive at y = " + detail::fmt(g.point(i)) +
                           " (f = " + detail::fmt(v[i]) + ")");
  const double norm = v.back() * std::exp(0.5 * g.back());
  if (!(std::abs(norm - 1.0) <= kJostNormalizationTol))
    throw InvariantError("Jost function normalization f(y_max) e^{y_max/2} = " + detail::fmt(norm) +
                         " deviates from 1");
  amp_minus_ = v.front() * std::exp(0.5 * g.front());
}

JostFunction solve_jost_ode(const PotentialProfile& Q) {
  const Grid1D& g = Q.grid();
  const auto q = Q.samples().values();
  const std::size_t n = g.size();
  const auto mid = cell_midpoints(q);
  const double h = -g.dx();

  std::vector<double> f(n);
  double phi = std::exp(-0.5 * g.back());
  double dphi = -0.5 * phi;
  f[n - 1] = phi;
  for (std::size_t i = n - 1; i-- > 0;) {
    // Stepping from node i+1 to node i.
    const double a0 = q[i + 1] + 0.25, am = mid[i] + 0.25, a1 = q[i] + 0.25;
    const double k1p = dphi, k1d = a0 * phi;
    const double k2p = dphi + 0.5 * h * k1d, k2d = am * (phi + 0.5 * h * k1p);
    const double k3p = dphi + 0.5 * h * k2d, k3d = am * (phi + 0.5 * h * k2p);
    const double k4p = dphi + h * k3d, k4d = a1 * (phi + h * k3p);
    phi += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
    dphi += h / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);
    if (!std::isfinite(phi) || !std::isfinite(dphi))
      throw SolverError("Jost ODE march produced a non-finite state at y = " + detail::fmt(g.point(i)), phi);
    f[i] = phi;
  }
  return JostFunction(SampledFunction(g, std::move(f)));
}

JostFunction solve_jost_volterra(const PotentialProfile& Q, const VolterraOptions& opts) {
  if (!(opts.tol > 0.0)) throw DomainError("Volterra tolerance must be positive", opts.tol);
  if (opts.max_iter < 1) throw DomainError("Volterra max_iter must be at least 1", opts.max_iter);
  const Grid1D& g = Q.grid();
  const auto q = Q.samples().values();
  const std::size_t n = g.size();
  const double dy = g.dx();

  std::vector<double> ep(n), em(n);  // e^{+y/2}, e^{-y/2}
  for (std::size_t i = 0; i < n; ++i) {
    ep[i] = std::exp(0.5 * g.point(i));
    em[i] = std::exp(-0.5 * g.point(i));
  }

  std::vector<double> prev = em;
  std::vector<double> cur(n);
  double diff = 0.0;
  for (int sweep = 1; sweep <= opts.max_iter; ++sweep) {
    double plus = 0.0, minus = 0.0;  // moments over [y_{i+1}, y_max]
    cur[n - 1] = em[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) {
      const CellStencil s = cell_stencil(i, n, opts.rule);
      double wi = 0.0;
      for (int k = 0; k < s.count; ++k) {
        const std::size_t j = s.node[k];
        if (j == i) {
          wi += s.weight[k];
          continue;
        }
        const double qf = q[j] * (j > i ? cur[j] : prev[j]);
        plus += dy * s.weight[k] * ep[j] * qf;
        minus += dy * s.weight[k] * em[j] * qf;
      }
      cur[i] = em[i] * (1.0 + plus) - ep[i] * minus;
      if (!std::isfinite(cur[i]))
        throw SolverError("Volterra sweep produced a non-finite value at y = " + detail::fmt(g.point(i)), diff);
      plus += dy * wi * ep[i] * q[i] * cur[i];
      minus += dy * wi * em[i] * q[i] * cur[i];
    }
    diff = 0.0;
    for (std::size_t i = 0; i < n; ++i) diff = std::max(diff, std::abs(cur[i] - prev[i]) / std::abs(cur[i]));
    if (diff < opts.tol) return JostFunction(SampledFunction(g, std::move(cur)));
    std::swap(prev, cur);
  }
  throw SolverError("Volterra iteration did not converge in " + std::to_string(opts.max_iter) +
                        " sweeps; last sweep difference " + detail::fmt(diff),
                    diff);
}

JostFunction solve_jost(const PotentialProfile& Q, JostMethod method, const VolterraOptions& opts) {
  return method == JostMethod::ode ? solve_jost_ode(Q) : solve_jost_volterra(Q, opts);
}

double jost_residual(const SampledFunction& f, const PotentialProfile& Q) {
  if (!(f.grid() == Q.grid())) throw GridError("Jost residual: f and Q live on different grids");
  const std::size_t n = f.size();
  if (n <= 2 * kResidualTrim) throw GridError("Jost residual: grid too small for the trimmed window");
  const auto d2 = derivative(f, 2);
  const auto q = Q.samples().values();
  double worst = 0.0, scale = 0.0;
  for (std::size_t i = kResidualTrim; i + kResidualTrim < n; ++i) {
    worst = std::max(worst, std::abs(d2[i] - (q[i] + 0.25) * f[i]));
    scale = std::max(scale, std::abs(f[i]));
  }
  return scale > 0.0 ? worst / scale : worst;
}

}  // namespace chscatter
