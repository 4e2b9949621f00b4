#include "chscatter/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "chscatter/error.hpp"
#include "format.hpp"

namespace chscatter {

namespace {

using detail::fmt;

// Cubic through four consecutive samples, in Newton form on local
// coordinate u (nodes at u = 0, 1, 2, 3).
struct LocalCubic {
  double a0, a1, a2, a3;

  LocalCubic(double v0, double v1, double v2, double v3) {
    const double d01 = v1 - v0, d12 = v2 - v1, d23 = v3 - v2;
    const double dd012 = d12 - d01, dd123 = d23 - d12;
    a0 = v0;
    a1 = d01;
    a2 = 0.5 * dd012;
    a3 = (dd123 - dd012) / 6.0;
  }

  double value(double u) const { return a0 + u * (a1 + (u - 1.0) * (a2 + (u - 2.0) * a3)); }
  double slope(double u) const { return a1 + a2 * (2.0 * u - 1.0) + a3 * (3.0 * u * u - 6.0 * u + 2.0); }
};

// First index of the 4-point stencil serving cell j.
std::size_t stencil_start(std::size_t cell, std::size_t n) {
  if (cell == 0) return 0;
  return std::min(cell - 1, n - 4);
}

double lagrange4(const double* v, double u) {
  const double w0 = -(u - 1.0) * (u - 2.0) * (u - 3.0) / 6.0;
  const double w1 = u * (u - 2.0) * (u - 3.0) / 2.0;
  const double w2 = -u * (u - 1.0) * (u - 3.0) / 2.0;
  const double w3 = u * (u - 1.0) * (u - 2.0) / 6.0;
  return w0 * v[0] + w1 * v[1] + w2 * v[2] + w3 * v[3];
}

}  // namespace

Grid1D::Grid1D(double x0, double dx, std::size_t n) : x0_(x0), dx_(dx), n_(n) {
  if (!std::isfinite(x0) || !std::isfinite(dx) || !(dx > 0.0))
    throw GridError("grid spacing must be finite and positive, got dx = " + fmt(dx));
  if (n < 2) throw GridError("grid needs at least 2 points, got " + std::to_string(n));
}

Grid1D Grid1D::from_bounds(double lo, double hi, double dx) {
  if (!(hi > lo)) throw GridError("grid bounds must satisfy lo < hi, got [" + fmt(lo) + ", " + fmt(hi) + "]");
  if (!(dx > 0.0)) throw GridError("grid spacing must be positive, got dx = " + fmt(dx));
  const double cells = std::floor((hi - lo) / dx + 1e-9);
  return Grid1D(lo, dx, static_cast<std::size_t>(cells) + 1);
}

SampledFunction::SampledFunction(Grid1D grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size())
    throw GridError("sample count " + std::to_string(values_.size()) + " does not match grid size " +
                    std::to_string(grid_.size()));
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (!std::isfinite(values_[i]))
      throw InvariantError("non-finite sample at index " + std::to_string(i) + " (x = " + fmt(grid_.point(i)) + ")");
}

SampledFunction SampledFunction::sample(const Grid1D& grid, const std::function<double(double)>& fn) {
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(grid.point(i));
  return SampledFunction(grid, std::move(v));
}

MonotoneMap::MonotoneMap(SampledFunction base) : base_(std::move(base)) {
  const auto v = base_.values();
  for (std::size_t i = 0; i + 1 < v.size(); ++i)
    if (!(v[i + 1] > v[i]))
      throw InvariantError("map is not strictly increasing at index " + std::to_string(i) + " (x = " +
                           fmt(base_.grid().point(i)) + ")");
}

std::vector<double> cell_integrals(const SampledFunction& f, QuadratureRule rule) {
  const std::size_t n = f.size();
  const double h = f.grid().dx();
  const auto v = f.values();
  std::vector<double> out(n - 1);
  if (rule == QuadratureRule::trapezoid || n < 4) {
    for (std::size_t i = 0; i + 1 < n; ++i) out[i] = 0.5 * h * (v[i] + v[i + 1]);
    return out;
  }
  const double w = h / 24.0;
  out[0] = w * (9.0 * v[0] + 19.0 * v[1] - 5.0 * v[2] + v[3]);
  for (std::size_t i = 1; i + 2 < n; ++i) out[i] = w * (-v[i - 1] + 13.0 * v[i] + 13.0 * v[i + 1] - v[i + 2]);
  out[n - 2] = w * (v[n - 4] - 5.0 * v[n - 3] + 19.0 * v[n - 2] + 9.0 * v[n - 1]);
  return out;
}

SampledFunction cumulative_integral(const SampledFunction& f, double initial, QuadratureRule rule) {
  const auto cells = cell_integrals(f, rule);
  std::vector<double> out(f.size());
  out[0] = initial;
  for (std::size_t i = 1; i < out.size(); ++i) out[i] = out[i - 1] + cells[i - 1];
  return SampledFunction(f.grid(), std::move(out));
}

SampledFunction derivative(const SampledFunction& f, int order) {
  const std::size_t n = f.size();
  const double h = f.grid().dx();
  const auto v = f.values();
  std::vector<double> d(n);
  if (order == 1) {
    if (n < 5) throw GridError("first derivative needs at least 5 points, got " + std::to_string(n));
    const double s = 1.0 / (12.0 * h);
    d[0] = s * (-25.0 * v[0] + 48.0 * v[1] - 36.0 * v[2] + 16.0 * v[3] - 3.0 * v[4]);
    d[1] = s * (-3.0 * v[0] - 10.0 * v[1] + 18.0 * v[2] - 6.0 * v[3] + v[4]);
    for (std::size_t i = 2; i + 2 < n; ++i) d[i] = s * (v[i - 2] - 8.0 * v[i - 1] + 8.0 * v[i + 1] - v[i + 2]);
    d[n - 2] = s * (3.0 * v[n - 1] + 10.0 * v[n - 2] - 18.0 * v[n - 3] + 6.0 * v[n - 4] - v[n - 5]);
    d[n - 1] = s * (25.0 * v[n - 1] - 48.0 * v[n - 2] + 36.0 * v[n - 3] - 16.0 * v[n - 4] + 3.0 * v[n - 5]);
  } else if (order == 2) {
    if (n < 6) throw GridError("second derivative needs at least 6 points, got " + std::to_string(n));
    const double s = 1.0 / (12.0 * h * h);
    d[0] = s * (45.0 * v[0] - 154.0 * v[1] + 214.0 * v[2] - 156.0 * v[3] + 61.0 * v[4] - 10.0 * v[5]);
    d[1] = s * (10.0 * v[0] - 15.0 * v[1] - 4.0 * v[2] + 14.0 * v[3] - 6.0 * v[4] + v[5]);
    for (std::size_t i = 2; i + 2 < n; ++i)
      d[i] = s * (-v[i - 2] + 16.0 * v[i - 1] - 30.0 * v[i] + 16.0 * v[i + 1] - v[i + 2]);
    d[n - 2] = s * (10.0 * v[n - 1] - 15.0 * v[n - 2] - 4.0 * v[n - 3] + 14.0 * v[n - 4] - 6.0 * v[n - 5] + v[n - 6]);
    d[n - 1] =
        s * (45.0 * v[n - 1] - 154.0 * v[n - 2] + 214.0 * v[n - 3] - 156.0 * v[n - 4] + 61.0 * v[n - 5] - 10.0 * v[n - 6]);
  } else {
    throw DomainError("derivative order must be 1 or 2", order);
  }
  return SampledFunction(f.grid(), std::move(d));
}

double interpolate(const SampledFunction& f, double x) {
  const Grid1D& g = f.grid();
  const std::size_t n = g.size();
  const double slack = 1e-10 * g.dx();
  if (!(x >= g.front() - slack && x <= g.back() + slack))
    throw DomainError("interpolation point " + fmt(x) + " outside [" + fmt(g.front()) + ", " + fmt(g.back()) + "]", x);
  const double t = std::clamp((x - g.x0()) / g.dx(), 0.0, static_cast<double>(n - 1));
  const double nearest = std::round(t);
  const auto inode = static_cast<std::size_t>(nearest);
  if (g.point(inode) == x) return f[inode];

  const auto v = f.values();
  auto cell = static_cast<std::size_t>(std::floor(t));
  cell = std::min(cell, n - 2);
  if (n == 2) return v[0] + t * (v[1] - v[0]);
  if (n == 3) {
    const double w0 = 0.5 * (t - 1.0) * (t - 2.0), w1 = -t * (t - 2.0), w2 = 0.5 * t * (t - 1.0);
    return w0 * v[0] + w1 * v[1] + w2 * v[2];
  }
  const std::size_t s = stencil_start(cell, n);
  const double* p = v.data() + s;
  // Locally constant data is reproduced exactly.
  if (p[0] == p[1] && p[1] == p[2] && p[2] == p[3]) return p[0];
  return lagrange4(p, t - static_cast<double>(s));
}

double invert_monotone(const MonotoneMap& map, double target) {
  const auto v = map.base().values();
  const Grid1D& g = map.grid();
  const std::size_t n = v.size();
  if (!(target >= v.front() && target <= v.back()))
    throw RangeError("target " + fmt(target) + " outside map range [" + fmt(v.front()) + ", " + fmt(v.back()) + "]",
                     v.front(), v.back(), target);
  if (target == v.front()) return g.front();
  if (target == v.back()) return g.back();

  // v[cell] <= target < v[cell + 1]
  const auto it = std::upper_bound(v.begin(), v.end(), target);
  const auto cell = static_cast<std::size_t>(it - v.begin()) - 1;
  if (v[cell] == target) return g.point(cell);
  if (n < 4) {
    const double u = (target - v[cell]) / (v[cell + 1] - v[cell]);
    return g.x0() + (static_cast<double>(cell) + u) * g.dx();
  }

  const std::size_t s = stencil_start(cell, n);
  const LocalCubic cubic(v[s], v[s + 1], v[s + 2], v[s + 3]);
  double lo = static_cast<double>(cell - s);
  double hi = lo + 1.0;
  double u = lo + (target - v[cell]) / (v[cell + 1] - v[cell]);
  for (int iter = 0; iter < 100; ++iter) {
    const double r = cubic.value(u) - target;
    if (r == 0.0) break;
    (r < 0.0 ? lo : hi) = u;
    const double slope = cubic.slope(u);
    double next = slope > 0.0 ? u - r / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = std::abs(next - u);
    u = next;
    if (step <= 1e-15 * std::max(1.0, std::abs(u)) || hi - lo <= 1e-15) break;
  }
  return g.x0() + (static_cast<double>(s) + u) * g.dx();
}

double max_relative_error(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw GridError("relative error of sequences with different lengths");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]) / std::abs(b[i]));
  return worst;
}

}  // namespace chscatter
