#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace chscatter {

/// Uniform grid x_i = x0 + i * dx, i = 0 .. n-1.
class Grid1D {
 public:
  Grid1D(double x0, double dx, std::size_t n);

  /// Grid starting at lo with spacing dx whose last point does not exceed hi
  /// (up to a relative slack of 1e-9 cells).
  static Grid1D from_bounds(double lo, double hi, double dx);

  double x0() const noexcept { return x0_; }
  double dx() const noexcept { return dx_; }
  std::size_t size() const noexcept { return n_; }
  double point(std::size_t i) const noexcept { return x0_ + static_cast<double>(i) * dx_; }
  double front() const noexcept { return x0_; }
  double back() const noexcept { return point(n_ - 1); }
  bool contains(double x) const noexcept { return x >= front() && x <= back(); }

  friend bool operator==(const Grid1D&, const Grid1D&) = default;

 private:
  double x0_;
  double dx_;
  std::size_t n_;
};

/// Finite samples of a real function on a Grid1D.
class SampledFunction {
 public:
  SampledFunction(Grid1D grid, std::vector<double> values);

  /// Samples fn at every grid point.
  static SampledFunction sample(const Grid1D& grid, const std::function<double(double)>& fn);

  const Grid1D& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  std::size_t size() const noexcept { return values_.size(); }
  double front() const noexcept { return values_.front(); }
  double back() const noexcept { return values_.back(); }

 private:
  Grid1D grid_;
  std::vector<double> values_;
};

/// Strictly increasing sampled map; inverted by invert_monotone.
class MonotoneMap {
 public:
  explicit MonotoneMap(SampledFunction base);

  const SampledFunction& base() const noexcept { return base_; }
  const Grid1D& grid() const noexcept { return base_.grid(); }
  double min_value() const noexcept { return base_.front(); }
  double max_value() const noexcept { return base_.back(); }

 private:
  SampledFunction base_;
};

enum class QuadratureRule {
  trapezoid,  ///< composite trapezoid, 2nd order
  cubic,      ///< cell integrals of the local 4-point interpolant, 4th order
};

/// F[0] = initial, F[i] = F[i-1] + integral of f over cell [i-1, i].
SampledFunction cumulative_integral(const SampledFunction& f, double initial,
                                    QuadratureRule rule = QuadratureRule::trapezoid);

/// Cell integrals of f under the given rule; entry i covers [x_i, x_{i+1}].
std::vector<double> cell_integrals(const SampledFunction& f, QuadratureRule rule);

/// 4th-order finite-difference derivative. Order 1 needs n >= 5, order 2 needs n >= 6.
SampledFunction derivative(const SampledFunction& f, int order);

/// 4-point local polynomial interpolation, exact on cubics.
double interpolate(const SampledFunction& f, double x);

/// x with interpolate(map, x) == target, found by bisection on the samples and
/// safeguarded Newton on the local cubic.
double invert_monotone(const MonotoneMap& map, double target);

/// max_i |a_i - b_i| / |b_i|; sizes must match.
double max_relative_error(std::span<const double> a, std::span<const double> b);

}  // namespace chscatter
