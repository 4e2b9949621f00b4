#pragma once

#include <limits>

#include "chscatter/numerics.hpp"

namespace chscatter {

inline constexpr double kDefaultDecayTol = 1e-10;
inline constexpr double kNoDecayCheck = std::numeric_limits<double>::infinity();

/// Sampled momentum m(x) = u - u_xx with m + 1 > 0 everywhere and |m| <= decay_tol
/// at both grid ends.
class MomentumProfile {
 public:
  explicit MomentumProfile(SampledFunction m, double decay_tol = kDefaultDecayTol);

  const SampledFunction& samples() const noexcept { return m_; }
  const Grid1D& grid() const noexcept { return m_.grid(); }
  double decay_tol() const noexcept { return decay_tol_; }

 private:
  SampledFunction m_;
  double decay_tol_;
};

/// Sampled Schrodinger potential Q(y) with |Q| <= decay_tol at both grid ends.
class PotentialProfile {
 public:
  explicit PotentialProfile(SampledFunction q, double decay_tol = kDefaultDecayTol);

  const SampledFunction& samples() const noexcept { return q_; }
  const Grid1D& grid() const noexcept { return q_.grid(); }
  double decay_tol() const noexcept { return decay_tol_; }

 private:
  SampledFunction q_;
  double decay_tol_;
};

/// Where the Liouville coordinate satisfies y = x.
///
/// `right` pins y - x -> 0 as x -> +inf, which is the normalization under which
/// the Jost function (f ~ e^{-y/2} at +inf) equals q^{1/4} e^{-x/2} and the
/// recovery formula returns m itself. `left` pins y - x -> 0 as x -> -inf; the
/// recovered profile is then translated by D = integral(sqrt(m + 1) - 1).
enum class CoordinateAnchor { left, right };

/// y(x) = x + integral(sqrt(m + 1) - 1), sampled on the x-grid (trapezoid rule).
MonotoneMap forward_coordinate(const MomentumProfile& m, CoordinateAnchor anchor = CoordinateAnchor::right);

/// Q(y) = 1/(4q) + q_yy/(4q) - 3 q_y^2/(16 q^2) - 1/4 with q(y) = m(x(y)) + 1,
/// evaluated on a uniform y-grid inside the image of the x-domain.
///
/// m is resampled onto the y-grid through the inverse of y(x), then
/// differentiated there with 4th-order stencils. The result is checked against
/// m.decay_tol() at both ends.
PotentialProfile compute_potential(const MomentumProfile& m, const Grid1D& ygrid,
                                   CoordinateAnchor anchor = CoordinateAnchor::right);

/// Debug cross-check for compute_potential: the same Q assembled from
/// x-derivatives with d/dy = q^{-1/2} d/dx, then resampled onto ygrid.
PotentialProfile compute_potential_chain_rule(const MomentumProfile& m, const Grid1D& ygrid,
                                              CoordinateAnchor anchor = CoordinateAnchor::right);

}  // namespace chscatter
