#include "chscatter/liouville.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "chscatter/error.hpp"
#include "format.hpp"

namespace chscatter {

namespace {

using detail::fmt;

void check_decay(const SampledFunction& s, double decay_tol, const char* what) {
  if (!(decay_tol > 0.0)) throw InvariantError(std::string(what) + ": decay tolerance must be positive");
  if (std::abs(s.front()) > decay_tol || std::abs(s.back()) > decay_tol)
    throw InvariantError(std::string(what) + " does not decay at the grid ends: |left| = " + fmt(std::abs(s.front())) +
                         ", |right| = " + fmt(std::abs(s.back())) + ", decay_tol = " + fmt(decay_tol));
}

// Nodes of ygrid mapped back to x through the inverse of y(x).
std::vector<double> pullback_nodes(const MonotoneMap& y_of_x, const Grid1D& ygrid) {
  const double lo = y_of_x.min_value(), hi = y_of_x.max_value();
  if (ygrid.front() < lo || ygrid.back() > hi)
    throw RangeError("y-grid [" + fmt(ygrid.front()) + ", " + fmt(ygrid.back()) +
                         "] exceeds the image of the x-domain [" + fmt(lo) + ", " + fmt(hi) + "]",
                     lo, hi, ygrid.front() < lo ? ygrid.front() : ygrid.back());
  std::vector<double> xs(ygrid.size());
  for (std::size_t j = 0; j < xs.size(); ++j) xs[j] = invert_monotone(y_of_x, ygrid.point(j));
  return xs;
}

}  // namespace

MomentumProfile::MomentumProfile(SampledFunction m, double decay_tol) : m_(std::move(m)), decay_tol_(decay_tol) {
  const auto v = m_.values();
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!(v[i] + 1.0 > 0.0))
      throw InvariantError("m + 1 > 0 violated at x = " + fmt(m_.grid().point(i)) + " (m = " + fmt(v[i]) + ")");
  if (decay_tol_ != kNoDecayCheck) check_decay(m_, decay_tol_, "momentum profile");
}

PotentialProfile::PotentialProfile(SampledFunction q, double decay_tol) : q_(std::move(q)), decay_tol_(decay_tol) {
  if (decay_tol_ != kNoDecayCheck) check_decay(q_, decay_tol_, "potential");
}

MonotoneMap forward_coordinate(const MomentumProfile& m, CoordinateAnchor anchor) {
  const SampledFunction& s = m.samples();
  const Grid1D& g = s.grid();
  std::vector<double> excess(s.size());
  for (std::size_t i = 0; i < excess.size(); ++i) excess[i] = std::sqrt(s[i] + 1.0) - 1.0;
  const auto acc = cumulative_integral(SampledFunction(g, std::move(excess)), 0.0);
  const double shift = anchor == CoordinateAnchor::right ? acc.back() : 0.0;
  std::vector<double> y(s.size());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = g.point(i) + (acc[i] - shift);
  return MonotoneMap(SampledFunction(g, std::move(y)));
}

PotentialProfile compute_potential(const MomentumProfile& m, const Grid1D& ygrid, CoordinateAnchor anchor) {
  const auto xs = pullback_nodes(forward_coordinate(m, anchor), ygrid);
  std::vector<double> my(ygrid.size());
  for (std::size_t j = 0; j < my.size(); ++j) my[j] = interpolate(m.samples(), xs[j]);
  const SampledFunction m_y(ygrid, std::move(my));
  // q = 1 + m, so q_y = m_y and q_yy = m_yy.
  const auto d1 = derivative(m_y, 1);
  const auto d2 = derivative(m_y, 2);
  std::vector<double> Q(ygrid.size());
  for (std::size_t j = 0; j < Q.size(); ++j) {
    const double q = 1.0 + m_y[j];
    Q[j] = -m_y[j] / (4.0 * q) + d2[j] / (4.0 * q) - 3.0 * d1[j] * d1[j] / (16.0 * q * q);
  }
  return PotentialProfile(SampledFunction(ygrid, std::move(Q)), m.decay_tol());
}

PotentialProfile compute_potential_chain_rule(const MomentumProfile& m, const Grid1D& ygrid, CoordinateAnchor anchor) {
  const SampledFunction& s = m.samples();
  const auto d1 = derivative(s, 1);
  const auto d2 = derivative(s, 2);
  std::vector<double> Qx(s.size());
  for (std::size_t i = 0; i < Qx.size(); ++i) {
    const double q = 1.0 + s[i];
    Qx[i] = -s[i] / (4.0 * q) + d2[i] / (4.0 * q * q) - 5.0 * d1[i] * d1[i] / (16.0 * q * q * q);
  }
  const SampledFunction q_on_x(s.grid(), std::move(Qx));
  const auto xs = pullback_nodes(forward_coordinate(m, anchor), ygrid);
  std::vector<double> Q(ygrid.size());
  for (std::size_t j = 0; j < Q.size(); ++j) Q[j] = interpolate(q_on_x, xs[j]);
  return PotentialProfile(SampledFunction(ygrid, std::move(Q)), m.decay_tol());
}

}  // namespace chscatter
