#include "chscatter/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "chscatter/error.hpp"

namespace chscatter {

namespace {

// Node used for matching: y = 0 when it lies on the grid, else the midpoint.
std::size_t matching_node(const Grid1D& g) {
  const double at = g.contains(0.0) ? 0.0 : 0.5 * (g.front() + g.back());
  const auto i = static_cast<std::size_t>(std::llround((at - g.x0()) / g.dx()));
  return std::min(std::max<std::size_t>(i, 1), g.size() - 2);
}

struct State {
  double phi, dphi;
};

// RK4 for phi'' = (Q - mu) phi from node `from` to node `to`, one grid cell per
// step, Q at half steps from the cubic midpoint formula.
State march(std::span<const double> q, double dy, double mu, std::size_t from, std::size_t to, State s) {
  const std::size_t n = q.size();
  auto midpoint = [&](std::size_t i) {  // cell [i, i+1]
    if (n < 4) return 0.5 * (q[i] + q[i + 1]);
    if (i == 0) return (5.0 * q[0] + 15.0 * q[1] - 5.0 * q[2] + q[3]) / 16.0;
    if (i + 2 >= n) return (q[n - 4] - 5.0 * q[n - 3] + 15.0 * q[n - 2] + 5.0 * q[n - 1]) / 16.0;
    return (-q[i - 1] + 9.0 * q[i] + 9.0 * q[i + 1] - q[i + 2]) / 16.0;
  };
  const bool forward = to > from;
  const double h = forward ? dy : -dy;
  std::size_t i = from;
  while (i != to) {
    const std::size_t j = forward ? i + 1 : i - 1;
    const double a0 = q[i] - mu, am = midpoint(forward ? i : j) - mu, a1 = q[j] - mu;
    const double k1p = s.dphi, k1d = a0 * s.phi;
    const double k2p = s.dphi + 0.5 * h * k1d, k2d = am * (s.phi + 0.5 * h * k1p);
    const double k3p = s.dphi + 0.5 * h * k2d, k3d = am * (s.phi + 0.5 * h * k2p);
    const double k4p = s.dphi + h * k3d, k4d = a1 * (s.phi + h * k3p);
    s.phi += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
    s.dphi += h / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);
    if (!std::isfinite(s.phi) || !std::isfinite(s.dphi)) return {std::numeric_limits<double>::quiet_NaN(), 0.0};
    // Only the direction of (phi, phi') matters.
    const double size = std::abs(s.phi) + std::abs(s.dphi);
    if (size > 1e100) {
      s.phi /= size;
      s.dphi /= size;
    }
    i = j;
  }
  return s;
}

}  // namespace

double matching_wronskian(const PotentialProfile& Q, double mu) {
  if (!(mu < 0.0)) throw DomainError("shooting needs mu < 0", mu);
  const Grid1D& g = Q.grid();
  const auto q = Q.samples().values();
  const double k = std::sqrt(-mu);
  const std::size_t mid = matching_node(g);
  const State left = march(q, g.dx(), mu, 0, mid, {1.0, k});
  const State right = march(q, g.dx(), mu, g.size() - 1, mid, {1.0, -k});
  const double w = left.phi * right.dphi - left.dphi * right.phi;
  const double norm = std::hypot(left.phi, left.dphi) * std::hypot(right.phi, right.dphi);
  return w / norm;
}

EigenvalueReport find_eigenvalues(const PotentialProfile& Q, double tol, std::size_t scan_points) {
  if (!(tol > 0.0)) throw DomainError("eigenvalue tolerance must be positive", tol);
  if (scan_points < 2) throw DomainError("eigenvalue scan needs at least 2 points", static_cast<double>(scan_points));
  const Grid1D& g = Q.grid();
  EigenvalueReport report;
  report.scan_points = scan_points;
  report.matching_point = g.point(matching_node(g));

  const double width = 0.25 / static_cast<double>(scan_points);
  std::vector<double> mus(scan_points), ws(scan_points);
  for (std::size_t k = 0; k < scan_points; ++k) {
    mus[k] = -0.25 + (static_cast<double>(k) + 0.5) * width;
    ws[k] = matching_wronskian(Q, mus[k]);
    if (std::isnan(ws[k])) ++report.discarded_trials;
  }

  for (std::size_t k = 0; k + 1 < scan_points; ++k) {
    double lo = mus[k], hi = mus[k + 1], wlo = ws[k], whi = ws[k + 1];
    if (std::isnan(wlo) || std::isnan(whi)) continue;
    if (wlo == 0.0) {
      report.mu_values.push_back(lo);
      report.wronskians.push_back(0.0);
      continue;
    }
    if (!(wlo * whi < 0.0)) continue;
    while (hi - lo > tol) {
      const double mid = 0.5 * (lo + hi);
      const double wm = matching_wronskian(Q, mid);
      if (std::isnan(wm)) {
        ++report.discarded_trials;
        break;
      }
      if ((wm < 0.0) == (wlo < 0.0)) {
        lo = mid;
        wlo = wm;
      } else {
        hi = mid;
        whi = wm;
      }
    }
    const double mu = 0.5 * (lo + hi);
    report.mu_values.push_back(mu);
    report.wronskians.push_back(matching_wronskian(Q, mu));
  }
  for (double mu : report.mu_values) report.lambda_values.push_back(-0.25 - mu);
  return report;
}

}  // namespace chscatter
