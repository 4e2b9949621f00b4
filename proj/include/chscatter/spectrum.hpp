#pragma once

#include <cstddef>
#include <vector>

#include "chscatter/liouville.hpp"

namespace chscatter {

/// Discrete eigenvalues of -phi'' + Q phi = mu phi in (-1/4, 0), and the
/// matching lambda = -1/4 - mu of the weighted problem.
struct EigenvalueReport {
  std::vector<double> mu_values;      ///< ascending
  std::vector<double> lambda_values;  ///< lambda_values[k] = -1/4 - mu_values[k]
  std::vector<double> wronskians;     ///< normalized matching Wronskian at each mu
  std::size_t scan_points = 0;
  std::size_t discarded_trials = 0;   ///< trial mu values whose march blew up
  double matching_point = 0.0;
};

inline constexpr std::size_t kDefaultScanPoints = 200;

/// Normalized Wronskian of the left- and right-decaying solutions at the
/// matching node, W / (|(phi_L, phi_L')| |(phi_R, phi_R')|). NaN on blow-up.
double matching_wronskian(const PotentialProfile& Q, double mu);

/// Shooting: sign changes of matching_wronskian on a uniform scan of (-1/4, 0),
/// refined by bisection until the bracket is narrower than tol.
EigenvalueReport find_eigenvalues(const PotentialProfile& Q, double tol, std::size_t scan_points = kDefaultScanPoints);

}  // namespace chscatter
