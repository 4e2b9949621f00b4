#include <doctest.h>

#include <cmath>

#include "chscatter/error.hpp"
#include "chscatter/solitary.hpp"
#include "chscatter/spectrum.hpp"

using namespace chscatter;

namespace {

// Poschl-Teller well -s(s+1) k^2 sech^2(k y): bound states at -k^2 (s - n)^2, n < s.
PotentialProfile poschl_teller(double s, double k, double half_width, double dy) {
  return PotentialProfile(SampledFunction::sample(Grid1D::from_bounds(-half_width, half_width, dy),
                                                  [=](double y) {
                                                    const double ch = std::cosh(k * y);
                                                    return -s * (s + 1.0) * k * k / (ch * ch);
                                                  }),
                          kNoDecayCheck);
}

}  // namespace

TEST_CASE("solitary wells carry one eigenvalue at -(c - 2) / (4c)") {
  for (double c : {2.5, 8.0 / 3.0, 3.0, 4.0, 6.0}) {
    CAPTURE(c);
    const SolitaryWaveSpec spec(c);
    const auto Q = solitary_potential_profile(spec, solitary_ygrid(spec, 1e-2));
    const auto rep = find_eigenvalues(Q, 1e-10);
    REQUIRE(rep.mu_values.size() == 1);
    CHECK(std::abs(rep.mu_values[0] + (c - 2.0) / (4.0 * c)) <= 1e-8);
    CHECK(rep.lambda_values[0] == doctest::Approx(-0.25 - rep.mu_values[0]).epsilon(1e-15));
    CHECK(rep.scan_points == kDefaultScanPoints);
  }
}

TEST_CASE("several bound states of a deep well") {
  // s = 3.5, k = 0.1: mu_n = -0.01 (3.5 - n)^2 for n = 0..3, all inside (-1/4, 0).
  const auto Q = poschl_teller(3.5, 0.1, 200.0, 1e-2);
  const auto rep = find_eigenvalues(Q, 1e-10, 400);
  REQUIRE(rep.mu_values.size() == 4);
  for (std::size_t n = 0; n < 4; ++n) {
    const double exact = -0.01 * (3.5 - static_cast<double>(n)) * (3.5 - static_cast<double>(n));
    CHECK(std::abs(rep.mu_values[n] - exact) <= 1e-7);
  }
  for (std::size_t n = 1; n < 4; ++n) CHECK(rep.mu_values[n] > rep.mu_values[n - 1]);
}

TEST_CASE("the free potential has no eigenvalues") {
  const Grid1D g = Grid1D::from_bounds(-20.0, 20.0, 1e-2);
  const PotentialProfile Q(SampledFunction(g, std::vector<double>(g.size(), 0.0)));
  CHECK(find_eigenvalues(Q, 1e-10).mu_values.empty());
}

TEST_CASE("matching Wronskian vanishes at the eigenvalue") {
  const SolitaryWaveSpec spec(8.0 / 3.0);
  const auto Q = solitary_potential_profile(spec, solitary_ygrid(spec, 1e-2));
  CHECK(std::abs(matching_wronskian(Q, -1.0 / 16.0)) <= 1e-6);
  CHECK(std::abs(matching_wronskian(Q, -0.2)) >= 1e-3);
  CHECK(std::abs(matching_wronskian(Q, -0.01)) >= 1e-3);
}
