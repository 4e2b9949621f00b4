#include <doctest.h>

#include <cmath>
#include <random>

#include "chscatter/error.hpp"
#include "chscatter/jost.hpp"
#include "chscatter/liouville.hpp"
#include "chscatter/recovery.hpp"

using namespace chscatter;

namespace {

double bump(double x) { return 0.5 * std::exp(-x * x); }

MomentumProfile gaussian(const Grid1D& g) { return MomentumProfile(SampledFunction::sample(g, bump)); }

JostFunction free_jost(double lo, double hi, double dy) {
  return JostFunction(SampledFunction::sample(Grid1D::from_bounds(lo, hi, dy), [](double y) { return std::exp(-y / 2); }));
}

double sup_error(const MomentumProfile& m, double (*exact)(double)) {
  double worst = 0.0;
  for (std::size_t i = 0; i < m.grid().size(); ++i)
    worst = std::max(worst, std::abs(m.samples()[i] - exact(m.grid().point(i))));
  return worst;
}

double roundtrip_error(double h, JostMethod method) {
  const auto m = gaussian(Grid1D::from_bounds(-30.0, 30.0, h));
  const auto Q = compute_potential(m, Grid1D::from_bounds(-30.0, 30.0, h));
  const auto r = invert_pipeline(Q, Grid1D::from_bounds(-10.0, 10.0, h), method);
  return sup_error(r.m, bump);
}

}  // namespace

TEST_CASE("free Jost function: H = e^y and m = 0") {
  const auto f = free_jost(-20.0, 20.0, 1e-3);
  const auto H = compute_H(f);
  for (std::size_t i = 0; i < H.grid().size(); ++i)
    REQUIRE(H.base()[i] == doctest::Approx(std::exp(H.grid().point(i))).epsilon(1e-12));

  const auto r = recover_m(f, admissible_xgrid(f, 1e-3));
  for (double v : r.m.samples().values()) REQUIRE(std::abs(v) <= 1e-10);
  CHECK(r.diagnostics.amp_minus == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(r.diagnostics.tail_correction == doctest::Approx(std::exp(-20.0)).epsilon(1e-12));
  CHECK(r.diagnostics.x_admissible_lo == doctest::Approx(-20.0).epsilon(1e-12));
  CHECK(r.diagnostics.x_admissible_hi == doctest::Approx(20.0).epsilon(1e-12));
}

TEST_CASE("H is positive and strictly increasing with the tail below the grid") {
  const auto Q = compute_potential(gaussian(Grid1D::from_bounds(-30.0, 30.0, 1e-2)), Grid1D::from_bounds(-25.0, 25.0, 1e-2));
  const auto f = solve_jost_ode(Q);
  const auto H = compute_H(f);  // MonotoneMap checks strict increase
  CHECK(H.min_value() > 0.0);
  CHECK(H.min_value() == doctest::Approx(std::exp(f.grid().front()) / (f.amp_minus() * f.amp_minus())).epsilon(1e-12));
}

TEST_CASE("round trip recovers the gaussian at fourth order") {
  const double coarse = roundtrip_error(1e-3, JostMethod::ode);
  const double fine = roundtrip_error(5e-4, JostMethod::ode);
  CHECK(coarse <= 1e-6);
  CHECK(coarse / fine >= 3.5);
  CHECK(roundtrip_error(1e-3, JostMethod::volterra) <= 1e-6);
}

TEST_CASE("left-anchored potential recovers a translated profile") {
  const Grid1D xg = Grid1D::from_bounds(-30.0, 30.0, 1e-3);
  const auto m = gaussian(xg);
  const auto Qr = compute_potential(m, Grid1D::from_bounds(-25.0, 25.0, 1e-3), CoordinateAnchor::right);
  const auto y_left = forward_coordinate(m, CoordinateAnchor::left);
  const auto y_right = forward_coordinate(m, CoordinateAnchor::right);
  const double delta = y_left.base()[0] - y_right.base()[0];  // y_left = y_right + delta
  CHECK(delta > 0.0);

  // Q_left(y) = Q_right(y - delta), so f_left(y) = e^{-delta/2} f_right(y - delta)
  // and the shift is read off the left amplitude: delta = -2 ln amp_minus.
  const auto fr = solve_jost_ode(Qr);
  const auto Ql = PotentialProfile(
      SampledFunction(Grid1D(Qr.grid().front() + delta, Qr.grid().dx(), Qr.grid().size()),
                      std::vector<double>(Qr.samples().values().begin(), Qr.samples().values().end())));
  const auto fl = solve_jost_ode(Ql);
  CHECK(-2.0 * std::log(fr.amp_minus()) == doctest::Approx(delta).epsilon(1e-7));
  CHECK(fl.amp_minus() == doctest::Approx(fr.amp_minus()).epsilon(1e-9));

  const auto rl = recover_m(fl, Grid1D::from_bounds(-8.0, 8.0, 1e-3));
  double worst = 0.0;
  for (std::size_t i = 0; i < rl.m.grid().size(); ++i)
    worst = std::max(worst, std::abs(rl.m.samples()[i] - bump(rl.m.grid().point(i) - delta)));
  CHECK(worst <= 1e-6);
}

TEST_CASE("recover_m refuses grids outside the admissible interval") {
  const auto f = free_jost(-20.0, 20.0, 1e-2);
  try {
    recover_m(f, Grid1D::from_bounds(-100.0, 0.0, 1e-2));
    FAIL("expected RangeError");
  } catch (const RangeError& e) {
    CHECK(e.lo() == doctest::Approx(-20.0).epsilon(1e-9));
    CHECK(e.hi() == doctest::Approx(20.0).epsilon(1e-9));
  }
  const Grid1D adm = admissible_xgrid(f, 0.3, 1.0);
  CHECK(adm.front() >= -19.0);
  CHECK(adm.back() <= 19.0);
  CHECK(adm.back() + adm.dx() > 19.0);
}

TEST_CASE("random bumps: recovered m + 1 stays positive and matches the input") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> amp(-0.8, 2.0), pos(-2.0, 2.0), wid(0.5, 3.0);
  for (int trial = 0; trial < 10; ++trial) {
    const double a = amp(rng), b = pos(rng), w = wid(rng);
    auto fn = [=](double x) { return a * std::exp(-(x - b) * (x - b) / w); };
    const MomentumProfile m(SampledFunction::sample(Grid1D::from_bounds(-30.0, 30.0, 5e-3), fn));
    const auto Q = compute_potential(m, Grid1D::from_bounds(-25.0, 25.0, 5e-3));
    const auto r = invert_pipeline(Q, Grid1D::from_bounds(-8.0, 8.0, 5e-3), JostMethod::ode);
    double worst = 0.0;
    for (std::size_t i = 0; i < r.m.grid().size(); ++i) {
      REQUIRE(r.m.samples()[i] + 1.0 > 0.0);
      worst = std::max(worst, std::abs(r.m.samples()[i] - fn(r.m.grid().point(i))));
    }
    CHECK(worst <= 1e-5);
    REQUIRE(r.diagnostics.jost_residual.has_value());
    CHECK(*r.diagnostics.jost_residual <= 1e-6);
  }
}
