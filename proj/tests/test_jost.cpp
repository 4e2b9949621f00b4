#include <doctest.h>

#include <cmath>
#include <random>

#include "chscatter/error.hpp"
#include "chscatter/jost.hpp"
#include "chscatter/liouville.hpp"
#include "chscatter/solitary.hpp"

using namespace chscatter;

namespace {

// -(1/8) sech^2(y/4), the c = 8/3 well. |Q(+-40)| ~ 1e-9, above the default decay_tol.
PotentialProfile example_potential(double lo = -40.0, double hi = 40.0, double dy = 1e-3) {
  return PotentialProfile(SampledFunction::sample(Grid1D::from_bounds(lo, hi, dy),
                                                  [](double y) {
                                                    const double ch = std::cosh(y / 4.0);
                                                    return -1.0 / (8.0 * ch * ch);
                                                  }),
                          1e-8);
}

PotentialProfile zero_potential(double lo, double hi, double dy) {
  const Grid1D g = Grid1D::from_bounds(lo, hi, dy);
  return PotentialProfile(SampledFunction(g, std::vector<double>(g.size(), 0.0)));
}

double relative_error_to(const JostFunction& f, double (*exact)(double)) {
  const auto ex = SampledFunction::sample(f.grid(), exact);
  return max_relative_error(f.samples().values(), ex.values());
}

double free_jost(double y) { return std::exp(-y / 2.0); }

std::size_t node_of(const Grid1D& g, double y) {
  return static_cast<std::size_t>(std::llround((y - g.x0()) / g.dx()));
}

}  // namespace

TEST_CASE("JostFunction invariants") {
  const Grid1D g = Grid1D::from_bounds(-2.0, 2.0, 0.5);
  CHECK_THROWS_AS(JostFunction(SampledFunction::sample(g, [](double y) { return y < 0 ? -1.0 : std::exp(-y / 2); })),
                  InvariantError);
  CHECK_THROWS_AS(JostFunction(SampledFunction::sample(g, [](double y) { return 2.0 * std::exp(-y / 2); })),
                  InvariantError);
  const JostFunction f(SampledFunction::sample(g, free_jost));
  CHECK(f.amp_minus() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("solve_jost_ode") {
  SUBCASE("free equation") {
    const auto f = solve_jost_ode(zero_potential(-20.0, 20.0, 1e-3));
    CHECK(relative_error_to(f, free_jost) <= 1e-9);
    CHECK(f.amp_minus() == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("sech^2 well against the closed form") {
    const auto Q = example_potential();
    const auto f = solve_jost_ode(Q);
    CHECK(relative_error_to(f, solitary_jost_exact) <= 1e-6);
    CHECK(std::abs(f.samples()[node_of(f.grid(), 0.0)] - 2.0 / 3.0) <= 1e-8);
    CHECK(f.amp_minus() == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
  }
  SUBCASE("blow-up is reported") {
    const PotentialProfile Q(
        SampledFunction::sample(Grid1D::from_bounds(-40.0, 40.0, 0.1), [](double y) { return 1e6 * std::exp(-y * y / 25); }));
    CHECK_THROWS_AS(solve_jost_ode(Q), SolverError);
  }
}

TEST_CASE("solve_jost_volterra") {
  SUBCASE("free equation after a single sweep") {
    VolterraOptions opts;
    opts.max_iter = 1;
    const auto f = solve_jost_volterra(zero_potential(-20.0, 20.0, 1e-3), opts);
    CHECK(relative_error_to(f, free_jost) <= 1e-12);
  }
  SUBCASE("sech^2 well") {
    const auto Q = example_potential();
    const auto fv = solve_jost_volterra(Q);
    const auto fo = solve_jost_ode(Q);
    CHECK(max_relative_error(fv.samples().values(), fo.samples().values()) <= 1e-6);
    CHECK(std::abs(fv.samples()[node_of(fv.grid(), 0.0)] - 2.0 / 3.0) <= 1e-6);

    VolterraOptions cubic;
    cubic.rule = QuadratureRule::cubic;
    const auto fc = solve_jost_volterra(Q, cubic);
    CHECK(max_relative_error(fc.samples().values(), fo.samples().values()) <= 1e-8);
  }
  SUBCASE("non-convergence carries the last sweep difference") {
    VolterraOptions opts;
    opts.max_iter = 1;
    try {
      solve_jost_volterra(example_potential(-40.0, 40.0, 1e-2), opts);
      FAIL("expected SolverError");
    } catch (const SolverError& e) {
      CHECK(e.residual() > opts.tol);
    }
  }
  SUBCASE("bad options") {
    VolterraOptions opts;
    opts.tol = 0.0;
    CHECK_THROWS_AS(solve_jost_volterra(example_potential(-40.0, 40.0, 0.1), opts), DomainError);
  }
}

TEST_CASE("jost_residual") {
  SUBCASE("free solution") {
    const auto Q = zero_potential(-20.0, 20.0, 1e-3);
    CHECK(jost_residual(SampledFunction::sample(Q.grid(), free_jost), Q) <= 1e-8);
  }
  SUBCASE("closed-form Jost function of the sech^2 well") {
    const auto Q = example_potential();
    CHECK(jost_residual(SampledFunction::sample(Q.grid(), solitary_jost_exact), Q) <= 1e-8);
  }
  SUBCASE("a perturbed function is detected") {
    const auto Q = example_potential();
    const auto bad = SampledFunction::sample(Q.grid(), [](double y) { return solitary_jost_exact(y) * (1.0 + 1e-3 * std::sin(y)); });
    CHECK(jost_residual(bad, Q) >= 1e-4);
  }
  SUBCASE("grid mismatch") {
    const auto Q = example_potential(-40.0, 40.0, 1e-2);
    const auto f = SampledFunction::sample(Grid1D::from_bounds(-40.0, 40.0, 2e-2), solitary_jost_exact);
    CHECK_THROWS_AS(jost_residual(f, Q), GridError);
  }
}

TEST_CASE("positivity, normalization and method agreement on random potentials") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> amp(-0.9, 2.0), pos(-3.0, 3.0), wid(0.5, 3.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double a = amp(rng), b = pos(rng), w = wid(rng);
    const MomentumProfile m(SampledFunction::sample(Grid1D::from_bounds(-30.0, 30.0, 1e-3), [=](double x) {
      return a * std::exp(-(x - b) * (x - b) / w);
    }));
    const auto Q = compute_potential(m, Grid1D::from_bounds(-25.0, 25.0, 1e-3));
    const auto fo = solve_jost_ode(Q);  // constructor enforces f > 0 and the e^{-y/2} normalization
    const auto fv = solve_jost_volterra(Q);
    CHECK(max_relative_error(fv.samples().values(), fo.samples().values()) <= 1e-6);
    CHECK(std::abs(fo.samples().back() * std::exp(fo.grid().back() / 2) - 1.0) <= 1e-6);
  }
}
