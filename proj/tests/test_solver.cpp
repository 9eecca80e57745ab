#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/special_functions/bessel.hpp>

#include "doctest.h"
#include "oracles.hpp"

#include "cornea/error.hpp"
#include "cornea/solver.hpp"

using namespace cornea;
using boost::math::cyl_bessel_i;
using boost::math::cyl_bessel_k;

namespace {

double sup_abs_diff(const std::vector<double>& x, const std::vector<double>& y) {
  double m = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
  return m;
}

// Sup difference between a profile on n nodes and one on 2n - 1 nodes, at the
// coarse nodes.
double coarse_diff(const RadialProfile& coarse, const RadialProfile& fine) {
  double m = 0.0;
  for (std::size_t i = 0; i < coarse.h.size(); ++i) {
    m = std::max(m, std::abs(coarse.h[i] - fine.h[2 * i]));
  }
  return m;
}

// One Picard step from h0 evaluated at r by adaptive quadrature, with every
// Bessel value taken from an independent library.
double picard_from_h0_oracle(double a, double b, double r) {
  const double s = std::sqrt(a);
  const double i0s = cyl_bessel_i(0, s), k0s = cyl_bessel_k(0, s);
  auto w0 = [&](double t) { return cyl_bessel_i(0, s * t); };
  auto w1 = [&](double t) { return i0s * cyl_bessel_k(0, s * t) - cyl_bessel_i(0, s * t) * k0s; };
  auto p = [&](double t) {
    const double slope = -(b / a) * s * cyl_bessel_i(1, s * t) / i0s;
    return 1.0 / std::sqrt(1.0 + slope * slope);
  };
  const double inner = oracle::integrate([&](double t) { return t * w0(t) * p(t); }, 0.0, r);
  const double outer = oracle::integrate([&](double t) { return t * w1(t) * p(t); }, r, 1.0);
  return b / i0s * (w0(r) * outer + w1(r) * inner);
}

}  // namespace

TEST_CASE("radial grid") {
  CHECK_THROWS_AS(RadialGrid(2), DomainError);
  const RadialGrid g(401);
  CHECK(g.size() == 401);
  CHECK(g[0] == 0.0);
  CHECK(g[400] == 1.0);
  CHECK(g[200] == 0.5);
  for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);
}

TEST_CASE("zeroth-order profile") {
  const ModelParams p(2.0, 2.0);
  CHECK(h0_value(p, 1.0) == 0.0);
  CHECK(h0_value(p, 0.0) == doctest::Approx(1.0 - 1.0 / cyl_bessel_i(0, std::sqrt(2.0))).epsilon(1e-14));
  CHECK(h0_slope(p, 0.0) == 0.0);
  for (double r : {0.1, 0.5, 0.9}) {
    CHECK(oracle::rel_err(oracle::central_difference([&](double x) { return h0_value(p, x); }, r, 1e-5),
                          h0_slope(p, r)) < 1e-7);
  }
  const RadialProfile prof = h0_profile(p, RadialGrid(11));
  CHECK(prof.h.back() == 0.0);
  CHECK(prof.dh.front() == 0.0);
}

TEST_CASE("one Picard step") {
  const ModelParams p(2.0, 2.0);
  const RadialGrid grid(401);
  const RadialProfile h0 = h0_profile(p, grid);
  const RadialProfile h1 = picard_step(p, h0);

  SUBCASE("stays below h0") {
    for (std::size_t i = 0; i < grid.size(); ++i) CHECK(h1.h[i] <= h0.h[i]);
  }
  SUBCASE("boundary conditions") {
    CHECK(h1.h.back() == 0.0);
    CHECK(h1.dh.front() == 0.0);
  }
  SUBCASE("zero slope input reproduces h0") {
    RadialProfile flat(grid);
    const RadialProfile out = picard_step(p, flat);
    CHECK(sup_abs_diff(out.h, h0.h) < 1e-12);
    CHECK(sup_abs_diff(out.dh, h0.dh) < 1e-12);
  }
  SUBCASE("grid mismatch is rejected") {
    CHECK_THROWS_AS(picard_step(KernelTable(p, RadialGrid(101)), h0), DomainError);
  }
  SUBCASE("non-finite input is rejected") {
    RadialProfile bad = h0;
    bad.dh[7] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(picard_step(p, bad), NoConvergence);
  }
}

TEST_CASE("one Picard step against adaptive quadrature") {
  const ModelParams p(2.0, 2.0);
  const RadialGrid grid(4001);
  const RadialProfile h1 = picard_step(p, h0_profile(p, grid));
  CHECK(grid[2000] == 0.5);
  CHECK(std::abs(h1.h[2000] - picard_from_h0_oracle(2.0, 2.0, 0.5)) < 1e-8);
  CHECK(std::abs(h1.h[400] - picard_from_h0_oracle(2.0, 2.0, 0.1)) < 1e-8);
}

TEST_CASE("Picard iteration at a = b = 2") {
  SolveOptions opt;
  opt.tol = 1e-8;
  const SolveReport rep = solve(ModelParams(2.0, 2.0), RadialGrid(401), opt);
  CHECK(rep.iterations <= 8);
  CHECK(rep.final_sup_diff <= opt.tol);
  REQUIRE(rep.sup_diff_history.size() >= 4);
  CHECK(rep.sup_diff_history[3] >= 1e-7);
  CHECK(rep.sup_diff_history[3] <= 1e-5);
  CHECK(rep.theorem1_ok);
  CHECK(rep.envelope_ok);
  CHECK(rep.envelope_constant_A > 0.0);
  CHECK(rep.envelope_constant_A <= 1.0);
  for (std::size_t i = 0; i < rep.profile.h.size(); ++i) {
    CHECK(rep.profile.h[i] >= 0.0);
    CHECK(rep.profile.dh[i] <= 0.0);
  }
}

TEST_CASE("solve is deterministic") {
  const SolveReport r1 = solve(ModelParams(2.07883, 2.76741), RadialGrid(301));
  const SolveReport r2 = solve(ModelParams(2.07883, 2.76741), RadialGrid(301));
  CHECK(r1.profile.h == r2.profile.h);
  CHECK(r1.profile.dh == r2.profile.dh);
  CHECK(r1.sup_diff_history == r2.sup_diff_history);
}

TEST_CASE("unforced and weakly forced problems") {
  const SolveReport zero = solve(ModelParams(2.0, 0.0), RadialGrid(101));
  CHECK(zero.iterations == 1);
  for (double v : zero.profile.h) CHECK(v == 0.0);
  CHECK(residual_sup(ModelParams(2.0, 0.0), zero.profile) == 0.0);

  const SolveReport weak = solve(ModelParams(2.0, 1e-12), RadialGrid(101));
  CHECK(weak.iterations == 1);
  CHECK(*std::max_element(weak.profile.h.begin(), weak.profile.h.end()) < 1e-12);
}

TEST_CASE("bound enforcement and iteration limits") {
  const double over = 1.05 * theorem1_b_max(2.0);
  SolveOptions enforce;
  enforce.enforce_bound = true;
  CHECK_THROWS_AS(solve(ModelParams(2.0, over), RadialGrid(101), enforce), BoundViolation);
  const SolveReport warned = solve(ModelParams(2.0, over), RadialGrid(101));
  CHECK_FALSE(warned.theorem1_ok);

  SolveOptions short_run;
  short_run.max_iter = 2;
  CHECK_THROWS_AS(solve(ModelParams(2.0, 2.0), RadialGrid(101), short_run), NoConvergence);
  SolveOptions bad_tol;
  bad_tol.tol = 0.0;
  CHECK_THROWS_AS(solve(ModelParams(2.0, 2.0), RadialGrid(101), bad_tol), DomainError);
}

TEST_CASE("agreement with the finite-difference oracle") {
  const RadialGrid grid(401);
  for (auto [a, b] : {std::pair{1.0, 1.0}, std::pair{2.0, 2.0}, std::pair{2.07883, 2.76741}}) {
    CAPTURE(a);
    const ModelParams p(a, b);
    const SolveReport rep = solve(p, grid);
    CHECK(sup_abs_diff(rep.profile.h, fd_oracle(p, grid).h) <= 1e-6);
  }
}

TEST_CASE("finite-difference oracle edge cases") {
  const RadialGrid grid(101);
  const RadialProfile zero = fd_oracle(ModelParams(2.0, 0.0), grid);
  for (double v : zero.h) CHECK(v == 0.0);

  // The linearized problem is solved exactly by h0; the discretization error
  // is second order.
  FdOracleOptions lin;
  lin.linearized = true;
  const ModelParams p(2.0, 2.0);
  double prev = 0.0;
  for (std::size_t n : {51, 101, 201, 401}) {
    const double err = sup_abs_diff(fd_oracle(p, RadialGrid(n), lin).h, h0_profile(p, RadialGrid(n)).h);
    if (prev > 0.0) {
      CAPTURE(n);
      CHECK(prev / err >= 3.0);
      CHECK(prev / err <= 5.0);
    }
    prev = err;
  }
}

TEST_CASE("residual") {
  const ModelParams p(2.0, 2.0);
  CHECK(residual_sup(p, h0_profile(p, RadialGrid(401))) > 0.0);
  double prev = 0.0;
  for (std::size_t n : {101, 201, 401}) {
    const double res = solve(p, RadialGrid(n)).residual_sup;
    if (n == 401) CHECK(res <= 1e-3);
    if (prev > 0.0) {
      CAPTURE(n);
      CHECK(prev / res >= 3.0);
      CHECK(prev / res <= 5.0);
    }
    prev = res;
  }
}

TEST_CASE("grid convergence") {
  const ModelParams p(2.0, 2.0);
  const SolveReport s51 = solve(p, RadialGrid(51));
  const SolveReport s101 = solve(p, RadialGrid(101));
  const SolveReport s201 = solve(p, RadialGrid(201));
  const SolveReport s401 = solve(p, RadialGrid(401));
  const double d1 = coarse_diff(s51.profile, s101.profile);
  const double d2 = coarse_diff(s101.profile, s201.profile);
  const double d3 = coarse_diff(s201.profile, s401.profile);
  CHECK(d1 / d2 >= 3.0);
  CHECK(d1 / d2 <= 5.0);
  CHECK(d2 / d3 >= 3.0);
  CHECK(d2 / d3 <= 5.0);
}

TEST_CASE("successive slope differences contract") {
  for (auto [a, b] : {std::pair{0.5, 1.0}, std::pair{1.0, 1.0}, std::pair{2.0, 2.0},
                      std::pair{2.07883, 2.76741}, std::pair{1.94398, 2.27534}, std::pair{5.0, 1.5}}) {
    CAPTURE(a);
    CAPTURE(b);
    const ModelParams p(a, b);
    REQUIRE(admissibility(p).theorem1_ok);
    const double q = bound_constants(p).contraction;
    const SolveReport rep = solve(p, RadialGrid(401));
    const auto& d = rep.slope_sup_diff_history;
    for (std::size_t n = 1; n < d.size(); ++n) CHECK(d[n] <= q * d[n - 1] + 1e-12);
  }
}

TEST_CASE("discrete kernel masses respect the proof constants") {
  for (double a : {1.0, 2.0, 5.0}) {
    CAPTURE(a);
    const ModelParams p(a, 1.0);
    const KernelBounds k = bound_constants(p);
    const KernelMass m = kernel_mass(KernelTable(p, RadialGrid(401)));
    for (std::size_t i = 0; i < m.f_mass.size(); ++i) {
      CHECK(m.f_mass[i] <= k.q_bound + 1e-9);
      CHECK(m.g_mass[i] <= k.r_bound + 1e-9);
    }
  }
}

TEST_CASE("envelope") {
  const ModelParams p(2.0, 2.0);
  const double s = std::sqrt(2.0);
  const double i0 = cyl_bessel_i(0, s);
  const double slope = -(2.0 / 2.0) * s * cyl_bessel_i(1, s) / i0;
  const double want = (1.0 + slope * slope) / (1.0 + (2.0 - 1.0 / i0) * slope * slope);
  CHECK(envelope_constant(p) == doctest::Approx(want).epsilon(1e-13));
  CHECK(envelope_constant(ModelParams(2.0, 1e-8)) == doctest::Approx(1.0).epsilon(1e-12));

  const SolveReport rep = solve(p, RadialGrid(401));
  const EnvelopeVerdict v = envelope_check(p, rep.profile);
  CHECK(v.ok);
  CHECK(v.lower_margin >= -envelope_slack);
  CHECK(v.upper_margin >= -envelope_slack);
  CHECK(v.slope_margin >= -envelope_slack);
  CHECK(rep.envelope_constant_A == v.A);

  const SolveReport weak = solve(ModelParams(2.0, 1e-6), RadialGrid(101));
  CHECK(weak.envelope_ok);
  CHECK(weak.envelope_constant_A == doctest::Approx(1.0).epsilon(1e-9));

  // A profile pushed above h0 must be flagged.
  RadialProfile high = rep.profile;
  high.h[100] = h0_value(p, high.grid[100]) + 1e-6;
  CHECK_FALSE(envelope_check(p, high).ok);

  CHECK_THROWS_AS(envelope_check(ModelParams(2.0, 1.01 * lemma_b_max(2.0)), rep.profile),
                  HypothesisViolation);
}
