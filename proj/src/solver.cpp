#include "cornea/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cornea/error.hpp"
#include "cornea/special.hpp"

namespace cornea {
namespace {

// Below this many nodes the nodal loops stay single-threaded.
constexpr std::ptrdiff_t kParallelNodes = 8192;

double sup_diff(const std::vector<double>& x, const std::vector<double>& y) {
  double m = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
  return m;
}

}  // namespace

double h0_value(const ModelParams& params, double r) {
  if (params.b() == 0.0) return 0.0;
  const double s = params.sqrt_a();
  if (r == 1.0) return 0.0;
  if (r < 1.0) {
    // (b/a)(I0(s) - I0(sr))/I0(s), differenced through I0 - 1 to keep the
    // apex value free of cancellation for small a.
    return params.b() / params.a() *
           (special::bessel_i0_minus_one(s) - special::bessel_i0_minus_one(s * r)) /
           special::i0(s);
  }
  return params.b() / params.a() * (1.0 - special::i0(s * r) / special::i0(s));
}

double h0_slope(const ModelParams& params, double r) {
  const double s = params.sqrt_a();
  return -params.b() / s * special::i1(s * r) / special::i0(s);
}

RadialProfile h0_profile(const ModelParams& params, const RadialGrid& grid) {
  RadialProfile p(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    p.h[i] = h0_value(params, grid[i]);
    p.dh[i] = h0_slope(params, grid[i]);
  }
  p.h.back() = 0.0;
  p.dh.front() = 0.0;
  return p;
}

RadialProfile picard_step(const KernelTable& table, const RadialProfile& prev,
                          Execution exec) {
  const RadialGrid& grid = table.grid();
  if (!(prev.grid == grid)) {
    throw DomainError("picard_step: profile grid does not match kernel table");
  }
  const auto n = static_cast<std::ptrdiff_t>(grid.size());
  const bool par = exec == Execution::parallel && n >= kParallelNodes;

  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(prev.dh[i])) {
      throw NoConvergence("picard_step: non-finite slope at node " + std::to_string(i));
    }
  }
  std::vector<double> p(grid.size());
#pragma omp parallel for schedule(static) if (par)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto u = static_cast<std::size_t>(i);
    p[u] = normal_projection(prev.dh[u]);
  }

  // inner[i] = int_0^{r_i} t v0 p,  outer[i] = int_{r_i}^1 t v1 p
  const auto il = table.inner_left(), ir = table.inner_right();
  const auto ol = table.outer_left(), orr = table.outer_right();
  std::vector<double> inner(grid.size(), 0.0), outer(grid.size(), 0.0);
  for (std::size_t j = 0; j + 1 < grid.size(); ++j) {
    inner[j + 1] = inner[j] + (il[j] * p[j] + ir[j] * p[j + 1]);
  }
  for (std::size_t j = grid.size() - 1; j-- > 0;) {
    outer[j] = outer[j + 1] + (ol[j] * p[j] + orr[j] * p[j + 1]);
  }

  const double c = table.params().b() / table.i0_at_one();
  const auto v0 = table.v0(), v1 = table.v1(), dv0 = table.dv0(), dv1 = table.dv1();
  RadialProfile next(grid);
#pragma omp parallel for schedule(static) if (par)
  for (std::ptrdiff_t i = 1; i < n - 1; ++i) {
    const auto u = static_cast<std::size_t>(i);
    next.h[u] = c * (v0[u] * outer[u] + v1[u] * inner[u]);
    next.dh[u] = c * (dv0[u] * outer[u] + dv1[u] * inner[u]);
  }
  // Origin: v1(r) * inner(r) ~ r^2 ln r -> 0 and h'(0) = 0.
  next.h.front() = c * outer.front();
  next.dh.front() = 0.0;
  const std::size_t last = grid.size() - 1;
  next.h[last] = 0.0;
  next.dh[last] = c * dv1[last] * inner[last];
  return next;
}

RadialProfile picard_step(const ModelParams& params, const RadialProfile& prev) {
  return picard_step(KernelTable(params, prev.grid), prev);
}

SolveReport solve(const ModelParams& params, const RadialGrid& grid,
                  const SolveOptions& options) {
  if (!(options.tol > 0.0)) throw DomainError("solve: tol must be positive");
  if (options.max_iter < 1) throw DomainError("solve: max_iter must be >= 1");
  const AdmissibilityReport adm = admissibility(params);
  if (options.enforce_bound && !adm.theorem1_ok) {
    throw BoundViolation("solve: b = " + std::to_string(params.b()) +
                         " is not below the contraction bound " +
                         std::to_string(adm.theorem1_b_max));
  }

  const KernelTable table(params, grid);
  SolveReport report{h0_profile(params, grid), 0, 0.0, 0.0, adm.theorem1_ok, false, 1.0, {}, {}};

  bool converged = false;
  for (int it = 1; it <= options.max_iter; ++it) {
    RadialProfile next = picard_step(table, report.profile);
    const double diff = sup_diff(next.h, report.profile.h);
    report.sup_diff_history.push_back(diff);
    report.slope_sup_diff_history.push_back(sup_diff(next.dh, report.profile.dh));
    report.profile = std::move(next);
    report.iterations = it;
    report.final_sup_diff = diff;
    if (!std::isfinite(diff)) {
      throw NoConvergence("solve: iteration diverged");
    }
    if (diff <= options.tol) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw NoConvergence("solve: sup-norm update " +
                        std::to_string(report.final_sup_diff) + " still above tol after " +
                        std::to_string(options.max_iter) + " iterations");
  }

  report.residual_sup = residual_sup(params, report.profile);
  if (adm.lemma_ok) {
    const EnvelopeVerdict v = envelope_check(table, report.profile);
    report.envelope_ok = v.ok;
    report.envelope_constant_A = v.A;
  } else {
    report.envelope_ok = false;
    report.envelope_constant_A = envelope_constant(params);
  }
  return report;
}

double residual_sup(const ModelParams& params, const RadialProfile& profile) {
  const auto& h = profile.h;
  const double dr = profile.grid.spacing();
  const double a = params.a();
  const double b = params.b();
  double worst = std::abs(-4.0 * (h[1] - h[0]) / (dr * dr) + a * h[0] - b);
  for (std::size_t i = 1; i + 1 < h.size(); ++i) {
    const double r = profile.grid[i];
    const double slope = (h[i + 1] - h[i - 1]) / (2.0 * dr);
    const double lap = (h[i + 1] - 2.0 * h[i] + h[i - 1]) / (dr * dr) + slope / r;
    worst = std::max(worst, std::abs(-lap + a * h[i] - b * normal_projection(slope)));
  }
  return worst;
}

double envelope_constant(const ModelParams& params) {
  const double slope = h0_slope(params, 1.0);
  const double s2 = slope * slope;
  return (1.0 + s2) / (1.0 + (2.0 - 1.0 / special::i0(params.sqrt_a())) * s2);
}

EnvelopeVerdict envelope_check(const KernelTable& table, const RadialProfile& profile) {
  const ModelParams& params = table.params();
  if (!admissibility(params).lemma_ok) {
    throw HypothesisViolation("envelope_check: b exceeds the derivative-estimate bound");
  }
  const RadialProfile upper = h0_profile(params, profile.grid);
  const RadialProfile first = picard_step(table, upper);
  const double factor = 2.0 - 1.0 / table.i0_at_one();

  EnvelopeVerdict v;
  v.A = envelope_constant(params);
  v.lower_margin = std::numeric_limits<double>::infinity();
  v.upper_margin = std::numeric_limits<double>::infinity();
  v.slope_margin = std::numeric_limits<double>::infinity();
  double min_h = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < profile.h.size(); ++i) {
    v.lower_margin = std::min(v.lower_margin, profile.h[i] - v.A * first.h[i]);
    v.upper_margin = std::min(v.upper_margin, upper.h[i] - profile.h[i]);
    v.slope_margin = std::min({v.slope_margin, profile.dh[i] - factor * upper.dh[i],
                               -profile.dh[i]});
    min_h = std::min(min_h, profile.h[i]);
  }
  v.ok = v.lower_margin >= -envelope_slack && v.upper_margin >= -envelope_slack &&
         v.slope_margin >= -envelope_slack && min_h >= -envelope_slack;
  return v;
}

EnvelopeVerdict envelope_check(const ModelParams& params, const RadialProfile& profile) {
  if (!admissibility(params).lemma_ok) {
    throw HypothesisViolation("envelope_check: b exceeds the derivative-estimate bound");
  }
  return envelope_check(KernelTable(params, profile.grid), profile);
}

KernelMass kernel_mass(const KernelTable& table) {
  const std::size_t n = table.grid().size();
  std::vector<double> inner(n, 0.0), outer(n, 0.0);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    inner[j + 1] = inner[j] + table.inner_left()[j] + table.inner_right()[j];
  }
  for (std::size_t j = n - 1; j-- > 0;) {
    outer[j] = outer[j + 1] + table.outer_left()[j] + table.outer_right()[j];
  }
  const double c = table.params().b() / table.i0_at_one();
  KernelMass m{std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    if (i == 0) {
      m.f_mass[i] = c * outer[i];
      m.g_mass[i] = 0.0;
      continue;
    }
    m.f_mass[i] = c * (table.v0()[i] * outer[i] + table.v1()[i] * inner[i]);
    m.g_mass[i] = c * (table.dv0()[i] * outer[i] + std::abs(table.dv1()[i]) * inner[i]);
  }
  return m;
}

}  // namespace cornea
