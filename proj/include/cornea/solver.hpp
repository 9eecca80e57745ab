#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "cornea/execution.hpp"
#include "cornea/kernel.hpp"

namespace cornea {

/// Uniform grid on [0, 1] with n >= 3 nodes; endpoints are exactly 0 and 1.
class RadialGrid {
 public:
  explicit RadialGrid(std::size_t n_nodes);

  std::size_t size() const noexcept { return nodes_.size(); }
  double spacing() const noexcept { return spacing_; }
  double operator[](std::size_t i) const noexcept { return nodes_[i]; }
  std::span<const double> nodes() const noexcept { return nodes_; }

  friend bool operator==(const RadialGrid&, const RadialGrid&) = default;

 private:
  std::vector<double> nodes_;
  double spacing_;
};

/// Elevation h and slope h' sampled on a radial grid.
struct RadialProfile {
  RadialGrid grid;
  std::vector<double> h;
  std::vector<double> dh;

  explicit RadialProfile(RadialGrid g)
      : grid(std::move(g)), h(grid.size(), 0.0), dh(grid.size(), 0.0) {}
};

// Closed-form zeroth-order profile h0(r) = (b/a)(1 - I0(sqrt(a) r)/I0(sqrt(a))).
// Defined for every r >= 0; it is negative beyond r = 1.
double h0_value(const ModelParams& params, double r);
double h0_slope(const ModelParams& params, double r);

RadialProfile h0_profile(const ModelParams& params, const RadialGrid& grid);

/// Nodal kernel values and product-integration weights for one (a, grid).
///
/// The integrals  int_0^r t v0(t) p(t) dt  and  int_r^1 t v1(t) p(t) dt  are
/// evaluated with p interpolated linearly between nodes and the kernel
/// integrated exactly on each panel (8-point Gauss-Legendre; on the first
/// panel the t ln t singularity of t v1 is integrated analytically). Each
/// Picard step is then two O(n) prefix sums.
class KernelTable {
 public:
  KernelTable(const ModelParams& params, const RadialGrid& grid,
              Execution exec = Execution::parallel);

  const ModelParams& params() const noexcept { return params_; }
  const RadialGrid& grid() const noexcept { return grid_; }

  // Node values; v1 and dv1 at r = 0 are stored as 0 and never read.
  std::span<const double> v0() const noexcept { return v0_; }
  std::span<const double> v1() const noexcept { return v1_; }
  std::span<const double> dv0() const noexcept { return dv0_; }
  std::span<const double> dv1() const noexcept { return dv1_; }

  // Panel j spans [r_j, r_{j+1}]; "left"/"right" multiply p(r_j)/p(r_{j+1}).
  std::span<const double> inner_left() const noexcept { return inner_left_; }
  std::span<const double> inner_right() const noexcept { return inner_right_; }
  std::span<const double> outer_left() const noexcept { return outer_left_; }
  std::span<const double> outer_right() const noexcept { return outer_right_; }

  double i0_at_one() const noexcept { return i0_at_one_; }

  friend bool operator==(const KernelTable&, const KernelTable&) = default;

 private:
  ModelParams params_;
  RadialGrid grid_;
  double i0_at_one_;
  std::vector<double> v0_, v1_, dv0_, dv1_;
  std::vector<double> inner_left_, inner_right_;  // t v0(t)
  std::vector<double> outer_left_, outer_right_;  // t v1(t)
};

/// One Picard step h_{n-1} -> h_n of the integral form of the problem.
RadialProfile picard_step(const KernelTable& table, const RadialProfile& prev,
                          Execution exec = Execution::parallel);
RadialProfile picard_step(const ModelParams& params, const RadialProfile& prev);

struct SolveOptions {
  double tol = 1e-10;
  int max_iter = 50;
  /// Throw BoundViolation when the contraction hypothesis fails instead of
  /// proceeding and flagging it in the report.
  bool enforce_bound = false;
};

struct SolveReport {
  RadialProfile profile;
  int iterations = 0;
  double final_sup_diff = 0.0;  // sup |h_n - h_{n-1}|
  double residual_sup = 0.0;
  bool theorem1_ok = false;
  bool envelope_ok = false;
  double envelope_constant_A = 1.0;
  /// Entry k is sup |h_{k+1} - h_k| (resp. the same for h').
  std::vector<double> sup_diff_history;
  std::vector<double> slope_sup_diff_history;
};

SolveReport solve(const ModelParams& params, const RadialGrid& grid,
                  const SolveOptions& options = {});

/// Sup over nodes of |-(1/r)(r h')' + a h - b P(h')| with centered
/// differences; at r = 0 the regularized form -2h''(0) + a h(0) - b is used.
/// The boundary node r = 1 is excluded.
double residual_sup(const ModelParams& params, const RadialProfile& profile);

/// (1 + h0'(1)^2) / (1 + (2 - 1/I0(sqrt a)) h0'(1)^2).
double envelope_constant(const ModelParams& params);

struct EnvelopeVerdict {
  bool ok = false;
  double A = 1.0;
  double lower_margin = 0.0;  // min (h - A h1)
  double upper_margin = 0.0;  // min (h0 - h)
  double slope_margin = 0.0;  // min (h' - (2 - 1/I0) h0'), and -max h'
};

inline constexpr double envelope_slack = 1e-9;

/// Checks A h1 <= h <= h0, h >= 0, (2 - 1/I0) h0' <= h' <= 0 pointwise.
/// Throws HypothesisViolation unless b <= lemma_b_max(a).
EnvelopeVerdict envelope_check(const ModelParams& params,
                               const RadialProfile& profile);
EnvelopeVerdict envelope_check(const KernelTable& table,
                               const RadialProfile& profile);

/// Per-node discrete kernel masses int |F(r,t)| dt and int |G(r,t)| dt.
struct KernelMass {
  std::vector<double> f_mass;
  std::vector<double> g_mass;
};

KernelMass kernel_mass(const KernelTable& table);

struct FdOracleOptions {
  double tol = 1e-13;  // on the Newton update, sup norm
  int max_iter = 50;
  bool linearized = false;  // replace P by 1
};

/// Damped Newton on the conservative finite-difference discretization of the
/// radial equation. Independent of the integral formulation.
RadialProfile fd_oracle(const ModelParams& params, const RadialGrid& grid,
                        const FdOracleOptions& options = {});

}  // namespace cornea
