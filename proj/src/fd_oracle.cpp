#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "cornea/error.hpp"
#include "cornea/solver.hpp"

namespace cornea {
namespace {

struct Discretization {
  const RadialGrid& grid;
  double a;
  double b;
  bool linearized;

  double projection(double s) const { return linearized ? 1.0 : normal_projection(s); }
  double projection_slope(double s) const {
    if (linearized) return 0.0;
    const double q = 1.0 + s * s;
    return -s / (q * std::sqrt(q));
  }

  // Residual of the flux-form scheme at the n-1 unknown nodes; h[n-1] = 0.
  void residual(const std::vector<double>& h, std::vector<double>& out) const {
    const std::size_t m = grid.size() - 1;
    const double dr = grid.spacing();
    out.assign(m, 0.0);
    out[0] = -4.0 * (h[1] - h[0]) / (dr * dr) + a * h[0] - b;
    for (std::size_t i = 1; i < m; ++i) {
      const double r = grid[i];
      const double rp = r + 0.5 * dr;
      const double rm = r - 0.5 * dr;
      const double flux = rp * (h[i + 1] - h[i]) - rm * (h[i] - h[i - 1]);
      const double s = (h[i + 1] - h[i - 1]) / (2.0 * dr);
      out[i] = -flux / (r * dr * dr) + a * h[i] - b * projection(s);
    }
  }

  // Tridiagonal Jacobian: sub[i] = dR_i/dh_{i-1}, diag, sup[i] = dR_i/dh_{i+1}.
  void jacobian(const std::vector<double>& h, std::vector<double>& sub,
                std::vector<double>& diag, std::vector<double>& sup) const {
    const std::size_t m = grid.size() - 1;
    const double dr = grid.spacing();
    sub.assign(m, 0.0);
    diag.assign(m, 0.0);
    sup.assign(m, 0.0);
    diag[0] = 4.0 / (dr * dr) + a;
    sup[0] = -4.0 / (dr * dr);
    for (std::size_t i = 1; i < m; ++i) {
      const double r = grid[i];
      const double rp = r + 0.5 * dr;
      const double rm = r - 0.5 * dr;
      const double s = (h[i + 1] - h[i - 1]) / (2.0 * dr);
      const double dp = b * projection_slope(s) / (2.0 * dr);
      sub[i] = -rm / (r * dr * dr) + dp;
      diag[i] = (rp + rm) / (r * dr * dr) + a;
      sup[i] = -rp / (r * dr * dr) - dp;
    }
  }
};

double sup_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Thomas algorithm; overwrites rhs with the solution.
void solve_tridiagonal(std::vector<double> sub, std::vector<double> diag,
                       std::vector<double> sup, std::vector<double>& rhs) {
  const std::size_t m = diag.size();
  for (std::size_t i = 1; i < m; ++i) {
    const double w = sub[i] / diag[i - 1];
    diag[i] -= w * sup[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  rhs[m - 1] /= diag[m - 1];
  for (std::size_t i = m - 1; i-- > 0;) {
    rhs[i] = (rhs[i] - sup[i] * rhs[i + 1]) / diag[i];
  }
}

}  // namespace

RadialProfile fd_oracle(const ModelParams& params, const RadialGrid& grid,
                        const FdOracleOptions& options) {
  const Discretization disc{grid, params.a(), params.b(), options.linearized};
  const std::size_t n = grid.size();
  const std::size_t m = n - 1;
  std::vector<double> h(n, 0.0);
  std::vector<double> res, trial_res, sub, diag, sup, step;
  disc.residual(h, res);

  bool converged = sup_norm(res) == 0.0;
  for (int it = 0; it < options.max_iter && !converged; ++it) {
    disc.jacobian(h, sub, diag, sup);
    step = res;
    solve_tridiagonal(sub, diag, sup, step);

    const double norm = sup_norm(res);
    double lambda = 1.0;
    std::vector<double> trial(h);
    bool accepted = false;
    for (int halving = 0; halving <= 30; ++halving) {
      for (std::size_t i = 0; i < m; ++i) trial[i] = h[i] - lambda * step[i];
      disc.residual(trial, trial_res);
      if (sup_norm(trial_res) < norm) {
        accepted = true;
        break;
      }
      lambda *= 0.5;
    }
    const double update = lambda * sup_norm(step);
    if (!accepted) {
      // Residual is at its rounding floor; accept a negligible final update.
      if (sup_norm(step) <= 1e-10 * std::max(1.0, sup_norm(h))) {
        converged = true;
        break;
      }
      throw NoConvergence("fd_oracle: Newton line search stagnated at residual " +
                          std::to_string(norm));
    }
    h.swap(trial);
    res.swap(trial_res);
    converged = update <= options.tol;
  }
  if (!converged) {
    throw NoConvergence("fd_oracle: Newton did not converge in " +
                        std::to_string(options.max_iter) + " iterations");
  }

  RadialProfile out(grid);
  out.h = h;
  const double dr = grid.spacing();
  out.dh[0] = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) out.dh[i] = (h[i + 1] - h[i - 1]) / (2.0 * dr);
  out.dh[n - 1] = (3.0 * h[n - 1] - 4.0 * h[n - 2] + h[n - 3]) / (2.0 * dr);
  return out;
}

}  // namespace cornea
