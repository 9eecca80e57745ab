#include <array>
#include <cmath>

#include "cornea/error.hpp"
#include "cornea/solver.hpp"
#include "cornea/special.hpp"

namespace cornea {
namespace {

// 8-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 8> kGaussNodes = {
    -0.96028985649753623168, -0.79666647741362673959, -0.52553240991632898582,
    -0.18343464249564980494, 0.18343464249564980494,  0.52553240991632898582,
    0.79666647741362673959,  0.96028985649753623168};
constexpr std::array<double, 8> kGaussWeights = {
    0.10122853629037625915, 0.22238103445337447054, 0.31370664587788728734,
    0.36268378337836198297, 0.36268378337836198297, 0.31370664587788728734,
    0.22238103445337447054, 0.10122853629037625915};

struct PanelWeights {
  double inner_left, inner_right, outer_left, outer_right;
};

// int_0^h t^p ln t dt
double log_moment(int p, double h) {
  const double q = p + 1.0;
  return std::pow(h, q) * (std::log(h) / q - 1.0 / (q * q));
}

PanelWeights panel_weights(double s, double i0s, double k0s, double lo, double hi,
                           bool first) {
  const double width = hi - lo;
  PanelWeights w{};
  for (std::size_t g = 0; g < kGaussNodes.size(); ++g) {
    const double t = lo + 0.5 * width * (kGaussNodes[g] + 1.0);
    const double wt = 0.5 * width * kGaussWeights[g];
    const double right = (t - lo) / width;
    const double left = 1.0 - right;
    const double i0t = special::i0(s * t);
    const double f0 = t * i0t;
    // On the first panel only the regular part t*(v1(t) + I0(s) ln(t) I0(st))
    // goes through Gauss-Legendre.
    double f1 = t * (i0s * special::k0(s * t) - i0t * k0s);
    if (first) f1 += t * i0s * std::log(t) * i0t;
    w.inner_left += wt * f0 * left;
    w.inner_right += wt * f0 * right;
    w.outer_left += wt * f1 * left;
    w.outer_right += wt * f1 * right;
  }
  if (first) {
    // -I0(s) int_0^h t ln t I0(s t) l(t) dt with I0(st) = sum_k c_k t^{2k},
    // l_left = 1 - t/h, l_right = t/h.
    const double q = 0.25 * s * s;
    double c = 1.0;
    for (int k = 0; k < 60; ++k) {
      if (k > 0) c *= q / (static_cast<double>(k) * k);
      const double m1 = log_moment(2 * k + 1, width);
      const double m2 = log_moment(2 * k + 2, width) / width;
      const double dl = -i0s * c * (m1 - m2);
      const double dr = -i0s * c * m2;
      w.outer_left += dl;
      w.outer_right += dr;
      if (std::abs(dl) + std::abs(dr) <=
          1e-18 * (std::abs(w.outer_left) + std::abs(w.outer_right))) {
        break;
      }
    }
  }
  return w;
}

}  // namespace

RadialGrid::RadialGrid(std::size_t n_nodes) : nodes_(n_nodes), spacing_(0.0) {
  if (n_nodes < 3) throw DomainError("RadialGrid: need at least 3 nodes");
  spacing_ = 1.0 / static_cast<double>(n_nodes - 1);
  for (std::size_t i = 0; i < n_nodes; ++i) {
    nodes_[i] = static_cast<double>(i) / static_cast<double>(n_nodes - 1);
  }
  nodes_.back() = 1.0;
}

KernelTable::KernelTable(const ModelParams& params, const RadialGrid& grid,
                         Execution exec)
    : params_(params),
      grid_(grid),
      i0_at_one_(special::i0(params.sqrt_a())),
      v0_(grid.size()),
      v1_(grid.size()),
      dv0_(grid.size()),
      dv1_(grid.size()),
      inner_left_(grid.size() - 1),
      inner_right_(grid.size() - 1),
      outer_left_(grid.size() - 1),
      outer_right_(grid.size() - 1) {
  const double s = params.sqrt_a();
  const double i0s = i0_at_one_;
  const double k0s = special::k0(s);
  const auto n = static_cast<std::ptrdiff_t>(grid.size());
  const bool par = exec == Execution::parallel;

#pragma omp parallel for schedule(static) if (par)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const double r = grid_[static_cast<std::size_t>(i)];
    const auto u = static_cast<std::size_t>(i);
    const double i0r = special::i0(s * r);
    const double i1r = special::i1(s * r);
    v0_[u] = i0r;
    dv0_[u] = s * i1r;
    if (i == 0) {
      v1_[u] = 0.0;
      dv1_[u] = 0.0;
    } else if (i == n - 1) {
      v1_[u] = 0.0;
      dv1_[u] = -s * (i0s * special::k1(s) + i1r * k0s);
    } else {
      v1_[u] = i0s * special::k0(s * r) - i0r * k0s;
      dv1_[u] = -s * (i0s * special::k1(s * r) + i1r * k0s);
    }
  }

#pragma omp parallel for schedule(static) if (par)
  for (std::ptrdiff_t j = 0; j < n - 1; ++j) {
    const auto u = static_cast<std::size_t>(j);
    const PanelWeights w =
        panel_weights(s, i0s, k0s, grid_[u], grid_[u + 1], j == 0);
    inner_left_[u] = w.inner_left;
    inner_right_[u] = w.inner_right;
    outer_left_[u] = w.outer_left;
    outer_right_[u] = w.outer_right;
  }
}

}  // namespace cornea
