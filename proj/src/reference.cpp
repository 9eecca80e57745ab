#include "cornea/reference.hpp"

#include "cornea/error.hpp"

namespace cornea::reference {

RadialProfile picard_step_direct(const KernelTable& table, const RadialProfile& prev) {
  const RadialGrid& grid = table.grid();
  if (!(prev.grid == grid)) throw DomainError("picard_step_direct: grid mismatch");
  const std::size_t n = grid.size();
  std::vector<double> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = normal_projection(prev.dh[i]);

  const double c = table.params().b() / table.i0_at_one();
  RadialProfile next(grid);
  for (std::size_t i = 0; i < n; ++i) {
    double inner = 0.0;
    for (std::size_t j = 0; j < i; ++j) {
      inner += table.inner_left()[j] * p[j] + table.inner_right()[j] * p[j + 1];
    }
    double outer = 0.0;
    for (std::size_t j = n - 1; j-- > i;) {
      outer += table.outer_left()[j] * p[j] + table.outer_right()[j] * p[j + 1];
    }
    if (i == 0) {
      next.h[i] = c * outer;
      next.dh[i] = 0.0;
    } else if (i == n - 1) {
      next.h[i] = 0.0;
      next.dh[i] = c * table.dv1()[i] * inner;
    } else {
      next.h[i] = c * (table.v0()[i] * outer + table.v1()[i] * inner);
      next.dh[i] = c * (table.dv0()[i] * outer + table.dv1()[i] * inner);
    }
  }
  return next;
}

}  // namespace cornea::reference
