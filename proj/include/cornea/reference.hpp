#pragma once

// Serial reference paths for the data-parallel kernels. Tests compare the
// parallel results against these bit for bit; the benchmark times both.

#include "cornea/fit.hpp"
#include "cornea/solver.hpp"
#include "cornea/synthetic.hpp"

namespace cornea::reference {

inline KernelTable kernel_table(const ModelParams& params, const RadialGrid& grid) {
  return KernelTable(params, grid, Execution::serial);
}

inline SurfaceMesh generate_synthetic(const SynthSpec& spec) {
  return cornea::generate_synthetic(spec, Execution::serial);
}

inline SurfaceMesh evaluate_model(const ModelSurface& model, const SurfaceMesh& geometry) {
  return cornea::evaluate_model(model, geometry, Execution::serial);
}

inline SurfaceMesh axial_distance_map(const SurfaceMesh& mesh, const AxialOptions& options) {
  return cornea::axial_distance_map(mesh, options, Execution::serial);
}

inline SurfaceMesh axial_distance_map(const ModelSurface& model, const SurfaceMesh& geometry,
                                      const AxialOptions& options) {
  return cornea::axial_distance_map(model, geometry, options, Execution::serial);
}

/// Picard step with every node's integrals summed panel by panel, O(n^2).
RadialProfile picard_step_direct(const KernelTable& table, const RadialProfile& prev);

}  // namespace cornea::reference
