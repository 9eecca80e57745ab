// Command-line front end: solve, bounds, synth, fit, axial.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "cornea/error.hpp"
#include "cornea/fit.hpp"
#include "cornea/kernel.hpp"
#include "cornea/mesh.hpp"
#include "cornea/solver.hpp"
#include "cornea/synthetic.hpp"
#include "report.hpp"

namespace fs = std::filesystem;
using namespace cornea;

namespace {

constexpr const char* kVersion = CORNEA_VERSION;

void emit(RunReport& report, const std::optional<fs::path>& path) {
  report.finish();
  report.write(std::cout);
  if (path) report.write(*path);
}

// ---------------------------------------------------------------- solve

struct SolveArgs {
  double a = 0.0;
  double b = 0.0;
  std::size_t n_nodes = 401;
  double tol = 1e-10;
  int max_iter = 50;
  bool enforce_bound = false;
  fs::path out;
  std::optional<fs::path> report;
};

int cmd_solve(const SolveArgs& args) {
  RunReport report("solve", kVersion);
  report.input("a", args.a, "nondim");
  report.input("b", args.b, "nondim");
  report.input("n_nodes", static_cast<double>(args.n_nodes), "nondim");
  report.input("tol", args.tol, "nondim");
  report.input("max_iter", args.max_iter, "nondim");
  report.input("enforce_bound", args.enforce_bound ? "true" : "false");
  report.input("out", args.out.string());

  const ModelParams params(args.a, args.b);
  const RadialGrid grid(args.n_nodes);
  const SolveOptions options{args.tol, args.max_iter, args.enforce_bound};
  const SolveReport result = solve(params, grid, options);
  const AdmissibilityReport adm = admissibility(params);
  const KernelBounds bounds = bound_constants(params);

  // Envelope curves: h0 above, A h1 below, with h1 the first Picard iterate.
  const RadialProfile h0 = h0_profile(params, grid);
  const RadialProfile h1 = picard_step(params, h0);
  const double A = envelope_constant(params);
  CsvWriter csv(args.out, {"r", "h", "dh", "h0", "A_h1"});
  for (std::size_t i = 0; i < grid.size(); ++i) {
    csv.row({grid[i], result.profile.h[i], result.profile.dh[i], h0.h[i], A * h1.h[i]});
  }
  csv.close();

  report.output("iterations", static_cast<double>(result.iterations), "nondim");
  report.output("final_sup_diff", result.final_sup_diff, "nondim");
  if (result.sup_diff_history.size() >= 4) {
    report.output("sup_diff_h4_h3", result.sup_diff_history[3], "nondim");
  }
  report.output("residual_sup", result.residual_sup, "nondim");
  report.output("apex_height", result.profile.h.front(), "nondim");
  report.output("theorem1_b_max", adm.theorem1_b_max, "nondim");
  report.output("lemma_b_max", adm.lemma_b_max, "nondim");
  report.output("theorem1_ok", adm.theorem1_ok);
  report.output("lemma_ok", adm.lemma_ok);
  report.output("contraction", bounds.contraction, "nondim");
  report.output("envelope_constant_A", A, "nondim");
  report.output("envelope_ok", result.envelope_ok);
  if (!adm.theorem1_ok) {
    std::cerr << "warning: b is not below the contraction bound " << adm.theorem1_b_max << '\n';
  }
  emit(report, args.report);
  return 0;
}

// ---------------------------------------------------------------- bounds

struct BoundsArgs {
  double a_min = 0.25;
  double a_max = 10.0;
  std::size_t n_samples = 200;
  fs::path out;
  std::optional<fs::path> report;
};

int cmd_bounds(const BoundsArgs& args) {
  if (!(args.a_min > 0.0 && args.a_min < args.a_max)) {
    throw DomainError("bounds: need 0 < a-min < a-max");
  }
  if (args.n_samples < 2) throw DomainError("bounds: need at least 2 samples");
  RunReport report("bounds", kVersion);
  report.input("a_min", args.a_min, "nondim");
  report.input("a_max", args.a_max, "nondim");
  report.input("n_samples", static_cast<double>(args.n_samples), "nondim");
  report.input("out", args.out.string());

  CsvWriter csv(args.out, {"a", "theorem1_b_max", "lemma_b_max"});
  double min_t1 = INFINITY, min_lemma = INFINITY;
  for (std::size_t i = 0; i < args.n_samples; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(args.n_samples - 1);
    const double a = i + 1 == args.n_samples ? args.a_max : args.a_min + t * (args.a_max - args.a_min);
    const double t1 = theorem1_b_max(a);
    const double lm = lemma_b_max(a);
    min_t1 = std::min(min_t1, t1);
    min_lemma = std::min(min_lemma, lm);
    csv.row({a, t1, lm});
  }
  csv.close();
  report.output("rows", static_cast<double>(args.n_samples), "nondim");
  report.output("min_theorem1_b_max", min_t1, "nondim");
  report.output("min_lemma_b_max", min_lemma, "nondim");
  emit(report, args.report);
  return 0;
}

// ---------------------------------------------------------------- synth

struct SynthArgs {
  double a = 2.0;
  double b = 2.0;
  double ecc_sq = 0.0;
  double scale_radius = 6.0;
  double noise_sigma = 0.0;
  std::uint64_t seed = 0;
  std::size_t nx = 123;
  std::size_t ny = 123;
  std::optional<double> sphere_radius;
  double half_width = 4.0;
  fs::path out;
  std::optional<fs::path> report;
};

int cmd_synth(const SynthArgs& args) {
  RunReport report("synth", kVersion);
  SurfaceMesh mesh;
  if (args.sphere_radius) {
    report.input("sphere_radius", *args.sphere_radius, "mm");
    report.input("half_width", args.half_width, "mm");
    report.input("n", static_cast<double>(args.nx), "nondim");
    mesh = generate_spherical_cap(*args.sphere_radius, args.half_width, args.nx);
  } else {
    SynthSpec spec;
    spec.params = ModelParams(args.a, args.b);
    spec.ellipse = DomainEllipse::from_signed_ecc_sq(args.ecc_sq);
    spec.scale_radius = args.scale_radius;
    spec.noise_sigma = args.noise_sigma;
    spec.seed = args.seed;
    spec.n_x = args.nx;
    spec.n_y = args.ny;
    report.input("a", args.a, "nondim");
    report.input("b", args.b, "nondim");
    report.input("ecc_sq", args.ecc_sq, "nondim");
    report.input("scale_radius", args.scale_radius, "mm");
    report.input("noise_sigma", args.noise_sigma, "mm");
    report.input("seed", std::to_string(args.seed));
    report.input("nx", static_cast<double>(args.nx), "nondim");
    report.input("ny", static_cast<double>(args.ny), "nondim");
    mesh = generate_synthetic(spec);
  }
  report.input("out", args.out.string());
  write_mesh(mesh, args.out);
  report.output("valid_points", static_cast<double>(mesh.valid_count()), "nondim");
  report.output("spacing", mesh.spacing_x, "mm");
  emit(report, args.report);
  return 0;
}

// ---------------------------------------------------------------- fit

struct FitArgs {
  fs::path mesh;
  fs::path out;
  std::optional<fs::path> errors;
  FitOptions options;
};

int cmd_fit(const FitArgs& args) {
  RunReport report("fit", kVersion);
  report.input("mesh", args.mesh.string());
  report.input("level_fraction", args.options.level_fraction, "nondim");
  report.input("apex_window_fraction", args.options.apex_window_fraction, "nondim");
  report.input("profile_window_fraction", args.options.profile_window_fraction, "nondim");
  report.input("apex_disk", args.options.apex_disk, "nondim");

  const SurfaceMesh mesh = read_mesh(args.mesh);
  const FitResult fit = fit_mesh(mesh, args.options);

  report.output("a", fit.params.a(), "nondim");
  report.output("b", fit.params.b(), "nondim");
  report.output("signed_ecc_sq", fit.ellipse.signed_ecc_sq(), "nondim");
  report.output("ellipse_rx", fit.ellipse.semi_axis_x(), "nondim");
  report.output("ellipse_ry", fit.ellipse.semi_axis_y(), "nondim");
  report.output("scale_radius", fit.scale_radius, "mm");
  report.output("center_x", fit.center_x, "mm");
  report.output("center_y", fit.center_y, "mm");
  report.output("max_deflection", fit.apex.max_deflection, "mm");
  report.output("central_radius", fit.apex.central_radius, "mm");
  const AdmissibilityReport adm = admissibility(fit.params);
  report.output("theorem1_ok", adm.theorem1_ok);
  report.output("lemma_ok", adm.lemma_ok);
  report.output("mean_abs_error", fit.mean_abs_error_mm, "mm");
  report.output("mean_rel_error", fit.mean_rel_error, "nondim");
  report.output("axial_mean_abs_error", fit.axial_mean_abs_error_mm, "mm");
  report.output("axial_mean_rel_error", fit.axial_mean_rel_error, "nondim");
  report.output("points_used", static_cast<double>(fit.n_points_used), "nondim");
  report.output("axial_points", static_cast<double>(fit.n_axial_points), "nondim");

  if (args.errors) {
    report.output("errors", args.errors->string());
    const SurfaceMesh model = evaluate_model(fit.model(), mesh);
    CsvWriter csv(*args.errors, {"x", "y", "z_data", "z_model", "abs_error"});
    for (std::size_t iy = 0; iy < mesh.n_y; ++iy) {
      for (std::size_t ix = 0; ix < mesh.n_x; ++ix) {
        if (!mesh.is_valid(ix, iy)) continue;
        const double zd = mesh.at(ix, iy), zm = model.at(ix, iy);
        csv.row({mesh.x(ix), mesh.y(iy), zd, zm, std::abs(zd - zm)});
      }
    }
    csv.close();
  }
  report.finish();
  report.write(std::cout);
  report.write(args.out);
  return 0;
}

// ---------------------------------------------------------------- axial

struct AxialArgs {
  fs::path mesh;
  std::optional<fs::path> fit;
  double apex_disk = 0.05;
  double gradient_floor = 1e-8;
  fs::path out;
  std::optional<fs::path> report;
};

int cmd_axial(const AxialArgs& args) {
  RunReport report("axial", kVersion);
  report.input("mesh", args.mesh.string());
  report.input("fit", args.fit ? args.fit->string() : "none");
  report.input("apex_disk", args.apex_disk, "nondim");
  report.input("gradient_floor", args.gradient_floor, "nondim");
  report.input("out", args.out.string());

  const SurfaceMesh mesh = read_mesh(args.mesh);
  std::optional<ModelSurface> model;
  AxialOptions opt;
  opt.gradient_floor = args.gradient_floor;
  if (args.fit) {
    const auto kv = read_report(*args.fit);
    model = ModelSurface{ModelParams(report_number(kv, "a"), report_number(kv, "b")),
                         DomainEllipse(report_number(kv, "ellipse_rx"), report_number(kv, "ellipse_ry")),
                         report_number(kv, "scale_radius"), report_number(kv, "center_x"),
                         report_number(kv, "center_y")};
    opt.center_x = model->center_x;
    opt.center_y = model->center_y;
    opt.apex_disk_radius = args.apex_disk * model->scale_radius;
  } else {
    const Apex apex = locate_apex(mesh);
    const DomainEllipse ellipse = estimate_ellipse(mesh, 0.5, apex);
    opt.center_x = apex.x;
    opt.center_y = apex.y;
    opt.apex_disk_radius = args.apex_disk * estimate_scale_radius(mesh, apex, ellipse);
  }
  report.output("center_x", opt.center_x, "mm");
  report.output("center_y", opt.center_y, "mm");
  report.output("apex_disk_radius", opt.apex_disk_radius, "mm");

  const SurfaceMesh d_data = axial_distance_map(mesh, opt);
  const SurfaceMesh d_model = model ? axial_distance_map(*model, mesh, opt) : SurfaceMesh{};
  double d_min = INFINITY, d_max = -INFINITY, d_sum = 0.0, err_sum = 0.0;
  std::size_t count = 0, err_count = 0;
  CsvWriter csv(args.out, model ? std::vector<std::string>{"x", "y", "d_data", "d_model", "abs_error"}
                                : std::vector<std::string>{"x", "y", "d_data"});
  for (std::size_t iy = 0; iy < mesh.n_y; ++iy) {
    for (std::size_t ix = 0; ix < mesh.n_x; ++ix) {
      if (!d_data.is_valid(ix, iy)) continue;
      const double d = d_data.at(ix, iy);
      d_min = std::min(d_min, d);
      d_max = std::max(d_max, d);
      d_sum += d;
      ++count;
      if (!model) {
        csv.row({mesh.x(ix), mesh.y(iy), d});
        continue;
      }
      if (!d_model.is_valid(ix, iy)) continue;
      const double dm = d_model.at(ix, iy);
      err_sum += std::abs(d - dm);
      ++err_count;
      csv.row({mesh.x(ix), mesh.y(iy), d, dm, std::abs(d - dm)});
    }
  }
  csv.close();
  report.output("defined_points", static_cast<double>(count), "nondim");
  if (count > 0) {
    report.output("d_min", d_min, "mm");
    report.output("d_max", d_max, "mm");
    report.output("d_mean", d_sum / static_cast<double>(count), "mm");
  }
  if (model && err_count > 0) {
    report.output("axial_mean_abs_error", err_sum / static_cast<double>(err_count), "mm");
    report.output("axial_points", static_cast<double>(err_count), "nondim");
  }
  emit(report, args.report);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Corneal membrane model: solve, bound, generate, fit and map axial distance"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "Solve the radial problem by Picard iteration");
  solve_cmd->add_option("--a", solve_args.a, "Stiffness parameter")->required();
  solve_cmd->add_option("--b", solve_args.b, "Pressure parameter")->required();
  solve_cmd->add_option("--n-nodes", solve_args.n_nodes, "Radial grid nodes")->capture_default_str();
  solve_cmd->add_option("--tol", solve_args.tol, "Sup-norm tolerance on h")->capture_default_str();
  solve_cmd->add_option("--max-iter", solve_args.max_iter, "Iteration limit")->capture_default_str();
  solve_cmd->add_flag("--enforce-bound", solve_args.enforce_bound, "Fail unless b is below the contraction bound");
  solve_cmd->add_option("--out", solve_args.out, "Profile CSV (r,h,dh,h0,A_h1)")->required();
  solve_cmd->add_option("--report", solve_args.report, "Also write the report here");

  BoundsArgs bounds_args;
  auto* bounds_cmd = app.add_subcommand("bounds", "Tabulate the largest admissible b against a");
  bounds_cmd->add_option("--a-min", bounds_args.a_min)->capture_default_str();
  bounds_cmd->add_option("--a-max", bounds_args.a_max)->capture_default_str();
  bounds_cmd->add_option("--n-samples", bounds_args.n_samples)->capture_default_str();
  bounds_cmd->add_option("--out", bounds_args.out, "CSV (a,theorem1_b_max,lemma_b_max)")->required();
  bounds_cmd->add_option("--report", bounds_args.report, "Also write the report here");

  SynthArgs synth_args;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic elevation mesh");
  synth_cmd->add_option("--a", synth_args.a)->capture_default_str();
  synth_cmd->add_option("--b", synth_args.b)->capture_default_str();
  synth_cmd->add_option("--ecc-sq", synth_args.ecc_sq, "Signed squared eccentricity (> 0: wider in x)")->capture_default_str();
  synth_cmd->add_option("--scale-radius", synth_args.scale_radius, "mm")->capture_default_str();
  synth_cmd->add_option("--noise-sigma", synth_args.noise_sigma, "mm")->capture_default_str();
  synth_cmd->add_option("--seed", synth_args.seed)->capture_default_str();
  synth_cmd->add_option("--nx", synth_args.nx)->capture_default_str();
  synth_cmd->add_option("--ny", synth_args.ny)->capture_default_str();
  synth_cmd->add_option("--sphere-radius", synth_args.sphere_radius, "Generate a spherical cap of this radius instead (mm)");
  synth_cmd->add_option("--half-width", synth_args.half_width, "Cap footprint radius (mm)")->capture_default_str();
  synth_cmd->add_option("--out", synth_args.out, "Mesh file")->required();
  synth_cmd->add_option("--report", synth_args.report, "Also write the report here");

  FitArgs fit_args;
  auto* fit_cmd = app.add_subcommand("fit", "Fit the zeroth-order model to a mesh");
  fit_cmd->add_option("--mesh", fit_args.mesh)->required();
  fit_cmd->add_option("--out", fit_args.out, "Fit report")->required();
  fit_cmd->add_option("--errors", fit_args.errors, "Per-point error CSV (x,y,z_data,z_model,abs_error)");
  fit_cmd->add_option("--level-fraction", fit_args.options.level_fraction)->capture_default_str();
  fit_cmd->add_option("--apex-window", fit_args.options.apex_window_fraction)->capture_default_str();
  fit_cmd->add_option("--profile-window", fit_args.options.profile_window_fraction)->capture_default_str();
  fit_cmd->add_option("--apex-disk", fit_args.options.apex_disk)->capture_default_str();

  AxialArgs axial_args;
  auto* axial_cmd = app.add_subcommand("axial", "Map axial distance of a mesh (and a fitted model)");
  axial_cmd->add_option("--mesh", axial_args.mesh)->required();
  axial_cmd->add_option("--fit", axial_args.fit, "Fit report from the fit command");
  axial_cmd->add_option("--apex-disk", axial_args.apex_disk, "Masked apex disk, fraction of the scale radius")->capture_default_str();
  axial_cmd->add_option("--gradient-floor", axial_args.gradient_floor)->capture_default_str();
  axial_cmd->add_option("--out", axial_args.out, "CSV (x,y,d_data[,d_model,abs_error])")->required();
  axial_cmd->add_option("--report", axial_args.report, "Also write the report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*solve_cmd) return cmd_solve(solve_args);
    if (*bounds_cmd) return cmd_bounds(bounds_args);
    if (*synth_cmd) return cmd_synth(synth_args);
    if (*fit_cmd) return cmd_fit(fit_args);
    if (*axial_cmd) return cmd_axial(axial_args);
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
