// flatfront: solve, mesh, validate and rotational subcommands.
//
// Exit codes: 0 ok, 1 validation failed or runtime error, 2 usage or range error,
// 3 unreadable moduli, 4 bracket failure, 5 boundary-range violation,
// 6 ordering or residual failure.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>

#include "flatfront/mesh.hpp"
#include "flatfront/validation.hpp"

using namespace flatfront;

namespace {

enum Exit { kOk = 0, kValidateFail = 1, kUsage = 2, kBadModuli = 3, kBracket = 4, kRs = 5, kOrdering = 6 };

struct Args {
  double r = 0.25, s = -0.5, b = 0.5;
  int nu = 64, nv = 128, grid = 200;
  std::string model = "halfspace", format = "obj", out, moduli_path;
  double rho_end = 1e-2;
};

int usage(const std::string& msg) {
  std::cerr << "flatfront: " << msg << "\n";
  return kUsage;
}

void write_mesh(const SurfaceMesh& mesh, const Args& a) {
  if (a.format == "ply") {
    write_ply(mesh, a.out);
  } else {
    write_obj(mesh, a.out);
  }
}

MeshOptions mesh_options(const Args& a) {
  MeshOptions opt;
  opt.n_rho = a.nu;
  opt.n_theta = a.nv;
  opt.model = a.model == "klein" ? Model::kKlein : Model::kHalfSpace;
  opt.rho_end = a.rho_end;
  return opt;
}

int run_solve(const Args& a) {
  if (!(a.r > 0.0 && a.r < 1.0)) return usage("--r must lie in (0, 1)");
  if (!(a.s > -1.0 && a.s < 0.0)) return usage("--s must lie in (-1, 0)");
  const std::string out = a.out.empty() ? "moduli.json" : a.out;
  const ThetaContext ctx(a.r);
  SolverOptions opt;
  opt.tolerance = ValidationTolerances::from_env().residual;
  auto emit = [&](const SolveResult& res) {
    write_json_file(out, moduli_to_json(res.moduli));
    write_json_file(out + ".trace.json", trace_to_json(res.trace));
  };
  try {
    const SolveResult res = solve_canonical(ctx, a.r, a.s, opt);
    emit(res);
    const auto& m = res.moduli;
    std::printf("m = %.17g\nz0 = %.17g\nz1 = %.17g\nz2 = %.17g\n", m.m, m.z0, m.z1, m.z2);
    return kOk;
  } catch (const SolveError& e) {
    if (e.partial()) emit(*e.partial());
    std::cerr << "flatfront solve: " << e.what() << "\n";
    switch (e.kind()) {
      case SolveFailure::kBracket: return kBracket;
      case SolveFailure::kRsViolation: return kRs;
      default: return kOrdering;
    }
  } catch (const BracketError& e) {
    std::cerr << "flatfront solve: " << e.what() << "\n";
    return kBracket;
  }
}

int run_mesh(const Args& a) {
  if (a.nu < 8 || a.nv < 8) return usage("--nu and --nv must be at least 8");
  if (!(a.rho_end > 0.0)) return usage("--rho-end must be positive");
  CanonicalModuli mod;
  try {
    mod = read_moduli_file(a.moduli_path);
  } catch (const IoError& e) {
    std::cerr << "flatfront mesh: " << e.what() << "\n";
    return kBadModuli;
  }
  const ThetaContext ctx(mod.r);
  const AnnulusMaps maps(mod, ctx);
  const MeshResult res = build_canonical_mesh(maps, mesh_options(a));
  for (const auto& w : res.warnings) std::cerr << "warning: " << w << "\n";
  Args b = a;
  if (b.out.empty()) b.out = "surface." + a.format;
  write_mesh(res.mesh, b);
  std::printf("vertices %zu faces %zu euler %d\n", res.mesh.vertices.size(), res.mesh.faces.size(),
              res.mesh.euler_characteristic());
  return kOk;
}

int run_validate(const Args& a) {
  if (a.grid < 2) return usage("--grid must be at least 2");
  CanonicalModuli mod;
  try {
    mod = read_moduli_file(a.moduli_path);
  } catch (const IoError& e) {
    std::cerr << "flatfront validate: " << e.what() << "\n";
    return kBadModuli;
  }
  ValidationOptions opt;
  opt.grid = a.grid;
  opt.tol = ValidationTolerances::from_env();
  const ValidationOutcome v = validate_moduli(mod, opt);
  write_json_file(a.out.empty() ? "report.json" : a.out, report_to_json(v.report));
  for (const Check& c : v.checks) std::printf("%-22s %s\n", c.name.c_str(), c.ok ? "ok" : "FAIL");
  for (const auto& n : v.notes) std::cerr << "note: " << n << "\n";
  return v.passed() ? kOk : kValidateFail;
}

int run_rotational(const Args& a) {
  if (!(a.b > 0.0 && a.b < 1.0)) return usage("--b must lie in (0, 1)");
  if (a.nu < 8 || a.nv < 8) return usage("--nu and --nv must be at least 8");
  const RotationalModuli rot = RotationalModuli::from_b(a.b);
  const MeshOptions opt = mesh_options(a);
  Args b = a;
  if (b.out.empty()) b.out = "rotational." + a.format;
  write_mesh(build_rotational_mesh(rot, opt), b);
  write_json_file(b.out + ".report.json", rotational_report(rot, opt));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Flat fronts with isolated singularities in hyperbolic space"};
  app.require_subcommand(1);
  Args a;

  auto* solve = app.add_subcommand("solve", "solve the moduli for (r, s)");
  solve->add_option("--r", a.r, "annulus modulus in (0, 1)")->required();
  solve->add_option("--s", a.s, "shape parameter in (-1, 0)")->required();
  solve->add_option("--out", a.out, "moduli JSON path (trace goes to <out>.trace.json)");

  const std::vector<std::string> models{"halfspace", "klein"}, formats{"obj", "ply"};
  auto* mesh = app.add_subcommand("mesh", "mesh the surface of a moduli file");
  mesh->add_option("moduli", a.moduli_path, "moduli JSON")->required();
  mesh->add_option("--nu", a.nu, "radial rows");
  mesh->add_option("--nv", a.nv, "angular columns");
  mesh->add_option("--model", a.model)->check(CLI::IsMember(models));
  mesh->add_option("--rho-end", a.rho_end, "parameter radius cut out around the end");
  mesh->add_option("--format", a.format)->check(CLI::IsMember(formats));
  mesh->add_option("--out", a.out);

  auto* validate = app.add_subcommand("validate", "run the invariant battery on a moduli file");
  validate->add_option("moduli", a.moduli_path, "moduli JSON")->required();
  validate->add_option("--grid", a.grid, "interior |p| grid size");
  validate->add_option("--out", a.out, "report JSON path");

  auto* rotational = app.add_subcommand("rotational", "mesh the one-singularity surface of revolution");
  rotational->add_option("--b", a.b, "constant value of R in (0, 1)")->required();
  rotational->add_option("--nu", a.nu, "radial rows");
  rotational->add_option("--nv", a.nv, "angular columns");
  rotational->add_option("--model", a.model)->check(CLI::IsMember(models));
  rotational->add_option("--format", a.format)->check(CLI::IsMember(formats));
  rotational->add_option("--out", a.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*solve) return run_solve(a);
    if (*mesh) return run_mesh(a);
    if (*validate) return run_validate(a);
    return run_rotational(a);
  } catch (const std::exception& e) {
    std::cerr << "flatfront: " << e.what() << "\n";
    return kValidateFail;
  }
}
