#include "flatfront/validation.hpp"

#include <cmath>
#include <cstdlib>
#include <memory>
#include <numbers>

namespace flatfront {

ValidationTolerances ValidationTolerances::from_env() {
  ValidationTolerances t;
  if (const char* env = std::getenv("FLATFRONT_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && v > 0.0 && std::isfinite(v)) t.residual = v;
  }
  return t;
}

bool ValidationOutcome::passed() const {
  for (const Check& c : checks) {
    if (!c.ok) return false;
  }
  return true;
}

std::vector<Complex> curvature_points(const CanonicalModuli& mod, int n) {
  std::vector<Complex> pts;
  const double lr = std::log(mod.r);
  for (int i = 0; i < n; ++i) {
    const double f = (n == 1) ? 0.5 : 0.05 + 0.9 * i / (n - 1);
    const double rho = std::exp(lr * (1.0 - f));
    for (int j = 0; j < n; ++j) {
      const Complex z = std::polar(rho, 2.0 * std::numbers::pi * (j + 0.5) / n);
      const double clear = std::min({rho - mod.r, 1.0 - rho, std::abs(z - mod.z0)});
      if (clear >= 0.01) pts.push_back(z);
    }
  }
  return pts;
}

ValidationOutcome validate_moduli(const CanonicalModuli& mod, const ValidationOptions& opt) {
  ValidationOutcome out;
  ValidationReport& rep = out.report;
  const ThetaContext ctx(mod.r);
  const ValidationTolerances& tol = opt.tol;

  const auto res = residuals(mod, ctx);
  rep.c1_res = res[0];
  rep.c2_res = res[1];
  rep.c3_res = res[2];
  try {
    rep.rs_ok = check_boundary_ranges(mod, ctx);
  } catch (const Error& e) {
    out.notes.push_back(std::string("boundary ranges: ") + e.what());
  }
  try {
    rep.outer_sign_changes = static_cast<int>(outer_brackets(ctx, mod.s, solve_m(ctx, mod.s)).size());
  } catch (const Error& e) {
    out.notes.push_back(std::string("outer scan: ") + e.what());
  }

  std::unique_ptr<AnnulusMaps> maps;
  try {
    maps = std::make_unique<AnnulusMaps>(mod, ctx);
  } catch (const Error& e) {
    out.notes.push_back(std::string("holomorphic data: ") + e.what());
  }

  // Each block leaves its field at kUnavailable when it throws.
  auto guarded = [&](const char* what, auto&& body) {
    if (!maps) return;
    try {
      body();
    } catch (const Error& e) {
      out.notes.push_back(std::string(what) + ": " + e.what());
    }
  };
  guarded("interior p", [&] {
    const PScan scan = scan_p(*maps, interior_polar_grid(mod.r, opt.grid), opt.exec);
    if (scan.skipped > 0) throw DegenerateError("p undefined at " + std::to_string(scan.skipped) + " grid points");
    rep.max_abs_p_interior = scan.max_abs;
  });
  guarded("boundary p", [&] {
    const PScan scan = scan_p(*maps, boundary_samples(mod.r, opt.boundary_samples), opt.exec);
    if (scan.skipped > 0) throw DegenerateError("p undefined on the boundary");
    rep.boundary_p_deviation = scan.max_dev_from_one;
  });
  guarded("curvature", [&] {
    const double k = max_abs_curvature(*maps, curvature_points(mod, opt.curvature_grid), opt.exec);
    if (!std::isfinite(k)) throw DegenerateError("curvature not finite");
    rep.max_abs_curvature = k;
  });
  guarded("singular points", [&] {
    double e1 = 0.0, e2 = 0.0;
    for (int k = 0; k < opt.limit_angles; ++k) {
      const double t = 2.0 * std::numbers::pi * (k + 0.5) / opt.limit_angles;
      const HalfSpacePoint a = boundary_limit(*maps, t, true);
      const HalfSpacePoint b = boundary_limit(*maps, t, false);
      e1 = std::max(e1, std::hypot(a.x1, a.x2, a.x3 - 1.0));
      e2 = std::max(e2, std::hypot(b.x1, b.x2, b.x3 - mod.c_height));
    }
    rep.sing1_error = e1;
    rep.sing2_error = e2;
  });
  guarded("end", [&] {
    const HalfSpacePoint target = end_point(*maps);
    double e = 0.0;
    for (int k = 0; k < opt.limit_angles; ++k) {
      const HalfSpacePoint p = end_limit(*maps, 2.0 * std::numbers::pi * (k + 0.5) / opt.limit_angles);
      e = std::max(e, std::hypot(p.x1 - target.x1, p.x2 - target.x2, p.x3));
    }
    rep.end_error = e;
  });

  for (double* v : {&rep.c1_res, &rep.c2_res, &rep.c3_res}) {
    if (!std::isfinite(*v)) *v = ValidationReport::kUnavailable;
  }

  auto below = [](double v, double t) { return std::isfinite(v) && v < t; };
  out.checks = {
      {"c1_res", below(rep.c1_res, tol.residual)},
      {"c2_res", below(rep.c2_res, tol.residual)},
      {"c3_res", below(rep.c3_res, tol.residual)},
      {"max_abs_p_interior", below(rep.max_abs_p_interior, 1.0)},
      {"boundary_p_deviation", below(rep.boundary_p_deviation, tol.boundary_p)},
      {"max_abs_curvature", below(rep.max_abs_curvature, tol.curvature)},
      {"sing1_error", below(rep.sing1_error, tol.singular_point)},
      {"sing2_error", below(rep.sing2_error, tol.singular_point)},
      {"end_error", below(rep.end_error, tol.end_point)},
      {"rs_ok", rep.rs_ok},
      {"outer_sign_changes", rep.outer_sign_changes >= 1},
  };
  return out;
}

Json report_to_json(const ValidationReport& rep) {
  Json j;
  j["c1_res"] = rep.c1_res;
  j["c2_res"] = rep.c2_res;
  j["c3_res"] = rep.c3_res;
  j["max_abs_p_interior"] = rep.max_abs_p_interior;
  j["boundary_p_deviation"] = rep.boundary_p_deviation;
  j["max_abs_curvature"] = rep.max_abs_curvature;
  j["sing1_error"] = rep.sing1_error;
  j["sing2_error"] = rep.sing2_error;
  j["end_error"] = rep.end_error;
  j["rs_ok"] = rep.rs_ok;
  j["outer_sign_changes"] = rep.outer_sign_changes;
  return j;
}

Json rotational_report(const RotationalModuli& rot, const MeshOptions& opt) {
  const double a = rot.a_rot, b = rot.b_rot, sr = rot.s_rot;
  Json j;
  j["b_rot"] = b;
  j["a_rot"] = a;
  j["s_rot"] = sr;
  j["apex_height"] = eval_psi_rotational(rot, Complex(sr, 0.0)).x3;
  j["apex_height_closed_form"] = a * std::pow(sr, 2.0 * b) / (1.0 + a * a * b * b * std::pow(sr, 4.0 * b - 2.0));

  // rows as in build_rotational_mesh
  auto ring_radius = [&](int i) { return sr * std::pow(1e-4, 1.0 - static_cast<double>(i) / opt.n_rho); };
  double diam = 0.0;
  const double rho = ring_radius(opt.n_rho - 1);
  for (int k = 0; k < opt.n_theta; ++k) {
    const HalfSpacePoint p = eval_psi_rotational(rot, std::polar(rho, 2.0 * std::numbers::pi * k / opt.n_theta));
    const HalfSpacePoint q = eval_psi_rotational(rot, std::polar(rho, 2.0 * std::numbers::pi * k / opt.n_theta + std::numbers::pi));
    diam = std::max(diam, std::hypot(p.x1 - q.x1, p.x2 - q.x2, p.x3 - q.x3));
  }
  j["outer_ring_diameter"] = diam;
  j["min_x3"] = eval_psi_rotational(rot, Complex(ring_radius(0), 0.0)).x3;

  const bool degenerate = std::abs(b - 0.5) < 1e-12;
  j["degenerate_profile"] = degenerate;
  if (degenerate) {
    j["max_abs_curvature"] = nullptr;
  } else {
    double k = 0.0;
    for (int i = 1; i < 10; ++i) {
      k = std::max(k, std::abs(rotational_gauss_curvature(rot, std::polar(sr * i / 10.0, 0.3 * i))));
    }
    j["max_abs_curvature"] = k;
  }
  j["curvature_samples"] = degenerate ? 0 : 9;
  return j;
}

}  // namespace flatfront
