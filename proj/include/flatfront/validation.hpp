#pragma once

#include <string>
#include <vector>

#include "flatfront/grid_kernels.hpp"
#include "flatfront/io.hpp"
#include "flatfront/mesh.hpp"

namespace flatfront {

/// Field names match the JSON report. Geometry quantities that could not be
/// computed hold kUnavailable, which fails every check.
struct ValidationReport {
  static constexpr double kUnavailable = 1.7976931348623157e308;

  double c1_res = kUnavailable;
  double c2_res = kUnavailable;
  double c3_res = kUnavailable;
  double max_abs_p_interior = kUnavailable;
  double boundary_p_deviation = kUnavailable;
  double max_abs_curvature = kUnavailable;
  double sing1_error = kUnavailable;
  double sing2_error = kUnavailable;
  double end_error = kUnavailable;
  bool rs_ok = false;
  int outer_sign_changes = 0;
};

struct ValidationTolerances {
  double residual = 1e-10;
  double boundary_p = 1e-8;
  double curvature = 1e-4;
  double singular_point = 1e-6;
  double end_point = 1e-6;

  /// Defaults with the residual tolerance taken from FLATFRONT_TOL when set.
  static ValidationTolerances from_env();
};

struct ValidationOptions {
  int grid = 200;           // interior |p| grid is grid x grid
  int boundary_samples = 256;  // per circle
  int limit_angles = 64;    // angles for the singular-point and end limits
  int curvature_grid = 10;  // curvature_grid^2 points
  Exec exec = Exec::kParallel;
  ValidationTolerances tol;
};

struct Check {
  std::string name;
  bool ok = false;
};

struct ValidationOutcome {
  ValidationReport report;
  std::vector<Check> checks;
  std::vector<std::string> notes;  // why a quantity is unavailable

  bool passed() const;
};

/// Log-polar curvature sample points: radii at log fractions 0.05..0.95,
/// angles at cell centres, keeping 0.01 clearance from z0 and both circles.
std::vector<Complex> curvature_points(const CanonicalModuli& mod, int n);

ValidationOutcome validate_moduli(const CanonicalModuli& mod, const ValidationOptions& opt);

Json report_to_json(const ValidationReport& rep);

/// Mini-report for a rotational mesh built with `opt`: apex height against
/// the closed-form scalar, diameter of the ring next to the singular circle,
/// lowest sampled height, and curvature samples. For b = 1/2 the surface is a
/// vertical line; curvature is then reported as null.
Json rotational_report(const RotationalModuli& rot, const MeshOptions& opt);

}  // namespace flatfront
