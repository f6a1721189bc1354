#pragma once

#include <vector>

#include "flatfront/immersion.hpp"

namespace flatfront {

/// Serial kernels are the reference; parallel ones fan out with OpenMP and
/// must return identical values.
enum class Exec { kSerial, kParallel };

/// n x n cell centres of the log-polar grid on r < |z| < 1:
/// rho_i = r^{1 - (i + 1/2)/n}, theta_j = 2 pi (j + 1/2)/n.
std::vector<Complex> interior_polar_grid(double r, int n);

/// n_per_circle equally spaced samples on each of |z| = 1 and |z| = r.
std::vector<Complex> boundary_samples(double r, int n_per_circle);

struct PScan {
  double max_abs = 0.0;
  double max_dev_from_one = 0.0;
  int skipped = 0;  // points where p could not be evaluated
};

/// max |p| and max ||p| - 1| over the points.
PScan scan_p(const AnnulusMaps& maps, const std::vector<Complex>& pts, Exec exec);

/// Analytic first form at each point; points where it throws get E = NaN.
std::vector<MetricSample> sample_first_form(const AnnulusMaps& maps, const std::vector<Complex>& pts, Exec exec);

/// psi on rings |z| = radii[i], theta_j = 2 pi j / n_theta. Each ring starts
/// from the arc-continued branch and is walked with jet_near.
/// Result is row-major, radii.size() * n_theta; points that cannot be
/// evaluated (z0 itself) are NaN.
std::vector<HalfSpacePoint> sample_rings(const AnnulusMaps& maps, const std::vector<double>& radii, int n_theta,
                                         Exec exec);

/// max |K| over the points, each with the default Cauchy radius; infinity
/// if any point fails.
double max_abs_curvature(const AnnulusMaps& maps, const std::vector<Complex>& pts, Exec exec);

}  // namespace flatfront
