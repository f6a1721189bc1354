#include "flatfront/grid_kernels.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace flatfront {

std::vector<Complex> interior_polar_grid(double r, int n) {
  std::vector<Complex> pts;
  pts.reserve(static_cast<size_t>(n) * n);
  const double lr = std::log(r);
  for (int i = 0; i < n; ++i) {
    const double rho = std::exp(lr * (1.0 - (i + 0.5) / n));
    for (int j = 0; j < n; ++j) pts.push_back(std::polar(rho, 2.0 * std::numbers::pi * (j + 0.5) / n));
  }
  return pts;
}

std::vector<Complex> boundary_samples(double r, int n_per_circle) {
  std::vector<Complex> pts;
  for (double rho : {1.0, r}) {
    for (int j = 0; j < n_per_circle; ++j) pts.push_back(std::polar(rho, 2.0 * std::numbers::pi * (j + 0.5) / n_per_circle));
  }
  return pts;
}

namespace {

// |p| or NaN when p is undefined at the point
double abs_p_or_nan(const AnnulusMaps& maps, Complex z) {
  try {
    return std::abs(eval_p(maps, z));
  } catch (const Error&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

}  // namespace

PScan scan_p(const AnnulusMaps& maps, const std::vector<Complex>& pts, Exec exec) {
  const long n = static_cast<long>(pts.size());
  std::vector<double> vals(pts.size());
  if (exec == Exec::kParallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (long i = 0; i < n; ++i) vals[i] = abs_p_or_nan(maps, pts[i]);
  } else {
    for (long i = 0; i < n; ++i) vals[i] = abs_p_or_nan(maps, pts[i]);
  }
  PScan out;
  for (double v : vals) {
    if (std::isnan(v)) {
      ++out.skipped;
      continue;
    }
    out.max_abs = std::max(out.max_abs, v);
    out.max_dev_from_one = std::max(out.max_dev_from_one, std::abs(v - 1.0));
  }
  return out;
}

std::vector<MetricSample> sample_first_form(const AnnulusMaps& maps, const std::vector<Complex>& pts, Exec exec) {
  const long n = static_cast<long>(pts.size());
  std::vector<MetricSample> out(pts.size());
  auto one = [&](long i) {
    try {
      out[i] = first_form(maps, pts[i]);
    } catch (const Error&) {
      out[i].E = std::numeric_limits<double>::quiet_NaN();
    }
  };
  if (exec == Exec::kParallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (long i = 0; i < n; ++i) one(i);
  } else {
    for (long i = 0; i < n; ++i) one(i);
  }
  return out;
}

std::vector<HalfSpacePoint> sample_rings(const AnnulusMaps& maps, const std::vector<double>& radii, int n_theta,
                                         Exec exec) {
  const long rows = static_cast<long>(radii.size());
  std::vector<HalfSpacePoint> out(radii.size() * n_theta);
  const double m = maps.moduli().m;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  // Exceptions must not leave an OpenMP region; a failed point is NaN and the
  // walk resumes from the arc-continued branch.
  auto ring = [&](long i) {
    Complex hint;
    bool have_hint = false;
    for (int j = 0; j < n_theta; ++j) {
      const Complex z = std::polar(radii[i], 2.0 * std::numbers::pi * j / n_theta);
      try {
        const Jet jt = have_hint ? maps.jet_near(z, hint) : maps.jet(z);
        hint = jt.sqrtW;
        have_hint = true;
        out[i * n_theta + j] = psi_from_jet(jt, m);
      } catch (const Error&) {
        have_hint = false;
        out[i * n_theta + j] = {nan, nan, nan, false};
      }
    }
  };
  if (exec == Exec::kParallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < rows; ++i) ring(i);
  } else {
    for (long i = 0; i < rows; ++i) ring(i);
  }
  return out;
}

double max_abs_curvature(const AnnulusMaps& maps, const std::vector<Complex>& pts, Exec exec) {
  const long n = static_cast<long>(pts.size());
  std::vector<double> k(pts.size());
  auto one = [&](long i) {
    try {
      k[i] = std::abs(numerical_gauss_curvature(maps, pts[i]));
    } catch (const Error&) {
      k[i] = std::numeric_limits<double>::quiet_NaN();
    }
  };
  if (exec == Exec::kParallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < n; ++i) one(i);
  } else {
    for (long i = 0; i < n; ++i) one(i);
  }
  double mx = 0.0;
  for (double v : k) mx = std::max(mx, std::isnan(v) ? std::numeric_limits<double>::infinity() : v);
  return mx;
}

}  // namespace flatfront
