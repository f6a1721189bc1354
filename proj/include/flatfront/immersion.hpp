#pragma once

#include <functional>
#include <optional>

#include "flatfront/annulus_maps.hpp"

namespace flatfront {

/// Point of the upper half-space model, metric (dx1^2 + dx2^2 + dx3^2)/x3^2.
/// x3 = 0 only for ideal points (the end), which carry the tag.
struct HalfSpacePoint {
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;
  bool ideal = false;
};

/// Point of the Klein ball model; unit norm only for ideal points.
struct KleinPoint {
  double k1 = 0.0;
  double k2 = 0.0;
  double k3 = 0.0;
  bool ideal = false;
};

/// First fundamental form E dx^2 + 2 F_m dx dy + G dy^2 in the real
/// coordinates of the parameter, and the conformal factor of the second form,
/// dsigma^2 = lambda2 |dz|^2.
struct MetricSample {
  double E = 0.0;
  double F_m = 0.0;
  double G = 0.0;
  double lambda2 = 0.0;

  double det() const { return E * G - F_m * F_m; }
  /// Smallest eigenvalue of ds^2 - dsigma^2.
  double min_eig_difference() const;
};

/// One-singularity surface of revolution. b_rot is the constant value of
/// R = g F; the Gauss-map disc radius is s_rot. When b_rot < 1/2 the same
/// surface also comes from the data g = z, g* = (a+1)/(a-1) z on the disc
/// |z| < r_disc with a = a_sec = 1 - 2 b_rot.
struct RotationalModuli {
  double b_rot = 0.0;
  double a_rot = 0.0;
  double s_rot = 0.0;
  std::optional<double> a_sec;
  std::optional<double> r_disc;

  static RotationalModuli from_b(double b);

  /// Dilation factor taking the (g = z) parametrization onto the normalized
  /// closed form: closed(lambda z) = lambda * disc_route(z).
  double disc_to_closed_scale() const;
};

// ---- canonical surface -------------------------------------------------

/// psi from a jet: x3 = e^{2u}/(1 + e^{4u}|F|^2), x1 + i x2 = g - x3 e^{2u} conj(F).
HalfSpacePoint psi_from_jet(const Jet& j, double m);

/// psi at z. At z0 returns the ideal end (g(z0), 0).
HalfSpacePoint eval_psi(const AnnulusMaps& maps, Complex z);

/// Ideal end point (g(z0), 0).
HalfSpacePoint end_point(const AnnulusMaps& maps);

/// psi from the two Gauss maps and |xi|:
///   x1 + i x2 = g - |xi|^4 (g - g*) / (|xi|^4 + |g - g*|^2),
///   x3 = |xi|^2 |g - g*|^2 / (|xi|^4 + |g - g*|^2).
HalfSpacePoint eval_psi_from_gauss_maps(Complex g, Complex gstar, double xi_abs);

/// Same point as eval_psi, assembled through eval_psi_from_gauss_maps with
/// g* = g - 1/F and |xi| = e^u.
HalfSpacePoint eval_psi_gauss_route(const AnnulusMaps& maps, Complex z);

/// Radial limit of psi onto a boundary circle (outer: |z| = 1, else |z| = r)
/// by two-level Richardson extrapolation from offsets d, 2d, 4d.
HalfSpacePoint boundary_limit(const AnnulusMaps& maps, double angle, bool outer, double d = 1e-4);

/// Limit of psi at the end along direction `angle`, Richardson from d, 2d, 4d.
HalfSpacePoint end_limit(const AnnulusMaps& maps, double angle, double d = 1e-4);

MetricSample first_form(const AnnulusMaps& maps, Complex z);
MetricSample first_form_from_jet(const Jet& j);

/// p = (H z^m)^2 (F'/g' + F^2), H = Q1/(1-R); principal branch of z^m.
Complex eval_p(const AnnulusMaps& maps, Complex z);
Complex p_from_jet(const Jet& j, double m);

// ---- rotational surface ------------------------------------------------

/// Closed form, 0 < |g| <= s_rot; g = 0 is the ideal end.
HalfSpacePoint eval_psi_rotational(const RotationalModuli& rot, Complex g);

/// The (g = z, g* = (a+1)/(a-1) z) route at z with 0 < |z| <= r_disc,
/// through eval_psi_from_gauss_maps and |xi| = |z|^{(1-a)/2}.
HalfSpacePoint eval_psi_rotational_disc(const RotationalModuli& rot, Complex z);

/// First form of the closed-form surface in the coordinate g.
MetricSample rotational_first_form(const RotationalModuli& rot, Complex g);

// ---- models and curvature ----------------------------------------------

KleinPoint klein_map(const HalfSpacePoint& p);

/// Metric field (x, y) -> (E, F_m, G).
using MetricField = std::function<MetricSample(double, double)>;

/// First form with the partial derivatives the Brioschi formula needs.
struct MetricJet {
  double E = 0, F = 0, G = 0;
  double E_x = 0, E_y = 0, F_x = 0, F_y = 0, G_x = 0, G_y = 0;
  double E_yy = 0, F_xy = 0, G_xx = 0;
};

double brioschi_from_jet(const MetricJet& m);

/// Gaussian curvature by the Brioschi formula with centered differences of
/// step h.
double brioschi_curvature(const MetricField& metric, double x, double y, double h);

/// Holomorphic coefficients of a flat metric ds^2 = |a dz - conj(b dz)|^2.
struct Coframe {
  Complex a, b;
};

/// Coframe at the k-th node of a circle, nodes visited in order.
using CoframeField = std::function<Coframe(Complex, int)>;

/// Metric jet at z whose derivatives come from Cauchy integrals of a and b
/// over the circle of the given radius. Roundoff grows like eps/radius^2
/// rather than eps/h^2, which matters where EG - F^2 is small against EG.
MetricJet metric_jet_from_coframe(const CoframeField& coframe, Complex z, double radius);

/// Distance from z to the boundary circles and to z0.
double curvature_clearance(const AnnulusMaps& maps, Complex z);

/// Brioschi curvature of the canonical surface at z, derivatives taken on a
/// circle of the given radius. The radius may be at most half the clearance.
double numerical_gauss_curvature(const AnnulusMaps& maps, Complex z, double radius);
/// Same with radius min(0.05, 0.4 clearance).
double numerical_gauss_curvature(const AnnulusMaps& maps, Complex z);

/// Curvature of the rotational surface at parameter g, same scheme; the circle
/// must stay inside 0 < |g| < s_rot with the same margin.
double rotational_gauss_curvature(const RotationalModuli& rot, Complex g, double radius);
double rotational_gauss_curvature(const RotationalModuli& rot, Complex g);

}  // namespace flatfront
