#pragma once

#include <array>
#include <utility>

#include "flatfront/error.hpp"
#include "flatfront/theta.hpp"

namespace flatfront {

/// Complete description of a two-singularity surface on the annulus
/// r < |z| < 1 with end at z0. Field names match the JSON schema.
struct CanonicalModuli {
  double r = 0.0;
  double s = 0.0;
  double m = 0.0;
  double z0 = 0.0;
  double z1 = 0.0;
  double z2 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double a_R = 0.0;
  double b_R = 0.0;
  double c_height = 0.0;
};

/// q_j(z) = -theta'(zj/z)/(z theta(zj/z)) - z theta'(zj z)/theta(zj z).
/// Simple pole of residue 1 at zj, real on both boundary circles.
Complex eval_q(const ThetaContext& ctx, double zj, Complex z);
Complex eval_q_deriv(const ThetaContext& ctx, double zj, Complex z);

/// Q_j(z) = theta(zj/z) / theta(zj z).
Complex eval_Q(const ThetaContext& ctx, double zj, Complex z);

/// (a_R, b_R) with R = a_R q0 + b_R, R(z1) = 1, R(z2) = 0.
std::pair<double, double> fit_R_coefficients(const ThetaContext& ctx, double z0, double z1, double z2);

Complex eval_R(const CanonicalModuli& mod, const ThetaContext& ctx, Complex z);
Complex eval_R_deriv(const CanonicalModuli& mod, const ThetaContext& ctx, Complex z);

/// Value of g* = g - 1/F on the Riemann sphere.
struct SpherePoint {
  Complex value;
  bool at_infinity = false;
};

/// Every holomorphic quantity of the construction at one point.
///
///   W = R/(1-R) Q1/Q2,   g = sqrt(W)/z,   H = Q1/(1-R),
///   u = 1/2 log|H z^m|,  F = R/g.
///
/// The square-root branch is the one that is positive on the segment (r, 1).
struct Jet {
  Complex z;
  Complex R, dR;
  Complex W, dlogW;
  Complex H, dlogH;
  Complex sqrtW;
  Complex g, dg;
  Complex F, dF;
  double u = 0.0;
};

/// The holomorphic data of a canonical example. Construction checks that W
/// has winding number zero around the core circle |z| = sqrt(r); otherwise
/// g is not single valued and RepresentationError is thrown.
///
/// All evaluators reject |z| outside [r - 1e-12, 1 + 1e-12]. Removable
/// singularities of W and H at z1, z2 (and of W at z0) are evaluated through a
/// Cauchy integral over a small circle around the point.
class AnnulusMaps {
public:
  static constexpr double kDomainSlack = 1e-12;

  AnnulusMaps(const CanonicalModuli& mod, const ThetaContext& ctx);

  const CanonicalModuli& moduli() const { return mod_; }
  const ThetaContext& theta() const { return ctx_; }
  int winding() const { return winding_; }

  Complex q(double zj, Complex z) const;
  Complex R(Complex z) const;
  Complex R_deriv(Complex z) const;
  Complex Q(double zj, Complex z) const;
  Complex W(Complex z) const;

  /// Branch-tracked g, continued from the positive real axis along the arc
  /// |zeta| = |z|.
  Complex g(Complex z) const;
  Complex g_deriv(Complex z) const;
  double u(Complex z) const;
  Complex F(Complex z) const;
  Complex F_deriv(Complex z) const;
  SpherePoint gstar(Complex z) const;

  /// Full jet with branch continuation.
  Jet jet(Complex z) const;

  /// Full jet choosing the square-root sign nearest `sqrtW_hint` (a value of
  /// sqrt(W) at a nearby point of the same sheet). Falls back to arc
  /// continuation when the hint does not decide the sign.
  Jet jet_near(Complex z, Complex sqrtW_hint) const;

  /// Jet without choosing a sign: sqrtW is the principal root. Quantities that
  /// are even in g (u, |F|, p, the fundamental forms) are unaffected.
  Jet jet_unsigned(Complex z) const;

  /// Throws DomainError when z is outside the closed annulus.
  void check_domain(Complex z) const;

private:
  struct Base {
    Complex R, dR, W, dlogW, H, dlogH;
  };
  Base base_direct(Complex z) const;
  Base base(Complex z, bool w_only = false) const;
  Complex sqrtW_continued(Complex z, const Complex& W_at_z) const;
  Jet finish(Complex z, const Base& b, Complex sqrtW) const;

  CanonicalModuli mod_;
  ThetaContext ctx_;
  std::array<double, 3> special_{};  // z0, z1, z2
  std::array<double, 3> radius_{};   // Cauchy circle radius per special point
  int winding_ = 0;
};

/// g - 1/F.
SpherePoint eval_gstar(const AnnulusMaps& maps, Complex z);

}  // namespace flatfront
