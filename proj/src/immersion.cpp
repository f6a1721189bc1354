#include "flatfront/immersion.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

namespace flatfront {

namespace {

MetricSample metric_from(Complex A, Complex B, double exp_m4u) {
  // ds^2 = e^{-4u} |A dz - conj(B dz)|^2 with dz = dx + i dy
  const Complex alpha = A - std::conj(B);
  const Complex beta = Complex(0.0, 1.0) * (A + std::conj(B));
  MetricSample s;
  s.E = exp_m4u * std::norm(alpha);
  s.F_m = exp_m4u * (alpha * std::conj(beta)).real();
  s.G = exp_m4u * std::norm(beta);
  s.lambda2 = exp_m4u * (std::norm(B) - std::norm(A));
  return s;
}

// Limit at offset 0 from samples at d, 2d, 4d; cancels the d and d^2 terms.
HalfSpacePoint richardson_limit(const HalfSpacePoint& a, const HalfSpacePoint& b, const HalfSpacePoint& c) {
  auto ext = [](double x, double y, double z) { return (8.0 * x - 6.0 * y + z) / 3.0; };
  return {ext(a.x1, b.x1, c.x1), ext(a.x2, b.x2, c.x2), ext(a.x3, b.x3, c.x3), false};
}

}  // namespace

double MetricSample::min_eig_difference() const {
  const double a = E - lambda2;
  const double c = G - lambda2;
  const double half = 0.5 * (a - c);
  return 0.5 * (a + c) - std::sqrt(half * half + F_m * F_m);
}

RotationalModuli RotationalModuli::from_b(double b) {
  if (!(b > 0.0 && b < 1.0)) {
    std::ostringstream os;
    os << "rotational: b must lie in (0, 1), got " << b;
    throw DomainError(os.str());
  }
  RotationalModuli rot;
  rot.b_rot = b;
  rot.a_rot = std::pow(1.0 - b, b - 1.0) * std::pow(b, -b);
  rot.s_rot = std::sqrt(b / (1.0 - b));
  const double a = 1.0 - 2.0 * b;
  if (a > 0.0 && a < 1.0) {
    rot.a_sec = a;
    rot.r_disc = std::pow((1.0 - a * a) / 4.0, 1.0 / (2.0 * a));
  }
  return rot;
}

double RotationalModuli::disc_to_closed_scale() const {
  if (!a_sec) throw DomainError("rotational: disc parametrization needs b < 1/2");
  return std::pow(a_rot, 1.0 / (1.0 - 2.0 * b_rot));
}

HalfSpacePoint psi_from_jet(const Jet& j, double m) {
  // e^{2u} = |H| |z|^m
  const double e2u = std::abs(j.H) * std::pow(std::abs(j.z), m);
  const double x3 = e2u / (1.0 + e2u * e2u * std::norm(j.F));
  const Complex w = j.g - x3 * e2u * std::conj(j.F);
  return {w.real(), w.imag(), x3, false};
}

HalfSpacePoint end_point(const AnnulusMaps& maps) {
  const double z0 = maps.moduli().z0;
  // W is regular at z0; its value is the mean over a small circle.
  constexpr int n = 64;
  const double rad = 1e-3 * std::min(1.0, std::abs(z0) - maps.moduli().r);
  Complex sum(0.0, 0.0);
  Complex hint;
  for (int k = 0; k < n; ++k) {
    const Complex zeta = z0 + std::polar(rad, 2.0 * std::numbers::pi * (k + 0.5) / n);
    const Jet jk = (k == 0) ? maps.jet(zeta) : maps.jet_near(zeta, hint);
    hint = jk.sqrtW;
    sum += jk.g;
  }
  const Complex g0 = sum / static_cast<double>(n);
  return {g0.real(), g0.imag(), 0.0, true};
}

HalfSpacePoint eval_psi(const AnnulusMaps& maps, Complex z) {
  if (std::abs(z - maps.moduli().z0) < 1e-13) return end_point(maps);
  return psi_from_jet(maps.jet(z), maps.moduli().m);
}

HalfSpacePoint eval_psi_from_gauss_maps(Complex g, Complex gstar, double xi_abs) {
  const Complex D = g - gstar;
  const double d2 = std::norm(D);
  if (d2 == 0.0) throw DegenerateError("psi: g = g*");
  if (xi_abs == 0.0) return {g.real(), g.imag(), 0.0, true};
  const double xi2 = xi_abs * xi_abs;
  const double xi4 = xi2 * xi2;
  const double den = xi4 + d2;
  const Complex w = g - xi4 * D / den;
  return {w.real(), w.imag(), xi2 * d2 / den, false};
}

HalfSpacePoint eval_psi_gauss_route(const AnnulusMaps& maps, Complex z) {
  const Jet j = maps.jet(z);
  if (std::abs(j.R) == 0.0) throw DegenerateError("psi: g* at infinity");
  const Complex gstar = j.g * (j.R - 1.0) / j.R;
  const double xi_abs = std::exp(j.u);
  return eval_psi_from_gauss_maps(j.g, gstar, xi_abs);
}

HalfSpacePoint boundary_limit(const AnnulusMaps& maps, double angle, bool outer, double d) {
  const double r = maps.moduli().r;
  auto rho = [&](double k) { return outer ? 1.0 - k * d : r + k * d; };
  const Jet j1 = maps.jet(std::polar(rho(1), angle));
  const Jet j2 = maps.jet_near(std::polar(rho(2), angle), j1.sqrtW);
  const Jet j4 = maps.jet_near(std::polar(rho(4), angle), j2.sqrtW);
  const double m = maps.moduli().m;
  return richardson_limit(psi_from_jet(j1, m), psi_from_jet(j2, m), psi_from_jet(j4, m));
}

HalfSpacePoint end_limit(const AnnulusMaps& maps, double angle, double d) {
  const double z0 = maps.moduli().z0;
  const double m = maps.moduli().m;
  const Jet j1 = maps.jet(z0 + std::polar(d, angle));
  const Jet j2 = maps.jet_near(z0 + std::polar(2.0 * d, angle), j1.sqrtW);
  const Jet j4 = maps.jet_near(z0 + std::polar(4.0 * d, angle), j2.sqrtW);
  return richardson_limit(psi_from_jet(j1, m), psi_from_jet(j2, m), psi_from_jet(j4, m));
}

MetricSample first_form_from_jet(const Jet& j) {
  // A = e^{4u} (F' + F^2 g'), B = g'
  const double e4u = std::exp(4.0 * j.u);
  const Complex A = e4u * (j.dF + j.F * j.F * j.dg);
  return metric_from(A, j.dg, 1.0 / e4u);
}

MetricSample first_form(const AnnulusMaps& maps, Complex z) {
  if (std::abs(z - maps.moduli().z0) < 1e-13) throw DomainError("first_form: z0 is the end");
  const MetricSample s = first_form_from_jet(maps.jet_unsigned(z));
  // EG - F^2 = lambda2^2 exactly; the right side keeps its digits when the
  // form is nearly degenerate.
  if (!(s.lambda2 != 0.0 && s.E > 0.0)) {
    std::ostringstream os;
    os << "first form degenerates at z = " << z << " (lambda2 = " << s.lambda2 << ")";
    throw DegenerateError(os.str());
  }
  return s;
}

Complex p_from_jet(const Jet& j, double m) {
  if (std::abs(j.dg) == 0.0) throw DegenerateError("p: g' = 0");
  const Complex hz = j.H * std::exp(m * std::log(j.z));
  return hz * hz * (j.dF / j.dg + j.F * j.F);
}

Complex eval_p(const AnnulusMaps& maps, Complex z) {
  return p_from_jet(maps.jet_unsigned(z), maps.moduli().m);
}

HalfSpacePoint eval_psi_rotational(const RotationalModuli& rot, Complex g) {
  const double rho = std::abs(g);
  if (rho == 0.0) return {0.0, 0.0, 0.0, true};
  if (rho > rot.s_rot * (1.0 + 1e-12)) throw DomainError("rotational: |g| beyond the singular circle");
  const double a = rot.a_rot, b = rot.b_rot;
  const double t = std::pow(rho, 4.0 * b - 2.0);
  const double den = 1.0 + a * a * b * b * t;
  const Complex w = g * (1.0 - a * a * (b - b * b) * t) / den;
  return {w.real(), w.imag(), a * std::pow(rho, 2.0 * b) / den, false};
}

HalfSpacePoint eval_psi_rotational_disc(const RotationalModuli& rot, Complex z) {
  if (!rot.a_sec) throw DomainError("rotational: disc parametrization needs b < 1/2");
  const double a = *rot.a_sec;
  const double rho = std::abs(z);
  if (rho > *rot.r_disc * (1.0 + 1e-12)) throw DomainError("rotational: |z| beyond r_disc");
  const Complex gstar = (a + 1.0) / (a - 1.0) * z;
  return eval_psi_from_gauss_maps(z, gstar, std::pow(rho, 0.5 * (1.0 - a)));
}

MetricSample rotational_first_form(const RotationalModuli& rot, Complex g) {
  // e^{2u} = a |g|^{2b}, F = b/g, g' = 1
  const double a = rot.a_rot, b = rot.b_rot;
  const double rho = std::abs(g);
  if (rho == 0.0) throw DomainError("rotational first form: g = 0 is the end");
  const double e2u = a * std::pow(rho, 2.0 * b);
  const double e4u = e2u * e2u;
  const Complex F = b / g;
  const Complex dF = -b / (g * g);
  const Complex A = e4u * (dF + F * F);
  return metric_from(A, Complex(1.0, 0.0), 1.0 / e4u);
}

KleinPoint klein_map(const HalfSpacePoint& p) {
  const double n2 = p.x1 * p.x1 + p.x2 * p.x2 + p.x3 * p.x3;
  const double den = n2 + 1.0;
  return {2.0 * p.x1 / den, 2.0 * p.x2 / den, (n2 - 1.0) / den, p.ideal};
}

double brioschi_from_jet(const MetricJet& m) {
  auto det3 = [](double a11, double a12, double a13, double a21, double a22, double a23, double a31, double a32,
                 double a33) {
    return a11 * (a22 * a33 - a23 * a32) - a12 * (a21 * a33 - a23 * a31) + a13 * (a21 * a32 - a22 * a31);
  };
  const double d1 = det3(-0.5 * m.E_yy + m.F_xy - 0.5 * m.G_xx, 0.5 * m.E_x, m.F_x - 0.5 * m.E_y,  //
                         m.F_y - 0.5 * m.G_x, m.E, m.F,                                            //
                         0.5 * m.G_y, m.F, m.G);
  const double d2 = det3(0.0, 0.5 * m.E_y, 0.5 * m.G_x,  //
                         0.5 * m.E_y, m.E, m.F,          //
                         0.5 * m.G_x, m.F, m.G);
  const double W = m.E * m.G - m.F * m.F;
  return (d1 - d2) / (W * W);
}

double brioschi_curvature(const MetricField& metric, double x, double y, double h) {
  const MetricSample c = metric(x, y);
  const MetricSample xp = metric(x + h, y), xm = metric(x - h, y);
  const MetricSample yp = metric(x, y + h), ym = metric(x, y - h);
  const MetricSample pp = metric(x + h, y + h), pm = metric(x + h, y - h);
  const MetricSample mp = metric(x - h, y + h), mm = metric(x - h, y - h);

  MetricJet m;
  m.E = c.E;
  m.F = c.F_m;
  m.G = c.G;
  m.E_x = (xp.E - xm.E) / (2 * h);
  m.E_y = (yp.E - ym.E) / (2 * h);
  m.F_x = (xp.F_m - xm.F_m) / (2 * h);
  m.F_y = (yp.F_m - ym.F_m) / (2 * h);
  m.G_x = (xp.G - xm.G) / (2 * h);
  m.G_y = (yp.G - ym.G) / (2 * h);
  m.E_yy = (yp.E - 2 * c.E + ym.E) / (h * h);
  m.G_xx = (xp.G - 2 * c.G + xm.G) / (h * h);
  m.F_xy = (pp.F_m - pm.F_m - mp.F_m + mm.F_m) / (4 * h * h);
  return brioschi_from_jet(m);
}

MetricJet metric_jet_from_coframe(const CoframeField& coframe, Complex z, double radius) {
  // Taylor coefficients of a and b from the trapezoidal Cauchy integral
  constexpr int n = 64;
  std::array<Complex, 3> ca{}, cb{};
  for (int k = 0; k < n; ++k) {
    const double t = 2.0 * std::numbers::pi * (k + 0.5) / n;
    const Coframe c = coframe(z + std::polar(radius, t), k);
    for (int d = 0; d < 3; ++d) {
      const Complex w = std::polar(1.0, -d * t);
      ca[d] += c.a * w;
      cb[d] += c.b * w;
    }
  }
  const Complex a = ca[0] / double(n), a1 = ca[1] / (n * radius), a2 = 2.0 * ca[2] / (n * radius * radius);
  const Complex b = cb[0] / double(n), b1 = cb[1] / (n * radius), b2 = 2.0 * cb[2] / (n * radius * radius);

  // alpha = a - conj(b), beta = i (a + conj(b)); ds^2 = |alpha dx + beta dy|^2
  const Complex I(0.0, 1.0);
  const Complex al = a - std::conj(b), be = I * (a + std::conj(b));
  const Complex al_x = a1 - std::conj(b1), al_y = I * (a1 + std::conj(b1));
  const Complex be_x = I * (a1 + std::conj(b1)), be_y = -(a1 - std::conj(b1));
  const Complex al_yy = -(a2 - std::conj(b2)), al_xy = I * (a2 + std::conj(b2));
  const Complex be_xx = I * (a2 + std::conj(b2)), be_xy = -(a2 - std::conj(b2));
  auto re = [](Complex u, Complex v) { return (u * std::conj(v)).real(); };

  MetricJet m;
  m.E = std::norm(al);
  m.F = re(al, be);
  m.G = std::norm(be);
  m.E_x = 2 * re(al_x, al);
  m.E_y = 2 * re(al_y, al);
  m.F_x = re(al_x, be) + re(al, be_x);
  m.F_y = re(al_y, be) + re(al, be_y);
  m.G_x = 2 * re(be_x, be);
  m.G_y = 2 * re(be_y, be);
  m.E_yy = 2 * re(al_yy, al) + 2 * std::norm(al_y);
  m.G_xx = 2 * re(be_xx, be) + 2 * std::norm(be_x);
  m.F_xy = re(al_xy, be) + re(al_x, be_y) + re(al_y, be_x) + re(al, be_xy);
  return m;
}

double curvature_clearance(const AnnulusMaps& maps, Complex z) {
  const CanonicalModuli& mod = maps.moduli();
  const double rho = std::abs(z);
  return std::min({rho - mod.r, 1.0 - rho, std::abs(z - mod.z0)});
}

double numerical_gauss_curvature(const AnnulusMaps& maps, Complex z, double radius) {
  if (!(radius > 0.0) || 2 * radius > curvature_clearance(maps, z)) {
    std::ostringstream os;
    os << "curvature circle at " << z << " with radius " << radius << " leaves the domain";
    throw DomainError(os.str());
  }
  // a = Phi (F' + F^2 g'), b = g'/Phi with Phi = H z^m, so that e^{2u} = |Phi|
  // and ds^2 = |a dz - conj(b dz)|^2. z^m is continued from z through the
  // principal branch of (zeta/z)^m.
  const double m = maps.moduli().m;
  const Complex zm = std::exp(m * std::log(z));
  Complex hint;
  const CoframeField coframe = [&](Complex zeta, int k) {
    const Jet j = (k == 0) ? maps.jet(zeta) : maps.jet_near(zeta, hint);
    hint = j.sqrtW;
    const Complex phi = j.H * zm * std::exp(m * std::log(zeta / z));
    return Coframe{phi * (j.dF + j.F * j.F * j.dg), j.dg / phi};
  };
  return brioschi_from_jet(metric_jet_from_coframe(coframe, z, radius));
}

double numerical_gauss_curvature(const AnnulusMaps& maps, Complex z) {
  return numerical_gauss_curvature(maps, z, std::min(0.05, 0.4 * curvature_clearance(maps, z)));
}

double rotational_gauss_curvature(const RotationalModuli& rot, Complex g, double radius) {
  const double rho = std::abs(g);
  if (!(radius > 0.0) || rho - 2 * radius <= 0.0 || rho + 2 * radius >= rot.s_rot) {
    throw DomainError("rotational curvature circle leaves the punctured disc");
  }
  // Phi = a g^{2b}, F = b/g, g' = 1
  const double a = rot.a_rot, b = rot.b_rot;
  const Complex g2b = std::exp(2 * b * std::log(g));
  const CoframeField coframe = [&](Complex zeta, int) {
    const Complex phi = a * g2b * std::exp(2 * b * std::log(zeta / g));
    return Coframe{phi * (b * b - b) / (zeta * zeta), 1.0 / phi};
  };
  return brioschi_from_jet(metric_jet_from_coframe(coframe, g, radius));
}

double rotational_gauss_curvature(const RotationalModuli& rot, Complex g) {
  const double rho = std::abs(g);
  return rotational_gauss_curvature(rot, g, std::min(0.05, 0.4 * std::min(rho, rot.s_rot - rho)));
}

}  // namespace flatfront
