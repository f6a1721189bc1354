#include "flatfront/annulus_maps.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

namespace flatfront {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kCauchyNodes = 64;
constexpr double kMaxCauchyRadius = 2.5e-3;
constexpr double kZoneFraction = 0.4;  // use the Cauchy form inside 0.4 * radius
constexpr int kAuditSteps = 256;

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

Complex eval_q(const ThetaContext& ctx, double zj, Complex z) {
  if (std::abs(z - zj) < 1e-13 * std::max(1.0, std::abs(zj))) {
    std::ostringstream os;
    os << "q_j: simple pole at z = " << zj;
    throw PoleError(os.str(), Complex(zj, 0.0));
  }
  return -(ctx.h(zj / z) + ctx.h(zj * z)) / zj;
}

Complex eval_q_deriv(const ThetaContext& ctx, double zj, Complex z) {
  if (std::abs(z - zj) < 1e-13 * std::max(1.0, std::abs(zj))) {
    throw PoleError("q_j': pole", Complex(zj, 0.0));
  }
  return ctx.h_deriv(zj / z) / (z * z) - ctx.h_deriv(zj * z);
}

Complex eval_Q(const ThetaContext& ctx, double zj, Complex z) {
  const Complex num = ctx.theta(zj / z);
  const Complex den = ctx.theta(zj * z);
  if (std::abs(den) < 1e-13 * (1.0 + std::abs(num))) {
    throw PoleError("Q_j: denominator theta(zj z) vanishes", z);
  }
  return num / den;
}

std::pair<double, double> fit_R_coefficients(const ThetaContext& ctx, double z0, double z1, double z2) {
  const double r = ctx.r();
  for (double zj : {z0, z1, z2}) {
    if (!(zj > -1.0 && zj < -r)) {
      std::ostringstream os;
      os << "fit_R: marker " << zj << " outside (-1, -r)";
      throw DomainError(os.str());
    }
  }
  if (z0 == z1 || z0 == z2 || z1 == z2) throw DegenerateError("fit_R: markers must be distinct");
  const double q1 = eval_q(ctx, z0, z1).real();
  const double q2 = eval_q(ctx, z0, z2).real();
  const double diff = q1 - q2;
  if (!(std::abs(diff) > 1e-14 * (std::abs(q1) + std::abs(q2)))) {
    throw DegenerateError("fit_R: q0(z1) = q0(z2)");
  }
  const double a = 1.0 / diff;
  return {a, -a * q2};
}

Complex eval_R(const CanonicalModuli& mod, const ThetaContext& ctx, Complex z) {
  return mod.a_R * eval_q(ctx, mod.z0, z) + mod.b_R;
}

Complex eval_R_deriv(const CanonicalModuli& mod, const ThetaContext& ctx, Complex z) {
  return mod.a_R * eval_q_deriv(ctx, mod.z0, z);
}

AnnulusMaps::AnnulusMaps(const CanonicalModuli& mod, const ThetaContext& ctx) : mod_(mod), ctx_(ctx) {
  if (std::abs(ctx.r() - mod.r) > 1e-15) throw DomainError("AnnulusMaps: theta modulus differs from moduli r");
  const double r = mod.r;
  special_ = {mod.z0, mod.z1, mod.z2};
  for (double zj : special_) {
    if (!(zj > -1.0 && zj < -r)) throw DomainError("AnnulusMaps: markers must lie in (-1, -r)");
  }

  // Points where the raw formulas blow up: the markers and their reflections
  // across both boundary circles.
  std::vector<double> hazards;
  for (double zj : special_) {
    hazards.push_back(zj);
    hazards.push_back(1.0 / zj);
    hazards.push_back(r * r / zj);
  }
  for (std::size_t i = 0; i < special_.size(); ++i) {
    double dmin = std::abs(special_[i]);
    for (double hz : hazards) {
      if (hz == special_[i]) continue;
      dmin = std::min(dmin, std::abs(hz - special_[i]));
    }
    radius_[i] = std::min(kMaxCauchyRadius, 0.4 * dmin);
  }

  // Winding audit of W around |z| = sqrt(r).
  const double rho = std::sqrt(r);
  Complex prev = W(Complex(rho, 0.0));
  double total = 0.0;
  for (int k = 1; k <= kAuditSteps; ++k) {
    const double t = 2.0 * kPi * k / kAuditSteps;
    const Complex cur = W(std::polar(rho, t));
    total += std::arg(cur / prev);
    prev = cur;
  }
  winding_ = static_cast<int>(std::lround(total / (2.0 * kPi)));
  if (winding_ != 0) {
    std::ostringstream os;
    os << "g is not single valued: W winds " << winding_ << " times around |z| = sqrt(r)";
    throw RepresentationError(os.str());
  }
}

void AnnulusMaps::check_domain(Complex z) const {
  if (!finite(z)) throw DomainError("annulus: non-finite point");
  const double a = std::abs(z);
  if (a < mod_.r - kDomainSlack || a > 1.0 + kDomainSlack) {
    std::ostringstream os;
    os << "annulus: |z| = " << a << " outside [" << mod_.r << ", 1]";
    throw DomainError(os.str());
  }
}

AnnulusMaps::Base AnnulusMaps::base_direct(Complex z) const {
  const double z0 = mod_.z0, z1 = mod_.z1, z2 = mod_.z2;
  const Complex q0 = eval_q(ctx_, z0, z);
  const Complex dq0 = eval_q_deriv(ctx_, z0, z);
  const Complex q1 = eval_q(ctx_, z1, z);
  const Complex q2 = eval_q(ctx_, z2, z);
  Base b;
  b.R = mod_.a_R * q0 + mod_.b_R;
  b.dR = mod_.a_R * dq0;
  const Complex Q1 = eval_Q(ctx_, z1, z);
  const Complex Q2 = eval_Q(ctx_, z2, z);
  const Complex one_minus = 1.0 - b.R;
  b.W = b.R / one_minus * Q1 / Q2;
  b.dlogW = b.dR / (b.R * one_minus) + (z1 * q1 - z2 * q2) / z;
  b.H = Q1 / one_minus;
  b.dlogH = z1 * q1 / z + b.dR / one_minus;
  return b;
}

AnnulusMaps::Base AnnulusMaps::base(Complex z, bool w_only) const {
  for (std::size_t i = 0; i < 3; ++i) {
    const double p = special_[i];
    const double rad = radius_[i];
    if (std::abs(z - p) >= kZoneFraction * rad) continue;

    // f(z) = (1/N) sum f(zeta_k) (zeta_k - p) / (zeta_k - z)
    Base acc{};
    for (int k = 0; k < kCauchyNodes; ++k) {
      const Complex off = std::polar(rad, 2.0 * kPi * (k + 0.5) / kCauchyNodes);
      const Complex zeta = p + off;
      const Complex wgt = off / (zeta - z) / static_cast<double>(kCauchyNodes);
      const Base b = base_direct(zeta);
      acc.W += wgt * b.W;
      acc.dlogW += wgt * b.dlogW;
      if (i != 0) {
        acc.R += wgt * b.R;
        acc.dR += wgt * b.dR;
        acc.H += wgt * b.H;
        acc.dlogH += wgt * b.dlogH;
      }
    }
    if (i == 0) {
      if (w_only) return acc;
      // R, H have a genuine pole/zero at z0: keep them direct.
      Base b = base_direct(z);
      b.W = acc.W;
      b.dlogW = acc.dlogW;
      return b;
    }
    return acc;
  }
  return base_direct(z);
}

Complex AnnulusMaps::q(double zj, Complex z) const {
  check_domain(z);
  return eval_q(ctx_, zj, z);
}

Complex AnnulusMaps::R(Complex z) const {
  check_domain(z);
  return eval_R(mod_, ctx_, z);
}

Complex AnnulusMaps::R_deriv(Complex z) const {
  check_domain(z);
  return eval_R_deriv(mod_, ctx_, z);
}

Complex AnnulusMaps::Q(double zj, Complex z) const {
  check_domain(z);
  return eval_Q(ctx_, zj, z);
}

Complex AnnulusMaps::W(Complex z) const {
  check_domain(z);
  return base(z, true).W;
}

Complex AnnulusMaps::sqrtW_continued(Complex z, const Complex& W_at_z) const {
  const double rho = std::abs(z);
  const double phi = std::arg(z);
  Complex prev = std::sqrt(base(Complex(rho, 0.0), true).W);
  if (phi != 0.0) {
    for (int n = std::max(1, static_cast<int>(std::ceil(std::abs(phi) / (kPi / 32.0))));; n *= 2) {
      if (n > 8192) throw RepresentationError("g: square-root continuation did not settle");
      Complex s = prev;
      bool ok = true;
      for (int k = 1; k < n; ++k) {
        Complex c = std::sqrt(base(std::polar(rho, phi * k / n), true).W);
        const double dm = std::abs(c - s), dp = std::abs(c + s);
        if (std::min(dm, dp) > 0.5 * std::abs(s)) {
          ok = false;
          break;
        }
        s = dm <= dp ? c : -c;
      }
      if (ok) {
        prev = s;
        break;
      }
    }
  }
  Complex c = std::sqrt(W_at_z);
  return std::abs(c - prev) <= std::abs(c + prev) ? c : -c;
}

Jet AnnulusMaps::finish(Complex z, const Base& b, Complex sqrtW) const {
  Jet j;
  j.z = z;
  j.R = b.R;
  j.dR = b.dR;
  j.W = b.W;
  j.dlogW = b.dlogW;
  j.H = b.H;
  j.dlogH = b.dlogH;
  j.sqrtW = sqrtW;
  j.g = sqrtW / z;
  const Complex dlogg = 0.5 * b.dlogW - 1.0 / z;
  j.dg = j.g * dlogg;
  j.F = b.R / j.g;
  j.dF = (b.dR - b.R * dlogg) / j.g;
  j.u = 0.5 * std::log(std::abs(b.H)) + 0.5 * mod_.m * std::log(std::abs(z));
  return j;
}

Jet AnnulusMaps::jet(Complex z) const {
  check_domain(z);
  const Base b = base(z);
  return finish(z, b, sqrtW_continued(z, b.W));
}

Jet AnnulusMaps::jet_near(Complex z, Complex sqrtW_hint) const {
  check_domain(z);
  const Base b = base(z);
  Complex c = std::sqrt(b.W);
  const double dm = std::abs(c - sqrtW_hint), dp = std::abs(c + sqrtW_hint);
  if (std::min(dm, dp) > 0.5 * std::abs(sqrtW_hint)) return finish(z, b, sqrtW_continued(z, b.W));
  return finish(z, b, dm <= dp ? c : -c);
}

Jet AnnulusMaps::jet_unsigned(Complex z) const {
  check_domain(z);
  const Base b = base(z);
  return finish(z, b, std::sqrt(b.W));
}

Complex AnnulusMaps::g(Complex z) const { return jet(z).g; }
Complex AnnulusMaps::g_deriv(Complex z) const { return jet(z).dg; }

double AnnulusMaps::u(Complex z) const {
  check_domain(z);
  if (std::abs(z - mod_.z0) < 1e-13) throw DomainError("u: logarithmic singularity at z0");
  const Base b = base(z);
  return 0.5 * std::log(std::abs(b.H)) + 0.5 * mod_.m * std::log(std::abs(z));
}

Complex AnnulusMaps::F(Complex z) const { return jet(z).F; }
Complex AnnulusMaps::F_deriv(Complex z) const { return jet(z).dF; }

SpherePoint AnnulusMaps::gstar(Complex z) const {
  const Jet j = jet(z);
  if (std::abs(j.R) < 1e-300) return {Complex(0.0, 0.0), true};
  // g - 1/F = g - g/R
  return {j.g * (j.R - 1.0) / j.R, false};
}

SpherePoint eval_gstar(const AnnulusMaps& maps, Complex z) { return maps.gstar(z); }

}  // namespace flatfront
