#include "flatfront/theta.hpp"

#include <cmath>
#include <sstream>

namespace flatfront {

namespace {

constexpr double kPoleThreshold = 1e-13;

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// ceil(log(tol) / (2 log r)), bumped by one when r^{2n} lands on tol exactly
// (r = 0.1), so that r^{2n} < tol strictly.
int terms_for(double r, double tol) {
  if (!(r > 0.0 && r < 1.0 && tol > 0.0 && tol < 1.0)) return 0;
  int n = std::max(1, static_cast<int>(std::ceil(std::log(tol) / (2.0 * std::log(r)))));
  if (std::pow(r, 2.0 * n) >= tol) ++n;
  return n;
}

}  // namespace

ThetaContext::ThetaContext(double r, double tol)
    : ThetaContext(r, terms_for(r, tol), 0) {}

ThetaContext ThetaContext::with_terms(double r, int n_terms) {
  if (n_terms < 1) throw DomainError("theta: n_terms must be positive");
  return ThetaContext(r, n_terms, 0);
}

ThetaContext::ThetaContext(double r, int n_terms, int) : r_(r), r2_(r * r), c_(1.0) {
  if (!(r > 0.0 && r < 1.0)) {
    std::ostringstream os;
    os << "theta: modulus r must lie in (0,1), got " << r;
    throw DomainError(os.str());
  }
  r2k_.reserve(n_terms);
  double p = 1.0;
  for (int k = 1; k <= n_terms; ++k) {
    p *= r2_;
    r2k_.push_back(p);
    c_ *= 1.0 - p;
  }
}

void ThetaContext::check_argument(Complex z) const {
  if (!finite(z)) throw DomainError("theta: non-finite argument");
  if (z == Complex(0.0, 0.0)) throw DomainError("theta: argument z = 0");
}

ThetaContext::Reduced ThetaContext::reduce(Complex z) const {
  Reduced red{z, 0};
  const double lo = r_;
  const double hi = 1.0 / r_;
  while (std::abs(red.w) > hi) {
    red.w *= r2_;
    ++red.shift;
  }
  while (std::abs(red.w) < lo) {
    red.w /= r2_;
    --red.shift;
  }
  return red;
}

// theta and theta' of the truncated product at a reduced argument. The factor
// (1 - 1/w) is the only one that can vanish in the fundamental ring, so the
// derivative is assembled as C * P * (1/w^2 + (1 - 1/w) * P'/P) where P is the
// product of the non-vanishing factors.
void ThetaContext::product_at(Complex w, Complex& value, Complex& deriv) const {
  const Complex inv = 1.0 / w;
  Complex prod(1.0, 0.0);
  Complex logd(0.0, 0.0);
  for (double q : r2k_) {
    const Complex a = 1.0 - q * w;
    const Complex b = 1.0 - q * inv;
    prod *= a * b;
    logd += -q / a + (q * inv * inv) / b;
  }
  const Complex lead = 1.0 - inv;
  value = c_ * lead * prod;
  deriv = c_ * prod * (inv * inv + lead * logd);
}

void ThetaContext::theta_with_deriv(Complex z, Complex& value, Complex& deriv) const {
  check_argument(z);
  // [theta(z), theta'(z)] = L [theta(w), theta'(w)] with L lower triangular.
  Complex a11(1.0, 0.0), a21(0.0, 0.0), a22(1.0, 0.0);
  Complex w = z;
  const double hi = 1.0 / r_;
  while (std::abs(w) > hi) {
    // theta(w) = -r^2 w theta(r^2 w);  theta'(w) = -r^2 theta(r^2 w) - r^4 w theta'(r^2 w)
    const Complex s11 = -r2_ * w;
    const Complex s21 = -r2_;
    const Complex s22 = -r2_ * r2_ * w;
    a21 = a21 * s11 + a22 * s21;
    a11 *= s11;
    a22 *= s22;
    w *= r2_;
  }
  while (std::abs(w) < r_) {
    // theta(w) = -theta(w/r^2)/w;  theta'(w) = theta(w/r^2)/w^2 - theta'(w/r^2)/(r^2 w)
    const Complex s11 = -1.0 / w;
    const Complex s21 = 1.0 / (w * w);
    const Complex s22 = -1.0 / (r2_ * w);
    a21 = a21 * s11 + a22 * s21;
    a11 *= s11;
    a22 *= s22;
    w /= r2_;
  }
  Complex tv, td;
  product_at(w, tv, td);
  value = a11 * tv;
  deriv = a21 * tv + a22 * td;
}

Complex ThetaContext::theta(Complex z) const {
  Complex v, d;
  theta_with_deriv(z, v, d);
  return v;
}

Complex ThetaContext::theta_deriv(Complex z) const {
  Complex v, d;
  theta_with_deriv(z, v, d);
  return d;
}

// h(w) = 1/(w-1) + sum_k [ -q w/(1 - q w) + q/(w - q) ],  q = r^{2k}.
Complex ThetaContext::h_reduced(Complex w, Complex z, int shift) const {
  if (std::abs(w - 1.0) < kPoleThreshold) {
    std::ostringstream os;
    os << "h: argument " << z << " is a zero of theta (r^" << -2 * shift << ")";
    throw PoleError(os.str(), Complex(std::pow(r_, -2.0 * shift), 0.0));
  }
  Complex sum = 1.0 / (w - 1.0);
  for (double q : r2k_) sum += -q * w / (1.0 - q * w) + q / (w - q);
  return sum;
}

Complex ThetaContext::h(Complex z) const {
  check_argument(z);
  const Reduced red = reduce(z);
  // h(z) = shift + h(r^{2 shift} z)
  return static_cast<double>(red.shift) + h_reduced(red.w, z, red.shift);
}

Complex ThetaContext::h_deriv(Complex z) const {
  check_argument(z);
  const Reduced red = reduce(z);
  const Complex w = red.w;
  if (std::abs(w - 1.0) < kPoleThreshold) {
    std::ostringstream os;
    os << "h': argument " << z << " is a zero of theta";
    throw PoleError(os.str(), Complex(std::pow(r_, -2.0 * red.shift), 0.0));
  }
  Complex sum = -1.0 / ((w - 1.0) * (w - 1.0));
  for (double q : r2k_) {
    const Complex a = 1.0 - q * w;
    const Complex b = w - q;
    sum -= q / (a * a) + q / (b * b);
  }
  // h'(z) = r^{2 shift} h'(w)
  return std::pow(r2_, red.shift) * sum;
}

Complex eval_theta(const ThetaContext& ctx, Complex z) { return ctx.theta(z); }
Complex eval_theta_deriv(const ThetaContext& ctx, Complex z) { return ctx.theta_deriv(z); }
Complex eval_h(const ThetaContext& ctx, Complex z) { return ctx.h(z); }
Complex eval_h_deriv(const ThetaContext& ctx, Complex z) { return ctx.h_deriv(z); }

Complex eval_f0(const ThetaContext& ctx, Complex z0, Complex z) {
  if (z0 == Complex(0.0, 0.0)) throw DomainError("f0: z0 = 0");
  return ctx.h(z / z0) + ctx.h(z * z0);
}

Complex eval_f0_deriv(const ThetaContext& ctx, Complex z0, Complex z) {
  if (z0 == Complex(0.0, 0.0)) throw DomainError("f0': z0 = 0");
  return ctx.h_deriv(z / z0) / z0 + ctx.h_deriv(z * z0) * z0;
}

Complex eval_ftilde(const ThetaContext& ctx, Complex z0, Complex z2, double m) {
  if (z2 == Complex(0.0, 0.0)) throw DomainError("ftilde: z2 = 0");
  const Complex z10 = std::pow(ctx.r(), -2.0 * (m + 2.0)) / z2;
  return eval_f0(ctx, z0, z10);
}

}  // namespace flatfront
