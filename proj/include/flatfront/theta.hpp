#pragma once

#include <vector>

#include "flatfront/error.hpp"

namespace flatfront {

/// Truncated annular theta function of modulus r,
///
///   theta(z) = C (1 - 1/z) prod_{k>=1} (1 - r^{2k} z)(1 - r^{2k}/z),
///   C = prod_{k>=1} (1 - r^{2k}),
///
/// whose zeros are exactly the points r^{2k}, k in Z. Evaluation first maps z
/// into the fundamental ring r <= |z| <= 1/r with the quasi-periodicity
/// theta(z/r^2) = -z theta(z), so the truncated product is only ever evaluated
/// where its factors are within r of 1.
///
/// Immutable after construction; safe to share between threads.
class ThetaContext {
public:
  static constexpr double kDefaultTolerance = 1e-18;

  /// Picks n_terms = ceil(log(tol) / (2 log r)).
  explicit ThetaContext(double r, double tol = kDefaultTolerance);

  /// Explicit truncation order, used by convergence tests.
  static ThetaContext with_terms(double r, int n_terms);

  double r() const { return r_; }
  int n_terms() const { return static_cast<int>(r2k_.size()); }
  double c_const() const { return c_; }

  /// theta(z). Throws DomainError for z = 0 or non-finite z.
  Complex theta(Complex z) const;

  /// theta'(z), via the product rule so it stays exact at the zeros.
  Complex theta_deriv(Complex z) const;

  /// Both at once; cheaper than two calls.
  void theta_with_deriv(Complex z, Complex& value, Complex& deriv) const;

  /// h(z) = z theta'(z) / theta(z). Throws PoleError carrying the zero r^{2k}
  /// when z sits on one.
  Complex h(Complex z) const;

  /// h'(z).
  Complex h_deriv(Complex z) const;

private:
  ThetaContext(double r, int n_terms, int);

  // Reduced argument w = r^{2 shift} z with r <= |w| <= 1/r.
  struct Reduced {
    Complex w;
    int shift;
  };
  Reduced reduce(Complex z) const;
  void check_argument(Complex z) const;
  void product_at(Complex w, Complex& value, Complex& deriv) const;
  Complex h_reduced(Complex w, Complex z, int shift) const;

  double r_;
  double r2_;
  double c_;
  std::vector<double> r2k_;  // r^{2k}, k = 1..n_terms
};

Complex eval_theta(const ThetaContext& ctx, Complex z);
Complex eval_theta_deriv(const ThetaContext& ctx, Complex z);
Complex eval_h(const ThetaContext& ctx, Complex z);
Complex eval_h_deriv(const ThetaContext& ctx, Complex z);

/// f0(z) = h(z/z0) + h(z z0).
Complex eval_f0(const ThetaContext& ctx, Complex z0, Complex z);

/// d f0 / dz.
Complex eval_f0_deriv(const ThetaContext& ctx, Complex z0, Complex z);

/// f~(z0) = h(z10/z0) + h(z10 z0) with z10 = r^{-2(m+2)} / z2. The caller
/// supplies z2 (the inner root that depends on z0).
Complex eval_ftilde(const ThetaContext& ctx, Complex z0, Complex z2, double m);

}  // namespace flatfront
