#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

#include "flatfront/error.hpp"

namespace flatfront {

struct RootOptions {
  double bisect_tol = 1e-6;   // bracket width at which bisection hands over
  double polish_tol = 1e-13;  // secant step size regarded as converged
  int max_iterations = 400;
};

struct RootResult {
  double x = 0.0;
  double fx = 0.0;
  double lo = 0.0;  // initial bracket
  double hi = 0.0;
  int bisections = 0;
  int secant_steps = 0;
};

/// Root of a continuous f on [lo, hi] with f(lo) f(hi) <= 0. Bisection until
/// the bracket is narrower than bisect_tol, then a secant polish that keeps
/// the bracket and falls back to bisection whenever the secant point leaves
/// it. Deterministic: the same inputs always produce the same iterates.
template <class F>
RootResult find_root_bracketed(F&& f, double lo, double hi, const RootOptions& opt = {}) {
  RootResult res;
  res.lo = lo;
  res.hi = hi;
  double a = lo, b = hi;
  double fa = f(a), fb = f(b);
  if (fa == 0.0) {
    res.x = a;
    res.fx = fa;
    return res;
  }
  if (fb == 0.0) {
    res.x = b;
    res.fx = fb;
    return res;
  }
  if ((fa > 0.0) == (fb > 0.0) || !std::isfinite(fa) || !std::isfinite(fb)) {
    std::ostringstream os;
    os << "no sign change on [" << lo << ", " << hi << "]: f = " << fa << ", " << fb;
    throw BracketError(os.str(), lo, hi);
  }

  int iter = 0;
  while (b - a > opt.bisect_tol && iter < opt.max_iterations) {
    const double mid = 0.5 * (a + b);
    const double fm = f(mid);
    ++iter;
    ++res.bisections;
    if (fm == 0.0) {
      res.x = mid;
      res.fx = fm;
      return res;
    }
    if ((fm > 0.0) == (fa > 0.0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
      fb = fm;
    }
  }

  // Secant polish on the two most recent iterates, safeguarded by [a, b].
  double x0 = a, f0 = fa, x1 = b, f1 = fb;
  double best = std::abs(fa) < std::abs(fb) ? a : b;
  double fbest = std::abs(fa) < std::abs(fb) ? fa : fb;
  while (iter < opt.max_iterations) {
    double x = (f1 != f0) ? x1 - f1 * (x1 - x0) / (f1 - f0) : 0.5 * (a + b);
    if (!(x > a && x < b)) x = 0.5 * (a + b);
    if (x <= a || x >= b) break;  // bracket exhausted at double resolution
    const double fx = f(x);
    ++iter;
    ++res.secant_steps;
    if (std::abs(fx) < std::abs(fbest)) {
      best = x;
      fbest = fx;
    }
    if (fx == 0.0) break;
    if ((fx > 0.0) == (fa > 0.0)) {
      a = x;
      fa = fx;
    } else {
      b = x;
      fb = fx;
    }
    const double step = std::abs(x - x1);
    x0 = x1;
    f0 = f1;
    x1 = x;
    f1 = fx;
    if (step < 1e-3 * opt.polish_tol * std::max(1.0, std::abs(x))) break;
    if (b - a <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x))) break;
  }
  res.x = best;
  res.fx = fbest;
  return res;
}

/// Sub-intervals of a uniform n-step scan of [lo, hi] across which f changes
/// sign. f returns std::nullopt where it is undefined; intervals touching such
/// points are skipped.
template <class F>
std::vector<std::pair<double, double>> scan_sign_changes(F&& f, double lo, double hi, int steps) {
  std::vector<std::pair<double, double>> out;
  std::optional<double> prev;
  double xprev = lo;
  for (int i = 0; i <= steps; ++i) {
    const double x = (i == steps) ? hi : lo + (hi - lo) * (static_cast<double>(i) / steps);
    const std::optional<double> fx = f(x);
    if (prev && fx && std::isfinite(*prev) && std::isfinite(*fx)) {
      if (*fx == 0.0 || (*prev != 0.0 && (*prev > 0.0) != (*fx > 0.0))) out.emplace_back(xprev, x);
    }
    prev = fx;
    xprev = x;
  }
  return out;
}

}  // namespace flatfront
