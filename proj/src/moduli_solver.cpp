#include "flatfront/moduli_solver.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace flatfront {

namespace {

constexpr double kMEdge = 1e-10;

void check_s(double s) {
  if (!(s > -1.0 && s < 0.0)) {
    std::ostringstream os;
    os << "s must lie in (-1, 0), got " << s;
    throw DomainError(os.str());
  }
}

}  // namespace

double solve_m(const ThetaContext& ctx, double s, RootResult* info) {
  check_s(s);
  const double r = ctx.r();
  auto G = [&](double m) { return m - 2.0 * ctx.h(std::pow(r, -2.0 * (m + 2.0))).real() + 1.0 + s; };
  const RootResult res = find_root_bracketed(G, -3.0 + kMEdge, -2.0 - kMEdge);
  if (info) *info = res;
  return res.x;
}

double solve_inner_z2(const ThetaContext& ctx, double z0, double s, double m, RootResult* info) {
  (void)m;  // z2 depends on m only through the caller's choice of z0
  if (!(z0 > -1.0 && z0 < -ctx.r())) throw DomainError("solve_inner_z2: z0 outside (-1, -r)");
  auto f = [&](double z) { return eval_f0(ctx, z0, z).real() - s; };
  const double lo = -1.0 + 1e-12;
  const double hi = z0 * (1.0 + 1e-12);
  try {
    const RootResult res = find_root_bracketed(f, lo, hi);
    if (info) *info = res;
    return res.x;
  } catch (const BracketError&) {
    std::ostringstream os;
    os << "inner solve: f0(.; z0=" << z0 << ") does not attain s=" << s << " on [" << lo << ", " << hi << "]";
    throw BracketError(os.str(), lo, hi);
  }
}

std::optional<double> outer_objective(const ThetaContext& ctx, double z0, double s, double m) {
  try {
    const double z2 = solve_inner_z2(ctx, z0, s, m);
    const double z10 = std::pow(ctx.r(), -2.0 * (m + 2.0)) / z2;
    if (!(z10 > z0)) return std::nullopt;
    const double v = eval_f0(ctx, z0, z10).real() - (s - 2.0);
    if (!std::isfinite(v)) return std::nullopt;
    return v;
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::vector<std::pair<double, double>> outer_brackets(const ThetaContext& ctx, double s, double m,
                                                      const SolverOptions& opt) {
  const double lo = -1.0 + opt.outer_edge;
  const double hi = -ctx.r() - opt.outer_edge;
  return scan_sign_changes([&](double z0) { return outer_objective(ctx, z0, s, m); }, lo, hi,
                           opt.outer_scan_steps);
}

std::array<double, 3> residuals(const CanonicalModuli& mod, const ThetaContext& ctx) {
  const double dR1 = eval_R_deriv(mod, ctx, mod.z1).real();
  const double dR2 = eval_R_deriv(mod, ctx, mod.z2).real();
  const double c1res = mod.m + mod.c1 * mod.z1 - mod.z1 * dR1 + mod.z2 * dR2;
  const double c2res = mod.c1 * mod.z1 - mod.c2 * mod.z2 - 2.0;
  const double c3res = mod.z1 * mod.z2 * std::pow(mod.r, 2.0 * (mod.m + 2.0)) - 1.0;
  return {std::abs(c1res), std::abs(c2res), std::abs(c3res)};
}

bool check_boundary_ranges(const CanonicalModuli& mod, const ThetaContext& ctx, int samples) {
  const double r = mod.r;
  auto Rre = [&](Complex z, bool& ok) {
    const Complex v = eval_R(mod, ctx, z);
    if (std::abs(v.imag()) > 1e-9) ok = false;
    return v.real();
  };
  bool ok = true;
  const double R1 = Rre(1.0, ok), Rm1 = Rre(-1.0, ok), Rr = Rre(r, ok), Rmr = Rre(-r, ok);
  const double slack = 1e-12;
  for (int k = 0; k < samples && ok; ++k) {
    const double t = 2.0 * std::numbers::pi * k / samples;
    const double v1 = Rre(std::polar(1.0, t), ok);
    const double vr = Rre(std::polar(r, t), ok);
    if (!(v1 > 0.0 && v1 < 1.0 && vr > 0.0 && vr < 1.0)) ok = false;
    if (v1 < Rm1 - slack || v1 > R1 + slack) ok = false;
    if (vr < Rr - slack || vr > Rmr + slack) ok = false;
  }
  return ok && R1 < Rr;
}

SolveResult solve_canonical(const ThetaContext& ctx, double r, double s, const SolverOptions& opt) {
  if (!(r > 0.0 && r < 1.0)) throw DomainError("r must lie in (0, 1)");
  check_s(s);
  if (std::abs(ctx.r() - r) > 1e-15) throw DomainError("theta context built for a different r");

  auto result = std::make_shared<SolveResult>();
  SolverTrace& tr = result->trace;
  CanonicalModuli& mod = result->moduli;
  mod.r = r;
  mod.s = s;

  try {
    mod.m = solve_m(ctx, s, &tr.m_root);
  } catch (const BracketError& e) {
    throw SolveError(SolveFailure::kBracket, std::string("m: ") + e.what());
  }

  const auto brackets = outer_brackets(ctx, s, mod.m, opt);
  tr.outer_scan_steps = opt.outer_scan_steps;
  tr.outer_sign_changes = static_cast<int>(brackets.size());
  if (brackets.empty()) {
    std::ostringstream os;
    os << "outer scan found no sign change of f~(z0) - (s - 2) on (-1, -r) for r=" << r << " s=" << s;
    throw SolveError(SolveFailure::kBracket, os.str());
  }

  const double m = mod.m;
  auto G = [&](double z0) {
    ++tr.inner_solves;
    RootResult inner;
    const double z2 = solve_inner_z2(ctx, z0, s, m, &inner);
    tr.inner_iterations += inner.bisections + inner.secant_steps;
    const double z10 = std::pow(r, -2.0 * (m + 2.0)) / z2;
    return eval_f0(ctx, z0, z10).real() - (s - 2.0);
  };
  try {
    tr.outer_root = find_root_bracketed(G, brackets.front().first, brackets.front().second, opt.root);
  } catch (const Error& e) {
    throw SolveError(SolveFailure::kBracket, std::string("outer root: ") + e.what());
  }

  mod.z0 = tr.outer_root.x;
  mod.z2 = solve_inner_z2(ctx, mod.z0, s, m);
  mod.z1 = std::pow(r, -2.0 * (m + 2.0)) / mod.z2;

  tr.ordering_ok = -1.0 < mod.z2 && mod.z2 < mod.z0 && mod.z0 < mod.z1 && mod.z1 < -r;
  if (!tr.ordering_ok) {
    std::ostringstream os;
    os << "solution violates -1 < z2 < z0 < z1 < -r: z2=" << mod.z2 << " z0=" << mod.z0 << " z1=" << mod.z1;
    throw SolveError(SolveFailure::kOrdering, os.str(), result);
  }

  mod.c1 = eval_q(ctx, mod.z1, mod.z0).real();
  mod.c2 = eval_q(ctx, mod.z2, mod.z0).real();
  const auto [a, b] = fit_R_coefficients(ctx, mod.z0, mod.z1, mod.z2);
  mod.a_R = a;
  mod.b_R = b;
  mod.c_height = std::abs(mod.z1) * std::pow(r, m + 1.0);

  tr.residuals = residuals(mod, ctx);
  tr.rs_ok = check_boundary_ranges(mod, ctx);

  for (double v : tr.residuals) {
    if (!(v < opt.tolerance)) {
      std::ostringstream os;
      os << "residuals above tolerance " << opt.tolerance << ": " << tr.residuals[0] << ", " << tr.residuals[1]
         << ", " << tr.residuals[2];
      throw SolveError(SolveFailure::kResidual, os.str(), result);
    }
  }
  if (!tr.rs_ok) {
    throw SolveError(SolveFailure::kRsViolation, "boundary ranges of R violate 0 < R < 1 / R(1) < R(r)", result);
  }
  return *result;
}

}  // namespace flatfront
