#pragma once

#include <array>
#include <memory>

#include "flatfront/annulus_maps.hpp"
#include "flatfront/roots.hpp"
#include "flatfront/theta.hpp"

namespace flatfront {

/// Bookkeeping of one canonical solve; serialized next to the moduli file.
struct SolverTrace {
  RootResult m_root;
  RootResult outer_root;
  int inner_solves = 0;
  int inner_iterations = 0;
  int outer_scan_steps = 0;
  int outer_sign_changes = 0;
  std::array<double, 3> residuals{};
  bool rs_ok = false;
  bool ordering_ok = false;
};

struct SolveResult {
  CanonicalModuli moduli;
  SolverTrace trace;
};

enum class SolveFailure {
  kBracket,      // no sign change for m, z2 or z0
  kRsViolation,  // solution found, boundary ranges of R not as required
  kOrdering,     // solution found, -1 < z2 < z0 < z1 < -r violated
  kResidual,     // solution found, residuals above tolerance
};

/// Raised by solve_canonical. For everything except kBracket the offending
/// solution is attached.
class SolveError : public Error {
public:
  SolveError(SolveFailure kind, const std::string& what, std::shared_ptr<const SolveResult> partial = nullptr)
      : Error(what), kind_(kind), partial_(std::move(partial)) {}
  SolveFailure kind() const { return kind_; }
  const SolveResult* partial() const { return partial_.get(); }

private:
  SolveFailure kind_;
  std::shared_ptr<const SolveResult> partial_;
};

struct SolverOptions {
  RootOptions root;
  int outer_scan_steps = 256;
  double outer_edge = 1e-6;  // distance kept from -1 and -r in the outer scan
  double tolerance = 1e-10;  // residual acceptance
};

/// Root m in (-3, -2) of m = 2 h(r^{-2(m+2)}) - 1 - s.
double solve_m(const ThetaContext& ctx, double s, RootResult* info = nullptr);

/// z2 in (-1, z0) with f0(z2; z0) = s.
double solve_inner_z2(const ThetaContext& ctx, double z0, double s, double m, RootResult* info = nullptr);

/// Outer scan function G(z0) = f~(z0) - (s - 2); empty where the nested
/// construction is undefined (inner solve fails or z10 <= z0).
std::optional<double> outer_objective(const ThetaContext& ctx, double z0, double s, double m);

/// Sign-change intervals of the outer scan, ordered from -1 towards -r.
std::vector<std::pair<double, double>> outer_brackets(const ThetaContext& ctx, double s, double m,
                                                      const SolverOptions& opt = {});

/// Full nested solve for (m, z0, z1, z2) and the derived constants.
SolveResult solve_canonical(const ThetaContext& ctx, double r, double s, const SolverOptions& opt = {});

/// Absolute residuals of the three closing conditions, recomputed from the
/// stored fields:
///   m + c1 z1 - z1 R'(z1) + z2 R'(z2) = 0,
///   c1 z1 - c2 z2 = 2,
///   z1 z2 r^{2(m+2)} = 1.
std::array<double, 3> residuals(const CanonicalModuli& mod, const ThetaContext& ctx);

/// Boundary behaviour of R: real values in (0,1) on both circles with
/// R(S1) = [R(-1), R(1)], R(S_r) = [R(r), R(-r)] and R(1) < R(r).
bool check_boundary_ranges(const CanonicalModuli& mod, const ThetaContext& ctx, int samples = 256);

}  // namespace flatfront
