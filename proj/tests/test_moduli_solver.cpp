#include <doctest.h>

#include <cstring>

#include "flatfront/moduli_solver.hpp"

using namespace flatfront;

TEST_SUITE("moduli_solver") {
  TEST_CASE("m for s = -1/2 is -5/2") {
    const ThetaContext ctx(0.25);
    const double m = solve_m(ctx, -0.5);
    CHECK(std::abs(m + 2.5) < 1e-12);
    CHECK(std::abs(m - 2.0 * eval_h(ctx, std::pow(0.25, -2 * (m + 2))).real() + 1.0 - 0.5) < 1e-12);
  }

  TEST_CASE("m for r = 0.4, s = -0.25 is the unique sign change") {
    const ThetaContext ctx(0.4);
    const double s = -0.25;
    const double m = solve_m(ctx, s);
    CHECK(m > -3.0);
    CHECK(m < -2.0);
    auto G = [&](double x) { return x - 2.0 * eval_h(ctx, std::pow(0.4, -2 * (x + 2))).real() + 1.0 + s; };
    CHECK(std::abs(G(m)) < 1e-12);
    int changes = 0;
    double prev = G(-3.0 + 1e-10);
    for (int i = 1; i <= 2000; ++i) {
      const double v = G(-3.0 + 1e-10 + i * (1.0 - 2e-10) / 2000);
      if ((v > 0) != (prev > 0)) ++changes;
      prev = v;
    }
    CHECK(changes == 1);
  }

  TEST_CASE("inner solve at the closed-form point") {
    const ThetaContext ctx(0.25);
    const double z2 = solve_inner_z2(ctx, -0.5, -0.5, -2.5);
    CHECK(std::abs(eval_f0(ctx, -0.5, z2).real() + 0.5) < 1e-12);
    CHECK(z2 > -1.0);
    CHECK(z2 < -0.5);
    const double z1 = 0.25 / z2;
    CHECK(std::abs(z1 * z2 - 0.25) < 1e-15);
    CHECK(eval_f0(ctx, -0.5, -1.0 + 1e-9).real() < -0.5);
    CHECK(eval_f0(ctx, -0.5, -0.5 - 1e-9).real() > -0.5);
  }

  TEST_CASE("closed-form solution for several r") {
    for (double r : {0.1, 0.25, 0.5, 0.7}) {
      const ThetaContext ctx(r);
      const SolveResult res = solve_canonical(ctx, r, -0.5);
      const auto& m = res.moduli;
      CAPTURE(r);
      CHECK(std::abs(m.m + 2.5) < 1e-12);
      CHECK(std::abs(m.z0 + std::sqrt(r)) < 1e-10);
      CHECK(std::abs(m.z1 * m.z2 - r) < 1e-10);
      for (double v : residuals(m, ctx)) CHECK(v < 1e-10);
      CHECK(res.trace.rs_ok);
      CHECK(res.trace.outer_sign_changes == 1);
      CHECK(std::abs(m.c_height * m.c_height - (m.z1 / m.z2) / (r * r)) < 1e-8);
      CHECK(std::abs(eval_f0(ctx, m.z0, m.z1).real() - (m.s - 2.0)) < 1e-9);
    }
  }

  TEST_CASE("invariants across the parameter rectangle") {
    for (double r : {0.1, 0.3, 0.6}) {
      for (double s : {-0.9, -0.6, -0.3, -0.1}) {
        const ThetaContext ctx(r);
        const SolveResult res = solve_canonical(ctx, r, s);
        const auto& m = res.moduli;
        CAPTURE(r);
        CAPTURE(s);
        CHECK(-1.0 < m.z2);
        CHECK(m.z2 < m.z0);
        CHECK(m.z0 < m.z1);
        CHECK(m.z1 < -r);
        CHECK(m.m > -3.0);
        CHECK(m.m < -2.0);
        CHECK(m.c_height > 0.0);
        CHECK(m.c_height != 1.0);
        for (double v : residuals(m, ctx)) CHECK(v < 1e-10);
        CHECK(check_boundary_ranges(m, ctx));
      }
    }
  }

  TEST_CASE("r = 0.1, s = -0.8") {
    const ThetaContext ctx(0.1);
    for (double v : residuals(solve_canonical(ctx, 0.1, -0.8).moduli, ctx)) CHECK(v < 1e-10);
  }

  TEST_CASE("solves are bit-identical") {
    const ThetaContext ctx(0.35);
    const CanonicalModuli a = solve_canonical(ctx, 0.35, -0.3).moduli;
    const CanonicalModuli b = solve_canonical(ctx, 0.35, -0.3).moduli;
    CHECK(std::memcmp(&a, &b, sizeof a) == 0);
  }

  TEST_CASE("residuals respond to a perturbed z1 to first order") {
    const ThetaContext ctx(0.25);
    CanonicalModuli m = solve_canonical(ctx, 0.25, -0.5).moduli;
    const double expected = std::abs(m.z2 * std::pow(m.r, 2 * (m.m + 2))) * 1e-3;
    m.z1 += 1e-3;
    const auto res = residuals(m, ctx);
    CHECK(res[2] == doctest::Approx(expected).epsilon(1e-6));
  }

  TEST_CASE("hand-built invalid moduli give large residuals without throwing") {
    const ThetaContext ctx(0.25);
    CanonicalModuli m;
    m.r = 0.25;
    m.s = -0.5;
    m.m = -2.2;
    m.z0 = -0.6;
    m.z1 = -0.3;
    m.z2 = -0.9;
    m.c1 = 1.0;
    m.c2 = 2.0;
    m.a_R = 0.1;
    m.b_R = 0.5;
    m.c_height = 1.5;
    std::array<double, 3> res{};
    CHECK_NOTHROW(res = residuals(m, ctx));
    CHECK(res[1] > 1e-3);
    CHECK(res[2] > 1e-3);
  }

  TEST_CASE("range and bracket failures are reported") {
    const ThetaContext ctx(0.25);
    CHECK_THROWS_AS(solve_m(ctx, 0.5), DomainError);
    CHECK_THROWS_AS(find_root_bracketed([](double x) { return x * x + 1.0; }, -1.0, 1.0), BracketError);
    CHECK(outer_brackets(ctx, -0.5, -2.5).size() == 1);
  }
}
