#include <doctest.h>

#include <random>

#include "flatfront/immersion.hpp"
#include "flatfront/moduli_solver.hpp"
#include "support/oracles.hpp"

using namespace flatfront;

namespace {

struct Fixture {
  ThetaContext ctx{0.25};
  CanonicalModuli mod = solve_canonical(ctx, 0.25, -0.5).moduli;
  AnnulusMaps maps{mod, ctx};
};

const Fixture& fx() {
  static const Fixture f;
  return f;
}

std::vector<Complex> bulk_points(int n, unsigned seed, double margin = 0.02) {
  const auto& m = fx().mod;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> frac(0.05, 0.95), ang(-M_PI, M_PI);
  std::vector<Complex> out;
  while (static_cast<int>(out.size()) < n) {
    const Complex z = std::polar(std::pow(m.r, 1.0 - frac(rng)), ang(rng));
    if (std::abs(z - m.z0) > margin) out.push_back(z);
  }
  return out;
}

double dist(const HalfSpacePoint& a, double x1, double x2, double x3) {
  return std::hypot(a.x1 - x1, a.x2 - x2, a.x3 - x3);
}

}  // namespace

TEST_SUITE("immersion_engine") {
  TEST_CASE("singular circles map to the two apexes") {
    const auto& f = fx();
    for (int k = 0; k < 32; ++k) {
      const double t = 2 * M_PI * (k + 0.5) / 32;
      CHECK(dist(boundary_limit(f.maps, t, true), 0, 0, 1) < 1e-8);
      CHECK(dist(boundary_limit(f.maps, t, false), 0, 0, f.mod.c_height) < 1e-8);
    }
  }

  TEST_CASE("the end is the ideal point (g(z0), 0)") {
    const auto& f = fx();
    const HalfSpacePoint e = eval_psi(f.maps, f.mod.z0);
    CHECK(e.ideal);
    CHECK(e.x3 == 0.0);
    for (double t : {0.2, 1.7, 3.0, -2.2}) {
      const HalfSpacePoint p = end_limit(f.maps, t);
      CHECK(dist(p, e.x1, e.x2, e.x3) < 1e-6);
      CHECK(eval_psi(f.maps, f.mod.z0 + std::polar(1e-4, t)).x3 < 1e-3);
    }
  }

  TEST_CASE("circle images shrink towards the boundary") {
    const auto& f = fx();
    for (bool outer : {true, false}) {
      double prev = 1e300;
      for (double d : {1e-2, 1e-3, 1e-4}) {
        const double rho = outer ? 1.0 - d : f.mod.r + d;
        std::vector<HalfSpacePoint> pts;
        for (int k = 0; k < 64; ++k) pts.push_back(eval_psi(f.maps, std::polar(rho, 2 * M_PI * k / 64)));
        double diam = 0;
        for (const auto& a : pts)
          for (const auto& b : pts) diam = std::max(diam, dist(a, b.x1, b.x2, b.x3));
        CHECK(diam < prev);
        prev = diam;
      }
    }
  }

  TEST_CASE("the two formula routes agree") {
    const auto& f = fx();
    for (Complex z : bulk_points(100, 21)) {
      const HalfSpacePoint a = eval_psi(f.maps, z);
      const HalfSpacePoint b = eval_psi_gauss_route(f.maps, z);
      CHECK(dist(a, b.x1, b.x2, b.x3) < 1e-9);
    }
    CHECK_THROWS_AS(eval_psi_from_gauss_maps(1.0, 1.0, 1.0), DegenerateError);
    const HalfSpacePoint ideal = eval_psi_from_gauss_maps(Complex(0.3, 0.2), 2.0, 0.0);
    CHECK(ideal.ideal);
    CHECK(ideal.x1 == 0.3);
    CHECK(ideal.x2 == 0.2);
  }

  TEST_CASE("rotational closed form") {
    const RotationalModuli half = RotationalModuli::from_b(0.5);
    CHECK(half.a_rot == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(half.s_rot == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(eval_psi_rotational(half, Complex(0.5, 0.0)).x3 == doctest::Approx(oracle::rotational_height(0.5, 0.5)).epsilon(1e-14));
    CHECK(eval_psi_rotational(half, 0.0).ideal);
    for (double b : {0.2, 0.5, 0.8}) {
      const RotationalModuli rot = RotationalModuli::from_b(b);
      CHECK(std::abs(rot.a_rot - std::pow(1 - b, b - 1) * std::pow(b, -b)) < 1e-12);
      CHECK(std::abs(rot.s_rot * rot.s_rot - b / (1 - b)) < 1e-12);
      const HalfSpacePoint apex = eval_psi_rotational(rot, rot.s_rot);
      CHECK(dist(apex, 0, 0, 1) < 1e-12);
      for (double rho : {0.1, 0.5, 0.9}) {
        const double h0 = eval_psi_rotational(rot, rho * rot.s_rot).x3;
        for (double t : {0.7, 2.0, -1.3}) CHECK(std::abs(eval_psi_rotational(rot, std::polar(rho * rot.s_rot, t)).x3 - h0) < 1e-14);
      }
      CHECK(eval_psi_rotational(rot, 1e-6 * rot.s_rot).x3 < 1e-3);
      if (b < 0.5) {
        CHECK(rot.a_sec);
        CHECK(std::abs(4 * std::pow(*rot.r_disc, 2 * *rot.a_sec) - (1 - *rot.a_sec * *rot.a_sec)) < 1e-12);
      } else {
        CHECK(!rot.a_sec);
      }
    }
    CHECK_THROWS_AS(RotationalModuli::from_b(1.0), DomainError);
  }

  TEST_CASE("disc route and closed form differ by a dilation") {
    for (double b : {0.1, 0.25, 0.4}) {
      const RotationalModuli rot = RotationalModuli::from_b(b);
      const double lam = rot.disc_to_closed_scale();
      for (double f : {0.2, 0.5, 0.99}) {
        const Complex z = std::polar(f * *rot.r_disc, 0.4);
        const HalfSpacePoint d = eval_psi_rotational_disc(rot, z);
        const HalfSpacePoint c = eval_psi_rotational(rot, lam * z);
        CHECK(dist(c, lam * d.x1, lam * d.x2, lam * d.x3) < 1e-12);
      }
      CHECK(std::abs(lam * *rot.r_disc - rot.s_rot) < 1e-12);
    }
  }

  TEST_CASE("first form: positivity, determinant identity and finite-difference pullback") {
    const auto& f = fx();
    for (Complex z : bulk_points(100, 23)) {
      const MetricSample s = first_form(f.maps, z);
      CHECK(s.E > 0.0);
      CHECK(s.det() > 0.0);
      CHECK(std::abs(s.det() - s.lambda2 * s.lambda2) < 1e-12 * s.E * s.G);
      CHECK(s.lambda2 > 0.0);
      CHECK(oracle::form_distance(oracle::fd_pullback(f.maps, z, 1e-5), s) < 1e-5);
    }
    CHECK_THROWS_AS(first_form(f.maps, f.mod.z0), DomainError);
  }

  TEST_CASE("ds^2 - dsigma^2 is indefinite while the scaled bound holds") {
    // For 0 < |p| < 1 the ratio ds^2/dsigma^2 ranges over
    // [(1-|p|)/(1+|p|), (1+|p|)/(1-|p|)], so ds^2 >= dsigma^2 fails in some
    // direction at every interior point.
    const auto& f = fx();
    for (Complex z : bulk_points(50, 29)) {
      const MetricSample s = first_form(f.maps, z);
      const double p = std::abs(eval_p(f.maps, z));
      CHECK(s.min_eig_difference() < 0.0);
      MetricSample scaled = s;
      scaled.lambda2 *= (1.0 - p) / (1.0 + p);
      CHECK(scaled.min_eig_difference() > -1e-10 * (s.E + s.G));
    }
  }

  TEST_CASE("|p| is 1 on the boundary and below 1 inside") {
    const auto& f = fx();
    for (int k = 0; k < 128; ++k) {
      const double t = 2 * M_PI * (k + 0.5) / 128;
      CHECK(std::abs(std::abs(eval_p(f.maps, std::polar(1.0, t))) - 1.0) < 1e-8);
      CHECK(std::abs(std::abs(eval_p(f.maps, std::polar(f.mod.r, t))) - 1.0) < 1e-8);
    }
    for (Complex z : bulk_points(200, 31)) CHECK(std::abs(eval_p(f.maps, z)) < 1.0);
  }

  TEST_CASE("p is holomorphic") {
    const auto& f = fx();
    const Complex I(0, 1);
    for (Complex z : bulk_points(30, 37)) {
      if (z.real() < 0 && std::abs(z.imag()) < 0.05) continue;  // branch cut of z^m
      auto p = [&](Complex w) { return eval_p(f.maps, w); };
      const double h = 1e-6;
      const Complex px = (p(z + h) - p(z - h)) / (2 * h);
      const Complex py = (p(z + I * h) - p(z - I * h)) / (2 * h);
      CHECK(std::abs(py - I * px) < 1e-6 * (1.0 + std::abs(px)));
    }
  }

  TEST_CASE("Klein map") {
    const KleinPoint c = klein_map({0, 0, 1, false});
    CHECK(std::hypot(c.k1, c.k2, c.k3) < 1e-15);
    const KleinPoint k = klein_map({1, 0, 1, false});
    CHECK(k.k1 == doctest::Approx(2.0 / 3));
    CHECK(k.k2 == 0.0);
    CHECK(k.k3 == doctest::Approx(1.0 / 3));
    const KleinPoint i = klein_map({0.4, -1.3, 0, true});
    CHECK(std::hypot(i.k1, i.k2, i.k3) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(i.ideal);
  }

  TEST_CASE("Brioschi control: unit sphere") {
    const MetricField sphere = [](double x, double) {
      MetricSample s;
      s.E = 1.0;
      s.G = std::sin(x) * std::sin(x);
      return s;
    };
    CHECK(brioschi_curvature(sphere, 0.9, 0.3, 1e-3) == doctest::Approx(1.0).epsilon(1e-5));
    // same metric through the coframe path is not available (not flat); a
    // flat coframe a = 1, b = z gives K = 0
    const CoframeField flat = [](Complex z, int) { return Coframe{1.0, 0.3 * z}; };
    CHECK(std::abs(brioschi_from_jet(metric_jet_from_coframe(flat, Complex(0.2, 0.1), 0.05))) < 1e-10);
  }

  TEST_CASE("coframe metric jet agrees with the sampled first form") {
    const auto& f = fx();
    const Complex z(0.3, 0.4);
    const MetricSample s = first_form(f.maps, z);
    const MetricField mf = [&](double x, double y) { return first_form(f.maps, Complex(x, y)); };
    const double k_fd = brioschi_curvature(mf, z.real(), z.imag(), 2e-4);
    CHECK(std::abs(k_fd) < 1e-2);  // truncation-limited, flat up to O(h^2)
    CHECK(std::abs(numerical_gauss_curvature(f.maps, z)) < 1e-8);
    CHECK(s.E > 0.0);
  }

  TEST_CASE("flatness of the canonical and rotational surfaces") {
    const auto& f = fx();
    for (Complex z : bulk_points(40, 41, 0.05)) CHECK(std::abs(numerical_gauss_curvature(f.maps, z)) < 1e-4);
    for (double b : {0.3, 0.7}) {
      const RotationalModuli rot = RotationalModuli::from_b(b);
      for (int i = 1; i < 10; ++i) CHECK(std::abs(rotational_gauss_curvature(rot, std::polar(rot.s_rot * i / 10, 0.3 * i))) < 1e-4);
    }
    CHECK_THROWS_AS(numerical_gauss_curvature(f.maps, Complex(0.26, 0.0), 0.01), DomainError);
    CHECK_THROWS_AS(numerical_gauss_curvature(f.maps, f.mod.z0 + 0.01, 0.01), DomainError);
  }
}
