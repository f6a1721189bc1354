#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "flatfront/grid_kernels.hpp"
#include "flatfront/io.hpp"
#include "flatfront/mesh.hpp"
#include "flatfront/moduli_solver.hpp"
#include "flatfront/validation.hpp"
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

std::string tmp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("flatfront_test_" + name)).string();
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_SUITE("surface_cli") {
  TEST_CASE("grid shapes") {
    const auto g = interior_polar_grid(0.25, 20);
    REQUIRE(g.size() == 400);
    for (Complex z : g) CHECK((std::abs(z) > 0.25 && std::abs(z) < 1.0));
    const auto b = boundary_samples(0.25, 16);
    REQUIRE(b.size() == 32);
    CHECK(std::abs(std::abs(b.front()) - 1.0) < 1e-15);
    CHECK(std::abs(std::abs(b.back()) - 0.25) < 1e-15);
  }

  TEST_CASE("serial and parallel kernels are bit-identical") {
    const auto& f = fx();
    const auto pts = interior_polar_grid(f.mod.r, 40);
    const PScan a = scan_p(f.maps, pts, Exec::kSerial), b = scan_p(f.maps, pts, Exec::kParallel);
    CHECK(same_bits(a.max_abs, b.max_abs));
    CHECK(same_bits(a.max_dev_from_one, b.max_dev_from_one));
    CHECK(a.skipped == b.skipped);

    const auto fa = sample_first_form(f.maps, pts, Exec::kSerial);
    const auto fb = sample_first_form(f.maps, pts, Exec::kParallel);
    bool ff_same = true;
    for (size_t i = 0; i < pts.size(); ++i)
      ff_same = ff_same && same_bits(fa[i].E, fb[i].E) && same_bits(fa[i].F_m, fb[i].F_m) && same_bits(fa[i].G, fb[i].G);
    CHECK(ff_same);

    const std::vector<double> radii{0.3, 0.5, 0.8};
    const auto ra = sample_rings(f.maps, radii, 64, Exec::kSerial);
    const auto rb = sample_rings(f.maps, radii, 64, Exec::kParallel);
    bool rings_same = true;
    for (size_t i = 0; i < ra.size(); ++i)
      rings_same = rings_same && same_bits(ra[i].x1, rb[i].x1) && same_bits(ra[i].x2, rb[i].x2) && same_bits(ra[i].x3, rb[i].x3);
    CHECK(rings_same);

    const auto cp = curvature_points(f.mod, 6);
    CHECK(same_bits(max_abs_curvature(f.maps, cp, Exec::kSerial), max_abs_curvature(f.maps, cp, Exec::kParallel)));
  }

  TEST_CASE("rings reach z0 as NaN, not as an exception") {
    const auto& f = fx();
    const auto ring = sample_rings(f.maps, {std::abs(f.mod.z0)}, 4, Exec::kParallel);
    REQUIRE(ring.size() == 4);
    CHECK(std::isnan(ring[2].x3));  // theta = pi lands on z0
    CHECK(std::isfinite(ring[0].x3));
    CHECK(std::isinf(max_abs_curvature(f.maps, {f.mod.z0}, Exec::kSerial)));
  }

  TEST_CASE("canonical mesh topology and apexes") {
    const auto& f = fx();
    MeshOptions opt;
    opt.n_rho = 32;
    opt.n_theta = 64;
    const MeshResult res = build_canonical_mesh(f.maps, opt);
    CHECK(res.mesh.euler_characteristic() == -1);
    for (int v : res.mesh.ring_outer) CHECK(std::hypot(res.mesh.vertices[v][0], res.mesh.vertices[v][1], res.mesh.vertices[v][2] - 1.0) < 1e-3);
    for (int v : res.mesh.ring_inner)
      CHECK(std::hypot(res.mesh.vertices[v][0], res.mesh.vertices[v][1], res.mesh.vertices[v][2] - f.mod.c_height) < 1e-3);
    bool upper = true;
    for (const auto& v : res.mesh.vertices) upper = upper && v[2] > 0.0;
    CHECK(upper);

    opt.model = Model::kKlein;
    const MeshResult k = build_canonical_mesh(f.maps, opt);
    bool inside = true;
    for (const auto& v : k.mesh.vertices) inside = inside && std::hypot(v[0], v[1], v[2]) < 1.0;
    CHECK(inside);
    CHECK(k.mesh.vertices.size() == res.mesh.vertices.size());
  }

  TEST_CASE("rotational mesh approaches the end and the apex") {
    const RotationalModuli rot = RotationalModuli::from_b(0.3);
    MeshOptions opt;
    opt.n_rho = 16;
    opt.n_theta = 32;
    const SurfaceMesh m = build_rotational_mesh(rot, opt);
    double lo = 1e300;
    for (const auto& v : m.vertices) lo = std::min(lo, v[2]);
    CHECK(lo < 1e-2);
    for (int v : m.ring_outer) CHECK(std::hypot(m.vertices[v][0], m.vertices[v][1], m.vertices[v][2] - 1.0) < 1e-12);
    CHECK(m.ring_inner.empty());

    const Json rep = rotational_report(RotationalModuli::from_b(0.5), opt);
    CHECK(rep["max_abs_curvature"].is_null());
    CHECK(rep["degenerate_profile"].get<bool>());
    CHECK(rep["apex_height"].get<double>() == doctest::Approx(rep["apex_height_closed_form"].get<double>()).epsilon(1e-12));
  }

  TEST_CASE("OBJ and PLY output") {
    const RotationalModuli rot = RotationalModuli::from_b(0.7);
    MeshOptions opt;
    opt.n_rho = 8;
    opt.n_theta = 8;
    const SurfaceMesh m = build_rotational_mesh(rot, opt);

    const std::string obj = tmp_path("mesh.obj");
    write_obj(m, obj);
    std::ifstream in(obj);
    std::string line;
    size_t nv = 0, nf = 0;
    bool one_based = true;
    while (std::getline(in, line)) {
      std::istringstream ls(line);
      std::string tag;
      ls >> tag;
      if (tag == "v") {
        ++nv;
      } else if (tag == "f") {
        ++nf;
        int a, b, c;
        ls >> a >> b >> c;
        one_based = one_based && std::min({a, b, c}) >= 1 && std::max({a, b, c}) <= static_cast<int>(m.vertices.size());
      }
    }
    CHECK(nv == m.vertices.size());
    CHECK(nf == m.faces.size());
    CHECK(one_based);

    const std::string ply = tmp_path("mesh.ply");
    write_ply(m, ply);
    std::ifstream pin(ply, std::ios::binary);
    std::string header, l;
    while (std::getline(pin, l)) {
      header += l + "\n";
      if (l == "end_header") break;
    }
    CHECK(header.rfind("ply\nformat binary_little_endian 1.0\n", 0) == 0);
    CHECK(header.find("element vertex " + std::to_string(m.vertices.size())) != std::string::npos);
    CHECK(header.find("element face " + std::to_string(m.faces.size())) != std::string::npos);
    const auto body = std::filesystem::file_size(ply) - header.size();
    CHECK(body == m.vertices.size() * 24 + m.faces.size() * 13);
  }

  TEST_CASE("moduli round trip through JSON") {
    const auto& f = fx();
    const std::string path = tmp_path("moduli.json");
    write_json_file(path, moduli_to_json(f.mod));
    const CanonicalModuli back = read_moduli_file(path);
    const auto r0 = residuals(f.mod, f.ctx), r1 = residuals(back, f.ctx);
    CHECK(same_bits(r0[0], r1[0]));
    CHECK(same_bits(r0[1], r1[1]));
    CHECK(same_bits(r0[2], r1[2]));
    CHECK(same_bits(back.z0, f.mod.z0));

    Json j = moduli_to_json(f.mod);
    j.erase("c2");
    CHECK_THROWS_AS(moduli_from_json(j), IoError);
    j = moduli_to_json(f.mod);
    j["m"] = "x";
    CHECK_THROWS_AS(moduli_from_json(j), IoError);
    CHECK_THROWS_AS(read_moduli_file(tmp_path("missing.json")), IoError);
  }

  TEST_CASE("validation passes for a solved surface and fails when perturbed") {
    const auto& f = fx();
    ValidationOptions opt;
    opt.grid = 60;
    opt.boundary_samples = 64;
    opt.limit_angles = 16;
    opt.curvature_grid = 5;
    const ValidationOutcome ok = validate_moduli(f.mod, opt);
    CHECK(ok.passed());
    CHECK(ok.report.max_abs_p_interior < 1.0);
    CHECK(ok.report.outer_sign_changes == 1);

    CanonicalModuli bad = f.mod;
    bad.z1 += 1e-2;
    const ValidationOutcome no = validate_moduli(bad, opt);
    CHECK(!no.passed());
    CHECK(no.report.c3_res > 1e-6);

    const Json rep = report_to_json(ok.report);
    for (const char* k : {"c1_res", "c2_res", "c3_res", "max_abs_p_interior", "boundary_p_deviation", "max_abs_curvature",
                          "sing1_error", "sing2_error", "end_error", "rs_ok", "outer_sign_changes"})
      CHECK(rep.contains(k));
  }

  TEST_CASE("residual tolerance from the environment") {
    ::setenv("FLATFRONT_TOL", "1e-3", 1);
    CHECK(ValidationTolerances::from_env().residual == 1e-3);
    ::unsetenv("FLATFRONT_TOL");
    CHECK(ValidationTolerances::from_env().residual == 1e-10);
  }
}
