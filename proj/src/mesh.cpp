#include "flatfront/mesh.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <numbers>
#include <set>
#include <sstream>

namespace flatfront {

int SurfaceMesh::euler_characteristic() const {
  std::set<std::pair<int, int>> edges;
  for (const auto& f : faces) {
    for (int k = 0; k < 3; ++k) {
      const int a = f[k], b = f[(k + 1) % 3];
      edges.insert({std::min(a, b), std::max(a, b)});
    }
  }
  return static_cast<int>(vertices.size()) - static_cast<int>(edges.size()) + static_cast<int>(faces.size());
}

namespace {

std::array<double, 3> place(const HalfSpacePoint& p, Model model) {
  if (model == Model::kKlein) {
    const KleinPoint k = klein_map(p);
    return {k.k1, k.k2, k.k3};
  }
  return {p.x1, p.x2, p.x3};
}

// Triangulates a rows x cols periodic grid, skipping dropped vertices, and
// compacts the vertex list.
SurfaceMesh assemble(const std::vector<HalfSpacePoint>& pts, const std::vector<char>& keep, int rows, int cols,
                     Model model, bool inner_ring) {
  SurfaceMesh mesh;
  mesh.model = model;
  std::vector<int> index(pts.size(), -1);
  for (size_t k = 0; k < pts.size(); ++k) {
    if (!keep[k]) continue;
    index[k] = static_cast<int>(mesh.vertices.size());
    mesh.vertices.push_back(place(pts[k], model));
  }
  auto id = [&](int i, int j) { return index[static_cast<size_t>(i) * cols + (j % cols)]; };
  for (int i = 0; i + 1 < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const int a = id(i, j), b = id(i + 1, j), c = id(i + 1, j + 1), d = id(i, j + 1);
      if (a >= 0 && b >= 0 && c >= 0) mesh.faces.push_back({a, c, b});
      if (a >= 0 && c >= 0 && d >= 0) mesh.faces.push_back({a, d, c});
    }
  }
  for (int j = 0; j < cols; ++j) {
    if (id(rows - 1, j) >= 0) mesh.ring_outer.push_back(id(rows - 1, j));
    if (inner_ring && id(0, j) >= 0) mesh.ring_inner.push_back(id(0, j));
  }
  return mesh;
}

}  // namespace

MeshResult build_canonical_mesh(const AnnulusMaps& maps, const MeshOptions& opt) {
  const CanonicalModuli& mod = maps.moduli();
  const int rows = opt.n_rho + 1, cols = opt.n_theta;
  std::vector<double> radii(rows);
  for (int i = 0; i < rows; ++i) radii[i] = std::pow(mod.r, 1.0 - static_cast<double>(i) / opt.n_rho);

  std::vector<double> inner(radii.begin() + 1, radii.end() - 1);
  const std::vector<HalfSpacePoint> body = sample_rings(maps, inner, cols, opt.exec);

  std::vector<HalfSpacePoint> pts(static_cast<size_t>(rows) * cols);
  std::vector<char> keep(pts.size(), 1);
  std::vector<Complex> zs(pts.size());
  for (int j = 0; j < cols; ++j) {
    const double t = 2.0 * std::numbers::pi * j / cols;
    pts[j] = boundary_limit(maps, t, false);
    pts[static_cast<size_t>(rows - 1) * cols + j] = boundary_limit(maps, t, true);
  }
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const size_t k = static_cast<size_t>(i) * cols + j;
      zs[k] = std::polar(radii[i], 2.0 * std::numbers::pi * j / cols);
      if (i > 0 && i < rows - 1) pts[k] = body[(i - 1) * static_cast<size_t>(cols) + j];
      if (std::abs(zs[k] - mod.z0) < opt.rho_end) keep[k] = 0;
    }
  }

  MeshResult out;
  for (size_t k = 0; k < pts.size(); ++k) {
    if (keep[k] && std::isnan(pts[k].x3)) {
      keep[k] = 0;
      std::ostringstream os;
      os << "vertex at z = " << zs[k] << " could not be evaluated and was dropped";
      out.warnings.push_back(os.str());
    }
  }
  std::vector<Complex> interior;
  for (size_t k = cols; k + cols < pts.size(); ++k) {
    if (keep[k]) interior.push_back(zs[k]);
  }
  const std::vector<MetricSample> forms = sample_first_form(maps, interior, opt.exec);
  for (size_t k = 0; k < forms.size(); ++k) {
    if (std::isnan(forms[k].E)) {
      std::ostringstream os;
      os << "degenerate metric sample at z = " << interior[k];
      out.warnings.push_back(os.str());
    }
  }
  out.mesh = assemble(pts, keep, rows, cols, opt.model, true);
  return out;
}

SurfaceMesh build_rotational_mesh(const RotationalModuli& rot, const MeshOptions& opt) {
  const int rows = opt.n_rho + 1, cols = opt.n_theta;
  std::vector<HalfSpacePoint> pts(static_cast<size_t>(rows) * cols);
  for (int i = 0; i < rows; ++i) {
    const double rho = rot.s_rot * std::pow(1e-4, 1.0 - static_cast<double>(i) / opt.n_rho);
    for (int j = 0; j < cols; ++j) {
      pts[static_cast<size_t>(i) * cols + j] = eval_psi_rotational(rot, std::polar(rho, 2.0 * std::numbers::pi * j / cols));
    }
  }
  return assemble(pts, std::vector<char>(pts.size(), 1), rows, cols, opt.model, false);
}

void write_obj(const SurfaceMesh& mesh, const std::string& path) {
  std::unique_ptr<FILE, int (*)(FILE*)> f(std::fopen(path.c_str(), "w"), &std::fclose);
  if (!f) throw Error("cannot open " + path + " for writing");
  for (const auto& v : mesh.vertices) std::fprintf(f.get(), "v %.17g %.17g %.17g\n", v[0], v[1], v[2]);
  for (const auto& t : mesh.faces) std::fprintf(f.get(), "f %d %d %d\n", t[0] + 1, t[1] + 1, t[2] + 1);
  if (std::ferror(f.get())) throw Error("write failed: " + path);
}

void write_ply(const SurfaceMesh& mesh, const std::string& path) {
  static_assert(std::endian::native == std::endian::little, "PLY writer assumes a little-endian host");
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open " + path + " for writing");
  os << "ply\nformat binary_little_endian 1.0\n"
     << "element vertex " << mesh.vertices.size() << "\n"
     << "property double x\nproperty double y\nproperty double z\n"
     << "element face " << mesh.faces.size() << "\n"
     << "property list uchar int vertex_indices\nend_header\n";
  for (const auto& v : mesh.vertices) os.write(reinterpret_cast<const char*>(v.data()), sizeof(double) * 3);
  for (const auto& t : mesh.faces) {
    const unsigned char three = 3;
    os.write(reinterpret_cast<const char*>(&three), 1);
    os.write(reinterpret_cast<const char*>(t.data()), sizeof(int) * 3);
  }
  if (!os) throw Error("write failed: " + path);
}

}  // namespace flatfront
