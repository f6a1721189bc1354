#pragma once

#include <array>
#include <string>
#include <vector>

#include "flatfront/grid_kernels.hpp"

namespace flatfront {

enum class Model { kHalfSpace, kKlein };

struct SurfaceMesh {
  std::vector<std::array<double, 3>> vertices;
  std::vector<std::array<int, 3>> faces;  // 0-based
  Model model = Model::kHalfSpace;
  std::vector<int> ring_outer;  // vertices on the image of |z| = 1 (or |g| = s_rot)
  std::vector<int> ring_inner;  // vertices on the image of |z| = r; empty for rotational meshes

  /// V - E + F of the triangle complex.
  int euler_characteristic() const;
};

struct MeshOptions {
  int n_rho = 64;
  int n_theta = 128;
  Model model = Model::kHalfSpace;
  double rho_end = 1e-2;
  Exec exec = Exec::kParallel;
};

struct MeshResult {
  SurfaceMesh mesh;
  std::vector<std::string> warnings;  // degenerate metric samples
};

/// Log-radial grid rho_i = r^{1 - i/n_rho}, i = 0..n_rho, theta_j = 2 pi j/n_theta.
/// Rows 0 and n_rho are the radial limits onto the singular circles.
/// Vertices within rho_end of z0 are dropped together with their triangles.
MeshResult build_canonical_mesh(const AnnulusMaps& maps, const MeshOptions& opt);

/// Closed-form rotational surface on log radii s_rot 1e-4 .. s_rot.
SurfaceMesh build_rotational_mesh(const RotationalModuli& rot, const MeshOptions& opt);

void write_obj(const SurfaceMesh& mesh, const std::string& path);
/// Binary little-endian PLY with double vertex properties.
void write_ply(const SurfaceMesh& mesh, const std::string& path);

}  // namespace flatfront
