#pragma once

// Triangulated zero sets clipped to a domain. Extraction is marching
// tetrahedra (6 tets per cell, face-consistent diagonals) followed by Newton
// projection of vertices onto the surface and exact re-cutting of triangles
// along the domain boundary. Connectivity supports Euler-characteristic
// topology: components, boundary loops, genus.

#include <array>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "sweepout/family.hpp"
#include "sweepout/omega.hpp"
#include "sweepout/types.hpp"

namespace sweepout {

struct ImplicitSurface {
  std::function<double(const Vec3&)> value;
  std::function<Vec3(const Vec3&)> grad;
};

ImplicitSurface make_implicit(const FamilyParameter& p);
// Plane {n.x + d = 0} with unit normal n.
ImplicitSurface make_plane(const Vec3& n, double d);

// The two planes of a crossing-disks member (a0 != 0, a5 = 0, degenerate
// height profile), or nullopt if the member does not factor into planes.
std::optional<std::array<ImplicitSurface, 2>> crossing_planes(const FamilyParameter& p);

struct DomainSpec {
  enum class Kind { UnitBall, Omega, Ball };
  Kind kind = Kind::UnitBall;
  std::optional<OmegaDomain> omega;
  Vec3 center = Vec3::Zero();
  double radius = 1.0;

  static DomainSpec unit_ball() { return {}; }
  static DomainSpec omega_domain(const OmegaDomain& om);
  static DomainSpec ball(const Vec3& c, double r);

  double boundary_value(const Vec3& p) const;  // negative inside
  bool inside(const Vec3& p) const { return boundary_value(p) <= 0.0; }
  Vec3 boundary_normal(const Vec3& p) const;
  void project_to_boundary(Vec3& p) const;
  Vec3 bbox_min() const;
  Vec3 bbox_max() const;
};

struct SingularityTooClose : std::runtime_error {
  Vec3 point;
  explicit SingularityTooClose(const Vec3& x);
};

struct NonManifoldMesh : std::runtime_error {
  NonManifoldMesh() : std::runtime_error("mesh violates the edge-incidence invariant") {}
};

struct SurfaceMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> triangles;   // counterclockwise w.r.t. grad p
  std::vector<char> vertex_on_boundary;
  std::vector<std::vector<int>> boundary_loops;
  std::vector<int> triangle_component;
  int num_components = 0;
  bool manifold_ok = true;
  // Smallest transversality measure |grad p - (grad p . w) w|/|grad p| seen
  // along the boundary; below 1e-6 the parameter is flagged tangential.
  double min_boundary_transversality = 1.0;

  bool empty() const { return triangles.empty(); }
  bool tangential() const { return min_boundary_transversality < 1e-6; }
  double total_area() const;
  double triangle_area(int t) const;
};

// Marching extraction of {f = 0} clipped to the domain. grid_n >= 16 cells
// per axis. Returns an empty mesh when no sign change is found.
SurfaceMesh extract_implicit(const ImplicitSurface& f, const DomainSpec& domain,
                             int grid_n);

// Family entry point; throws SingularityTooClose when a singular point (or
// singular line) lies within 2 cells of the domain.
SurfaceMesh extract_mesh(const FamilyParameter& p, const DomainSpec& domain,
                         int grid_n);

struct AreaEstimate {
  double value = 0.0;
  double error_bound = 0.0;
  std::vector<int> resolutions_used;
  double richardson = 0.0;
};

// Cauchy-difference error model from meshes at grid n and 2n of the same
// (surface, domain).
AreaEstimate area(const SurfaceMesh& coarse, const SurfaceMesh& fine, int n);

AreaEstimate area_two_grid(const ImplicitSurface& f, const DomainSpec& domain,
                           int grid_n);

struct ComponentTopology {
  int genus = 0;
  int boundary_count = 0;
  int euler_characteristic = 0;
};

struct TopologyReport {
  std::vector<ComponentTopology> components;
  int total_genus = 0;
};

TopologyReport topology(const SurfaceMesh& mesh);  // throws NonManifoldMesh

}  // namespace sweepout
