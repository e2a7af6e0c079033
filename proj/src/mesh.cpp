#include "sweepout/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <unordered_map>

namespace sweepout {

ImplicitSurface make_implicit(const FamilyParameter& p) {
  return {[p](const Vec3& x) { return eval(p, x); },
          [p](const Vec3& x) { return gradient(p, x); }};
}

ImplicitSurface make_plane(const Vec3& n, double d) {
  const Vec3 u = n.normalized();
  return {[u, d](const Vec3& x) { return u.dot(x) + d; },
          [u](const Vec3&) { return u; }};
}

std::optional<std::array<ImplicitSurface, 2>> crossing_planes(const FamilyParameter& p) {
  const Vec5& a = p.proj.a;
  if (a[0] == 0.0 || p.a5 != 0.0) return std::nullopt;
  const double u0 = -a[1] / (2.0 * a[0]);
  const double u1 = a[2] / (2.0 * a[0]);
  const double c3 = a[3] / a[0];
  const double c4 = a[4] / a[0] - u0 * u0 + u1 * u1;
  if (c3 != 0.0 || std::abs(c4) > 1e-14) return std::nullopt;
  // p/a0 = (u0' - u0)^2 - (u1' - u1)^2 factors into two planes through the
  // rotated axis.
  const Mat3 qt = p.rot.q.transpose();
  const Vec3 n_plus = qt * Vec3{1.0, 1.0, 0.0}.normalized();
  const Vec3 n_minus = qt * Vec3{1.0, -1.0, 0.0}.normalized();
  const double d_plus = (-u0 - u1) / std::sqrt(2.0);
  const double d_minus = (-u0 + u1) / std::sqrt(2.0);
  return std::array<ImplicitSurface, 2>{make_plane(n_plus, d_plus),
                                        make_plane(n_minus, d_minus)};
}

DomainSpec DomainSpec::omega_domain(const OmegaDomain& om) {
  DomainSpec d;
  d.kind = Kind::Omega;
  d.omega = om;
  return d;
}

DomainSpec DomainSpec::ball(const Vec3& c, double r) {
  DomainSpec d;
  d.kind = Kind::Ball;
  d.center = c;
  d.radius = r;
  return d;
}

double DomainSpec::boundary_value(const Vec3& p) const {
  switch (kind) {
    case Kind::UnitBall: return p.squaredNorm() - 1.0;
    case Kind::Omega: return omega->boundary_value(p);
    case Kind::Ball: return (p - center).squaredNorm() - radius * radius;
  }
  return 0.0;
}

Vec3 DomainSpec::boundary_normal(const Vec3& p) const {
  switch (kind) {
    case Kind::UnitBall: return p.normalized();
    case Kind::Omega: return omega->outward_normal(p);
    case Kind::Ball: return (p - center).normalized();
  }
  return Vec3::UnitZ();
}

void DomainSpec::project_to_boundary(Vec3& p) const {
  switch (kind) {
    case Kind::UnitBall:
      p.normalize();
      return;
    case Kind::Ball:
      p = center + (p - center).normalized() * radius;
      return;
    case Kind::Omega: {
      const OmegaDomain& om = *omega;
      if (om.rho(p.x(), p.y()) <= 2.0 * om.R()) {
        p.z() = (p.z() < 0.0 ? -1.0 : 1.0) * om.height(p.x(), p.y());
      } else {
        p.normalize();
      }
      return;
    }
  }
}

Vec3 DomainSpec::bbox_min() const {
  switch (kind) {
    case Kind::UnitBall: return {-1.05, -1.05, -1.05};
    case Kind::Omega: {
      const double zpad = std::max(1.05, omega->cap_height() * 1.05);
      return {-1.05, -1.05, -zpad};
    }
    case Kind::Ball: return center - Vec3::Constant(1.05 * radius);
  }
  return {};
}

Vec3 DomainSpec::bbox_max() const {
  if (kind == Kind::Ball) return center + Vec3::Constant(1.05 * radius);
  return -bbox_min();
}

SingularityTooClose::SingularityTooClose(const Vec3& x)
    : std::runtime_error("singular point too close to the domain at (" +
                         std::to_string(x.x()) + ", " + std::to_string(x.y()) +
                         ", " + std::to_string(x.z()) + ")"),
      point(x) {}

double SurfaceMesh::triangle_area(int t) const {
  const auto& tr = triangles[t];
  const Vec3 e1 = vertices[tr[1]] - vertices[tr[0]];
  const Vec3 e2 = vertices[tr[2]] - vertices[tr[0]];
  return 0.5 * e1.cross(e2).norm();
}

double SurfaceMesh::total_area() const {
  double a = 0.0;
  for (int t = 0; t < static_cast<int>(triangles.size()); ++t) a += triangle_area(t);
  return a;
}

namespace {

// Newton projection onto {f = 0}.
void project_to_surface(const ImplicitSurface& f, Vec3& x, int iters = 10) {
  for (int i = 0; i < iters; ++i) {
    const double v = f.value(x);
    const Vec3 g = f.grad(x);
    const double g2 = g.squaredNorm();
    if (g2 < 1e-24) return;
    x -= (v / g2) * g;
    if (std::abs(v) < 1e-14 * (1.0 + g2)) return;
  }
}

// Alternating projection onto {f = 0} intersect the domain boundary.
void project_to_boundary_curve(const ImplicitSurface& f, const DomainSpec& dom,
                               Vec3& x) {
  for (int i = 0; i < 30; ++i) {
    project_to_surface(f, x, 3);
    dom.project_to_boundary(x);
    if (std::abs(f.value(x)) < 1e-12 && std::abs(dom.boundary_value(x)) < 1e-12)
      break;
  }
}

struct MeshBuilder {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::unordered_map<std::uint64_t, int> edge_vertex;

  int vertex_on_edge(std::uint64_t key, const Vec3& pos) {
    auto [it, inserted] = edge_vertex.try_emplace(key, static_cast<int>(vertices.size()));
    if (inserted) vertices.push_back(pos);
    return it->second;
  }
};

// 6-tetrahedra split of the unit cell around the main diagonal 0-7 (corner
// bits xyz). Face diagonals agree between neighboring cells.
constexpr int kTets[6][4] = {{0, 1, 3, 7}, {0, 3, 2, 7}, {0, 2, 6, 7},
                             {0, 6, 4, 7}, {0, 4, 5, 7}, {0, 5, 1, 7}};

struct Connectivity {
  std::vector<std::vector<int>> loops;
  std::vector<int> tri_comp;
  int n_comp = 0;
  bool manifold = true;
  std::vector<char> on_boundary;
};

struct DSU {
  std::vector<int> parent;
  explicit DSU(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

Connectivity build_connectivity(const std::vector<Vec3>& verts,
                                const std::vector<std::array<int, 3>>& tris) {
  Connectivity out;
  out.on_boundary.assign(verts.size(), 0);

  std::unordered_map<std::uint64_t, std::array<int, 2>> edges;
  edges.reserve(tris.size() * 2);
  auto ekey = [](int a, int b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
  };
  for (int t = 0; t < static_cast<int>(tris.size()); ++t) {
    for (int e = 0; e < 3; ++e) {
      auto [it, inserted] =
          edges.try_emplace(ekey(tris[t][e], tris[t][(e + 1) % 3]), std::array<int, 2>{t, -1});
      if (!inserted) {
        if (it->second[1] != -1) out.manifold = false;
        else it->second[1] = t;
      }
    }
  }

  DSU dsu(static_cast<int>(tris.size()));
  std::unordered_map<int, std::vector<std::pair<int, int>>> boundary_adj;  // vertex -> (nbr, edge id)
  std::vector<std::array<int, 2>> boundary_edges;
  for (const auto& [key, pair] : edges) {
    const int a = static_cast<int>(key >> 32), b = static_cast<int>(key & 0xffffffffu);
    if (pair[1] >= 0) {
      dsu.unite(pair[0], pair[1]);
    } else {
      const int id = static_cast<int>(boundary_edges.size());
      boundary_edges.push_back({a, b});
      boundary_adj[a].push_back({b, id});
      boundary_adj[b].push_back({a, id});
      out.on_boundary[a] = out.on_boundary[b] = 1;
    }
  }
  for (const auto& [v, adj] : boundary_adj)
    if (adj.size() != 2) out.manifold = false;

  // Components, numbered in first-appearance order.
  out.tri_comp.assign(tris.size(), -1);
  std::unordered_map<int, int> root_to_comp;
  for (int t = 0; t < static_cast<int>(tris.size()); ++t) {
    const int r = dsu.find(t);
    auto [it, inserted] = root_to_comp.try_emplace(r, out.n_comp);
    if (inserted) ++out.n_comp;
    out.tri_comp[t] = it->second;
  }

  // Boundary loops by walking the two-regular boundary graph.
  std::vector<char> used(boundary_edges.size(), 0);
  if (out.manifold) {
    for (int e0 = 0; e0 < static_cast<int>(boundary_edges.size()); ++e0) {
      if (used[e0]) continue;
      std::vector<int> loop;
      int prev = boundary_edges[e0][0];
      int cur = boundary_edges[e0][1];
      used[e0] = 1;
      loop.push_back(prev);
      while (cur != loop.front()) {
        loop.push_back(cur);
        const auto& adj = boundary_adj[cur];
        bool advanced = false;
        for (const auto& [nbr, eid] : adj) {
          if (!used[eid]) {
            used[eid] = 1;
            prev = cur;
            cur = nbr;
            advanced = true;
            break;
          }
        }
        if (!advanced) break;  // open chain: flagged below
      }
      if (cur != loop.front()) out.manifold = false;
      out.loops.push_back(std::move(loop));
    }
  }
  return out;
}

}  // namespace

SurfaceMesh extract_implicit(const ImplicitSurface& f, const DomainSpec& domain,
                             int grid_n) {
  if (grid_n < 16) throw std::invalid_argument("grid_n must be >= 16");
  const Vec3 lo0 = domain.bbox_min(), hi = domain.bbox_max();
  // Tiny deterministic shift keeps grid nodes off the zero set.
  const Vec3 lo = lo0 - Vec3::Constant(1.2345e-7 * (hi - lo0).maxCoeff());
  const int n = grid_n;
  const Vec3 h = (hi - lo) / n;

  MeshBuilder mb;
  const int stride = n + 1;
  auto node_id = [stride](int i, int j, int k) {
    return static_cast<std::uint64_t>((static_cast<std::uint64_t>(k) * stride + j) * stride + i);
  };
  auto node_pos = [&](int i, int j, int k) {
    return Vec3{lo.x() + i * h.x(), lo.y() + j * h.y(), lo.z() + k * h.z()};
  };

  std::vector<double> layer0(stride * stride), layer1(stride * stride);
  auto fill_layer = [&](std::vector<double>& layer, int k) {
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= n; ++i) layer[j * stride + i] = f.value(node_pos(i, j, k));
  };
  fill_layer(layer0, 0);

  const int corner_off[8][3] = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0},
                                {0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}};

  for (int k = 0; k < n; ++k) {
    fill_layer(layer1, k + 1);
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        double v[8];
        std::uint64_t id[8];
        Vec3 pos[8];
        bool all_pos = true, all_neg = true;
        for (int c = 0; c < 8; ++c) {
          const int ci = i + corner_off[c][0], cj = j + corner_off[c][1];
          const int ck = corner_off[c][2];
          v[c] = (ck == 0 ? layer0 : layer1)[cj * stride + ci];
          all_pos &= v[c] >= 0.0;
          all_neg &= v[c] < 0.0;
        }
        if (all_pos || all_neg) continue;
        for (int c = 0; c < 8; ++c) {
          const int ci = i + corner_off[c][0], cj = j + corner_off[c][1];
          const int ck = k + corner_off[c][2];
          id[c] = node_id(ci, cj, ck);
          pos[c] = node_pos(ci, cj, ck);
        }

        for (const auto& tet : kTets) {
          int inside[4], n_in = 0;
          for (int c = 0; c < 4; ++c)
            if (v[tet[c]] < 0.0) inside[n_in++] = c;
          if (n_in == 0 || n_in == 4) continue;

          auto cut = [&](int a, int b) {
            const int ca = tet[a], cb = tet[b];
            const double t = v[ca] / (v[ca] - v[cb]);
            const Vec3 p = pos[ca] + t * (pos[cb] - pos[ca]);
            const std::uint64_t key = id[ca] < id[cb] ? (id[ca] << 32) | id[cb]
                                                      : (id[cb] << 32) | id[ca];
            return mb.vertex_on_edge(key, p);
          };

          if (n_in == 1 || n_in == 3) {
            // One vertex on its own side: a single triangle of edge cuts.
            int apex = -1;
            if (n_in == 1) apex = inside[0];
            else {
              for (int c = 0; c < 4; ++c)
                if (v[tet[c]] >= 0.0) apex = c;
            }
            int others[3], m = 0;
            for (int c = 0; c < 4; ++c)
              if (c != apex) others[m++] = c;
            const int p0 = cut(apex, others[0]);
            const int p1 = cut(apex, others[1]);
            const int p2 = cut(apex, others[2]);
            if (p0 != p1 && p1 != p2 && p0 != p2) mb.triangles.push_back({p0, p1, p2});
          } else {
            // Two-two split: a quad of cuts, cyclic order (ac, ad, bd, bc).
            const int a = inside[0], b = inside[1];
            int outs[2], m = 0;
            for (int c = 0; c < 4; ++c)
              if (c != a && c != b) outs[m++] = c;
            const int q0 = cut(a, outs[0]);
            const int q1 = cut(a, outs[1]);
            const int q2 = cut(b, outs[1]);
            const int q3 = cut(b, outs[0]);
            if (q0 != q1 && q1 != q2 && q0 != q2) mb.triangles.push_back({q0, q1, q2});
            if (q0 != q2 && q2 != q3 && q0 != q3) mb.triangles.push_back({q0, q2, q3});
          }
        }
      }
    }
    std::swap(layer0, layer1);
  }

  SurfaceMesh mesh;
  if (mb.triangles.empty()) return mesh;

  for (Vec3& p : mb.vertices) project_to_surface(f, p);

  // Clip against the domain boundary, re-cutting straddling triangles.
  std::vector<double> phi(mb.vertices.size());
  for (size_t i = 0; i < mb.vertices.size(); ++i)
    phi[i] = domain.boundary_value(mb.vertices[i]);

  std::vector<Vec3> verts = mb.vertices;
  std::vector<char> on_boundary(verts.size(), 0);
  std::vector<std::array<int, 3>> clipped;
  std::unordered_map<std::uint64_t, int> cut_cache;

  auto boundary_cut = [&](int vi, int vo) {
    const std::uint64_t key = vi < vo
        ? (static_cast<std::uint64_t>(vi) << 32) | static_cast<std::uint32_t>(vo)
        : (static_cast<std::uint64_t>(vo) << 32) | static_cast<std::uint32_t>(vi);
    auto it = cut_cache.find(key);
    if (it != cut_cache.end()) return it->second;
    // Bisection on the segment, then projection onto the boundary curve.
    Vec3 a = verts[vi], b = verts[vo];
    double fa = phi[vi];
    for (int step = 0; step < 40; ++step) {
      const Vec3 m = 0.5 * (a + b);
      const double fm = domain.boundary_value(m);
      if ((fm <= 0.0) == (fa <= 0.0)) { a = m; fa = fm; }
      else b = m;
    }
    Vec3 p = 0.5 * (a + b);
    project_to_boundary_curve(f, domain, p);
    const int idx = static_cast<int>(verts.size());
    verts.push_back(p);
    on_boundary.push_back(1);
    cut_cache.emplace(key, idx);
    return idx;
  };

  for (const auto& tr : mb.triangles) {
    int in[3], out[3], n_in = 0, n_out = 0;
    for (int c = 0; c < 3; ++c) {
      if (phi[tr[c]] <= 0.0) in[n_in++] = tr[c];
      else out[n_out++] = tr[c];
    }
    if (n_in == 3) {
      clipped.push_back(tr);
    } else if (n_in == 1) {
      const int c0 = boundary_cut(in[0], out[0]);
      const int c1 = boundary_cut(in[0], out[1]);
      if (in[0] != c0 && c0 != c1 && in[0] != c1) clipped.push_back({in[0], c0, c1});
    } else if (n_in == 2) {
      const int c0 = boundary_cut(in[0], out[0]);
      const int c1 = boundary_cut(in[1], out[0]);
      if (in[0] != in[1] && in[1] != c1 && in[0] != c1) clipped.push_back({in[0], in[1], c1});
      if (in[0] != c1 && c1 != c0 && in[0] != c0) clipped.push_back({in[0], c1, c0});
    }
  }

  // Compact vertex indices.
  std::vector<int> remap(verts.size(), -1);
  for (const auto& tr : clipped)
    for (int c : tr) remap[c] = 0;
  int nv = 0;
  for (size_t i = 0; i < verts.size(); ++i)
    if (remap[i] == 0) remap[i] = nv++;
  mesh.vertices.reserve(nv);
  mesh.vertex_on_boundary.assign(nv, 0);
  for (size_t i = 0; i < verts.size(); ++i) {
    if (remap[i] >= 0) {
      mesh.vertices.push_back(verts[i]);
      mesh.vertex_on_boundary[remap[i]] = on_boundary[i];
    }
  }
  mesh.triangles.reserve(clipped.size());
  for (const auto& tr : clipped)
    mesh.triangles.push_back({remap[tr[0]], remap[tr[1]], remap[tr[2]]});

  // Orient counterclockwise w.r.t. the gradient field.
  for (auto& tr : mesh.triangles) {
    const Vec3 c = (mesh.vertices[tr[0]] + mesh.vertices[tr[1]] + mesh.vertices[tr[2]]) / 3.0;
    const Vec3 nrm = (mesh.vertices[tr[1]] - mesh.vertices[tr[0]])
                         .cross(mesh.vertices[tr[2]] - mesh.vertices[tr[0]]);
    if (nrm.dot(f.grad(c)) < 0.0) std::swap(tr[1], tr[2]);
  }

  Connectivity conn = build_connectivity(mesh.vertices, mesh.triangles);
  mesh.boundary_loops = std::move(conn.loops);
  mesh.triangle_component = std::move(conn.tri_comp);
  mesh.num_components = conn.n_comp;
  mesh.manifold_ok = conn.manifold;

  // Transversality of the surface against the domain boundary.
  for (size_t i = 0; i < mesh.vertices.size(); ++i) {
    if (!mesh.vertex_on_boundary[i]) continue;
    const Vec3 g = f.grad(mesh.vertices[i]);
    const double gn = g.norm();
    if (gn < 1e-14) { mesh.min_boundary_transversality = 0.0; continue; }
    const Vec3 w = domain.boundary_normal(mesh.vertices[i]);
    const double tang = (g - g.dot(w) * w).norm() / gn;
    mesh.min_boundary_transversality = std::min(mesh.min_boundary_transversality, tang);
  }
  return mesh;
}

namespace {

// Approximate signed distance from the domain; only the near-zero range matters.
double domain_distance(const DomainSpec& dom, const Vec3& p) {
  switch (dom.kind) {
    case DomainSpec::Kind::UnitBall: return p.norm() - 1.0;
    case DomainSpec::Kind::Ball: return (p - dom.center).norm() - dom.radius;
    case DomainSpec::Kind::Omega:
      if (dom.omega->inside(p)) return -1.0;
      return p.norm() - dom.omega->cap_height();
  }
  return 0.0;
}

}  // namespace

SurfaceMesh extract_mesh(const FamilyParameter& p, const DomainSpec& domain,
                         int grid_n) {
  const Vec3 lo = domain.bbox_min(), hi = domain.bbox_max();
  const double forbidden = 2.0 * (hi - lo).maxCoeff() / grid_n;
  const SingularSet sing = singular_set(p);
  if (sing.line) {
    // Distance from the domain to the rotated singular axis {u0, u1, z}.
    const Vec5& a = p.proj.a;
    const double u0 = -a[1] / (2.0 * a[0]);
    const double u1 = a[2] / (2.0 * a[0]);
    const double reach = domain.kind == DomainSpec::Kind::Ball
                             ? domain.center.norm() + domain.radius
                             : 1.0;
    if (std::hypot(u0, u1) <= reach + forbidden)
      throw SingularityTooClose(p.rot.q.transpose() * Vec3{u0, u1, 0.0});
  }
  for (const Vec3& s : sing.points) {
    if (domain_distance(domain, s) <= forbidden) throw SingularityTooClose(s);
  }
  return extract_implicit(make_implicit(p), domain, grid_n);
}

AreaEstimate area(const SurfaceMesh& coarse, const SurfaceMesh& fine, int n) {
  AreaEstimate est;
  const double a_c = coarse.total_area();
  const double a_f = fine.total_area();
  const double diff = std::abs(a_f - a_c);
  est.value = a_f;
  est.error_bound = diff + diff / 3.0;  // Cauchy difference plus the h^2 tail
  est.richardson = a_f + (a_f - a_c) / 3.0;
  est.resolutions_used = {n, 2 * n};
  return est;
}

AreaEstimate area_two_grid(const ImplicitSurface& f, const DomainSpec& domain,
                           int grid_n) {
  const SurfaceMesh coarse = extract_implicit(f, domain, grid_n);
  const SurfaceMesh fine = extract_implicit(f, domain, 2 * grid_n);
  return area(coarse, fine, grid_n);
}

TopologyReport topology(const SurfaceMesh& mesh) {
  if (!mesh.manifold_ok) throw NonManifoldMesh();
  TopologyReport rep;
  rep.components.resize(mesh.num_components);

  const int nv = static_cast<int>(mesh.vertices.size());
  std::vector<int> vert_comp(nv, -1);
  std::vector<std::int64_t> v_count(mesh.num_components, 0), f_count(mesh.num_components, 0),
      e_count(mesh.num_components, 0);

  for (size_t t = 0; t < mesh.triangles.size(); ++t) {
    const int c = mesh.triangle_component[t];
    f_count[c]++;
    for (int v : mesh.triangles[t]) {
      if (vert_comp[v] == -1) { vert_comp[v] = c; v_count[c]++; }
      else if (vert_comp[v] != c) throw NonManifoldMesh();
    }
  }
  std::unordered_map<std::uint64_t, int> seen;
  for (size_t t = 0; t < mesh.triangles.size(); ++t) {
    const auto& tr = mesh.triangles[t];
    for (int e = 0; e < 3; ++e) {
      int a = tr[e], b = tr[(e + 1) % 3];
      if (a > b) std::swap(a, b);
      const std::uint64_t key = (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
      if (seen.emplace(key, 1).second) e_count[mesh.triangle_component[t]]++;
    }
  }
  for (const auto& loop : mesh.boundary_loops) {
    if (loop.empty()) continue;
    const int c = vert_comp[loop.front()];
    if (c >= 0) rep.components[c].boundary_count++;
  }
  for (int c = 0; c < mesh.num_components; ++c) {
    auto& comp = rep.components[c];
    comp.euler_characteristic = static_cast<int>(v_count[c] - e_count[c] + f_count[c]);
    const int two_g = 2 - comp.euler_characteristic - comp.boundary_count;
    if (two_g < 0 || two_g % 2 != 0) throw NonManifoldMesh();
    comp.genus = two_g / 2;
    rep.total_genus += comp.genus;
  }
  return rep;
}

}  // namespace sweepout
