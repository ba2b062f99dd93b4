#pragma once

#include <k3deg/kulikov.hpp>

namespace k3deg {

namespace detail {

/// Fill-in component over an interior vertex of a subdivided triangle: the
/// star is six unit triangles, a hexagonal fan with all boundary squares -1.
inline ToricPairFan interior_fill_fan() {
  return ToricPairFan{{Ray{1, 0}, Ray{0, 1}, Ray{-1, 1}, Ray{-1, 0}, Ray{0, -1}, Ray{1, -1}}, "dP6"};
}

/// Fill-in component over a point subdividing an edge whose double curve
/// has square m on the source component: developing the two adjacent
/// (scaled) triangles across the edge places the far corner at (-m, -1),
/// giving a hexagonal fan with boundary squares (m, -1, -1, -2-m, -1, -1).
/// Ray 0 points along the edge toward the target component.
inline ToricPairFan edge_fill_fan(const Int& m) {
  return ToricPairFan{{Ray{1, 0}, Ray{0, 1}, Ray{-1, 1}, Ray{-1, 0}, Ray{-m - 1, -1}, Ray{-m, -1}},
                      "edgefill(" + to_string(m) + ")"};
}

struct SubdivisionBuilder {
  const KulikovConfig& parent;
  int order;
  std::vector<std::array<int, 3>> tri_edges;

  int next_id = 0;
  std::map<std::pair<int, int>, int> edge_point_id;          // (edge, step from edge.i) -> id
  std::map<std::tuple<int, int, int>, int> interior_id;      // (triangle, beta, gamma) -> id
  std::vector<std::vector<int>> neighbor_lists;              // per new vertex, in boundary order
  std::vector<PairData> new_components;

  explicit SubdivisionBuilder(const KulikovConfig& k, int ord) : parent(k), order(ord) {
    tri_edges = resolve_triangle_edges(k);
    next_id = static_cast<int>(k.components.size());
  }

  int corner_id(int v) const { return v; }

  int get_edge_point(int e, int step) {
    auto [it, inserted] = edge_point_id.try_emplace({e, step}, next_id);
    if (inserted) ++next_id;
    return it->second;
  }

  int get_interior(int t, int beta, int gamma) {
    auto [it, inserted] = interior_id.try_emplace({t, beta, gamma}, next_id);
    if (inserted) ++next_id;
    return it->second;
  }

  /// Global id of the grid point of triangle t with barycentric weights
  /// (alpha, beta, gamma) on its stored vertices (p, q, r).
  int vertex_at(int t, int alpha, int beta, int gamma) {
    const auto& tri = parent.triangles[t];
    if (beta == 0 && gamma == 0) return corner_id(tri[0]);
    if (alpha == 0 && gamma == 0) return corner_id(tri[1]);
    if (alpha == 0 && beta == 0) return corner_id(tri[2]);
    if (gamma == 0) {  // side (p, q)
      int e = tri_edges[t][0];
      int step = (parent.edges[e].i == tri[0]) ? beta : alpha;
      return get_edge_point(e, step);
    }
    if (alpha == 0) {  // side (q, r)
      int e = tri_edges[t][1];
      int step = (parent.edges[e].i == tri[1]) ? gamma : beta;
      return get_edge_point(e, step);
    }
    if (beta == 0) {  // side (r, p)
      int e = tri_edges[t][2];
      int step = (parent.edges[e].i == tri[2]) ? alpha : gamma;
      return get_edge_point(e, step);
    }
    return get_interior(t, beta, gamma);
  }

  /// Barycentric lookup in the triangle adjacent to edge e containing the
  /// directed slot from -> to; weights are given against (from, to, third).
  int vertex_in_slot_triangle(int e, bool forward, int w_from, int w_to, int w_third) {
    for (size_t t = 0; t < parent.triangles.size(); ++t) {
      for (int s = 0; s < 3; ++s) {
        if (tri_edges[t][s] != e) continue;
        int a = parent.triangles[t][s], b = parent.triangles[t][(s + 1) % 3];
        bool slot_forward = (parent.edges[e].i == a && parent.edges[e].j == b);
        if (slot_forward != forward) continue;
        int w[3];
        w[s] = w_from;
        w[(s + 1) % 3] = w_to;
        w[(s + 2) % 3] = w_third;
        return vertex_at(static_cast<int>(t), w[0], w[1], w[2]);
      }
    }
    throw std::logic_error("oriented slot not found for edge " + std::to_string(e));
  }
};

}  // namespace detail

/// Standard order-k resolution of base change. Type III: every triangle of
/// the dual complex is subdivided into k^2 triangles and the new vertices
/// are filled in with the standard toric components prescribed by the local
/// lattice subdivision. Type II: every double curve is replaced by a chain
/// of k-1 minimal elliptic ruled components.
inline KulikovConfig base_change_resolution(const KulikovConfig& k, int order) {
  if (order < 1) throw std::invalid_argument("base change order must be >= 1");
  ValidationReport pre = validate(k);
  if (!pre.valid) throw std::invalid_argument("base change requires a valid Kulikov configuration");
  if (order == 1) return k;

  if (k.type == KulikovType::II) {
    KulikovConfig out;
    out.type = KulikovType::II;
    out.orientation = k.orientation;
    for (size_t c = 0; c < k.components.size(); ++c) {
      out.components.push_back(k.components[c]);
      if (c + 1 < k.components.size()) {
        const EdgeData& e = k.edges[c];
        Int m = k.components[e.i].h2.norm(k.components[e.i].boundary[e.bi]);
        for (int s = 1; s < order; ++s) {
          // P_E(O + L) with deg L = m: sections of squares -m and +m
          Mat g{{-m, 1}, {1, 0}};
          std::vector<Vec> boundary{Vec{1, 0}, Vec{1, m}};
          PairData w = make_pair_data(IntegerLattice(std::move(g), "ell-ruled(" + to_string(m) + ")"),
                                      std::move(boundary), BoundaryKind::TwoElliptic, 0,
                                      "ell-ruled(" + to_string(m) + ")");
          out.components.push_back(std::move(w));
        }
      }
    }
    // chain edges: V_i, W_1, ..., W_{order-1}, V_{i+1} repeated
    int stride = order;  // new index of original component c is c * order
    for (size_t c = 0; c + 1 < k.components.size(); ++c) {
      const EdgeData& e = k.edges[c];
      int base = static_cast<int>(c) * stride;
      for (int s = 0; s < order; ++s) {
        EdgeData ne;
        ne.i = base + s;
        ne.j = base + s + 1;
        ne.bi = (s == 0) ? e.bi : 1;
        ne.bj = (s == order - 1) ? e.bj : 0;
        ne.genus = 1;
        out.edges.push_back(ne);
      }
    }
    return out;
  }

  // Type III
  for (const EdgeData& e : k.edges)
    if (e.i == e.j)
      throw std::invalid_argument(
          "base change of configurations with self-loop edges is not supported: the subdivision "
          "cannot tell the two sides of the loop apart from the triangle data");
  detail::SubdivisionBuilder sb(k, order);
  int n = static_cast<int>(k.components.size());
  auto tri_edges = sb.tri_edges;

  // neighbor lists: original corners keep their boundary order
  sb.neighbor_lists.assign(n, {});
  for (int v = 0; v < n; ++v) {
    int m = k.components[v].boundary_count();
    sb.neighbor_lists[v].assign(m, -1);
    for (int b = 0; b < m; ++b) {
      // the edge glued to boundary component b of v
      int found = -1;
      bool from_i = false;
      for (size_t e = 0; e < k.edges.size(); ++e) {
        if (k.edges[e].i == v && k.edges[e].bi == b) {
          found = static_cast<int>(e);
          from_i = true;
          break;
        }
        if (k.edges[e].j == v && k.edges[e].bj == b) {
          found = static_cast<int>(e);
          from_i = false;
          break;
        }
      }
      if (found < 0) throw std::logic_error("validated config lost an edge side");
      sb.neighbor_lists[v][b] = sb.get_edge_point(found, from_i ? 1 : order - 1);
    }
  }

  // edge subdivision points
  std::vector<PairData> edge_components;
  std::vector<std::vector<int>> edge_neighbor_lists;
  std::vector<int> edge_vertex_ids;
  for (size_t e = 0; e < k.edges.size(); ++e) {
    const EdgeData& ed = k.edges[e];
    Int m = k.components[ed.i].h2.norm(k.components[ed.i].boundary[ed.bi]);
    for (int s = 1; s < order; ++s) {
      int id = sb.get_edge_point(static_cast<int>(e), s);
      std::vector<int> nb(6);
      nb[0] = (s + 1 < order) ? sb.get_edge_point(static_cast<int>(e), s + 1) : sb.corner_id(ed.j);
      nb[1] = sb.vertex_in_slot_triangle(static_cast<int>(e), true, order - s - 1, s, 1);
      nb[2] = sb.vertex_in_slot_triangle(static_cast<int>(e), true, order - s, s - 1, 1);
      nb[3] = (s - 1 >= 1) ? sb.get_edge_point(static_cast<int>(e), s - 1) : sb.corner_id(ed.i);
      nb[4] = sb.vertex_in_slot_triangle(static_cast<int>(e), false, s - 1, order - s, 1);
      nb[5] = sb.vertex_in_slot_triangle(static_cast<int>(e), false, s, order - s - 1, 1);
      PairData p = pair_from_fan(detail::edge_fill_fan(m));
      p.label = "fill-e" + std::to_string(e) + "s" + std::to_string(s);
      edge_components.push_back(std::move(p));
      edge_neighbor_lists.push_back(std::move(nb));
      edge_vertex_ids.push_back(id);
    }
  }

  // interior points
  std::vector<PairData> interior_components;
  std::vector<std::vector<int>> interior_neighbor_lists;
  std::vector<int> interior_vertex_ids;
  for (size_t t = 0; t < k.triangles.size(); ++t) {
    for (int alpha = 1; alpha <= order - 2; ++alpha)
      for (int beta = 1; alpha + beta <= order - 1; ++beta) {
        int gamma = order - alpha - beta;
        if (gamma < 1) continue;
        int id = sb.get_interior(static_cast<int>(t), beta, gamma);
        std::vector<int> nb(6);
        nb[0] = sb.vertex_at(static_cast<int>(t), alpha - 1, beta + 1, gamma);
        nb[1] = sb.vertex_at(static_cast<int>(t), alpha - 1, beta, gamma + 1);
        nb[2] = sb.vertex_at(static_cast<int>(t), alpha, beta - 1, gamma + 1);
        nb[3] = sb.vertex_at(static_cast<int>(t), alpha + 1, beta - 1, gamma);
        nb[4] = sb.vertex_at(static_cast<int>(t), alpha + 1, beta, gamma - 1);
        nb[5] = sb.vertex_at(static_cast<int>(t), alpha, beta + 1, gamma - 1);
        PairData p = pair_from_fan(detail::interior_fill_fan());
        p.label = "fill-t" + std::to_string(t) + "(" + std::to_string(beta) + "," + std::to_string(gamma) + ")";
        interior_components.push_back(std::move(p));
        interior_neighbor_lists.push_back(std::move(nb));
        interior_vertex_ids.push_back(id);
      }
  }

  // assemble components in id order
  KulikovConfig out;
  out.type = KulikovType::III;
  out.orientation = k.orientation;
  out.components.resize(sb.next_id);
  std::vector<std::vector<int>> nb_lists(sb.next_id);
  for (int v = 0; v < n; ++v) {
    out.components[v] = k.components[v];
    nb_lists[v] = sb.neighbor_lists[v];
  }
  for (size_t x = 0; x < edge_vertex_ids.size(); ++x) {
    out.components[edge_vertex_ids[x]] = edge_components[x];
    nb_lists[edge_vertex_ids[x]] = edge_neighbor_lists[x];
  }
  for (size_t x = 0; x < interior_vertex_ids.size(); ++x) {
    out.components[interior_vertex_ids[x]] = interior_components[x];
    nb_lists[interior_vertex_ids[x]] = interior_neighbor_lists[x];
  }

  // edges from the matched neighbor lists
  std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> slots;  // (u,v) -> [(vertex, position)]
  for (int u = 0; u < sb.next_id; ++u)
    for (size_t b = 0; b < nb_lists[u].size(); ++b) {
      int v = nb_lists[u][b];
      if (v < 0) throw std::logic_error("unresolved neighbor");
      slots[{std::min(u, v), std::max(u, v)}].push_back({u, static_cast<int>(b)});
    }
  for (auto& [pair_uv, occ] : slots) {
    if (occ.size() != 2)
      throw std::invalid_argument("base change produced a degenerate gluing (multi-edge or self-loop)");
    EdgeData e;
    e.i = occ[0].first;
    e.bi = occ[0].second;
    e.j = occ[1].first;
    e.bj = occ[1].second;
    e.genus = 0;
    out.edges.push_back(e);
  }

  // triangles of the subdivision
  for (size_t t = 0; t < k.triangles.size(); ++t) {
    for (int alpha = 0; alpha <= order - 1; ++alpha)
      for (int beta = 0; alpha + beta <= order - 1; ++beta) {
        int gamma = order - 1 - alpha - beta;
        out.triangles.push_back({sb.vertex_at(static_cast<int>(t), alpha + 1, beta, gamma),
                                 sb.vertex_at(static_cast<int>(t), alpha, beta + 1, gamma),
                                 sb.vertex_at(static_cast<int>(t), alpha, beta, gamma + 1)});
      }
    for (int alpha = 0; alpha <= order - 2; ++alpha)
      for (int beta = 0; alpha + beta <= order - 2; ++beta) {
        int gamma = order - 2 - alpha - beta;
        out.triangles.push_back({sb.vertex_at(static_cast<int>(t), alpha, beta + 1, gamma + 1),
                                 sb.vertex_at(static_cast<int>(t), alpha + 1, beta, gamma + 1),
                                 sb.vertex_at(static_cast<int>(t), alpha + 1, beta + 1, gamma)});
      }
  }
  return out;
}

}  // namespace k3deg
