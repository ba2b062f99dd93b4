#pragma once

#include <k3deg/lattice.hpp>
#include <k3deg/toric.hpp>

#include <array>
#include <map>
#include <set>
#include <sstream>

namespace k3deg {

// ---------------------------------------------------------------------------
// anticanonical pairs

enum class BoundaryKind { CycleOfRationals, SmoothElliptic, TwoElliptic };

inline std::string to_string(BoundaryKind k) {
  switch (k) {
    case BoundaryKind::CycleOfRationals: return "cycle-of-rationals";
    case BoundaryKind::SmoothElliptic: return "smooth-elliptic";
    case BoundaryKind::TwoElliptic: return "two-elliptic";
  }
  return "?";
}

/// Intersection-theoretic model of one component (V, D) of a Kulikov
/// surface: the lattice H^2(V), the classes of the boundary curves D_j
/// (cyclically ordered in Type III), and the numerical kind of D.
struct PairData {
  IntegerLattice h2;
  std::vector<Vec> boundary;
  BoundaryKind kind = BoundaryKind::CycleOfRationals;
  int chi_o = 1;
  std::vector<Int> self_ints;  // must equal the boundary class norms
  std::optional<OrderedToricModel> toric;
  std::string label;

  int boundary_count() const { return static_cast<int>(boundary.size()); }

  /// -K = sum of the boundary classes.
  Vec anticanonical() const {
    Vec k(h2.rank(), Int(0));
    for (const Vec& d : boundary)
      for (int i = 0; i < h2.rank(); ++i) k[i] += d[i];
    return k;
  }
};

inline PairData make_pair_data(IntegerLattice h2, std::vector<Vec> boundary, BoundaryKind kind, int chi_o,
                               std::string label = "") {
  PairData p;
  p.h2 = std::move(h2);
  p.boundary = std::move(boundary);
  p.kind = kind;
  p.chi_o = chi_o;
  p.label = std::move(label);
  for (const Vec& d : p.boundary) {
    p.h2.check_vector(d);
    p.self_ints.push_back(p.h2.norm(d));
  }
  return p;
}

/// The charge of an anticanonical pair:
///   12 + sum_j (-3 - D_j^2)   for nodal D with at least two components,
///   11 - D^2                  for nodal irreducible D (a 1-cycle),
///   12 chi(O_V) - D^2         for smooth D.
inline Int charge(const PairData& p) {
  int m = p.boundary_count();
  switch (p.kind) {
    case BoundaryKind::CycleOfRationals: {
      if (m < 1) throw std::invalid_argument("cycle boundary needs at least one component");
      if (m == 1) return 11 - p.h2.norm(p.boundary[0]);
      Int q = 12;
      for (const Vec& d : p.boundary) q += -3 - p.h2.norm(d);
      return q;
    }
    case BoundaryKind::SmoothElliptic: {
      if (m != 1) throw std::invalid_argument("smooth elliptic boundary must have exactly one component");
      return 12 * p.chi_o - p.h2.norm(p.boundary[0]);
    }
    case BoundaryKind::TwoElliptic: {
      if (m != 2) throw std::invalid_argument("two-elliptic boundary must have exactly two components");
      Vec d = p.anticanonical();
      return 12 * p.chi_o - p.h2.norm(d);
    }
  }
  throw std::logic_error("unknown boundary kind");
}

/// H^2 of a smooth complete toric pair from its fan, as the lattice spanned
/// by the boundary classes [D_2], ..., [D_{m-1}] (the first two rays form a
/// basis of the cocharacter lattice, so their classes are dependent).
/// Returns the expansion of every boundary class in that basis as rows.
struct ToricPicBasis {
  Mat gram;       // (m-2) x (m-2)
  Mat expansion;  // m x (m-2): row j = coordinates of [D_j]
  Mat boundary_q; // m x m boundary intersection matrix
  std::vector<Int> self_ints;
};

inline ToricPicBasis toric_pic_basis(const ToricPairFan& fan) {
  int m = fan.size();
  ToricPicBasis out;
  out.self_ints = fan_self_intersections(fan);
  out.boundary_q = Mat(m, m);
  for (int j = 0; j < m; ++j) {
    out.boundary_q(j, j) = out.self_ints[j];
    out.boundary_q(j, (j + 1) % m) += 1;
    out.boundary_q((j + 1) % m, j) += 1;
  }
  out.expansion = Mat(m, m - 2);
  for (int j = 2; j < m; ++j) out.expansion(j, j - 2) = 1;
  for (int t = 2; t < m; ++t) {
    // [D_0] = -sum_t det(v_t, v_1) [D_t],  [D_1] = -sum_t det(v_0, v_t) [D_t]
    out.expansion(0, t - 2) = -cross(fan.rays[t], fan.rays[1]);
    out.expansion(1, t - 2) = -cross(fan.rays[0], fan.rays[t]);
  }
  out.gram = Mat(m - 2, m - 2);
  for (int i = 2; i < m; ++i)
    for (int j = 2; j < m; ++j) out.gram(i - 2, j - 2) = out.boundary_q(i, j);
  return out;
}

/// PairData of the toric pair itself (charge 0).
inline PairData pair_from_fan(const ToricPairFan& fan) {
  ToricPicBasis pic = toric_pic_basis(fan);
  int m = fan.size();
  std::vector<Vec> boundary;
  for (int j = 0; j < m; ++j) boundary.push_back(pic.expansion.row(j));
  PairData p = make_pair_data(IntegerLattice(pic.gram, fan.label), std::move(boundary),
                              BoundaryKind::CycleOfRationals, 1, fan.label);
  p.toric = OrderedToricModel{fan, {}};
  return p;
}

/// PairData of the anticanonical pair obtained from the base toric pair by
/// the recorded internal blow-ups: H^2 = Pic(base) + Z E_1 + ... + Z E_Q,
/// each strict transform D_j losing one from its square per blow-up on j.
inline PairData pair_from_model(const OrderedToricModel& model) {
  ToricPicBasis pic = toric_pic_basis(model.base_fan);
  int m = model.base_fan.size();
  int q = static_cast<int>(model.blowups.size());
  Mat gram = block_diag(pic.gram, Mat(q, q));
  for (int k = 0; k < q; ++k) gram(m - 2 + k, m - 2 + k) = -1;
  std::vector<Vec> boundary;
  for (int j = 0; j < m; ++j) {
    Vec d(m - 2 + q, Int(0));
    for (int t = 0; t < m - 2; ++t) d[t] = pic.expansion(j, t);
    for (int k = 0; k < q; ++k)
      if (model.blowups[k].edge == j) d[m - 2 + k] = -1;
    boundary.push_back(std::move(d));
  }
  std::string label = model.base_fan.label;
  if (q > 0) label += "+" + std::to_string(q) + "bl";
  PairData p = make_pair_data(IntegerLattice(std::move(gram), label), std::move(boundary),
                              BoundaryKind::CycleOfRationals, 1, label);
  p.toric = model;
  return p;
}

// ---------------------------------------------------------------------------
// Kulikov configurations

enum class KulikovType { II, III };

inline std::string to_string(KulikovType t) { return t == KulikovType::II ? "II" : "III"; }

/// One double curve: components i and j glued along boundary classes bi on
/// V_i and bj on V_j. Self-loops (i == j, bi != bj) model non-normal
/// components. Edges are oriented i -> j as stored.
struct EdgeData {
  int i = 0;
  int j = 0;
  int bi = 0;
  int bj = 0;
  int genus = 0;
};

/// Combinatorial Kulikov surface: components with their intersection
/// theory, double curves, and (Type III) an oriented triangulation of S^2
/// given by vertex triples. `triangle_edges` disambiguates which edge each
/// triangle side uses when multi-edges make vertex triples ambiguous.
struct KulikovConfig {
  KulikovType type = KulikovType::III;
  std::vector<PairData> components;
  std::vector<EdgeData> edges;
  std::vector<std::array<int, 3>> triangles;
  std::optional<std::vector<std::array<int, 3>>> triangle_edges;
  int orientation = 1;
};

struct CheckResult {
  std::string name;
  std::string location;
  bool pass = true;
  std::string message;
};

struct ValidationReport {
  bool valid = true;
  Int total_charge = 0;
  std::vector<Int> component_charges;
  std::vector<CheckResult> checks;
  std::vector<std::string> notes;

  void add(std::string name, std::string location, bool pass, std::string message = "") {
    if (!pass) valid = false;
    checks.push_back(CheckResult{std::move(name), std::move(location), pass, std::move(message)});
  }
};

namespace detail {

/// Structural (malformed-input) checks; these throw rather than report.
inline void check_well_formed(const KulikovConfig& k) {
  int n = static_cast<int>(k.components.size());
  if (n == 0) throw std::invalid_argument("config has no components");
  for (int i = 0; i < n; ++i) {
    const PairData& p = k.components[i];
    if (static_cast<int>(p.self_ints.size()) != p.boundary_count())
      throw std::invalid_argument("self_ints length mismatch on component " + std::to_string(i));
    for (const Vec& d : p.boundary) p.h2.check_vector(d);
  }
  for (size_t e = 0; e < k.edges.size(); ++e) {
    const EdgeData& ed = k.edges[e];
    if (ed.i < 0 || ed.i >= n || ed.j < 0 || ed.j >= n)
      throw std::invalid_argument("edge " + std::to_string(e) + " has an out-of-range component");
    if (ed.bi < 0 || ed.bi >= k.components[ed.i].boundary_count() || ed.bj < 0 ||
        ed.bj >= k.components[ed.j].boundary_count())
      throw std::invalid_argument("edge " + std::to_string(e) + " has an out-of-range boundary index");
    if (ed.i == ed.j && ed.bi == ed.bj)
      throw std::invalid_argument("edge " + std::to_string(e) + " glues a boundary component to itself");
  }
  for (size_t t = 0; t < k.triangles.size(); ++t)
    for (int v : k.triangles[t])
      if (v < 0 || v >= n) throw std::invalid_argument("triangle " + std::to_string(t) + " has an out-of-range vertex");
  if (k.triangle_edges) {
    if (k.triangle_edges->size() != k.triangles.size())
      throw std::invalid_argument("triangle_edges length mismatch");
    for (const auto& te : *k.triangle_edges)
      for (int e : te)
        if (e < 0 || e >= static_cast<int>(k.edges.size()))
          throw std::invalid_argument("triangle_edges entry out of range");
  }
  if (k.orientation != 1 && k.orientation != -1) throw std::invalid_argument("orientation must be +1 or -1");
}

/// Resolve each triangle's three sides (v0->v1, v1->v2, v2->v0) to edge
/// indices. Requires unambiguous vertex pairs unless triangle_edges is
/// given. Throws on malformed incidence data.
inline std::vector<std::array<int, 3>> resolve_triangle_edges(const KulikovConfig& k) {
  std::vector<std::array<int, 3>> out(k.triangles.size());
  if (k.triangle_edges) {
    for (size_t t = 0; t < k.triangles.size(); ++t) {
      for (int s = 0; s < 3; ++s) {
        int e = (*k.triangle_edges)[t][s];
        int a = k.triangles[t][s], b = k.triangles[t][(s + 1) % 3];
        const EdgeData& ed = k.edges[e];
        if (!((ed.i == a && ed.j == b) || (ed.i == b && ed.j == a)))
          throw std::invalid_argument("triangle_edges entry does not match the triangle side");
      }
      out[t] = (*k.triangle_edges)[t];
    }
    return out;
  }
  std::map<std::pair<int, int>, std::vector<int>> by_pair;
  for (size_t e = 0; e < k.edges.size(); ++e) {
    int a = std::min(k.edges[e].i, k.edges[e].j), b = std::max(k.edges[e].i, k.edges[e].j);
    by_pair[{a, b}].push_back(static_cast<int>(e));
  }
  for (size_t t = 0; t < k.triangles.size(); ++t) {
    for (int s = 0; s < 3; ++s) {
      int a = k.triangles[t][s], b = k.triangles[t][(s + 1) % 3];
      auto it = by_pair.find({std::min(a, b), std::max(a, b)});
      if (it == by_pair.end())
        throw std::invalid_argument("triangle side (" + std::to_string(a) + "," + std::to_string(b) +
                                    ") has no matching edge");
      if (it->second.size() > 1)
        throw std::invalid_argument("multi-edge between components " + std::to_string(a) + " and " +
                                    std::to_string(b) + ": provide triangle_edges");
      out[t][s] = it->second[0];
    }
  }
  return out;
}

struct VertexCycle {
  std::vector<int> edges;      // incident edge indices in cyclic order
  std::vector<int> neighbors;  // the vertex at the far end of each edge
  bool closed = false;
};

/// Cyclic order of the edges around each vertex, from the oriented
/// triangles: in triangle (a,b,c) the corner at a turns the side (a,b)
/// into the side (a,c).
inline std::vector<VertexCycle> vertex_cycles(const KulikovConfig& k, const std::vector<std::array<int, 3>>& tri_edges) {
  int n = static_cast<int>(k.components.size());
  // successor[v][edge e entering the corner] = next edge ccw
  std::vector<std::map<int, int>> successor(n);
  std::vector<std::map<int, int>> far_end(n);
  for (size_t t = 0; t < k.triangles.size(); ++t) {
    const auto& tri = k.triangles[t];
    for (int s = 0; s < 3; ++s) {
      int a = tri[s], b = tri[(s + 1) % 3], c = tri[(s + 2) % 3];
      int eab = tri_edges[t][s];
      int eac = tri_edges[t][(s + 2) % 3];
      if (successor[a].count(eab))
        throw std::invalid_argument("corner of vertex " + std::to_string(a) + " visited twice: broken triangulation");
      successor[a][eab] = eac;
      far_end[a][eab] = b;
      far_end[a][eac] = c;
    }
  }
  std::vector<VertexCycle> cycles(n);
  for (int v = 0; v < n; ++v) {
    if (successor[v].empty()) continue;
    int start = successor[v].begin()->first;
    int e = start;
    std::set<int> seen;
    for (size_t guard = 0; guard <= successor[v].size(); ++guard) {
      cycles[v].edges.push_back(e);
      cycles[v].neighbors.push_back(far_end[v][e]);
      seen.insert(e);
      auto it = successor[v].find(e);
      if (it == successor[v].end()) break;
      e = it->second;
      if (e == start) {
        cycles[v].closed = seen.size() == successor[v].size();
        break;
      }
      if (seen.count(e)) break;
    }
  }
  return cycles;
}

}  // namespace detail

/// Full semantic validation: reports every failed check with its location,
/// throws only on malformed incidence data.
inline ValidationReport validate(const KulikovConfig& k) {
  detail::check_well_formed(k);
  ValidationReport rep;
  int n = static_cast<int>(k.components.size());

  // per-component lattice checks
  for (int i = 0; i < n; ++i) {
    const PairData& p = k.components[i];
    std::string loc = "component " + std::to_string(i);
    Signature sig = signature(p.h2);
    rep.add("h2 hyperbolic", loc, p.h2.nondegenerate() && sig == Signature{1, p.h2.rank() - 1, 0},
            "signature (" + std::to_string(sig.positive) + "," + std::to_string(sig.negative) + "," +
                std::to_string(sig.zero) + ")");
    bool selfints_ok = true;
    for (int j = 0; j < p.boundary_count(); ++j)
      if (p.h2.norm(p.boundary[j]) != p.self_ints[j]) selfints_ok = false;
    rep.add("self-intersections match boundary norms", loc, selfints_ok);
    // adjunction bookkeeping: (-K).D_j = D_j^2 + 2 - 2 g_eff with the
    // arithmetic genus 1 for elliptic boundary curves and for a 1-cycle
    Vec ac = p.anticanonical();
    bool adjunction_ok = true;
    for (int j = 0; j < p.boundary_count(); ++j) {
      int g_eff = (p.kind != BoundaryKind::CycleOfRationals || p.boundary_count() == 1) ? 1 : 0;
      if (p.h2.pair(ac, p.boundary[j]) != p.self_ints[j] + 2 - 2 * g_eff) adjunction_ok = false;
    }
    rep.add("adjunction consistency", loc, adjunction_ok);
    try {
      Int q = charge(p);
      rep.component_charges.push_back(q);
      rep.total_charge += q;
    } catch (const std::invalid_argument& e) {
      rep.add("charge well-defined", loc, false, e.what());
      rep.component_charges.push_back(0);
    }
  }

  // edge-side matching: every boundary component of every pair is glued
  // exactly once
  {
    std::map<std::pair<int, int>, int> uses;
    for (const EdgeData& e : k.edges) {
      uses[{e.i, e.bi}]++;
      uses[{e.j, e.bj}]++;
    }
    bool ok = true;
    std::string msg;
    for (int i = 0; i < n; ++i)
      for (int b = 0; b < k.components[i].boundary_count(); ++b) {
        int u = uses.count({i, b}) ? uses[{i, b}] : 0;
        if (u != 1) {
          ok = false;
          msg = "component " + std::to_string(i) + " boundary " + std::to_string(b) + " glued " + std::to_string(u) +
                " times";
        }
      }
    rep.add("double curves match boundary components bijectively", "edges", ok, msg);
  }

  // per-edge checks
  for (size_t e = 0; e < k.edges.size(); ++e) {
    const EdgeData& ed = k.edges[e];
    std::string loc = "edge " + std::to_string(e) + " (" + std::to_string(ed.i) + "," + std::to_string(ed.j) + ")";
    int expected_genus = (k.type == KulikovType::III) ? 0 : 1;
    rep.add("double curve genus matches type", loc, ed.genus == expected_genus);
    Int lhs = k.components[ed.i].h2.norm(k.components[ed.i].boundary[ed.bi]) +
              k.components[ed.j].h2.norm(k.components[ed.j].boundary[ed.bj]);
    rep.add("D_ij^2 + D_ji^2 = 2g - 2", loc, lhs == 2 * ed.genus - 2, "sum is " + to_string(lhs));
  }

  bool has_self_loops = false;
  for (const EdgeData& e : k.edges)
    if (e.i == e.j) has_self_loops = true;

  if (k.type == KulikovType::III) {
    if (k.edges.empty() && k.triangles.empty()) {
      rep.notes.push_back("no double curves: degenerate single-component (Type I stand-in) configuration");
    } else if (has_self_loops) {
      // non-normal components: the lattice-level checks above still apply,
      // but a self-loop's two sides cannot be told apart by vertex pairs,
      // so the orientation bookkeeping is not checked
      rep.notes.push_back("self-loop edges present: triangulation orientation checks skipped");
      int euler = n - static_cast<int>(k.edges.size()) + static_cast<int>(k.triangles.size());
      rep.add("Euler characteristic V - E + F = 2", "triangulation", euler == 2, "V-E+F = " + std::to_string(euler));
    } else {
      auto tri_edges = detail::resolve_triangle_edges(k);
      // each edge on exactly two triangle sides, once per direction
      std::vector<int> fwd(k.edges.size(), 0), bwd(k.edges.size(), 0), uses(k.edges.size(), 0);
      for (size_t t = 0; t < k.triangles.size(); ++t)
        for (int s = 0; s < 3; ++s) {
          int e = tri_edges[t][s];
          int a = k.triangles[t][s], b = k.triangles[t][(s + 1) % 3];
          ++uses[e];
          if (k.edges[e].i == a && k.edges[e].j == b)
            ++fwd[e];
          else
            ++bwd[e];
        }
      bool two_sided = true, oriented = true;
      for (size_t e = 0; e < k.edges.size(); ++e) {
        if (uses[e] != 2) two_sided = false;
        if (fwd[e] != 1 || bwd[e] != 1) oriented = false;
      }
      rep.add("every edge lies on exactly 2 triangles", "triangulation", two_sided);
      rep.add("triangle orientations are coherent", "triangulation", oriented);
      int euler = n - static_cast<int>(k.edges.size()) + static_cast<int>(k.triangles.size());
      rep.add("Euler characteristic V - E + F = 2", "triangulation", euler == 2,
              "V-E+F = " + std::to_string(euler));
      // boundary cyclic order around each vertex matches the stored
      // boundary order of the component
      if (two_sided && oriented) {
        auto cycles = detail::vertex_cycles(k, tri_edges);
        bool cyclic_ok = true;
        std::string msg;
        for (int v = 0; v < n; ++v) {
          const auto& cyc = cycles[v];
          int m = k.components[v].boundary_count();
          if (!cyc.closed || static_cast<int>(cyc.edges.size()) != m) {
            cyclic_ok = false;
            msg = "vertex " + std::to_string(v) + " star is not a closed cycle through all boundary components";
            continue;
          }
          std::vector<int> order;
          for (int e : cyc.edges) order.push_back(k.edges[e].i == v ? k.edges[e].bi : k.edges[e].bj);
          // must be a rotation of 0..m-1 (ascending for orientation +1)
          auto is_rotation = [&](int dir) {
            for (int start = 0; start < m; ++start) {
              bool ok = true;
              for (int t = 0; t < m; ++t)
                if (order[t] != ((start + dir * t) % m + m) % m) ok = false;
              if (ok) return true;
            }
            return false;
          };
          if (!is_rotation(k.orientation)) {
            cyclic_ok = false;
            msg = "vertex " + std::to_string(v) + " boundary order disagrees with the triangulation";
          }
        }
        rep.add("boundary order consistent with triangulation", "triangulation", cyclic_ok, msg);
      }
    }
  } else {
    // Type II: components form a chain 0 - 1 - ... - n-1
    bool chain = static_cast<int>(k.edges.size()) == n - 1;
    for (size_t e = 0; e < k.edges.size(); ++e)
      if (!(k.edges[e].i == static_cast<int>(e) && k.edges[e].j == static_cast<int>(e) + 1)) chain = false;
    rep.add("dual complex is a chain", "edges", chain);
    rep.add("no triangles in Type II", "triangulation", k.triangles.empty());
    bool kinds_ok = true;
    for (int i = 0; i < n; ++i) {
      BoundaryKind expect = (i == 0 || i == n - 1) ? BoundaryKind::SmoothElliptic : BoundaryKind::TwoElliptic;
      if (n == 1) expect = BoundaryKind::SmoothElliptic;
      if (k.components[i].kind != expect) kinds_ok = false;
    }
    rep.add("elliptic boundary kinds along the chain", "components", kinds_ok);
  }

  // ordered toric models, when present, must derive the stored pair data;
  // a full set of models must carry exactly 24 internal blow-ups
  {
    bool all_models = true;
    int blowups = 0;
    for (int i = 0; i < n; ++i) {
      const PairData& p = k.components[i];
      if (!p.toric) {
        all_models = false;
        continue;
      }
      blowups += static_cast<int>(p.toric->blowups.size());
      bool consistent = true;
      try {
        PairData derived = pair_from_model(*p.toric);
        consistent = derived.h2.gram() == p.h2.gram() && derived.boundary == p.boundary;
      } catch (const std::exception&) {
        consistent = false;
      }
      rep.add("toric model consistent with pair data", "component " + std::to_string(i), consistent);
    }
    if (all_models)
      rep.add("ordered toric models carry 24 internal blow-ups", "global", blowups == 24,
              std::to_string(blowups) + " blow-ups");
  }

  rep.add("total charge is 24", "global", rep.total_charge == 24, "sum Q = " + to_string(rep.total_charge));
  return rep;
}

/// Number of triple points: the triangles of the dual complex.
inline int triple_point_count(const KulikovConfig& k) {
  if (k.type != KulikovType::III) throw std::invalid_argument("triple points exist only in Type III");
  return static_cast<int>(k.triangles.size());
}

inline bool euler_check(const KulikovConfig& k) {
  if (k.type != KulikovType::III) throw std::invalid_argument("euler_check applies to Type III");
  return static_cast<int>(k.components.size()) - static_cast<int>(k.edges.size()) +
             static_cast<int>(k.triangles.size()) ==
         2;
}

}  // namespace k3deg

#include <k3deg/kulikov_lattices.hpp>
#include <k3deg/base_change.hpp>
#include <k3deg/monodromy.hpp>
