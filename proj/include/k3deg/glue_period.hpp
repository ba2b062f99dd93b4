#pragma once

#include <k3deg/homology.hpp>
#include <k3deg/kulikov.hpp>

namespace k3deg {

namespace detail {

inline const OrderedToricModel& require_model(const PairData& p, int index) {
  if (!p.toric) throw std::invalid_argument("component " + std::to_string(index) + " carries no ordered toric model");
  return *p.toric;
}

/// The stored PairData must be exactly the pair derived from its model.
inline void check_model_consistency(const KulikovConfig& k) {
  if (k.type != KulikovType::III) throw std::invalid_argument("gluing complexes are defined for Type III");
  for (size_t i = 0; i < k.components.size(); ++i) {
    const PairData& p = k.components[i];
    const OrderedToricModel& m = require_model(p, static_cast<int>(i));
    PairData derived = pair_from_model(m);
    if (!(derived.h2.gram() == p.h2.gram()) || derived.boundary != p.boundary)
      throw std::invalid_argument("component " + std::to_string(i) +
                                  ": ordered toric model is inconsistent with the stored pair data");
    if (m.base_fan.size() != p.boundary_count())
      throw std::invalid_argument("component " + std::to_string(i) + ": fan size does not match boundary count");
  }
}

struct GlueIndexing {
  std::vector<std::pair<int, int>> blowups;  // global order: (component, edge of its fan)
  std::vector<int> blowup_offset;            // per component, first global blowup index
  int total_blowups = 0;
};

inline GlueIndexing glue_indexing(const KulikovConfig& k) {
  GlueIndexing idx;
  for (size_t i = 0; i < k.components.size(); ++i) {
    idx.blowup_offset.push_back(idx.total_blowups);
    const OrderedToricModel& m = *k.components[i].toric;
    for (const BlowupRecord& b : m.blowups) {
      idx.blowups.push_back({static_cast<int>(i), b.edge});
      ++idx.total_blowups;
    }
  }
  return idx;
}

}  // namespace detail

/// The gluing complex G0 -> G1 of a Type III configuration with ordered
/// toric models: G0 freely spanned by the internal blow-up records and the
/// double curves, G1 = (+)N_i the cocharacter lattices, the boundary
/// sending E_ijk to the ray it sits on and D_ij to v_ij + v_ji. The
/// cocharacter identification w_i is the 90-degree rotation fixed by the
/// cycle orientation; flip_orientation negates it consistently.
struct GluingComplexData {
  TwoTermComplex complex;
  std::vector<std::pair<int, int>> blowup_columns;  // (component, fan edge)
  int edge_columns_offset = 0;                      // columns [offset, offset+#edges)
};

inline GluingComplexData gluing_complex(const KulikovConfig& k, bool flip_orientation = false) {
  detail::check_well_formed(k);
  detail::check_model_consistency(k);
  detail::GlueIndexing idx = detail::glue_indexing(k);
  int n = static_cast<int>(k.components.size());
  int cols = idx.total_blowups + static_cast<int>(k.edges.size());
  Mat boundary(2 * n, cols);
  int sgn = flip_orientation ? -1 : 1;
  auto add_ray = [&](int component, int fan_edge, int col) {
    const Ray& v = k.components[component].toric->base_fan.rays[fan_edge];
    boundary(2 * component, col) += sgn * v[0];
    boundary(2 * component + 1, col) += sgn * v[1];
  };
  for (int b = 0; b < idx.total_blowups; ++b) add_ray(idx.blowups[b].first, idx.blowups[b].second, b);
  for (size_t e = 0; e < k.edges.size(); ++e) {
    add_ray(k.edges[e].i, k.edges[e].bi, idx.total_blowups + static_cast<int>(e));
    add_ray(k.edges[e].j, k.edges[e].bj, idx.total_blowups + static_cast<int>(e));
  }
  GluingComplexData out;
  out.complex = make_complex(std::move(boundary));
  out.blowup_columns = idx.blowups;
  out.edge_columns_offset = idx.total_blowups;
  return out;
}

/// The period complex P0 -> P1: P0 = (+)H^2(V_i) with its intersection
/// form, P1 = Z^edges, the boundary the signed restriction map (edges
/// oriented i -> j as stored).
inline TwoTermComplex period_complex(const KulikovConfig& k) {
  detail::check_well_formed(k);
  if (k.type != KulikovType::III) throw std::invalid_argument("the period complex is defined for Type III");
  Mat boundary = detail::restriction_map(k);
  int total = boundary.cols;
  Mat form(total, total);
  int off = 0;
  for (const PairData& p : k.components) {
    const Mat& g = p.h2.gram();
    for (int i = 0; i < g.rows; ++i)
      for (int j = 0; j < g.cols; ++j) form(off + i, off + j) = g(i, j);
    off += g.rows;
  }
  return make_complex(std::move(boundary), std::move(form));
}

/// The intermediate complex of the glue-period comparison and the two
/// chain maps into it, with the induced homology comparison:
///   G~0 = (+)_{edge sides} Z Dbar  (+)  Z E_ijk
///   G~1 = Z^edges (+) (+)N_i
///   Dbar_ij -> D_ij + v_ij,  Dbar_ji -> -D_ij + v_ji,  E_ijk -> v_ijk.
/// The map from the gluing complex sends D_ij to Dbar_ij + Dbar_ji and E to
/// E; the map from the period complex sends a class to its restriction
/// degrees on the Dbar and E generators.
struct GluePeriodReport {
  GluingComplexData gluing;
  TwoTermComplex period;
  TwoTermComplex intermediate;
  ChainMap from_gluing;
  ChainMap from_period;
  bool gluing_quasi_iso = false;
  bool period_quasi_iso = false;
  Mat h0_gluing_to_period;    // composite iso in the chosen kernel bases
  IntegerLattice h0_gluing;   // with the transported form
  IntegerLattice h0_period;
  bool forms_agree = false;

  bool ok() const { return gluing_quasi_iso && period_quasi_iso && forms_agree; }
};

struct IntermediateComplexData {
  TwoTermComplex complex;
  ChainMap from_gluing;
  ChainMap from_period;
};

inline GluePeriodReport glue_period_report(const KulikovConfig& k, bool flip_orientation = false);

/// The intermediate complex of the glue-period comparison with its two
/// chain maps.
inline IntermediateComplexData intermediate_complex(const KulikovConfig& k, bool flip_orientation = false) {
  GluePeriodReport rep = glue_period_report(k, flip_orientation);
  return IntermediateComplexData{rep.intermediate, rep.from_gluing, rep.from_period};
}

inline GluePeriodReport glue_period_report(const KulikovConfig& k, bool flip_orientation) {
  GluePeriodReport rep;
  rep.gluing = gluing_complex(k, flip_orientation);
  rep.period = period_complex(k);
  detail::GlueIndexing idx = detail::glue_indexing(k);
  int n = static_cast<int>(k.components.size());
  int ne = static_cast<int>(k.edges.size());
  int nb = idx.total_blowups;
  int sgn = flip_orientation ? -1 : 1;

  // G~0 generators: for edge e the source side Dbar_ij at 2e, target side
  // Dbar_ji at 2e+1; then the blow-ups.
  int gt0 = 2 * ne + nb;
  int gt1 = ne + 2 * n;
  Mat boundary(gt1, gt0);
  auto add_ray = [&](int component, int fan_edge, int col) {
    const Ray& v = k.components[component].toric->base_fan.rays[fan_edge];
    boundary(ne + 2 * component, col) += sgn * v[0];
    boundary(ne + 2 * component + 1, col) += sgn * v[1];
  };
  for (int e = 0; e < ne; ++e) {
    boundary(e, 2 * e) = 1;
    add_ray(k.edges[e].i, k.edges[e].bi, 2 * e);
    boundary(e, 2 * e + 1) = -1;
    add_ray(k.edges[e].j, k.edges[e].bj, 2 * e + 1);
  }
  for (int b = 0; b < nb; ++b) add_ray(idx.blowups[b].first, idx.blowups[b].second, 2 * ne + b);
  rep.intermediate = make_complex(std::move(boundary));

  // chain map from the gluing complex
  {
    Mat f0(gt0, rep.gluing.complex.c0);
    for (int b = 0; b < nb; ++b) f0(2 * ne + b, b) = 1;
    for (int e = 0; e < ne; ++e) {
      f0(2 * e, nb + e) = 1;
      f0(2 * e + 1, nb + e) = 1;
    }
    Mat f1(gt1, 2 * n);
    for (int i = 0; i < 2 * n; ++i) f1(ne + i, i) = 1;
    rep.from_gluing = make_chain_map(rep.gluing.complex, rep.intermediate, std::move(f0), std::move(f1));
  }

  // chain map from the period complex: restriction degrees
  {
    int total = rep.period.c0;
    int off = 0;
    Mat f0(gt0, total);
    for (int i = 0; i < n; ++i) {
      const PairData& p = k.components[i];
      int r = p.h2.rank();
      // degrees against the double curves through this component
      for (int e = 0; e < ne; ++e) {
        if (k.edges[e].i == i) {
          Vec d = p.h2.dual_coords(p.boundary[k.edges[e].bi]);
          for (int t = 0; t < r; ++t) f0(2 * e, off + t) += d[t];
        }
        if (k.edges[e].j == i) {
          Vec d = p.h2.dual_coords(p.boundary[k.edges[e].bj]);
          for (int t = 0; t < r; ++t) f0(2 * e + 1, off + t) += d[t];
        }
      }
      // degrees against the exceptional curves of this component's model
      int m = p.toric->base_fan.size();
      for (size_t rec = 0; rec < p.toric->blowups.size(); ++rec) {
        int global = idx.blowup_offset[i] + static_cast<int>(rec);
        int epos = m - 2 + static_cast<int>(rec);
        for (int t = 0; t < r; ++t) f0(2 * ne + global, off + t) += p.h2.gram()(epos, t);
      }
      off += r;
    }
    Mat f1(gt1, ne);
    for (int e = 0; e < ne; ++e) f1(e, e) = 1;
    rep.from_period = make_chain_map(rep.period, rep.intermediate, std::move(f0), std::move(f1));
  }

  InducedHomology ig = induced_on_homology(rep.from_gluing);
  InducedHomology ip = induced_on_homology(rep.from_period);
  rep.gluing_quasi_iso = ig.h0_bijective && ig.h1_isomorphism;
  rep.period_quasi_iso = ip.h0_bijective && ip.h1_isomorphism;

  HomologyReport hp = homology(rep.period);
  rep.h0_period = IntegerLattice(hp.h0_gram.value(), "H0(P)");
  if (rep.period_quasi_iso) {
    auto p_inv = solve_integer(ip.h0_map, Mat::identity(ip.h0_map.rows));
    if (!p_inv) throw std::logic_error("period H0 map not invertible despite quasi-iso");
    rep.h0_gluing_to_period = *p_inv * ig.h0_map;
    Mat transported = restrict_form(hp.h0_gram.value(), rep.h0_gluing_to_period);
    rep.h0_gluing = IntegerLattice(std::move(transported), "H0(G)");
    rep.forms_agree = rep.h0_gluing.rank() == rep.h0_period.rank() &&
                      signature(rep.h0_gluing) == signature(rep.h0_period) &&
                      rep.h0_gluing.det() == rep.h0_period.det();
  }
  return rep;
}

}  // namespace k3deg
