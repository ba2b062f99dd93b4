#pragma once

#include <k3deg/glue_period.hpp>
#include <k3deg/homology.hpp>
#include <k3deg/kulikov.hpp>

#include <json.hpp>

namespace k3deg {

using Json = nlohmann::json;

// Arbitrary-precision integers ride as JSON numbers when they fit in 64
// bits and as decimal strings otherwise.
inline Json int_to_json(const Int& x) {
  if (x >= std::numeric_limits<int64_t>::min() && x <= std::numeric_limits<int64_t>::max())
    return static_cast<int64_t>(x);
  return x.str();
}

inline Int int_from_json(const Json& j) {
  if (j.is_number_integer()) return Int(j.get<int64_t>());
  if (j.is_string()) return Int(j.get<std::string>());
  throw std::invalid_argument("expected an integer or a decimal string");
}

inline Json matrix_to_json(const Mat& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows; ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols; ++j) row.push_back(int_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Mat matrix_from_json(const Json& j, int expect_cols = -1) {
  if (!j.is_array()) throw std::invalid_argument("expected a matrix (array of arrays)");
  int rows = static_cast<int>(j.size());
  int cols = rows ? static_cast<int>(j[0].size()) : std::max(expect_cols, 0);
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(j[i].size()) != cols) throw std::invalid_argument("ragged matrix");
    for (int c = 0; c < cols; ++c) m(i, c) = int_from_json(j[i][c]);
  }
  return m;
}

inline Json vec_to_json(const Vec& v) {
  Json a = Json::array();
  for (const Int& x : v) a.push_back(int_to_json(x));
  return a;
}

inline Vec vec_from_json(const Json& j) {
  Vec v;
  for (const auto& x : j) v.push_back(int_from_json(x));
  return v;
}

// ---------------------------------------------------------------------------
// lattices: {"label": str, "gram": [[int]]}

inline Json lattice_to_json(const IntegerLattice& l) {
  return Json{{"label", l.label()}, {"gram", matrix_to_json(l.gram())}};
}

inline IntegerLattice lattice_from_json(const Json& j) {
  if (!j.contains("gram")) throw std::invalid_argument("lattice JSON needs a \"gram\" field");
  std::string label = j.value("label", std::string{});
  return IntegerLattice(matrix_from_json(j["gram"]), label);
}

// ---------------------------------------------------------------------------
// complexes: {"c0": int, "c1": int, "boundary": [[int]], "form0": [[int]]|null}

inline Json complex_to_json(const TwoTermComplex& c) {
  Json j{{"c0", c.c0}, {"c1", c.c1}, {"boundary", matrix_to_json(c.boundary)}};
  j["form0"] = c.form0 ? matrix_to_json(*c.form0) : Json();
  return j;
}

inline TwoTermComplex complex_from_json(const Json& j) {
  int c0 = j.at("c0").get<int>();
  int c1 = j.at("c1").get<int>();
  Mat boundary = matrix_from_json(j.at("boundary"), c0);
  if (boundary.rows == 0) boundary = Mat(c1, c0);
  if (boundary.rows != c1 || boundary.cols != c0)
    throw std::invalid_argument("boundary matrix shape disagrees with c0/c1");
  std::optional<Mat> form0;
  if (j.contains("form0") && !j["form0"].is_null()) form0 = matrix_from_json(j["form0"], c0);
  return make_complex(std::move(boundary), std::move(form0));
}

// ---------------------------------------------------------------------------
// Kulikov configurations

inline Json pair_to_json(const PairData& p) {
  Json j;
  j["h2"] = lattice_to_json(p.h2);
  Json bd = Json::array();
  for (const Vec& d : p.boundary) bd.push_back(vec_to_json(d));
  j["boundary"] = std::move(bd);
  j["kind"] = to_string(p.kind);
  j["chiO"] = p.chi_o;
  if (!p.label.empty()) j["label"] = p.label;
  if (p.toric) {
    Json rays = Json::array();
    for (const Ray& r : p.toric->base_fan.rays) rays.push_back(Json::array({int_to_json(r[0]), int_to_json(r[1])}));
    Json blowups = Json::array();
    for (const BlowupRecord& b : p.toric->blowups) blowups.push_back(Json{{"edge", b.edge}});
    j["toric_model"] = Json{{"rays", std::move(rays)}, {"blowups", std::move(blowups)}};
  }
  return j;
}

inline BoundaryKind kind_from_string(const std::string& s) {
  if (s == "cycle-of-rationals") return BoundaryKind::CycleOfRationals;
  if (s == "smooth-elliptic") return BoundaryKind::SmoothElliptic;
  if (s == "two-elliptic") return BoundaryKind::TwoElliptic;
  throw std::invalid_argument("unknown boundary kind: " + s);
}

inline PairData pair_from_json(const Json& j) {
  IntegerLattice h2 = lattice_from_json(j.at("h2"));
  std::vector<Vec> boundary;
  for (const auto& b : j.at("boundary")) boundary.push_back(vec_from_json(b));
  BoundaryKind kind = kind_from_string(j.at("kind").get<std::string>());
  int chi_o = j.at("chiO").get<int>();
  PairData p = make_pair_data(std::move(h2), std::move(boundary), kind, chi_o, j.value("label", std::string{}));
  if (j.contains("self_ints")) {
    std::vector<Int> si;
    for (const auto& x : j["self_ints"]) si.push_back(int_from_json(x));
    p.self_ints = std::move(si);
  }
  if (j.contains("toric_model")) {
    const Json& tm = j["toric_model"];
    OrderedToricModel model;
    for (const auto& r : tm.at("rays")) model.base_fan.rays.push_back(Ray{int_from_json(r[0]), int_from_json(r[1])});
    model.base_fan.label = p.label;
    if (tm.contains("blowups"))
      for (const auto& b : tm["blowups"]) model.blowups.push_back(BlowupRecord{b.at("edge").get<int>()});
    p.toric = std::move(model);
  }
  return p;
}

inline Json config_to_json(const KulikovConfig& k) {
  Json j;
  j["type"] = to_string(k.type);
  Json comps = Json::array();
  for (const PairData& p : k.components) comps.push_back(pair_to_json(p));
  j["components"] = std::move(comps);
  Json edges = Json::array();
  for (const EdgeData& e : k.edges)
    edges.push_back(Json{{"i", e.i}, {"j", e.j}, {"bi", e.bi}, {"bj", e.bj}, {"genus", e.genus}});
  j["edges"] = std::move(edges);
  Json tris = Json::array();
  for (const auto& t : k.triangles) tris.push_back(Json::array({t[0], t[1], t[2]}));
  j["triangles"] = std::move(tris);
  if (k.triangle_edges) {
    Json te = Json::array();
    for (const auto& t : *k.triangle_edges) te.push_back(Json::array({t[0], t[1], t[2]}));
    j["triangle_edges"] = std::move(te);
  }
  j["orientation"] = k.orientation;
  return j;
}

inline KulikovConfig config_from_json(const Json& j) {
  KulikovConfig k;
  std::string type = j.at("type").get<std::string>();
  if (type == "II")
    k.type = KulikovType::II;
  else if (type == "III")
    k.type = KulikovType::III;
  else
    throw std::invalid_argument("type must be \"II\" or \"III\"");
  for (const auto& c : j.at("components")) k.components.push_back(pair_from_json(c));
  if (j.contains("edges"))
    for (const auto& e : j["edges"])
      k.edges.push_back(EdgeData{e.at("i").get<int>(), e.at("j").get<int>(), e.at("bi").get<int>(),
                                 e.at("bj").get<int>(), e.value("genus", k.type == KulikovType::II ? 1 : 0)});
  if (j.contains("triangles"))
    for (const auto& t : j["triangles"]) k.triangles.push_back({t[0].get<int>(), t[1].get<int>(), t[2].get<int>()});
  if (j.contains("triangle_edges")) {
    std::vector<std::array<int, 3>> te;
    for (const auto& t : j["triangle_edges"]) te.push_back({t[0].get<int>(), t[1].get<int>(), t[2].get<int>()});
    k.triangle_edges = std::move(te);
  }
  k.orientation = j.value("orientation", 1);
  return k;
}

}  // namespace k3deg
