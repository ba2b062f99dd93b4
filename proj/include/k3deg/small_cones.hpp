#pragma once

#include <k3deg/lattice.hpp>

#include <map>

namespace k3deg {

/// One wall of the small-cone decomposition of a rank-2 hyperbolic lattice M:
/// the perpendicular (inside the positive cone) of a class beta whose
/// M-projection has the stored pairing vector. Walls coming from roots that
/// lie in M itself are flagged; the rest presume an ambient K3 embedding of
/// the rank-3 extension.
struct Wall {
  Vec ray;     // primitive integer direction in the positive cone, M-coords
  Vec normal;  // pairings of beta with the basis of M, sign-normalized
  bool in_m_root = false;
  std::optional<std::pair<Int, Int>> ab;  // the (a,b) datum for M = H(n)
};

struct WallSet {
  IntegerLattice m;
  std::vector<Wall> walls;
  Int chamber_count = 1;
  Vec positive_cone_reference;  // interior vector fixing the component
  bool assumes_ambient_realizability = false;
};

namespace detail {

inline Vec primitive(Vec v) {
  Int g = gcd_of(v);
  if (g > 1)
    for (Int& x : v) x /= g;
  return v;
}

inline bool lex_positive(const Vec& v) {
  for (const Int& x : v) {
    if (x > 0) return true;
    if (x < 0) return false;
  }
  return false;
}

inline Vec lex_normalized(Vec v) {
  if (!lex_positive(v))
    for (Int& x : v) x = -x;
  return v;
}

/// Deterministic interior point of one component of {v^2 > 0}: the first
/// lex-positive vector of positive norm in boxes of growing radius.
inline Vec positive_cone_reference(const IntegerLattice& m) {
  for (Int r = 1; r <= 64; ++r) {
    for (Int x = -r; x <= r; ++x)
      for (Int y = -r; y <= r; ++y) {
        if (abs(x) != r && abs(y) != r) continue;
        Vec v{x, y};
        if (!lex_positive(v)) continue;
        if (m.norm(v) > 0) return v;
      }
  }
  throw std::invalid_argument("no positive-norm vector found; is the lattice hyperbolic?");
}

}  // namespace detail

/// Walls of the small-cone decomposition of H(n) from the explicit
/// description: one wall with ray (b, a) for every a, b >= 1 with ab < n,
/// plus (for n = 1 only) the wall of the in-M root e - f at the ray (1,1).
inline WallSet h_n_walls(const Int& n) {
  if (n < 1) throw std::invalid_argument("h_n_walls requires n >= 1");
  WallSet ws;
  ws.m = lattice_H(n);
  ws.positive_cone_reference = Vec{1, 1};
  ws.assumes_ambient_realizability = n > 1;
  std::map<Vec, Wall> by_ray;
  for (Int a = 1; a < n; ++a)
    for (Int b = 1; a * b < n; ++b) {
      Wall w;
      w.ray = detail::primitive(Vec{b, a});
      w.normal = detail::lex_normalized(Vec{a, -b});
      w.ab = std::make_pair(a, b);
      by_ray.emplace(w.ray, std::move(w));
    }
  if (n == 1) {
    Wall w;
    w.ray = Vec{1, 1};
    w.normal = detail::lex_normalized(ws.m.dual_coords(Vec{1, -1}));
    w.in_m_root = true;
    by_ray.emplace(w.ray, std::move(w));
  }
  for (auto& [ray, w] : by_ray) ws.walls.push_back(w);
  ws.chamber_count = Int(ws.walls.size()) + 1;
  return ws;
}

/// Walls of the small-cone decomposition for a general rank-2 hyperbolic M,
/// enumerating dual-lattice candidates beta_M with -2 <= beta_M^2 < 0 and
/// dual coordinates bounded by height_bound. A candidate is kept when
/// either beta lies in M with beta^2 = -2, or the rank-3 extension
/// [[gram, c], [c^T, -2]] is hyperbolic of signature (1,2); ambient
/// realizability of the latter inside the K3 lattice is assumed.
inline WallSet rank2_walls(const IntegerLattice& m, const Int& height_bound) {
  if (m.rank() != 2 || signature(m) != Signature{1, 1, 0})
    throw std::invalid_argument("rank2_walls requires a rank-2 lattice of signature (1,1)");
  if (height_bound < 1) throw std::invalid_argument("height_bound must be >= 1");
  WallSet ws;
  ws.m = m;
  ws.positive_cone_reference = detail::positive_cone_reference(m);
  ws.assumes_ambient_realizability = true;
  const Mat& g = m.gram();
  Int d = m.det();  // negative for signature (1,1)
  std::map<Vec, Wall> by_ray;
  for (Int c1 = -height_bound; c1 <= height_bound; ++c1)
    for (Int c2 = -height_bound; c2 <= height_bound; ++c2) {
      if (c1 == 0 && c2 == 0) continue;
      Vec c{c1, c2};
      // beta_M^2 = c^T G^{-1} c exactly: adj(G) = [[g11, -g01], [-g10, g00]]
      Int adj_quad = g(1, 1) * c1 * c1 - 2 * g(0, 1) * c1 * c2 + g(0, 0) * c2 * c2;
      Rat beta2 = Rat(adj_quad) / Rat(d);
      if (!(beta2 >= -2 && beta2 < 0)) continue;
      bool keep = false;
      bool in_m = false;
      if (beta2 == -2) {
        // beta in M itself: integral coordinates G^{-1} c
        Int x_num = g(1, 1) * c1 - g(0, 1) * c2;
        Int y_num = -g(1, 0) * c1 + g(0, 0) * c2;
        if (x_num % d == 0 && y_num % d == 0) {
          keep = true;
          in_m = true;
        }
      }
      if (!keep) {
        Mat ext(3, 3);
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j) ext(i, j) = g(i, j);
        ext(0, 2) = ext(2, 0) = c1;
        ext(1, 2) = ext(2, 1) = c2;
        ext(2, 2) = -2;
        keep = signature_of(ext) == Signature{1, 2, 0};
      }
      if (!keep) continue;
      // the wall: the perpendicular line of beta_M, oriented into the
      // positive cone
      Vec ray = detail::primitive(Vec{c2, -c1});
      if (m.norm(ray) <= 0) continue;  // cannot happen for beta_M^2 < 0
      if (m.pair(ray, ws.positive_cone_reference) < 0)
        for (Int& x : ray) x = -x;
      Wall w;
      w.ray = ray;
      w.normal = detail::lex_normalized(c);
      w.in_m_root = in_m;
      by_ray.emplace(w.ray, std::move(w));
    }
  for (auto& [ray, w] : by_ray) ws.walls.push_back(w);
  ws.chamber_count = Int(ws.walls.size()) + 1;
  return ws;
}

/// Location of a vector of the open positive cone relative to the walls:
/// its sign against every wall normal. Zero signs list the walls containing
/// the vector; otherwise the sign vector is the chamber id.
struct ChamberLocation {
  std::vector<int> signs;
  std::vector<int> on_walls;  // indices into WallSet::walls
  bool on_wall() const { return !on_walls.empty(); }

  std::string id() const {
    std::string s;
    for (int x : signs) s += (x > 0 ? '+' : (x < 0 ? '-' : '0'));
    return s;
  }
};

inline ChamberLocation locate_chamber(const WallSet& ws, const Vec& v) {
  ws.m.check_vector(v);
  if (ws.m.norm(v) <= 0 || ws.m.pair(v, ws.positive_cone_reference) <= 0)
    throw std::invalid_argument("vector is not in the open positive cone");
  ChamberLocation loc;
  for (size_t i = 0; i < ws.walls.size(); ++i) {
    Int p = dot(ws.walls[i].normal, v);
    loc.signs.push_back(p.sign());
    if (p == 0) loc.on_walls.push_back(static_cast<int>(i));
  }
  return loc;
}

}  // namespace k3deg
