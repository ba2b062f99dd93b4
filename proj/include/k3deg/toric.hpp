#pragma once

#include <k3deg/matrix.hpp>

#include <array>
#include <string>

namespace k3deg {

using Ray = std::array<Int, 2>;

inline Int cross(const Ray& a, const Ray& b) { return a[0] * b[1] - a[1] * b[0]; }

/// The fan of a smooth complete toric surface together with its toric
/// boundary: a cyclically ordered list of primitive rays, counterclockwise,
/// with det(v_j, v_{j+1}) = 1 for consecutive rays.
struct ToricPairFan {
  std::vector<Ray> rays;
  std::string label;

  int size() const { return static_cast<int>(rays.size()); }
  const Ray& ray(int j) const { return rays[((j % size()) + size()) % size()]; }
};

namespace detail {

// total angular order on nonzero lattice vectors starting just above the
// positive x-axis; used to count the winding of a ray cycle exactly
inline int half_plane(const Ray& v) {
  if (v[1] > 0 || (v[1] == 0 && v[0] > 0)) return 0;
  return 1;
}

inline bool angular_less(const Ray& a, const Ray& b) {
  int ha = half_plane(a), hb = half_plane(b);
  if (ha != hb) return ha < hb;
  return cross(a, b) > 0;
}

}  // namespace detail

inline void validate_fan(const ToricPairFan& fan) {
  int m = fan.size();
  if (m < 3) throw std::invalid_argument("a complete fan needs at least 3 rays");
  for (int j = 0; j < m; ++j) {
    const Ray& v = fan.rays[j];
    if (v[0] == 0 && v[1] == 0) throw std::invalid_argument("zero ray");
    if (gcd(v[0], v[1]) != 1) throw std::invalid_argument("non-primitive ray");
    if (cross(v, fan.ray(j + 1)) != 1)
      throw std::invalid_argument("adjacent rays are not a positively oriented basis (non-smooth or misordered fan)");
  }
  // the cycle must wind around the origin exactly once
  int wraps = 0;
  for (int j = 0; j < m; ++j)
    if (!detail::angular_less(fan.rays[j], fan.ray(j + 1))) ++wraps;
  if (wraps != 1) throw std::invalid_argument("ray cycle does not wind exactly once (incomplete fan)");
}

/// Self-intersections of the boundary curves: v_{j-1} + v_{j+1} = -D_j^2 v_j.
inline std::vector<Int> fan_self_intersections(const ToricPairFan& fan) {
  validate_fan(fan);
  int m = fan.size();
  std::vector<Int> d2(m);
  for (int j = 0; j < m; ++j) {
    Ray s{fan.ray(j - 1)[0] + fan.ray(j + 1)[0], fan.ray(j - 1)[1] + fan.ray(j + 1)[1]};
    const Ray& v = fan.rays[j];
    // s = a v with a = -D_j^2; the multiple is forced by smoothness
    Int a;
    if (v[0] != 0) {
      if (s[0] % v[0] != 0) throw std::logic_error("fan self-intersection not integral");
      a = s[0] / v[0];
    } else {
      if (s[1] % v[1] != 0) throw std::logic_error("fan self-intersection not integral");
      a = s[1] / v[1];
    }
    if (s[0] != a * v[0] || s[1] != a * v[1]) throw std::logic_error("fan self-intersection relation failed");
    d2[j] = -a;
  }
  return d2;
}

/// Blow up the torus-fixed point between rays j and j+1: insert their sum.
inline ToricPairFan corner_blowup(const ToricPairFan& fan, int j) {
  validate_fan(fan);
  int m = fan.size();
  if (j < 0 || j >= m) throw std::out_of_range("corner index out of range");
  ToricPairFan out = fan;
  Ray sum{fan.ray(j)[0] + fan.ray(j + 1)[0], fan.ray(j)[1] + fan.ray(j + 1)[1]};
  out.rays.insert(out.rays.begin() + j + 1, sum);
  return out;
}

/// One internal blow-up record: a non-nodal point of the boundary curve on
/// the fan edge with the given index. Positions carry no coordinates; only
/// the combinatorial record is kept.
struct BlowupRecord {
  int edge = 0;
};

/// An ordered toric model: a base toric pair plus an ordered list of
/// internal blow-ups.
struct OrderedToricModel {
  ToricPairFan base_fan;
  std::vector<BlowupRecord> blowups;

  int blowups_on_edge(int j) const {
    int n = 0;
    for (const BlowupRecord& b : blowups)
      if (b.edge == j) ++n;
    return n;
  }
};

inline OrderedToricModel internal_blowup(OrderedToricModel m, int edge) {
  if (edge < 0 || edge >= m.base_fan.size()) throw std::out_of_range("blow-up edge index out of range");
  m.blowups.push_back(BlowupRecord{edge});
  return m;
}

inline ToricPairFan fan_P2() {
  return ToricPairFan{{Ray{1, 0}, Ray{0, 1}, Ray{-1, -1}}, "P2"};
}

inline ToricPairFan fan_P1xP1() {
  return ToricPairFan{{Ray{1, 0}, Ray{0, 1}, Ray{-1, 0}, Ray{0, -1}}, "P1xP1"};
}

}  // namespace k3deg
