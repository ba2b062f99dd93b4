#pragma once

#include <k3deg/arith.hpp>

namespace k3deg {

/// Truncated integer power series; coefficient index = exponent.
struct QSeries {
  std::vector<Int> coefficients;

  int truncation_order() const { return static_cast<int>(coefficients.size()) - 1; }

  static QSeries zero(int order) {
    QSeries s;
    s.coefficients.assign(order + 1, Int(0));
    return s;
  }

  static QSeries one(int order) {
    QSeries s = zero(order);
    s.coefficients[0] = 1;
    return s;
  }

  const Int& operator[](int k) const { return coefficients[k]; }
};

inline QSeries mul(const QSeries& a, const QSeries& b) {
  int order = std::min(a.truncation_order(), b.truncation_order());
  QSeries c = QSeries::zero(order);
  for (int i = 0; i <= order; ++i) {
    if (a.coefficients[i] == 0) continue;
    for (int j = 0; i + j <= order; ++j) {
      if (b.coefficients[j] == 0) continue;
      c.coefficients[i + j] += a.coefficients[i] * b.coefficients[j];
    }
  }
  return c;
}

inline QSeries pow(const QSeries& a, int e) {
  QSeries r = QSeries::one(a.truncation_order());
  QSeries base = a;
  while (e > 0) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

/// Multiplicative inverse of a series with unit constant term.
inline QSeries inverse(const QSeries& a) {
  if (a.coefficients.empty() || (a.coefficients[0] != 1 && a.coefficients[0] != -1))
    throw std::invalid_argument("series inverse requires constant term +-1");
  int order = a.truncation_order();
  QSeries b = QSeries::zero(order);
  Int c0 = a.coefficients[0];
  b.coefficients[0] = c0;  // 1/1 = 1, 1/-1 = -1
  for (int n = 1; n <= order; ++n) {
    Int s = 0;
    for (int k = 1; k <= n; ++k) {
      if (a.coefficients[k] == 0) continue;
      s += a.coefficients[k] * b.coefficients[n - k];
    }
    b.coefficients[n] = -s * c0;
  }
  return b;
}

/// prod_{k>=1} (1 - q^k), expanded by Euler's pentagonal number theorem.
inline QSeries euler_product(int order) {
  QSeries s = QSeries::zero(order);
  s.coefficients[0] = 1;
  for (Int k = 1;; ++k) {
    Int e1 = k * (3 * k - 1) / 2;
    Int e2 = k * (3 * k + 1) / 2;
    if (e1 > order && e2 > order) break;
    Int sgn = (k % 2 == 0) ? 1 : -1;
    if (e1 <= order) s.coefficients[static_cast<int>(e1)] += sgn;
    if (e2 <= order) s.coefficients[static_cast<int>(e2)] += sgn;
  }
  return s;
}

/// The Yau-Zaslow generating series 1/q prod (1-q^k)^{-24}, shifted so that
/// entry d holds n_d = [q^d]; entry 0 is n_0 = 24.
inline QSeries yz_series(int dmax) {
  if (dmax < 0) throw std::invalid_argument("yz_series requires dmax >= 0");
  QSeries disc = pow(euler_product(dmax + 1), 24);
  QSeries inv = inverse(disc);
  QSeries out = QSeries::zero(dmax);
  for (int d = 0; d <= dmax; ++d) out.coefficients[d] = inv.coefficients[d + 1];
  return out;
}

/// n_1 .. n_dmax.
inline std::vector<Int> yz_counts(int dmax) {
  if (dmax < 1) throw std::invalid_argument("yz_counts requires dmax >= 1");
  QSeries s = yz_series(dmax);
  return std::vector<Int>(s.coefficients.begin() + 1, s.coefficients.end());
}

/// Number of multisets of (part, color) pairs whose parts sum to n: the
/// coefficient of q^n in prod_s (1-q^s)^{-colors}. Independent dynamic
/// program over part sizes, used as the oracle for yz_counts via
/// n_d = colored_partitions(d+1, 24).
inline Int colored_partitions(int n, int colors) {
  if (n < 0 || colors < 1) throw std::invalid_argument("colored_partitions requires n >= 0, colors >= 1");
  std::vector<Int> f(n + 1, Int(0));
  f[0] = 1;
  for (int part = 1; part <= n; ++part)
    for (int c = 0; c < colors; ++c)
      for (int m = part; m <= n; ++m) f[m] += f[m - part];
  return f[n];
}

/// Coefficients of the unigonal rational-curve divisor n_d (s + (d+1)/24 sum f_i):
/// the section coefficient n_d and the exact fiber coefficient n_d (d+1)/24.
struct UnigonalRc {
  Int section_coeff;
  Rat fiber_coeff;
  bool fiber_integral;
};

inline UnigonalRc unigonal_rc_coefficients(int d) {
  if (d < 1) throw std::invalid_argument("unigonal_rc_coefficients requires d >= 1");
  Int nd = yz_counts(d).back();
  Rat fiber = Rat(nd) * Rat(d + 1) / 24;
  return UnigonalRc{nd, fiber, boost::multiprecision::denominator(fiber) == 1};
}

}  // namespace k3deg
