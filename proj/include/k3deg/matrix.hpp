#pragma once

#include <k3deg/arith.hpp>

#include <algorithm>
#include <optional>
#include <utility>

namespace k3deg {

/// Dense integer matrix, row-major. Vectors are columns; a basis of a
/// sublattice of Z^n is an n x r matrix whose columns are the basis vectors.
struct Mat {
  int rows = 0;
  int cols = 0;
  std::vector<Int> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
  Mat(std::initializer_list<std::initializer_list<Int>> entries) {
    rows = static_cast<int>(entries.size());
    cols = rows ? static_cast<int>(entries.begin()->size()) : 0;
    a.reserve(static_cast<size_t>(rows) * cols);
    for (const auto& row : entries) {
      if (static_cast<int>(row.size()) != cols) throw std::invalid_argument("ragged matrix literal");
      for (const auto& x : row) a.push_back(x);
    }
  }

  Int& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const Int& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  bool is_zero() const {
    for (const Int& x : a)
      if (x != 0) return false;
    return true;
  }

  bool is_square() const { return rows == cols; }

  bool is_symmetric() const {
    if (!is_square()) return false;
    for (int i = 0; i < rows; ++i)
      for (int j = i + 1; j < cols; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  Mat transposed() const {
    Mat t(cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Vec col(int j) const {
    Vec v(rows);
    for (int i = 0; i < rows; ++i) v[i] = (*this)(i, j);
    return v;
  }

  Vec row(int i) const {
    Vec v(cols);
    for (int j = 0; j < cols; ++j) v[j] = (*this)(i, j);
    return v;
  }

  void set_col(int j, const Vec& v) {
    for (int i = 0; i < rows; ++i) (*this)(i, j) = v[i];
  }

  void swap_rows(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < cols; ++c) std::swap((*this)(i, c), (*this)(j, c));
  }

  void swap_cols(int i, int j) {
    if (i == j) return;
    for (int r = 0; r < rows; ++r) std::swap((*this)(r, i), (*this)(r, j));
  }

  /// row(i) += q * row(j)
  void add_row(int i, int j, const Int& q) {
    if (q == 0) return;
    for (int c = 0; c < cols; ++c) (*this)(i, c) += q * (*this)(j, c);
  }

  /// col(i) += q * col(j)
  void add_col(int i, int j, const Int& q) {
    if (q == 0) return;
    for (int r = 0; r < rows; ++r) (*this)(r, i) += q * (*this)(r, j);
  }

  void negate_row(int i) {
    for (int c = 0; c < cols; ++c) (*this)(i, c) = -(*this)(i, c);
  }

  void negate_col(int j) {
    for (int r = 0; r < rows; ++r) (*this)(r, j) = -(*this)(r, j);
  }
};

inline Mat operator*(const Mat& x, const Mat& y) {
  if (x.cols != y.rows) throw std::invalid_argument("matrix product shape mismatch");
  Mat z(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const Int& s = x(i, k);
      if (s == 0) continue;
      for (int j = 0; j < y.cols; ++j) {
        if (y(k, j) != 0) z(i, j) += s * y(k, j);
      }
    }
  return z;
}

inline Vec operator*(const Mat& m, const Vec& v) {
  if (m.cols != static_cast<int>(v.size())) throw std::invalid_argument("matrix-vector shape mismatch");
  Vec w(m.rows);
  for (int i = 0; i < m.rows; ++i) {
    Int s = 0;
    for (int j = 0; j < m.cols; ++j)
      if (m(i, j) != 0 && v[j] != 0) s += m(i, j) * v[j];
    w[i] = s;
  }
  return w;
}

inline Mat operator+(const Mat& x, const Mat& y) {
  if (x.rows != y.rows || x.cols != y.cols) throw std::invalid_argument("matrix sum shape mismatch");
  Mat z = x;
  for (size_t i = 0; i < z.a.size(); ++i) z.a[i] += y.a[i];
  return z;
}

inline Mat operator-(const Mat& x, const Mat& y) {
  if (x.rows != y.rows || x.cols != y.cols) throw std::invalid_argument("matrix diff shape mismatch");
  Mat z = x;
  for (size_t i = 0; i < z.a.size(); ++i) z.a[i] -= y.a[i];
  return z;
}

inline Mat block_diag(const Mat& x, const Mat& y) {
  Mat z(x.rows + y.rows, x.cols + y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) z(i, j) = x(i, j);
  for (int i = 0; i < y.rows; ++i)
    for (int j = 0; j < y.cols; ++j) z(x.rows + i, x.cols + j) = y(i, j);
  return z;
}

/// Columns of x followed by columns of y.
inline Mat hcat(const Mat& x, const Mat& y) {
  if (x.rows != y.rows) throw std::invalid_argument("hcat shape mismatch");
  Mat z(x.rows, x.cols + y.cols);
  for (int i = 0; i < x.rows; ++i) {
    for (int j = 0; j < x.cols; ++j) z(i, j) = x(i, j);
    for (int j = 0; j < y.cols; ++j) z(i, x.cols + j) = y(i, j);
  }
  return z;
}

inline Int dot(const Vec& x, const Vec& y) {
  if (x.size() != y.size()) throw std::invalid_argument("dot shape mismatch");
  Int s = 0;
  for (size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0 && y[i] != 0) s += x[i] * y[i];
  return s;
}

/// x^T G y for a symmetric Gram matrix G.
inline Int pair(const Mat& gram, const Vec& x, const Vec& y) { return dot(x, gram * y); }

inline Int norm(const Mat& gram, const Vec& x) { return pair(gram, x, x); }

/// B^T G B: the Gram matrix of the columns of B.
inline Mat restrict_form(const Mat& gram, const Mat& basis) {
  return basis.transposed() * (gram * basis);
}

/// Fraction-free determinant (Bareiss).
inline Int det(const Mat& m) {
  if (!m.is_square()) throw std::invalid_argument("determinant of non-square matrix");
  int n = m.rows;
  if (n == 0) return 1;
  Mat w = m;
  Int prev = 1;
  int sgn = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (w(k, k) == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (w(i, k) != 0) {
          p = i;
          break;
        }
      if (p < 0) return 0;
      w.swap_rows(k, p);
      sgn = -sgn;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        w(i, j) = (w(k, k) * w(i, j) - w(i, k) * w(k, j)) / prev;
      }
      w(i, k) = 0;
    }
    prev = w(k, k);
  }
  return sgn > 0 ? w(n - 1, n - 1) : -w(n - 1, n - 1);
}

/// Column echelon reduction by unimodular column operations.
/// Returns E with A * V = E; E has its nonzero columns first, in echelon
/// shape. The trailing columns of V (matching zero columns of E) form a
/// saturated basis of ker(A): they are part of a unimodular matrix, so
/// the kernel is a direct summand of Z^cols.
struct ColumnEchelon {
  Mat e;
  Mat v;
  Mat v_inv;  // tracked only when requested
  int rank = 0;
};

inline ColumnEchelon column_echelon(const Mat& a, bool track_inverse = false) {
  ColumnEchelon res;
  res.e = a;
  res.v = Mat::identity(a.cols);
  if (track_inverse) res.v_inv = Mat::identity(a.cols);
  Mat& e = res.e;
  Mat& v = res.v;
  int lead = 0;
  for (int r = 0; r < a.rows && lead < a.cols; ++r) {
    // gcd-eliminate row r across columns lead..cols-1 until at most one
    // nonzero entry remains, swapped into position `lead`.
    for (;;) {
      int best = -1;
      for (int j = lead; j < a.cols; ++j) {
        if (e(r, j) == 0) continue;
        if (best < 0 || abs(e(r, j)) < abs(e(r, best))) best = j;
      }
      if (best < 0) break;
      bool clean = true;
      for (int j = lead; j < a.cols; ++j) {
        if (j == best || e(r, j) == 0) continue;
        Int q = round_div(e(r, j), e(r, best));
        e.add_col(j, best, -q);
        v.add_col(j, best, -q);
        if (track_inverse) res.v_inv.add_row(best, j, q);
        if (e(r, j) != 0) clean = false;
      }
      if (clean) {
        e.swap_cols(lead, best);
        v.swap_cols(lead, best);
        if (track_inverse) res.v_inv.swap_rows(lead, best);
        ++lead;
        break;
      }
    }
  }
  res.rank = lead;
  return res;
}

/// Kernel of A together with the splitting Z^n = ker (+) complement coming
/// from the unimodular echelon transform: basis/proj restrict to the
/// kernel, lift/coproj to a complement. proj * basis = I, coproj * lift = I.
struct KernelSplit {
  Mat basis;   // n x k saturated kernel basis
  Mat proj;    // k x n coordinates in that basis (valid on kernel vectors)
  Mat lift;    // n x r complement basis
  Mat coproj;  // r x n quotient coordinates, vanishing on the kernel
  Mat echelon_cols;  // rows x r: the nonzero echelon columns (A * lift)
  int rank = 0;
};

inline KernelSplit kernel_split(const Mat& a) {
  ColumnEchelon ce = column_echelon(a, true);
  KernelSplit ks;
  ks.rank = ce.rank;
  int n = a.cols, k = n - ce.rank;
  ks.basis = Mat(n, k);
  ks.lift = Mat(n, ce.rank);
  ks.proj = Mat(k, n);
  ks.coproj = Mat(ce.rank, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < k; ++j) ks.basis(i, j) = ce.v(i, ce.rank + j);
    for (int j = 0; j < ce.rank; ++j) ks.lift(i, j) = ce.v(i, j);
    for (int j = 0; j < k; ++j) ks.proj(j, i) = ce.v_inv(ce.rank + j, i);
    for (int j = 0; j < ce.rank; ++j) ks.coproj(j, i) = ce.v_inv(j, i);
  }
  ks.echelon_cols = Mat(a.rows, ce.rank);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < ce.rank; ++j) ks.echelon_cols(i, j) = ce.e(i, j);
  return ks;
}

/// Saturated basis of {x in Z^cols : A x = 0}, as columns.
inline Mat kernel_basis(const Mat& a) {
  ColumnEchelon ce = column_echelon(a);
  Mat k(a.cols, a.cols - ce.rank);
  for (int j = ce.rank; j < a.cols; ++j)
    for (int i = 0; i < a.cols; ++i) k(i, j - ce.rank) = ce.v(i, j);
  return k;
}

inline int rank_of(const Mat& a) { return column_echelon(a).rank; }

/// Smith normal form U * m * V = D with U, V unimodular and the diagonal
/// of D nonnegative with d_i | d_{i+1}. Inverse transforms are tracked so
/// quotient bases and discriminant-group generators come out directly.
struct SmithForm {
  Mat u, v, d;
  Mat u_inv, v_inv;
  int rank = 0;

  /// Nonzero diagonal entries d_1 | d_2 | ... (including 1s).
  std::vector<Int> diagonal() const {
    std::vector<Int> out;
    for (int i = 0; i < std::min(d.rows, d.cols); ++i)
      if (d(i, i) != 0) out.push_back(d(i, i));
    return out;
  }
};

namespace detail {

struct SnfOps {
  Mat* u = nullptr;
  Mat* u_inv = nullptr;
  Mat* v = nullptr;
  Mat* v_inv = nullptr;

  void row_add(Mat& d, int i, int j, const Int& q) {
    d.add_row(i, j, q);
    if (u) u->add_row(i, j, q);
    if (u_inv) u_inv->add_col(j, i, -q);
  }
  void row_swap(Mat& d, int i, int j) {
    d.swap_rows(i, j);
    if (u) u->swap_rows(i, j);
    if (u_inv) u_inv->swap_cols(i, j);
  }
  void row_negate(Mat& d, int i) {
    d.negate_row(i);
    if (u) u->negate_row(i);
    if (u_inv) u_inv->negate_col(i);
  }
  void col_add(Mat& d, int i, int j, const Int& q) {
    d.add_col(i, j, q);
    if (v) v->add_col(i, j, q);
    if (v_inv) v_inv->add_row(j, i, -q);
  }
  void col_swap(Mat& d, int i, int j) {
    d.swap_cols(i, j);
    if (v) v->swap_cols(i, j);
    if (v_inv) v_inv->swap_rows(i, j);
  }
};

inline void snf_reduce(Mat& d, SnfOps ops) {
  int n = std::min(d.rows, d.cols);
  for (int t = 0; t < n; ++t) {
    // locate minimal nonzero entry of the trailing submatrix
    int pi = -1, pj = -1;
    for (int i = t; i < d.rows; ++i)
      for (int j = t; j < d.cols; ++j)
        if (d(i, j) != 0 && (pi < 0 || abs(d(i, j)) < abs(d(pi, pj)))) pi = i, pj = j;
    if (pi < 0) break;
    ops.row_swap(d, t, pi);
    ops.col_swap(d, t, pj);
    for (;;) {
      bool again = false;
      for (int i = t + 1; i < d.rows; ++i) {
        if (d(i, t) == 0) continue;
        Int q = round_div(d(i, t), d(t, t));
        ops.row_add(d, i, t, -q);
        if (d(i, t) != 0) {
          ops.row_swap(d, t, i);  // smaller remainder becomes the pivot
          again = true;
        }
      }
      for (int j = t + 1; j < d.cols; ++j) {
        if (d(t, j) == 0) continue;
        Int q = round_div(d(t, j), d(t, t));
        ops.col_add(d, j, t, -q);
        if (d(t, j) != 0) {
          ops.col_swap(d, t, j);
          again = true;
        }
      }
      if (again) continue;
      // pivot must divide the remaining submatrix
      int bad_row = -1;
      for (int i = t + 1; i < d.rows && bad_row < 0; ++i)
        for (int j = t + 1; j < d.cols; ++j)
          if (d(i, j) % d(t, t) != 0) {
            bad_row = i;
            break;
          }
      if (bad_row < 0) break;
      ops.row_add(d, t, bad_row, 1);
    }
    if (d(t, t) < 0) ops.row_negate(d, t);
  }
}

}  // namespace detail

inline SmithForm smith_normal_form(const Mat& m) {
  SmithForm s;
  s.d = m;
  s.u = Mat::identity(m.rows);
  s.u_inv = Mat::identity(m.rows);
  s.v = Mat::identity(m.cols);
  s.v_inv = Mat::identity(m.cols);
  detail::SnfOps ops;
  ops.u = &s.u;
  ops.u_inv = &s.u_inv;
  ops.v = &s.v;
  ops.v_inv = &s.v_inv;
  detail::snf_reduce(s.d, ops);
  int n = std::min(s.d.rows, s.d.cols);
  s.rank = 0;
  while (s.rank < n && s.d(s.rank, s.rank) != 0) ++s.rank;
  return s;
}

/// Diagonal of the Smith form without tracking transforms.
inline std::vector<Int> smith_diagonal(const Mat& m) {
  Mat d = m;
  detail::snf_reduce(d, detail::SnfOps{});
  std::vector<Int> out;
  for (int i = 0; i < std::min(d.rows, d.cols); ++i)
    if (d(i, i) != 0) out.push_back(d(i, i));
  return out;
}

/// Invariant factors > 1 of coker(m), i.e. the torsion of Z^rows / im(m).
inline std::vector<Int> torsion_invariants(const Mat& m) {
  std::vector<Int> out;
  for (const Int& d : smith_diagonal(m))
    if (d > 1) out.push_back(d);
  return out;
}

/// Solve A x = b over the integers. Empty optional if no integral solution.
inline std::optional<Vec> solve_integer(const Mat& a, const Vec& b) {
  SmithForm s = smith_normal_form(a);
  Vec ub = s.u * b;
  Vec y(a.cols, Int(0));
  for (int i = 0; i < a.rows; ++i) {
    if (i < s.rank) {
      if (ub[i] % s.d(i, i) != 0) return std::nullopt;
      y[i] = ub[i] / s.d(i, i);
    } else if (ub[i] != 0) {
      return std::nullopt;
    }
  }
  return s.v * y;
}

/// Solve A X = B columnwise over the integers.
inline std::optional<Mat> solve_integer(const Mat& a, const Mat& b) {
  SmithForm s = smith_normal_form(a);
  Mat x(a.cols, b.cols);
  for (int c = 0; c < b.cols; ++c) {
    Vec ub = s.u * b.col(c);
    Vec y(a.cols, Int(0));
    for (int i = 0; i < a.rows; ++i) {
      if (i < s.rank) {
        if (ub[i] % s.d(i, i) != 0) return std::nullopt;
        y[i] = ub[i] / s.d(i, i);
      } else if (ub[i] != 0) {
        return std::nullopt;
      }
    }
    x.set_col(c, s.v * y);
  }
  return x;
}

inline bool is_unimodular(const Mat& m) {
  if (!m.is_square()) return false;
  Int d = det(m);
  return d == 1 || d == -1;
}

/// Exact inertia (p, q, z) of a symmetric integer matrix, by symmetric
/// Gaussian elimination over Q (Sylvester's law of inertia).
struct Signature {
  int positive = 0;
  int negative = 0;
  int zero = 0;
  bool operator==(const Signature&) const = default;
};

inline Signature signature_of(const Mat& gram) {
  if (!gram.is_symmetric()) throw std::invalid_argument("signature of non-symmetric matrix");
  int n = gram.rows;
  std::vector<Rat> w(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) w[static_cast<size_t>(i) * n + j] = Rat(gram(i, j));
  auto at = [&](int i, int j) -> Rat& { return w[static_cast<size_t>(i) * n + j]; };
  Signature sig;
  std::vector<bool> done(n, false);
  for (int step = 0; step < n; ++step) {
    int p = -1;
    for (int i = 0; i < n; ++i)
      if (!done[i] && at(i, i) != 0) {
        p = i;
        break;
      }
    if (p < 0) {
      // all remaining diagonal entries vanish; if some off-diagonal entry
      // survives, symmetrize it onto the diagonal (char 0)
      int oi = -1, oj = -1;
      for (int i = 0; i < n && oi < 0; ++i) {
        if (done[i]) continue;
        for (int j = i + 1; j < n; ++j)
          if (!done[j] && at(i, j) != 0) {
            oi = i;
            oj = j;
            break;
          }
      }
      if (oi < 0) break;
      for (int j = 0; j < n; ++j)
        if (!done[j]) at(oi, j) += at(oj, j);
      for (int i = 0; i < n; ++i)
        if (!done[i]) at(i, oi) += at(i, oj);
      p = oi;
    }
    Rat piv = at(p, p);
    if (piv > 0)
      ++sig.positive;
    else
      ++sig.negative;
    done[p] = true;
    for (int i = 0; i < n; ++i) {
      if (done[i] || at(i, p) == 0) continue;
      Rat f = at(i, p) / piv;
      for (int j = 0; j < n; ++j)
        if (!done[j]) at(i, j) -= f * at(p, j);
      at(i, p) = 0;
    }
    for (int j = 0; j < n; ++j)
      if (!done[j]) at(p, j) = 0;
  }
  sig.zero = n - sig.positive - sig.negative;
  return sig;
}

/// A saturated sublattice S of Z^n presented by a basis matrix (columns)
/// splits Z^n = S (+) C. `lift` holds a basis of a complement C and `proj`
/// maps Z^n onto the quotient coordinates: proj * lift = I, proj|_S = 0.
struct QuotientSplit {
  Mat lift;
  Mat proj;
  std::vector<Int> torsion;  // invariant factors > 1; empty iff S saturated
  int sub_rank = 0;
};

inline QuotientSplit quotient_split(int ambient_rank, const Mat& sub_basis) {
  if (sub_basis.rows != ambient_rank) throw std::invalid_argument("sublattice basis rank mismatch");
  SmithForm s = smith_normal_form(sub_basis);
  QuotientSplit q;
  q.sub_rank = s.rank;
  for (int i = 0; i < s.rank; ++i)
    if (s.d(i, i) > 1) q.torsion.push_back(s.d(i, i));
  int quot = ambient_rank - s.rank;
  q.lift = Mat(ambient_rank, quot);
  for (int j = 0; j < quot; ++j)
    for (int i = 0; i < ambient_rank; ++i) q.lift(i, j) = s.u_inv(i, s.rank + j);
  q.proj = Mat(quot, ambient_rank);
  for (int j = 0; j < quot; ++j)
    for (int i = 0; i < ambient_rank; ++i) q.proj(j, i) = s.u(s.rank + j, i);
  return q;
}

}  // namespace k3deg
