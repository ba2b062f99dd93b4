#pragma once

#include <k3deg/matrix.hpp>

#include <optional>
#include <string>

namespace k3deg {

/// A finitely generated free Z-module with an integral symmetric bilinear
/// form. Immutable after construction; rank, determinant and evenness are
/// cached eagerly.
class IntegerLattice {
 public:
  IntegerLattice() : gram_(0, 0), det_(1), even_(true) {}

  explicit IntegerLattice(Mat gram, std::string label = "") : gram_(std::move(gram)), label_(std::move(label)) {
    if (!gram_.is_square()) throw std::invalid_argument("lattice gram matrix must be square");
    if (!gram_.is_symmetric()) throw std::invalid_argument("lattice gram matrix must be symmetric");
    det_ = k3deg::det(gram_);
    even_ = true;
    for (int i = 0; i < gram_.rows; ++i)
      if (gram_(i, i) % 2 != 0) even_ = false;
  }

  int rank() const { return gram_.rows; }
  const Mat& gram() const { return gram_; }
  const Int& det() const { return det_; }
  bool even() const { return even_; }
  bool nondegenerate() const { return det_ != 0; }
  const std::string& label() const { return label_; }

  Int pair(const Vec& x, const Vec& y) const {
    check_vector(x);
    check_vector(y);
    return k3deg::pair(gram_, x, y);
  }
  Int norm(const Vec& x) const { return pair(x, x); }

  /// Pairings of x against the basis: the coordinates of x in the dual basis.
  Vec dual_coords(const Vec& x) const {
    check_vector(x);
    return gram_ * x;
  }

  void check_vector(const Vec& x) const {
    if (static_cast<int>(x.size()) != rank()) throw std::invalid_argument("vector length does not match lattice rank");
  }

 private:
  Mat gram_;
  std::string label_;
  Int det_;
  bool even_ = false;
};

inline IntegerLattice make_lattice(Mat gram, std::string label = "") {
  return IntegerLattice(std::move(gram), std::move(label));
}

inline Signature signature(const IntegerLattice& l) { return signature_of(l.gram()); }

inline IntegerLattice direct_sum(const IntegerLattice& a, const IntegerLattice& b) {
  std::string label;
  if (!a.label().empty() && !b.label().empty())
    label = a.label() + "+" + b.label();
  else
    label = a.label() + b.label();
  return IntegerLattice(block_diag(a.gram(), b.gram()), std::move(label));
}

/// L(n): the same module with the form scaled by n >= 1.
inline IntegerLattice twist(const IntegerLattice& l, const Int& n) {
  if (n < 1) throw std::invalid_argument("twist requires n >= 1");
  Mat g = l.gram();
  for (Int& x : g.a) x *= n;
  std::string label = l.label().empty() ? "" : l.label() + "(" + to_string(n) + ")";
  return IntegerLattice(std::move(g), std::move(label));
}

// ---------------------------------------------------------------------------
// named lattices

inline IntegerLattice lattice_H(const Int& n = 1) {
  Mat g{{0, n}, {n, 0}};
  return IntegerLattice(std::move(g), n == 1 ? "H" : "H(" + to_string(n) + ")");
}

/// E8 with the fixed negated-Cartan Gram. Basis order is the Dynkin
/// numbering with node 2 the branch node attached to node 4:
///   1-3-4-5-6-7-8 chain, 2-4 edge.
inline IntegerLattice lattice_E8() {
  Mat g(8, 8);
  for (int i = 0; i < 8; ++i) g(i, i) = -2;
  auto link = [&](int i, int j) { g(i - 1, j - 1) = g(j - 1, i - 1) = 1; };
  link(1, 3);
  link(3, 4);
  link(4, 5);
  link(5, 6);
  link(6, 7);
  link(7, 8);
  link(2, 4);
  return IntegerLattice(std::move(g), "E8");
}

/// L_K3 = H + H + H + E8 + E8, the even unimodular lattice of signature (3,19).
inline IntegerLattice lattice_K3() {
  IntegerLattice l = direct_sum(direct_sum(lattice_H(), lattice_H()), lattice_H());
  l = direct_sum(direct_sum(l, lattice_E8()), lattice_E8());
  return IntegerLattice(l.gram(), "LK3");
}

inline IntegerLattice lattice_span(const Int& norm_value, std::string label = "") {
  Mat g(1, 1);
  g(0, 0) = norm_value;
  if (label.empty()) label = "<" + to_string(norm_value) + ">";
  return IntegerLattice(std::move(g), std::move(label));
}

/// L_2d = <-2d> + H + H + E8 + E8, the degree-2d polarized K3 lattice v^perp.
inline IntegerLattice lattice_L2d(const Int& d) {
  if (d < 1) throw std::invalid_argument("L2d requires d >= 1");
  IntegerLattice l = lattice_span(-2 * d);
  l = direct_sum(direct_sum(l, lattice_H()), lattice_H());
  l = direct_sum(direct_sum(l, lattice_E8()), lattice_E8());
  return IntegerLattice(l.gram(), "L2d(" + to_string(d) + ")");
}

/// Resolve "H", "H(n)", "E8", "LK3", "L2d(d)".
inline std::optional<IntegerLattice> lattice_from_name(const std::string& name) {
  auto arg_of = [&](const std::string& prefix) -> std::optional<Int> {
    if (name.size() <= prefix.size() + 1 || name.compare(0, prefix.size(), prefix) != 0) return std::nullopt;
    if (name[prefix.size()] != '(' || name.back() != ')') return std::nullopt;
    std::string body = name.substr(prefix.size() + 1, name.size() - prefix.size() - 2);
    if (body.empty()) return std::nullopt;
    for (size_t i = 0; i < body.size(); ++i)
      if (!(std::isdigit(static_cast<unsigned char>(body[i])) || (i == 0 && body[i] == '-'))) return std::nullopt;
    return Int(body);
  };
  if (name == "H") return lattice_H();
  if (name == "E8") return lattice_E8();
  if (name == "LK3") return lattice_K3();
  if (auto n = arg_of("H")) {
    if (*n < 1) throw std::invalid_argument("H(n) requires n >= 1");
    return lattice_H(*n);
  }
  if (auto d = arg_of("L2d")) {
    if (*d < 1) throw std::invalid_argument("L2d(d) requires d >= 1");
    return lattice_L2d(*d);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// sublattices

/// A sublattice of an ambient lattice, by a basis of column vectors in the
/// ambient coordinates. Linear independence and saturation are established
/// at construction.
struct Sublattice {
  IntegerLattice ambient;
  Mat basis;  // ambient.rank() x rank(), columns linearly independent
  bool saturated = false;

  int rank() const { return basis.cols; }

  /// Gram matrix of the basis under the ambient form.
  Mat gram() const { return restrict_form(ambient.gram(), basis); }

  IntegerLattice as_lattice(std::string label = "") const { return IntegerLattice(gram(), std::move(label)); }
};

inline Sublattice make_sublattice(const IntegerLattice& ambient, Mat basis) {
  if (basis.rows != ambient.rank()) throw std::invalid_argument("sublattice basis has wrong ambient rank");
  if (rank_of(basis) != basis.cols) throw std::invalid_argument("sublattice basis is not linearly independent");
  Sublattice s{ambient, std::move(basis), false};
  auto diag = smith_diagonal(s.basis);
  s.saturated = true;
  for (const Int& d : diag)
    if (d != 1) s.saturated = false;
  return s;
}

inline Sublattice span_of(const IntegerLattice& ambient, const std::vector<Vec>& vectors) {
  Mat b(ambient.rank(), static_cast<int>(vectors.size()));
  for (size_t j = 0; j < vectors.size(); ++j) {
    ambient.check_vector(vectors[j]);
    b.set_col(static_cast<int>(j), vectors[j]);
  }
  return make_sublattice(ambient, std::move(b));
}

inline Sublattice whole_lattice(const IntegerLattice& l) { return make_sublattice(l, Mat::identity(l.rank())); }

/// gcd of the coordinates is 1.
inline bool is_primitive(const IntegerLattice& l, const Vec& v) {
  l.check_vector(v);
  return gcd_of(v) == 1;
}

/// Smallest primitive sublattice containing S: (S tensor Q) intersect Z^n.
inline Sublattice saturate(const IntegerLattice& l, const Sublattice& s) {
  SmithForm f = smith_normal_form(s.basis);
  Mat sat(l.rank(), f.rank);
  for (int j = 0; j < f.rank; ++j)
    for (int i = 0; i < l.rank(); ++i) sat(i, j) = f.u_inv(i, j);
  return make_sublattice(l, std::move(sat));
}

/// Index of S inside its saturation (product of the invariant factors).
inline Int saturation_index(const Sublattice& s) {
  Int idx = 1;
  for (const Int& d : smith_diagonal(s.basis)) idx *= d;
  return idx;
}

/// The saturated kernel of v -> (v . s) over the basis vectors s of S;
/// always a primitive sublattice of L.
inline Sublattice orthogonal_complement(const IntegerLattice& l, const Sublattice& s) {
  // rows: pairings against each basis vector of S
  Mat rows = s.basis.transposed() * l.gram();
  return make_sublattice(l, kernel_basis(rows));
}

/// Radical of the form: vectors pairing to zero with the whole lattice.
inline Sublattice radical(const IntegerLattice& l) {
  return make_sublattice(l, kernel_basis(l.gram()));
}

/// Largest k such that v/k still pairs integrally with all of L, i.e. the
/// imprimitivity of v as a vector of the dual lattice L^*.
inline Int imprimitivity_in_dual(const IntegerLattice& l, const Vec& v) {
  l.check_vector(v);
  bool zero = true;
  for (const Int& x : v)
    if (x != 0) zero = false;
  if (zero) throw std::invalid_argument("imprimitivity of the zero vector is undefined");
  return gcd_of(l.dual_coords(v));
}

// ---------------------------------------------------------------------------
// quotients

/// Quotient of L by a sublattice S contained in the radical of the form,
/// with the induced (well-defined) bilinear form. `lift` gives coordinates
/// of the chosen quotient basis inside L.
struct QuotientLattice {
  IntegerLattice lattice;
  Mat lift;
  Mat proj;
  std::vector<Int> torsion;  // nontrivial invariant factors of L/S
  bool torsion_free() const { return torsion.empty(); }
};

inline QuotientLattice quotient_by_radical_part(const IntegerLattice& l, const Sublattice& s, std::string label = "") {
  // S must pair to zero with everything for the form to descend.
  Mat pairings = s.basis.transposed() * l.gram();
  if (!pairings.is_zero()) throw std::invalid_argument("quotient form undefined: sublattice not in the radical");
  QuotientSplit q = quotient_split(l.rank(), s.basis);
  QuotientLattice out;
  out.torsion = q.torsion;
  out.lift = q.lift;
  out.proj = q.proj;
  out.lattice = IntegerLattice(restrict_form(l.gram(), q.lift), std::move(label));
  return out;
}

/// Group-level quotient basis (no form): lift/proj splitting of L/S for
/// saturated S, plus the torsion invariants when S is not saturated.
inline QuotientSplit quotient_split(const IntegerLattice& l, const Sublattice& s) {
  return quotient_split(l.rank(), s.basis);
}

// ---------------------------------------------------------------------------
// discriminant group

/// L^*/L for nondegenerate L: cyclic invariant factors >= 2, generators as
/// rational vectors of L tensor Q (numerator vector over a common
/// denominator), and the discriminant quadratic form values mod 2.
struct DiscriminantGroup {
  std::vector<Int> invariant_factors;
  std::vector<Vec> generator_numerators;
  std::vector<Int> generator_denominators;
  std::vector<Rat> qform_values;  // canonical representatives in [0,2)

  Int order() const {
    Int n = 1;
    for (const Int& f : invariant_factors) n *= f;
    return n;
  }
};

inline DiscriminantGroup discriminant_group(const IntegerLattice& l) {
  if (!l.nondegenerate()) throw std::invalid_argument("discriminant group requires a nondegenerate lattice");
  SmithForm s = smith_normal_form(l.gram());
  DiscriminantGroup g;
  Int d = l.det();
  for (int i = 0; i < l.rank(); ++i) {
    Int di = s.d(i, i);
    if (di <= 1) continue;
    g.invariant_factors.push_back(di);
    // generator: (1/d_i) * (U^-1 e_i) viewed in L^* via the dual basis;
    // its L tensor Q coordinates solve gram * x = c.
    Vec c = s.u_inv.col(i);
    // x = gram^{-1} c = adj(gram) c / det: compute via rational solve using
    // integer elimination: solve gram * y = det * c over Z, x = y / (det d_i).
    Vec scaled(c.size());
    for (size_t t = 0; t < c.size(); ++t) scaled[t] = c[t] * d;
    auto y = solve_integer(l.gram(), scaled);
    if (!y) throw std::logic_error("dual vector solve failed unexpectedly");
    // generator = y / det, reduced by the common gcd
    Int den = d;
    Int common = den;
    for (const Int& t : *y) common = gcd(common, t);
    if (common < 0) common = -common;
    if (common == 0) common = 1;
    Vec num(y->size());
    for (size_t t = 0; t < y->size(); ++t) num[t] = (*y)[t] / common;
    den /= common;
    if (den < 0) {
      den = -den;
      for (Int& t : num) t = -t;
    }
    g.generator_numerators.push_back(num);
    g.generator_denominators.push_back(den);
    // q(x) = x^T gram x as a rational mod 2
    Rat q = 0;
    Vec gn = l.gram() * num;
    Int nn = dot(num, gn);
    q = Rat(nn) / (Rat(den) * Rat(den));
    g.qform_values.push_back(mod2(q));
  }
  return g;
}

}  // namespace k3deg
