#pragma once

#include <k3deg/kulikov.hpp>

namespace k3deg {

/// The Picard-Lefschetz data of a one-parameter degeneration: a primitive
/// isotropic delta and a monodromy invariant lambda with lambda . delta = 0
/// inside a fixed ambient lattice.
struct MonodromyData {
  IntegerLattice ambient;
  Vec delta;
  Vec lambda;

  /// t = lambda^2, the triple point count of a Type III degeneration.
  Int lambda_square() const { return ambient.norm(lambda); }
};

/// Imprimitivity of the class of lambda inside delta-perp/delta (the
/// number of double curves when lambda^2 = 0). Representative-independent.
inline Int lambda_class_imprimitivity(const MonodromyData& m) {
  Sublattice perp = orthogonal_complement(m.ambient, span_of(m.ambient, {m.delta}));
  auto lam = solve_integer(perp.basis, m.lambda);
  auto del = solve_integer(perp.basis, m.delta);
  if (!lam || !del) throw std::logic_error("delta-perp does not contain delta or lambda");
  Mat sub(perp.rank(), 1);
  sub.set_col(0, *del);
  QuotientSplit q = quotient_split(perp.rank(), sub);
  Vec cls = q.proj * *lam;
  Int g = gcd_of(cls);
  if (g == 0) return 0;  // lambda lies in Z delta: the Type I case
  return g;
}

inline MonodromyData make_monodromy_data(IntegerLattice ambient, Vec delta, Vec lambda) {
  ambient.check_vector(delta);
  ambient.check_vector(lambda);
  if (ambient.norm(delta) != 0) throw std::invalid_argument("delta must be isotropic");
  if (!is_primitive(ambient, delta)) throw std::invalid_argument("delta must be primitive");
  if (ambient.pair(lambda, delta) != 0) throw std::invalid_argument("lambda must pair to zero with delta");
  return MonodromyData{std::move(ambient), std::move(delta), std::move(lambda)};
}

/// N x = (x . lambda) delta - (x . delta) lambda, the logarithm of the
/// Picard-Lefschetz transformation. Always integral with N^3 = 0.
inline Mat monodromy_operator(const MonodromyData& m) {
  int r = m.ambient.rank();
  Vec dual_lambda = m.ambient.dual_coords(m.lambda);
  Vec dual_delta = m.ambient.dual_coords(m.delta);
  Mat n(r, r);
  for (int col = 0; col < r; ++col)
    for (int row = 0; row < r; ++row)
      n(row, col) = dual_lambda[col] * m.delta[row] - dual_delta[col] * m.lambda[row];
  return n;
}

enum class DegenerationType { I, II, III };

inline std::string to_string(DegenerationType t) {
  switch (t) {
    case DegenerationType::I: return "I";
    case DegenerationType::II: return "II";
    case DegenerationType::III: return "III";
  }
  return "?";
}

/// Type I:  N = 0  (lambda a multiple of delta),
/// Type II: N != 0, N^2 = 0  (lambda^2 = 0),
/// Type III: N^2 != 0, N^3 = 0 (lambda^2 = # triple points > 0).
inline DegenerationType classify_type(const MonodromyData& m) {
  Mat n = monodromy_operator(m);
  if (n.is_zero()) return DegenerationType::I;
  Mat n2 = n * n;
  if (n2.is_zero()) return DegenerationType::II;
  if (m.ambient.norm(m.lambda) < 0)
    throw std::invalid_argument("monodromy invariant with negative square is not a Kulikov degeneration");
  return DegenerationType::III;
}

/// T = exp(N) = I + N + N^2/2; integral because lambda^2 is even, a
/// unipotent isometry of the ambient lattice.
inline Mat picard_lefschetz_T(const MonodromyData& m) {
  Mat n = monodromy_operator(m);
  Mat n2 = n * n;
  Mat t = Mat::identity(m.ambient.rank()) + n;
  for (int i = 0; i < n2.rows; ++i)
    for (int j = 0; j < n2.cols; ++j) {
      if (n2(i, j) % 2 != 0)
        throw std::invalid_argument("N^2 is not even: lambda has odd square in an odd lattice");
      t(i, j) += n2(i, j) / 2;
    }
  return t;
}

}  // namespace k3deg
