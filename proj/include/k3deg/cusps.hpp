#pragma once

#include <k3deg/lattice.hpp>

namespace k3deg {

/// d = N^2 d0 with d0 squarefree, N maximal.
struct SquarefreeSplit {
  Int n;
  Int d0;
};

inline SquarefreeSplit squarefree_split(const Int& d) {
  if (d < 1) throw std::invalid_argument("squarefree_split requires d >= 1");
  Int n = 1, d0 = d;
  for (Int p = 2; p * p <= d0;) {
    if (d0 % (p * p) == 0) {
      d0 /= p * p;
      n *= p;
    } else {
      ++p;
    }
  }
  return SquarefreeSplit{n, d0};
}

/// Invariants of one 0-cusp of the Baily-Borel compactification of F_2d:
/// the class {+-q} in Z/N together with delta* = 2qNd0 in Z/2d, an isotropic
/// element of the discriminant form x -> x^2 (valued in Z/4d).
struct CuspDescriptor {
  Int d;
  Int n;
  Int d0;
  Int q;           // representative in 0..floor(N/2)
  Int delta_star;  // 2 q N d0 mod 2d
  // dual imprimitivity of a generator, when the caller supplies it; which
  // p* occurs at which orbit {+-q} is not derived here
  std::optional<Int> p_star;
};

/// Number of 0-cusps: floor((N+2)/2) where d = N^2 d0.
inline Int zero_cusp_count(const Int& d) {
  SquarefreeSplit s = squarefree_split(d);
  return (s.n + 2) / 2;
}

inline std::vector<CuspDescriptor> zero_cusp_invariants(const Int& d) {
  SquarefreeSplit s = squarefree_split(d);
  std::vector<CuspDescriptor> out;
  for (Int q = 0; q <= s.n / 2; ++q) {
    Int ds = (2 * q * s.n * s.d0) % (2 * d);
    // isotropy of delta* for x -> x^2 : Z/2d -> Z/4d
    if ((ds * ds) % (4 * d) != 0) throw std::logic_error("cusp invariant failed isotropy");
    out.push_back(CuspDescriptor{d, s.n, s.d0, q, ds, std::nullopt});
  }
  return out;
}

/// delta-perp / delta = <-2d/p*> + H + E8 + E8 for admissible imprimitivity
/// p*: requires p* | d so that the quotient stays an even lattice.
inline IntegerLattice cusp_quotient_lattice(const Int& d, const Int& p_star) {
  if (d < 1) throw std::invalid_argument("cusp_quotient_lattice requires d >= 1");
  if (p_star < 1 || d % p_star != 0)
    throw std::invalid_argument("inadmissible imprimitivity: p* must divide d");
  IntegerLattice l = lattice_span(-2 * d / p_star);
  l = direct_sum(l, lattice_H());
  l = direct_sum(direct_sum(l, lattice_E8()), lattice_E8());
  return IntegerLattice(l.gram(), "cusp(" + to_string(d) + "," + to_string(p_star) + ")");
}

}  // namespace k3deg
