#pragma once

#include <k3deg/lattice.hpp>

namespace k3deg {

/// A two-term cochain complex of free Z-modules C0 -> C1, the boundary an
/// integral (c1 x c0) matrix, with an optional symmetric pairing on C0.
struct TwoTermComplex {
  int c0 = 0;
  int c1 = 0;
  Mat boundary;  // c1 x c0
  std::optional<Mat> form0;
};

inline TwoTermComplex make_complex(Mat boundary, std::optional<Mat> form0 = std::nullopt) {
  TwoTermComplex c;
  c.c1 = boundary.rows;
  c.c0 = boundary.cols;
  c.boundary = std::move(boundary);
  if (form0) {
    if (!form0->is_symmetric() || form0->rows != c.c0)
      throw std::invalid_argument("form0 must be a symmetric c0 x c0 matrix");
    c.form0 = std::move(form0);
  }
  return c;
}

/// H0 = ker(boundary) as a saturated sublattice of C0 (with the induced
/// pairing when C0 carries one), H1 = coker(boundary) as rank + torsion.
struct HomologyReport {
  Mat h0_basis;  // c0 x rank(H0), columns a saturated basis
  std::optional<Mat> h0_gram;
  int h0_rank = 0;
  int image_rank = 0;
  int h1_rank = 0;
  std::vector<Int> h1_torsion;
};

inline HomologyReport homology(const TwoTermComplex& c) {
  HomologyReport r;
  r.h0_basis = kernel_basis(c.boundary);
  r.h0_rank = r.h0_basis.cols;
  r.image_rank = c.c0 - r.h0_rank;
  r.h1_rank = c.c1 - r.image_rank;
  r.h1_torsion = torsion_invariants(c.boundary);
  if (c.form0) r.h0_gram = restrict_form(*c.form0, r.h0_basis);
  return r;
}

/// A chain map (f0, f1) between two-term complexes; the commutation
/// f1 . boundary_src = boundary_tgt . f0 is enforced at construction.
struct ChainMap {
  TwoTermComplex source;
  TwoTermComplex target;
  Mat f0;  // target.c0 x source.c0
  Mat f1;  // target.c1 x source.c1
};

inline ChainMap make_chain_map(TwoTermComplex source, TwoTermComplex target, Mat f0, Mat f1) {
  if (f0.rows != target.c0 || f0.cols != source.c0 || f1.rows != target.c1 || f1.cols != source.c1)
    throw std::invalid_argument("chain map component shapes do not match the complexes");
  if (!(f1 * source.boundary == target.boundary * f0))
    throw std::invalid_argument("chain map does not commute with the boundaries");
  return ChainMap{std::move(source), std::move(target), std::move(f0), std::move(f1)};
}

inline ChainMap identity_chain_map(const TwoTermComplex& c) {
  return make_chain_map(c, c, Mat::identity(c.c0), Mat::identity(c.c1));
}

inline ChainMap compose(const ChainMap& second, const ChainMap& first) {
  return make_chain_map(first.source, second.target, second.f0 * first.f0, second.f1 * first.f1);
}

/// The induced map on H0 (in the chosen kernel bases) plus the H1
/// comparison data needed for the quasi-isomorphism test.
struct InducedHomology {
  Mat h0_map;  // rank H0(target) x rank H0(source)
  bool h0_bijective = false;
  int h1_rank_source = 0;
  int h1_rank_target = 0;
  std::vector<Int> h1_torsion_source;
  std::vector<Int> h1_torsion_target;
  bool h1_invariants_equal = false;
  bool h1_surjective = false;
  bool h1_isomorphism = false;
};

inline InducedHomology induced_on_homology(const ChainMap& f) {
  InducedHomology out;
  HomologyReport hs = homology(f.source);
  HomologyReport ht = homology(f.target);

  // f0 maps ker to ker; the target basis is saturated, so coordinates exist
  // over Z whenever the image vectors lie in the kernel (they do).
  Mat image = f.f0 * hs.h0_basis;
  auto coords = solve_integer(ht.h0_basis, image);
  if (!coords) throw std::logic_error("chain map image escaped the target kernel");
  out.h0_map = *coords;
  out.h0_bijective = out.h0_map.is_square() && is_unimodular(out.h0_map);

  out.h1_rank_source = hs.h1_rank;
  out.h1_rank_target = ht.h1_rank;
  out.h1_torsion_source = hs.h1_torsion;
  out.h1_torsion_target = ht.h1_torsion;
  out.h1_invariants_equal =
      hs.h1_rank == ht.h1_rank && hs.h1_torsion == ht.h1_torsion;

  // induced map on coker is surjective iff im(f1) + im(boundary_tgt) = C1tgt
  Mat joint = hcat(f.target.boundary, f.f1);
  auto diag = smith_diagonal(joint);
  out.h1_surjective = static_cast<int>(diag.size()) == f.target.c1;
  for (const Int& d : diag)
    if (d != 1) out.h1_surjective = false;
  // a surjection between abstractly isomorphic finitely generated abelian
  // groups is an isomorphism
  out.h1_isomorphism = out.h1_invariants_equal && out.h1_surjective;
  return out;
}

inline bool is_quasi_iso(const ChainMap& f) {
  InducedHomology ind = induced_on_homology(f);
  return ind.h0_bijective && ind.h1_isomorphism;
}

}  // namespace k3deg
