#include <doctest.h>

#include <k3deg/cusps.hpp>

using namespace k3deg;

namespace {

// trial-division oracle for the squarefree split
SquarefreeSplit squarefree_split_oracle(Int d) {
  Int n = 1;
  for (Int p = 2; p * p <= d; ++p) {
    while (d % (p * p) == 0) {
      d /= p * p;
      n *= p;
    }
  }
  return SquarefreeSplit{n, d};
}

}  // namespace

TEST_CASE("squarefree split") {
  CHECK(squarefree_split(1).n == 1);
  CHECK(squarefree_split(1).d0 == 1);
  CHECK(squarefree_split(4).n == 2);
  CHECK(squarefree_split(4).d0 == 1);
  CHECK(squarefree_split(72).n == 6);
  CHECK(squarefree_split(72).d0 == 2);
  CHECK_THROWS_AS(squarefree_split(0), std::invalid_argument);
  for (int d = 1; d <= 500; ++d) {
    SquarefreeSplit s = squarefree_split(d);
    SquarefreeSplit o = squarefree_split_oracle(d);
    CHECK(s.n == o.n);
    CHECK(s.d0 == o.d0);
    CHECK(s.n * s.n * s.d0 == d);
  }
}

TEST_CASE("zero cusp counts and invariants") {
  CHECK(zero_cusp_count(1) == 1);
  CHECK(zero_cusp_count(4) == 2);
  CHECK(zero_cusp_count(9) == 2);

  for (int d = 1; d <= 300; ++d) {
    auto cusps = zero_cusp_invariants(d);
    CHECK(Int(cusps.size()) == zero_cusp_count(d));
    for (const auto& c : cusps) {
      CHECK((c.delta_star * c.delta_star) % (4 * d) == 0);  // isotropy
      CHECK(c.delta_star == (2 * c.q * c.n * c.d0) % (2 * d));
    }
    // independent enumeration: isotropic classes {+-x} of x -> x^2 on Z/2d
    Int count = 0;
    for (Int x = 0; x <= d; ++x)
      if ((x * x) % (4 * d) == 0) ++count;
    CHECK(count == zero_cusp_count(d));
  }
}

TEST_CASE("cusp quotient lattices") {
  SUBCASE("d=1, p*=1") {
    IntegerLattice l = cusp_quotient_lattice(1, 1);
    CHECK(l.rank() == 19);
    CHECK(l.det() == 2);
    CHECK(l.even());
    CHECK(signature(l) == Signature{1, 18, 0});
    CHECK(discriminant_group(l).invariant_factors == std::vector<Int>{2});
  }
  SUBCASE("d=4, p*=2 gives <-4>+H+E8+E8") {
    IntegerLattice l = cusp_quotient_lattice(4, 2);
    CHECK(l.gram()(0, 0) == -4);
    CHECK(l.rank() == 19);
    CHECK(discriminant_group(l).order() == 4);
  }
  SUBCASE("p*=1 discriminant group is Z/2d") {
    for (int d = 1; d <= 12; ++d) {
      DiscriminantGroup g = discriminant_group(cusp_quotient_lattice(d, 1));
      CHECK(g.invariant_factors == std::vector<Int>{2 * d});
    }
  }
  SUBCASE("admissibility") {
    CHECK_THROWS_AS(cusp_quotient_lattice(1, 2), std::invalid_argument);
    CHECK_THROWS_AS(cusp_quotient_lattice(6, 4), std::invalid_argument);
    CHECK_THROWS_AS(cusp_quotient_lattice(4, 0), std::invalid_argument);
    CHECK_NOTHROW(cusp_quotient_lattice(6, 3));
  }
  SUBCASE("delta-perp/delta machinery on explicit isotropic vectors") {
    // p* = 1: delta = e of the first H summand; the quotient matches the
    // stated <-2d> + H + E8 + E8 exactly.
    for (int d : {1, 3, 4}) {
      IntegerLattice l = lattice_L2d(d);
      Vec delta(21, Int(0));
      delta[1] = 1;
      REQUIRE(imprimitivity_in_dual(l, delta) == 1);
      Sublattice perp = orthogonal_complement(l, span_of(l, {delta}));
      IntegerLattice perp_lattice = perp.as_lattice();
      auto din = solve_integer(perp.basis, delta);
      REQUIRE(din.has_value());
      Mat sub(perp.rank(), 1);
      sub.set_col(0, *din);
      QuotientLattice q = quotient_by_radical_part(perp_lattice, make_sublattice(perp_lattice, sub));
      IntegerLattice expected = cusp_quotient_lattice(d, 1);
      CHECK(q.lattice.rank() == expected.rank());
      CHECK(q.lattice.det() == expected.det());
      CHECK(signature(q.lattice) == signature(expected));
      CHECK(discriminant_group(q.lattice).invariant_factors == discriminant_group(expected).invariant_factors);
      CHECK(q.lattice.even());
    }
    // p* = 2 in L_8: delta = v + 2e + 2f. The quotient is even of
    // signature (1,18) as always, but its discriminant order is
    // 2d/p*^2 = 2, not 2d/p* = 4: which quotient invariants occur at which
    // orbit {+-q} is exactly the correspondence the toolkit does not
    // assert. Frozen here as a regression value for the quotient engine.
    IntegerLattice l = lattice_L2d(4);
    Vec delta(21, Int(0));
    delta[0] = 1;
    delta[1] = 2;
    delta[2] = 2;
    REQUIRE(l.norm(delta) == 0);
    REQUIRE(is_primitive(l, delta));
    REQUIRE(imprimitivity_in_dual(l, delta) == 2);
    Sublattice perp = orthogonal_complement(l, span_of(l, {delta}));
    IntegerLattice perp_lattice = perp.as_lattice();
    auto din = solve_integer(perp.basis, delta);
    REQUIRE(din.has_value());
    Mat sub(perp.rank(), 1);
    sub.set_col(0, *din);
    QuotientLattice q = quotient_by_radical_part(perp_lattice, make_sublattice(perp_lattice, sub));
    CHECK(q.lattice.rank() == 19);
    CHECK(q.lattice.even());
    CHECK(signature(q.lattice) == Signature{1, 18, 0});
    CHECK(q.lattice.det() == 2);
    CHECK(discriminant_group(q.lattice).invariant_factors == std::vector<Int>{2});
  }
}
