#include <doctest.h>

#include <k3deg/homology.hpp>

#include <random>

using namespace k3deg;

namespace {

Mat random_matrix(std::mt19937_64& rng, int rows, int cols, int lo = -4, int hi = 4) {
  std::uniform_int_distribution<int> d(lo, hi);
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = d(rng);
  return m;
}

Mat random_unimodular(std::mt19937_64& rng, int n, int ops = 10) {
  std::uniform_int_distribution<int> idx(0, std::max(0, n - 1)), coef(-2, 2);
  Mat m = Mat::identity(n);
  for (int k = 0; k < ops && n > 1; ++k) {
    int i = idx(rng), j = idx(rng);
    if (i != j) m.add_row(i, j, coef(rng));
  }
  return m;
}

Mat inverse_unimodular(const Mat& m) {
  auto inv = solve_integer(m, Mat::identity(m.rows));
  REQUIRE(inv.has_value());
  return *inv;
}

}  // namespace

TEST_CASE("homology of simple complexes") {
  SUBCASE("zero boundary") {
    TwoTermComplex c = make_complex(Mat(2, 3));
    HomologyReport h = homology(c);
    CHECK(h.h0_rank == 3);
    CHECK(h.h1_rank == 2);
    CHECK(h.h1_torsion.empty());
  }
  SUBCASE("multiplication by 2") {
    TwoTermComplex c = make_complex(Mat{{2}});
    HomologyReport h = homology(c);
    CHECK(h.h0_rank == 0);
    CHECK(h.h1_rank == 0);
    CHECK(h.h1_torsion == std::vector<Int>{2});
  }
  SUBCASE("diag(1,3)") {
    TwoTermComplex c = make_complex(Mat{{1, 0}, {0, 3}});
    HomologyReport h = homology(c);
    CHECK(h.h0_rank == 0);
    CHECK(h.h1_rank == 0);
    CHECK(h.h1_torsion == std::vector<Int>{3});
  }
}

TEST_CASE("homology rank bookkeeping and kernel saturation") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    int c0 = 1 + trial % 5, c1 = 1 + (trial / 2) % 4;
    TwoTermComplex c = make_complex(random_matrix(rng, c1, c0));
    HomologyReport h = homology(c);
    CHECK(h.h0_rank + h.image_rank == c.c0);
    CHECK(h.image_rank + h.h1_rank == c.c1);
    CHECK((c.boundary * h.h0_basis).is_zero());
    if (h.h0_rank > 0) {
      for (const Int& d : smith_diagonal(h.h0_basis)) CHECK(d == 1);
    }
    for (size_t i = 0; i + 1 < h.h1_torsion.size(); ++i) {
      CHECK(h.h1_torsion[i] >= 2);
      CHECK(h.h1_torsion[i + 1] % h.h1_torsion[i] == 0);
    }
  }
}

TEST_CASE("chain maps validate commutation") {
  TwoTermComplex c = make_complex(Mat{{2, 0}, {0, 3}});
  CHECK_NOTHROW(identity_chain_map(c));
  // a non-commuting square is rejected
  Mat f0 = Mat::identity(2);
  Mat f1{{1, 1}, {0, 1}};
  CHECK_THROWS_AS(make_chain_map(c, c, f0, f1), std::invalid_argument);
}

TEST_CASE("quasi-isomorphism detection") {
  SUBCASE("identity is a quasi-iso") {
    TwoTermComplex c = make_complex(Mat{{6, 2}, {0, 4}});
    CHECK(is_quasi_iso(identity_chain_map(c)));
  }
  SUBCASE("multiplication by 2 on H0 is not") {
    TwoTermComplex c = make_complex(Mat(0, 1));
    Mat two{{2}};
    ChainMap f = make_chain_map(c, c, two, Mat(0, 0));
    CHECK_FALSE(is_quasi_iso(f));
    InducedHomology ind = induced_on_homology(f);
    CHECK_FALSE(ind.h0_bijective);
    CHECK(ind.h1_isomorphism);
  }
  SUBCASE("H1 torsion mismatch is detected") {
    TwoTermComplex src = make_complex(Mat{{2}});
    TwoTermComplex tgt = make_complex(Mat{{4}});
    // f0 = 1, f1 = 2 commutes; cokernels Z/2 and Z/4 are not isomorphic
    ChainMap f = make_chain_map(src, tgt, Mat{{1}}, Mat{{2}});
    CHECK_FALSE(is_quasi_iso(f));
    CHECK_FALSE(induced_on_homology(f).h1_invariants_equal);
  }
  SUBCASE("composition of quasi-isos is a quasi-iso") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 25; ++trial) {
      int c0 = 1 + trial % 4, c1 = 1 + (trial / 2) % 3;
      Mat b = random_matrix(rng, c1, c0);
      TwoTermComplex c = make_complex(b);
      Mat u0 = random_unimodular(rng, c0), u1 = random_unimodular(rng, c1);
      Mat v0 = random_unimodular(rng, c0), v1 = random_unimodular(rng, c1);
      TwoTermComplex c2 = make_complex(u1 * b * inverse_unimodular(u0));
      TwoTermComplex c3 = make_complex(v1 * c2.boundary * inverse_unimodular(v0));
      ChainMap f = make_chain_map(c, c2, u0, u1);
      ChainMap g = make_chain_map(c2, c3, v0, v1);
      CHECK(is_quasi_iso(f));
      CHECK(is_quasi_iso(g));
      CHECK(is_quasi_iso(compose(g, f)));
    }
  }
}

TEST_CASE("pairing on H0 is preserved by isometric chain maps") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 20; ++trial) {
    int c0 = 2 + trial % 3, c1 = 1 + trial % 2;
    Mat b = random_matrix(rng, c1, c0);
    Mat g = random_matrix(rng, c0, c0);
    g = g + g.transposed();
    TwoTermComplex src = make_complex(b, g);
    Mat u0 = random_unimodular(rng, c0), u1 = random_unimodular(rng, c1);
    Mat u0i = inverse_unimodular(u0);
    // target form chosen so that f0 = u0 is an isometry
    Mat g_tgt = u0i.transposed() * g * u0i;
    TwoTermComplex tgt = make_complex(u1 * b * u0i, g_tgt);
    ChainMap f = make_chain_map(src, tgt, u0, u1);
    HomologyReport hs = homology(src), ht = homology(tgt);
    REQUIRE(hs.h0_gram.has_value());
    REQUIRE(ht.h0_gram.has_value());
    Mat x = induced_on_homology(f).h0_map;
    CHECK(x.transposed() * (*ht.h0_gram * x) == *hs.h0_gram);
  }
}
