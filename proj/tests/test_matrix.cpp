#include <doctest.h>

#include <k3deg/matrix.hpp>

#include <random>

using namespace k3deg;

namespace {

Mat random_matrix(std::mt19937_64& rng, int rows, int cols, int lo = -6, int hi = 6) {
  std::uniform_int_distribution<int> d(lo, hi);
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = d(rng);
  return m;
}

Mat random_unimodular(std::mt19937_64& rng, int n, int ops = 12) {
  std::uniform_int_distribution<int> idx(0, n - 1), coef(-2, 2);
  Mat m = Mat::identity(n);
  for (int k = 0; k < ops; ++k) {
    int i = idx(rng), j = idx(rng);
    if (i == j) continue;
    m.add_row(i, j, coef(rng));
  }
  return m;
}

// Cofactor-expansion determinant; independent of the Bareiss path.
Int det_cofactor(const Mat& m) {
  int n = m.rows;
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Int s = 0;
  for (int j = 0; j < n; ++j) {
    if (m(0, j) == 0) continue;
    Mat minor(n - 1, n - 1);
    for (int r = 1; r < n; ++r) {
      int cc = 0;
      for (int c = 0; c < n; ++c) {
        if (c == j) continue;
        minor(r - 1, cc++) = m(r, c);
      }
    }
    Int term = m(0, j) * det_cofactor(minor);
    s += (j % 2 == 0) ? term : -term;
  }
  return s;
}

// Invariant factors via determinantal divisors: d_k = gcd of k x k minors,
// invariant factor k = d_k / d_{k-1}. Exponential, used only on tiny inputs.
std::vector<Int> invariants_by_minors(const Mat& m) {
  int n = std::min(m.rows, m.cols);
  std::vector<Int> dd;  // dd[k-1] = gcd of k x k minors
  for (int k = 1; k <= n; ++k) {
    Int g = 0;
    std::vector<int> ri(k), ci(k);
    std::function<void(int, int)> loop_rows = [&](int pos, int start) {
      if (pos == k) {
        std::function<void(int, int)> loop_cols = [&](int cp, int cs) {
          if (cp == k) {
            Mat sub(k, k);
            for (int i = 0; i < k; ++i)
              for (int j = 0; j < k; ++j) sub(i, j) = m(ri[i], ci[j]);
            g = gcd(g, det_cofactor(sub));
            return;
          }
          for (int c = cs; c < m.cols; ++c) {
            ci[cp] = c;
            loop_cols(cp + 1, c + 1);
          }
        };
        loop_cols(0, 0);
        return;
      }
      for (int r = start; r < m.rows; ++r) {
        ri[pos] = r;
        loop_rows(pos + 1, r + 1);
      }
    };
    loop_rows(0, 0);
    dd.push_back(g);
  }
  std::vector<Int> inv;
  Int prev = 1;
  for (const Int& d : dd) {
    if (d == 0) break;
    inv.push_back(d / prev);
    prev = d;
  }
  return inv;
}

}  // namespace

TEST_CASE("determinant: Bareiss agrees with cofactor expansion") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 1 + trial % 5;
    Mat m = random_matrix(rng, n, n);
    CHECK(det(m) == det_cofactor(m));
  }
  CHECK(det(Mat::identity(4)) == 1);
  CHECK(det(Mat(0, 0)) == 1);
}

TEST_CASE("smith normal form: frozen examples") {
  SUBCASE("identity") {
    SmithForm s = smith_normal_form(Mat::identity(3));
    CHECK(s.rank == 3);
    CHECK(s.diagonal() == std::vector<Int>{1, 1, 1});
  }
  SUBCASE("diag(2,3) has invariants 1,6") {
    Mat m{{2, 0}, {0, 3}};
    SmithForm s = smith_normal_form(m);
    CHECK(s.diagonal() == std::vector<Int>{1, 6});
  }
  SUBCASE("zero matrix") {
    Mat m(2, 3);
    SmithForm s = smith_normal_form(m);
    CHECK(s.rank == 0);
    CHECK(s.d.is_zero());
  }
}

TEST_CASE("smith normal form: transforms are unimodular and exact") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    int r = 1 + trial % 4, c = 1 + (trial / 3) % 4;
    Mat m = random_matrix(rng, r, c);
    SmithForm s = smith_normal_form(m);
    CHECK(s.u * m * s.v == s.d);
    CHECK(is_unimodular(s.u));
    CHECK(is_unimodular(s.v));
    CHECK(s.u * s.u_inv == Mat::identity(r));
    CHECK(s.v * s.v_inv == Mat::identity(c));
    auto diag = s.diagonal();
    for (size_t i = 0; i + 1 < diag.size(); ++i) CHECK(diag[i + 1] % diag[i] == 0);
    CHECK(diag == invariants_by_minors(m));
  }
}

TEST_CASE("kernel basis is a saturated basis of the kernel") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    int r = 1 + trial % 3, c = 2 + trial % 4;
    Mat m = random_matrix(rng, r, c);
    Mat k = kernel_basis(m);
    CHECK((m * k).is_zero());
    CHECK(rank_of(m) + k.cols == c);
    if (k.cols > 0) {
      // saturated: all invariant factors of the basis matrix are 1
      auto inv = smith_diagonal(k);
      for (const Int& d : inv) CHECK(d == 1);
    }
  }
}

TEST_CASE("kernel split: unimodular splitting of Z^n along the kernel") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 40; ++trial) {
    int r = 1 + trial % 4, c = 2 + trial % 5;
    Mat m = random_matrix(rng, r, c);
    KernelSplit ks = kernel_split(m);
    CHECK((m * ks.basis).is_zero());
    CHECK(ks.proj * ks.basis == Mat::identity(ks.basis.cols));
    CHECK(ks.coproj * ks.lift == Mat::identity(ks.rank));
    CHECK((ks.coproj * ks.basis).is_zero());
    CHECK((ks.proj * ks.lift).is_zero());
    // basis . proj + lift . coproj is the identity: a genuine splitting
    CHECK(ks.basis * ks.proj + ks.lift * ks.coproj == Mat::identity(c));
    CHECK(m * ks.lift == ks.echelon_cols);
    CHECK(rank_of(ks.echelon_cols) == ks.rank);
  }
}

TEST_CASE("integer solve") {
  Mat a{{2, 0}, {0, 3}};
  auto x = solve_integer(a, Vec{4, -9});
  REQUIRE(x.has_value());
  CHECK(*x == Vec{2, -3});
  CHECK_FALSE(solve_integer(a, Vec{1, 0}).has_value());

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    Mat m = random_matrix(rng, 3, 4);
    Mat xs = random_matrix(rng, 4, 1);
    Vec b = m * xs.col(0);
    auto sol = solve_integer(m, b);
    REQUIRE(sol.has_value());
    CHECK(m * *sol == b);
  }
}

TEST_CASE("signature: inertia under congruence, known forms") {
  Mat h{{0, 1}, {1, 0}};
  CHECK(signature_of(h) == Signature{1, 1, 0});
  Mat neg2{{-2}};
  CHECK(signature_of(neg2) == Signature{0, 1, 0});
  Mat degenerate{{1, 1}, {1, 1}};
  CHECK(signature_of(degenerate) == Signature{1, 0, 1});

  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 1 + trial % 5;
    Mat m = random_matrix(rng, n, n);
    Mat g = m + m.transposed();
    Signature s = signature_of(g);
    CHECK(s.positive + s.negative + s.zero == n);
    Mat b = random_unimodular(rng, n);
    CHECK(signature_of(restrict_form(g, b)) == s);
    if (s.zero == 0) {
      Int d = det(g);
      CHECK((d > 0) == (s.negative % 2 == 0));
    }
  }
}

TEST_CASE("quotient split of a saturated sublattice") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 2 + trial % 4;
    int s = 1 + trial % n;
    // random saturated sublattice: first s columns of a unimodular matrix
    Mat u = random_unimodular(rng, n);
    Mat basis(n, s);
    for (int j = 0; j < s; ++j)
      for (int i = 0; i < n; ++i) basis(i, j) = u(i, j);
    QuotientSplit q = quotient_split(n, basis);
    CHECK(q.torsion.empty());
    CHECK(q.sub_rank == s);
    CHECK(q.proj * q.lift == Mat::identity(n - s));
    CHECK((q.proj * basis).is_zero());
  }
  // non-saturated input reports its torsion
  Mat twice(2, 1);
  twice(0, 0) = 2;
  QuotientSplit q = quotient_split(2, twice);
  CHECK(q.torsion == std::vector<Int>{2});
}
