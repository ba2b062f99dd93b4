#include <doctest.h>

#include <k3deg/yau_zaslow.hpp>

using namespace k3deg;

namespace {

// Exhaustive multiset enumeration for tiny inputs: partitions with colored
// parts, ordered canonically to avoid double counting.
Int colored_partitions_brute(int n, int colors) {
  // count multisets of (part, color); enumerate parts in non-increasing
  // (part, color) order
  std::function<Int(int, int, int)> rec = [&](int rest, int max_part, int max_color_for_max) -> Int {
    if (rest == 0) return 1;
    Int total = 0;
    for (int part = std::min(rest, max_part); part >= 1; --part) {
      int cmax = (part == max_part) ? max_color_for_max : colors;
      for (int color = cmax; color >= 1; --color) total += rec(rest - part, part, color);
    }
    return total;
  };
  return rec(n, n, colors);
}

}  // namespace

TEST_CASE("golden Yau-Zaslow values") {
  auto n = yz_counts(2);
  CHECK(n[0] == 324);
  CHECK(n[1] == 3200);
  CHECK(yz_series(0)[0] == 24);  // n_0 = 24
}

TEST_CASE("series agrees with the colored-partition DP") {
  auto n = yz_counts(40);
  for (int d = 1; d <= 40; ++d) CHECK(n[d - 1] == colored_partitions(d + 1, 24));
}

TEST_CASE("colored partitions: closed-form and brute-force oracles") {
  CHECK(colored_partitions(2, 24) == 324);  // 24 + C(25,2)
  CHECK(colored_partitions(0, 24) == 1);
  CHECK(colored_partitions(1, 1) == 1);
  for (int n = 0; n <= 6; ++n)
    for (int colors = 1; colors <= 3; ++colors)
      CHECK(colored_partitions(n, colors) == colored_partitions_brute(n, colors));
  // single color: ordinary partition numbers 1,1,2,3,5,7,11,15,22,30,42
  std::vector<int> p{1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42};
  for (int n = 0; n <= 10; ++n) CHECK(colored_partitions(n, 1) == p[n]);
}

TEST_CASE("counts are positive and nondecreasing; truncation consistency") {
  auto n = yz_counts(60);
  CHECK(n[0] > 0);
  for (size_t i = 1; i < n.size(); ++i) {
    CHECK(n[i] > 0);
    CHECK(n[i] >= n[i - 1]);
  }
  auto n_short = yz_counts(25);
  for (size_t i = 0; i < n_short.size(); ++i) CHECK(n_short[i] == n[i]);
}

TEST_CASE("series arithmetic sanity") {
  // (1-q) * (1 + q + q^2 + ...) = 1
  QSeries one_minus_q = QSeries::zero(10);
  one_minus_q.coefficients[0] = 1;
  one_minus_q.coefficients[1] = -1;
  QSeries inv = inverse(one_minus_q);
  for (int k = 0; k <= 10; ++k) CHECK(inv[k] == 1);
  QSeries prod = mul(one_minus_q, inv);
  CHECK(prod[0] == 1);
  for (int k = 1; k <= 10; ++k) CHECK(prod[k] == 0);
  // euler product starts 1 - q - q^2 + q^5 + q^7 - q^12 - ...
  QSeries e = euler_product(12);
  std::vector<int> expect{1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1};
  for (int k = 0; k <= 12; ++k) CHECK(e[k] == expect[k]);
}

TEST_CASE("unigonal rational-curve coefficients") {
  UnigonalRc r1 = unigonal_rc_coefficients(1);
  CHECK(r1.section_coeff == 324);
  CHECK(r1.fiber_coeff == 27);
  CHECK(r1.fiber_integral);

  UnigonalRc r2 = unigonal_rc_coefficients(2);
  CHECK(r2.section_coeff == 3200);
  CHECK(r2.fiber_coeff == 400);

  UnigonalRc r23 = unigonal_rc_coefficients(23);
  CHECK(r23.fiber_integral);
  CHECK(r23.fiber_coeff == Rat(r23.section_coeff));

  UnigonalRc r3 = unigonal_rc_coefficients(3);
  CHECK(r3.fiber_coeff == Rat(r3.section_coeff) * 4 / 24);
}
