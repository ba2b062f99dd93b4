#pragma once

#include <k3deg/lattice.hpp>

#include <cstdlib>
#include <future>
#include <thread>

namespace k3deg {

namespace detail {

/// Exact Fincke-Pohst data: Q(x) = sum_i d[i] * (x_i + sum_{j>i} u[i][j] x_j)^2
/// for a positive definite integral form.
struct FinckePohst {
  int n = 0;
  std::vector<Rat> d;
  std::vector<std::vector<Rat>> u;

  explicit FinckePohst(const Mat& a) {
    n = a.rows;
    std::vector<std::vector<Rat>> r(n, std::vector<Rat>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) r[i][j] = Rat(a(i, j));
    for (int i = 0; i < n; ++i) {
      if (r[i][i] <= 0) throw std::invalid_argument("form is not positive definite");
      for (int j = i + 1; j < n; ++j) {
        r[j][i] = r[i][j];  // stash the pre-division value
        r[i][j] /= r[i][i];
      }
      for (int k = i + 1; k < n; ++k)
        for (int l = k; l < n; ++l) r[k][l] -= r[k][i] * r[i][l];
    }
    d.resize(n);
    u.assign(n, std::vector<Rat>(n, Rat(0)));
    for (int i = 0; i < n; ++i) {
      d[i] = r[i][i];
      for (int j = i + 1; j < n; ++j) u[i][j] = r[i][j];
    }
  }

  /// Enumerate x with Q(x) == target and x != 0; top-level coordinate may be
  /// restricted (used to parallelize). The callback receives each solution.
  template <typename F>
  void enumerate_level(int level, const Rat& budget, std::vector<Int>& x, F&& emit) const {
    if (level < 0) {
      if (budget == 0) {
        bool zero = true;
        for (const Int& c : x)
          if (c != 0) zero = false;
        if (!zero) emit(x);
      }
      return;
    }
    Rat c = 0;
    for (int j = level + 1; j < n; ++j)
      if (x[j] != 0) c += u[level][j] * Rat(x[j]);
    auto contribution = [&](const Int& k) { return d[level] * (Rat(k) + c) * (Rat(k) + c); };
    Int k0 = floor_rat(-c);
    for (Int k = k0;; --k) {
      Rat w = contribution(k);
      if (w > budget) break;
      x[level] = k;
      enumerate_level(level - 1, budget - w, x, emit);
    }
    for (Int k = k0 + 1;; ++k) {
      Rat w = contribution(k);
      if (w > budget) break;
      x[level] = k;
      enumerate_level(level - 1, budget - w, x, emit);
    }
    x[level] = 0;
  }
};

inline int thread_count_from_env() {
  const char* env = std::getenv("K3DEG_THREADS");
  if (!env) return 1;
  int n = std::atoi(env);
  if (n < 1) return 1;
  unsigned hw = std::thread::hardware_concurrency();
  if (hw > 0 && n > static_cast<int>(hw)) n = static_cast<int>(hw);
  return n;
}

}  // namespace detail

/// All vectors of a given (positive) norm of a positive definite integral
/// form, by exact branch-and-bound. Deterministic lexicographic order.
inline std::vector<Vec> vectors_of_norm(const Mat& pos_def_gram, const Int& target) {
  if (pos_def_gram.rows == 0) return {};
  detail::FinckePohst fp(pos_def_gram);
  int n = fp.n;
  Rat budget(target);

  std::vector<Vec> out;
  int threads = detail::thread_count_from_env();
  if (threads <= 1 || n < 2) {
    std::vector<Int> x(n, Int(0));
    fp.enumerate_level(n - 1, budget, x, [&](const std::vector<Int>& v) { out.push_back(v); });
  } else {
    // split on the values of the outermost coordinate
    std::vector<Int> tops;
    {
      Rat c = 0;
      auto contribution = [&](const Int& k) { return fp.d[n - 1] * Rat(k) * Rat(k); };
      for (Int k = 0;; --k) {
        if (contribution(k) > budget) break;
        tops.push_back(k);
      }
      for (Int k = 1;; ++k) {
        if (contribution(k) > budget) break;
        tops.push_back(k);
      }
    }
    std::vector<std::future<std::vector<Vec>>> futures;
    for (int t = 0; t < threads; ++t) {
      futures.push_back(std::async(std::launch::async, [&, t]() {
        std::vector<Vec> local;
        for (size_t idx = t; idx < tops.size(); idx += threads) {
          std::vector<Int> x(n, Int(0));
          x[n - 1] = tops[idx];
          Rat w = fp.d[n - 1] * Rat(tops[idx]) * Rat(tops[idx]);
          fp.enumerate_level(n - 2, budget - w, x, [&](const std::vector<Int>& v) { local.push_back(v); });
        }
        return local;
      }));
    }
    for (auto& f : futures) {
      auto local = f.get();
      out.insert(out.end(), local.begin(), local.end());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Roots of a negative definite lattice: all vectors of norm -2, as +- pairs
/// in deterministic order. Indefinite input is refused (the root system
/// would be infinite).
inline std::vector<Vec> roots(const IntegerLattice& l) {
  Signature sig = signature(l);
  if (sig.positive != 0 || sig.zero != 0)
    throw std::invalid_argument("roots() requires a negative definite lattice");
  if (l.rank() == 0) return {};
  Mat neg = l.gram();
  for (Int& x : neg.a) x = -x;
  return vectors_of_norm(neg, 2);
}

/// r_beta(v) = v + (v . beta) beta for a root beta (norm -2). An involutive
/// isometry of the lattice.
inline Vec reflect(const IntegerLattice& l, const Vec& beta, const Vec& v) {
  if (l.norm(beta) != -2) throw std::invalid_argument("reflection requires a root of norm -2");
  Int c = l.pair(v, beta);
  Vec w = v;
  for (size_t i = 0; i < w.size(); ++i) w[i] += c * beta[i];
  return w;
}

}  // namespace k3deg
