#pragma once

// Reference computations written from the constructions directly, sharing no
// evaluation code with the library.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace oracle {

using Q = mpq_class;
using Fn = std::function<Q(const Q&)>;

inline Q absq(const Q& x) { return x < 0 ? Q(-x) : x; }

/// g(x) = |1 - |3x - 1||.
inline Q tent(const Q& x) { return absq(Q(1) - absq(Q(3) * x - 1)); }

/// Zigzag with s full branches on [0,1], first increasing.
inline Q zigzag(long s, const Q& t) {
  Q u = t * s;
  mpz_class j = u.get_num() / u.get_den();
  if (j >= s) j = s - 1;
  Q frac = u - Q(j);
  return mpz_odd_p(j.get_mpz_t()) ? Q(Q(1) - frac) : frac;
}

/// Block [a, a+len] with s legs, applied through the affine chart.
inline Q block_eval(const Q& a, const Q& len, long s, const Q& x) { return a + len * zigzag(s, (x - a) / len); }

/// Iterated tent on the chart of [a, a+len]: T^-1 g^n T.
inline Q conjugated_tent_power(const Q& a, const Q& len, long n, const Q& x) {
  Q t = (x - a) / len;
  for (long i = 0; i < n; ++i) t = tent(t);
  return a + len * t;
}

/// phi_a with r = 1: blocks of length (2/3) 3^-(n-1) with the n-th tent iterate.
inline Q phi_a_r1(const Q& x) {
  Q a = 0;
  Q len(2, 3);
  for (long n = 1; n <= 40; ++n) {
    if (x <= a + len) return conjugated_tent_power(a, len, n, x);
    a += len;
    len /= 3;
  }
  return x;
}

/// Hazard map: [2^-n, 2^-n+1] carries 2n+1 legs.
inline Q hazard(const Q& x) {
  if (x == 0) return 0;
  Q hi = 1;
  for (long n = 1; n <= 200; ++n) {
    const Q lo = hi / 2;
    if (x >= lo) return block_eval(lo, hi - lo, 2 * n + 1, x);
    hi = lo;
  }
  return x;
}

inline std::vector<Q> orbit(const Fn& f, Q x, std::size_t n) {
  std::vector<Q> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(x);
    x = f(x);
  }
  return out;
}

inline Q bowen(const Fn& f, const Q& x, const Q& y, std::size_t n) {
  const auto ox = orbit(f, x, n);
  const auto oy = orbit(f, y, n);
  Q d = 0;
  for (std::size_t i = 0; i < n; ++i) d = std::max(d, absq(ox[i] - oy[i]));
  return d;
}

inline std::vector<Q> grid(const Q& h) {
  std::vector<Q> out;
  for (Q x = 0; x < 1; x += h) out.push_back(x);
  out.push_back(1);
  return out;
}

/// Largest subset of the grid with pairwise d_n > eps, by plain branch and bound.
inline std::size_t max_separated(const Fn& f, std::size_t n, const Q& eps, const Q& h) {
  const auto pts = grid(h);
  const std::size_t m = pts.size();
  std::vector<std::vector<char>> far(m, std::vector<char>(m, 0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) far[i][j] = far[j][i] = bowen(f, pts[i], pts[j], n) > eps;
  std::size_t best = 0;
  std::vector<std::size_t> chosen;
  std::function<void(std::size_t)> search = [&](std::size_t start) {
    best = std::max(best, chosen.size());
    for (std::size_t i = start; i < m; ++i) {
      if (chosen.size() + (m - i) <= best) return;
      if (std::all_of(chosen.begin(), chosen.end(), [&](std::size_t c) { return far[c][i]; })) {
        chosen.push_back(i);
        search(i + 1);
        chosen.pop_back();
      }
    }
  };
  search(0);
  return best;
}

/// Fewest grid centers whose open d_n balls of radius eps cover the grid (brute force).
inline std::size_t min_spanning(const Fn& f, std::size_t n, const Q& eps, const Q& h) {
  const auto pts = grid(h);
  const std::size_t m = pts.size();
  std::vector<std::vector<char>> near(m, std::vector<char>(m, 0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) near[i][j] = bowen(f, pts[i], pts[j], n) < eps;
  for (std::size_t k = 1; k <= m; ++k) {
    std::vector<char> pick(m, 0);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(k), 1);
    do {
      bool covers = true;
      for (std::size_t j = 0; j < m && covers; ++j) {
        bool hit = false;
        for (std::size_t i = 0; i < m && !hit; ++i) hit = pick[i] && near[i][j];
        covers = hit;
      }
      if (covers) return k;
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return m;
}

/// Misiurewicz-style predictor 1 / (1 - log|I| / log s).
inline double predictor(double log_length, double log_legs) { return 1.0 / (1.0 - log_length / log_legs); }

/// Monotone pieces of f^n sampled on a fine grid of [0,1].
inline std::size_t laps(const Fn& f, std::size_t n, long samples) {
  std::vector<Q> ys;
  for (long i = 0; i <= samples; ++i) {
    Q x(i, samples);
    for (std::size_t k = 0; k < n; ++k) x = f(x);
    ys.push_back(x);
  }
  std::size_t pieces = 1;
  int dir = 0;
  for (std::size_t i = 1; i < ys.size(); ++i) {
    const int d = ys[i] > ys[i - 1] ? 1 : (ys[i] < ys[i - 1] ? -1 : 0);
    if (d == 0) continue;
    if (dir != 0 && d != dir) ++pieces;
    dir = d;
  }
  return pieces;
}

}  // namespace oracle
