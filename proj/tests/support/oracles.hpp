#pragma once

// Brute-force reference computations used only by the tests. Nothing here
// calls into the code path it is used to check.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <set>
#include <vector>

#include "thermo/matrix.hpp"
#include "thermo/symbolic.hpp"

namespace thermo::oracle {

using Sequence = std::vector<Symbol>;

/// All sequences of `length` over {0..m-1}, admissibility ignored.
inline std::vector<Sequence> all_sequences(std::size_t m, std::size_t length) {
  std::vector<Sequence> out{Sequence{}};
  for (std::size_t l = 0; l < length; ++l) {
    std::vector<Sequence> next;
    for (const auto& s : out)
      for (Symbol a = 0; a < m; ++a) {
        auto t = s;
        t.push_back(a);
        next.push_back(std::move(t));
      }
    out = std::move(next);
  }
  return out;
}

inline bool admissible(const std::vector<std::vector<int>>& transition, const Sequence& s) {
  for (std::size_t i = 0; i + 1 < s.size(); ++i)
    if (transition[s[i]][s[i + 1]] == 0) return false;
  return true;
}

/// d(u, v) = 2^-min{i : u_i != v_i} on the common window; 0 if they agree there.
inline double distance(const Sequence& u, const Sequence& v, std::size_t from) {
  for (std::size_t i = from; i < std::min(u.size(), v.size()); ++i)
    if (u[i] != v[i]) return std::ldexp(1.0, -static_cast<int>(i - from));
  return 0.0;
}

/// Length-(n + k) prefixes of all admissible y (of length `length`) with
/// d(f^i x, f^i y) < 2^-k for 0 <= i < n.
inline std::set<Sequence> ball_prefixes(const std::vector<std::vector<int>>& transition, const Sequence& x,
                                        std::size_t n, std::size_t k, std::size_t length) {
  std::set<Sequence> out;
  const double radius = std::ldexp(1.0, -static_cast<int>(k));
  for (const auto& y : all_sequences(transition.size(), length)) {
    if (!admissible(transition, y)) continue;
    bool inside = true;
    for (std::size_t i = 0; i < n && inside; ++i) inside = distance(x, y, i) < radius;
    if (inside) out.insert(Sequence(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(n + k)));
  }
  return out;
}

/// Direct table lookup for a potential table in lexicographic order.
inline double table_value(const std::vector<double>& table, std::size_t m, std::size_t r, const Sequence& x,
                          std::size_t at) {
  std::size_t index = 0;
  for (std::size_t j = 0; j < r; ++j) index = index * m + x[at + j];
  return table[index];
}

inline double naive_birkhoff(const std::vector<double>& table, std::size_t m, std::size_t r, const Sequence& x,
                             std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += table_value(table, m, r, x, i);
  return s;
}

/// Stationary vector of the lazy chain (Q + I) / 2 by plain iteration.
inline std::vector<double> lazy_stationary(const std::vector<std::vector<double>>& q) {
  const std::size_t m = q.size();
  std::vector<double> pi(m, 1.0 / static_cast<double>(m));
  for (int it = 0; it < 200000; ++it) {
    std::vector<double> next(m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) next[j] += pi[i] * 0.5 * (q[i][j] + (i == j ? 1.0 : 0.0));
    double diff = 0.0;
    for (std::size_t i = 0; i < m; ++i) diff = std::max(diff, std::abs(next[i] - pi[i]));
    pi = std::move(next);
    if (diff < 1e-16) break;
  }
  return pi;
}

inline double word_mass(const std::vector<std::vector<double>>& q, const std::vector<double>& pi, const Sequence& w) {
  if (w.empty()) return 1.0;
  double p = pi[w[0]];
  for (std::size_t i = 0; i + 1 < w.size(); ++i) p *= q[w[i]][w[i + 1]];
  return p;
}

/// -(1/n) sum_w mu(w) log mu(w) over all words of length n.
inline double block_entropy_rate(const std::vector<std::vector<double>>& q, const std::vector<double>& pi,
                                 std::size_t n) {
  double h = 0.0;
  for (const auto& w : all_sequences(q.size(), n)) {
    const double p = word_mass(q, pi, w);
    if (p > 0.0) h -= p * std::log(p);
  }
  return h / static_cast<double>(n);
}

/// Z_n by direct enumeration: sum over admissible n-words of exp(sum of the
/// range-r windows fitting inside the word).
inline double partition_function(const std::vector<std::vector<int>>& transition, const std::vector<double>& table,
                                 std::size_t r, std::size_t n) {
  const std::size_t m = transition.size();
  double z = 0.0;
  for (const auto& w : all_sequences(m, n)) {
    if (!admissible(transition, w)) continue;
    double s = 0.0;
    for (std::size_t i = 0; i + r <= n; ++i) s += table_value(table, m, r, w, i);
    z += std::exp(s);
  }
  return z;
}

inline double binary_entropy(double p) { return -p * std::log(p) - (1 - p) * std::log(1 - p); }

}  // namespace thermo::oracle
