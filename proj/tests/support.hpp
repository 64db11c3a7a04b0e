#pragma once

#include <cstdint>
#include <vector>

#include "bqp/core.hpp"
#include "bqp/rng.hpp"

namespace bqp::test {

// Q=[[3,-2],[-1,4]], c=[1,-1], d=[-2,0].
inline Instance e1() { return Instance(2, 2, {3, -2, -1, 4}, {1, -1}, {-2, 0}); }

// Bordered identity: q_ii = 1, q_1j = q_i1 = -n elsewhere on the border, c = d = 0.
inline Instance tight(std::size_t m) {
  std::vector<Weight> q(m * m, 0);
  for (std::size_t i = 0; i < m; ++i) q[i * m + i] = 1;
  for (std::size_t t = 1; t < m; ++t) {
    q[t] = -static_cast<Weight>(m);
    q[t * m] = -static_cast<Weight>(m);
  }
  return Instance(m, m, std::move(q), std::vector<Weight>(m, 0), std::vector<Weight>(m, 0));
}

inline Instance random_instance(std::size_t m, std::size_t n, Rng& rng, Weight range = 10,
                                bool zero_c = false, bool zero_d = false) {
  std::vector<Weight> q(m * n);
  std::vector<Weight> c(m, 0);
  std::vector<Weight> d(n, 0);
  for (auto& v : q) v = rng.between(-range, range);
  if (!zero_c) for (auto& v : c) v = rng.between(-range, range);
  if (!zero_d) for (auto& v : d) v = rng.between(-range, range);
  return Instance(m, n, std::move(q), std::move(c), std::move(d));
}

// Plain f(x, y) from the definition, written independently of the library.
inline Weight naive_value(const Instance& inst, const BitVector& x, const BitVector& y) {
  Weight total = 0;
  for (std::size_t i = 0; i < inst.rows(); ++i) {
    if (x[i]) total += inst.c(i);
    for (std::size_t j = 0; j < inst.cols(); ++j) {
      if (x[i] && y[j]) total += inst.q(i, j);
    }
  }
  for (std::size_t j = 0; j < inst.cols(); ++j) {
    if (y[j]) total += inst.d(j);
  }
  return total;
}

// max over y of f(x, y), by trying every column independently.
inline Weight best_over_y(const Instance& inst, const BitVector& x) {
  Weight total = 0;
  for (std::size_t i = 0; i < inst.rows(); ++i) {
    if (x[i]) total += inst.c(i);
  }
  for (std::size_t j = 0; j < inst.cols(); ++j) {
    Weight s = inst.d(j);
    for (std::size_t i = 0; i < inst.rows(); ++i) {
      if (x[i]) s += inst.q(i, j);
    }
    if (s > 0) total += s;
  }
  return total;
}

inline Weight best_over_x(const Instance& inst, const BitVector& y) {
  Weight total = 0;
  for (std::size_t j = 0; j < inst.cols(); ++j) {
    if (y[j]) total += inst.d(j);
  }
  for (std::size_t i = 0; i < inst.rows(); ++i) {
    Weight w = inst.c(i);
    for (std::size_t j = 0; j < inst.cols(); ++j) {
      if (y[j]) w += inst.q(i, j);
    }
    if (w > 0) total += w;
  }
  return total;
}

// No y-only or x-only re-optimization improves (x, y).
inline bool alternating_optimal(const Instance& inst, const BitVector& x, const BitVector& y) {
  const Weight value = naive_value(inst, x, y);
  return best_over_y(inst, x) <= value && best_over_x(inst, y) <= value;
}

// No complement of at most k rows, with y re-optimized, beats `value`.
inline bool portions_optimal(const Instance& inst, const BitVector& x, Weight value, std::size_t k) {
  const std::size_t m = inst.rows();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) > k) continue;
    BitVector z = x;
    for (std::size_t i = 0; i < m; ++i) {
      if ((mask >> i) & 1U) z[i] ^= 1;
    }
    if (best_over_y(inst, z) > value) return false;
  }
  return true;
}

// Optimum over all x by independent evaluation.
inline Weight optimum(const Instance& inst) {
  const std::size_t m = inst.rows();
  Weight best = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    BitVector x(m);
    for (std::size_t i = 0; i < m; ++i) x[i] = (mask >> i) & 1U;
    best = std::max(best, best_over_y(inst, x));
  }
  return best;
}

inline BitVector bits(std::initializer_list<int> values) {
  BitVector out;
  for (int v : values) out.push_back(static_cast<std::uint8_t>(v));
  return out;
}

}  // namespace bqp::test
