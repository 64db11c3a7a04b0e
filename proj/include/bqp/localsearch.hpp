#pragma once

#include <chrono>
#include <cstdint>
#include <span>
#include <vector>

#include "bqp/core.hpp"
#include "bqp/rng.hpp"

namespace bqp {

/// Stopping rule for iterative procedures: a fixed iteration count or a
/// wall-clock limit. Time is only checked between iterations.
struct Budget {
  enum class Mode { iterations, seconds };
  Mode mode = Mode::iterations;
  double limit = 1;

  static Budget iterations(std::uint64_t count);
  static Budget seconds(double limit);
};

class BudgetClock {
 public:
  explicit BudgetClock(const Budget& budget);
  /// True once `completed` iterations exhaust the budget.
  bool exhausted(std::uint64_t completed) const;
  double elapsed_seconds() const;

 private:
  Budget budget_;
  std::chrono::steady_clock::time_point start_;
};

/// BQP(Q, c, d, I*, x0) rewritten as a |I*|-row instance.
struct RestrictedReduction {
  std::vector<std::size_t> rows;  // I*, reduced row r is original row rows[r]
  Instance reduced;
  BitVector base;                 // x0
  Weight constant = 0;            // sum of c_i x0_i over frozen rows

  /// x_i = reduced_x[r] if i = rows[r], else x0_i.
  BitVector expand(std::span<const std::uint8_t> reduced_x) const;
};

RestrictedReduction reduce_restricted(const Instance& inst, std::span<const std::size_t> rows,
                                      std::span<const std::uint8_t> base);

/// Alternating search with incremental row/column sums: y-pass over columns,
/// then x-pass over rows, until a double pass changes nothing. A bit only
/// moves when its sum is strictly on the other side of zero.
Solution alternating(const Instance& inst, Solution sol);

/// First-improvement search over complements of up to k rows, each candidate
/// scored with y re-optimized. Size classes are visited in increasing order;
/// after an improvement at size > 1 the search restarts from size 1.
/// Moves that only change y are never considered. Requires 1 <= k <= m.
Solution exhaustive_portions(const Instance& inst, Solution sol, std::size_t k);

/// exhaustive_portions with k = 1.
Solution flip_ls(const Instance& inst, Solution sol);

inline constexpr std::size_t kMaxPortion = 20;

/// Repeatedly frees k random rows, solves the restriction exactly and keeps
/// the result when it strictly improves. Requires 2 <= k <= min(m, 20).
Solution random_portions(const Instance& inst, Solution sol, std::size_t k,
                         const Budget& budget, Rng& rng, std::uint64_t* iterations = nullptr);

/// Solves the restriction to `rows` exactly around `sol`, whose column sums
/// are `s`. On strict improvement updates sol (with y = y(x)) and s and
/// returns true; otherwise leaves both untouched.
bool improve_portion(const Instance& inst, Solution& sol, std::vector<Weight>& s,
                     std::span<const std::size_t> rows);

}  // namespace bqp
