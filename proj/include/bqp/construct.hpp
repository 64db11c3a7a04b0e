#pragma once

#include <vector>

#include "bqp/core.hpp"
#include "bqp/rng.hpp"

namespace bqp {

/// Decision taken by greedy for one row, in processing order.
struct GreedyStep {
  std::size_t row = 0;
  Weight keep_off = 0;  // sum_j positive(s_j)
  Weight turn_on = 0;   // c_i + sum_j positive(s_j + q_ij)
  bool chosen = false;
};

struct GreedyTrace {
  /// Rows sorted by descending w+_i = c_i + sum_j positive(q_ij); equal keys
  /// keep ascending row index.
  std::vector<std::size_t> order;
  std::vector<Weight> potential;  // w+ indexed by row
  std::vector<GreedyStep> steps;
};

/// The all-zero solution; objective 0 on every instance.
Solution trivial_solution(const Instance& inst);

/// Every bit independently 1 with probability p.
Solution random_solution(const Instance& inst, double p, Rng& rng);

/// Greedy construction: rows in descending w+ order, each switched on only
/// when that strictly beats leaving it off (with y chosen optimally for the
/// prefix), then y = y(x). O(mn).
Solution greedy(const Instance& inst, GreedyTrace* trace = nullptr);

}  // namespace bqp
