#include "bqp/construct.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace bqp {

Solution trivial_solution(const Instance& inst) {
  return Solution{BitVector(inst.rows(), 0), BitVector(inst.cols(), 0), 0};
}

Solution random_solution(const Instance& inst, double p, Rng& rng) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("random_solution: p outside [0, 1]");
  BitVector x(inst.rows()), y(inst.cols());
  for (auto& bit : x) bit = rng.bernoulli(p) ? 1 : 0;
  for (auto& bit : y) bit = rng.bernoulli(p) ? 1 : 0;
  return Solution::make(inst, std::move(x), std::move(y));
}

Solution greedy(const Instance& inst, GreedyTrace* trace) {
  const std::size_t m = inst.rows();
  const std::size_t n = inst.cols();

  std::vector<Weight> potential(m);
  for (std::size_t i = 0; i < m; ++i) {
    Weight acc = inst.c(i);
    for (Weight v : inst.row(i)) acc += positive(v);
    potential[i] = acc;
  }
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return potential[a] > potential[b];
  });

  std::vector<Weight> s(inst.d().begin(), inst.d().end());
  BitVector x(m, 0);
  std::vector<GreedyStep> steps;
  if (trace) steps.reserve(m);

  for (std::size_t i : order) {
    const auto row = inst.row(i);
    Weight off = 0;
    Weight on = inst.c(i);
    for (std::size_t j = 0; j < n; ++j) {
      off += positive(s[j]);
      on += positive(s[j] + row[j]);
    }
    const bool choose = on > off;
    if (choose) {
      x[i] = 1;
      for (std::size_t j = 0; j < n; ++j) s[j] += row[j];
    }
    if (trace) steps.push_back({i, off, on, choose});
  }

  BitVector y(n);
  for (std::size_t j = 0; j < n; ++j) y[j] = s[j] > 0 ? 1 : 0;

  if (trace) {
    trace->order = std::move(order);
    trace->potential = std::move(potential);
    trace->steps = std::move(steps);
  }
  return Solution::make(inst, std::move(x), std::move(y));
}

}  // namespace bqp
