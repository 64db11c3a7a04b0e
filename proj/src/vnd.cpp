#include "bqp/vnd.hpp"

#include <stdexcept>

#include "bqp/construct.hpp"

namespace bqp {

namespace {

// k distinct rows, always including `anchor`.
std::vector<std::size_t> portion_with(std::size_t m, std::size_t k, std::size_t anchor, Rng& rng) {
  std::vector<std::size_t> rows = rng.sample(m - 1, k - 1);
  for (auto& r : rows) {
    if (r >= anchor) ++r;
  }
  rows.push_back(anchor);
  return rows;
}

}  // namespace

Solution vnd_from(const Instance& inst, Solution sol, Rng& rng, const VndOptions& options) {
  if (options.p_max < 2 || options.p_max > kMaxPortion) {
    throw std::invalid_argument("vnd: p_max must be in [2, 20]");
  }
  const std::size_t m = inst.rows();
  const std::size_t top = std::min(options.p_max, m);

  bool improved = true;
  while (improved) {
    improved = false;
    sol = alternating(inst, std::move(sol));
    const Weight before_flip = sol.objective;
    sol = flip_ls(inst, std::move(sol));
    if (sol.objective > before_flip) {
      improved = true;
      continue;
    }
    std::vector<Weight> s = column_sums(inst, sol.x);
    for (std::size_t k = 2; k <= top; ++k) {
      for (std::size_t anchor = 0; anchor < m; ++anchor) {
        const auto rows = portion_with(m, k, anchor, rng);
        if (improve_portion(inst, sol, s, rows)) {
          improved = true;
          if (options.restart_on_improvement) break;
        }
      }
      if (improved && options.restart_on_improvement) break;
    }
  }
  return sol;
}

Solution vnd(const Instance& inst, Rng& rng, const VndOptions& options) {
  return vnd_from(inst, greedy(inst), rng, options);
}

Solution vnd_exhaustive(const Instance& inst, Solution sol, std::size_t k) {
  if (k < 1 || k > inst.rows()) throw std::invalid_argument("vnd_exhaustive: k must be in [1, m]");
  for (;;) {
    sol = alternating(inst, std::move(sol));
    const Weight before = sol.objective;
    sol = exhaustive_portions(inst, std::move(sol), k);
    if (sol.objective <= before) return sol;
  }
}

MultiStartRecord multi_start(const Instance& inst, const Improver& improve, const Budget& budget,
                             std::uint64_t seed, bool keep_log) {
  MultiStartRecord record;
  BudgetClock clock(budget);
  bool have = false;
  do {
    Rng rng = Rng::derive(seed, record.iterations);
    Solution start = random_solution(inst, 0.5, rng);
    Solution result = improve(inst, std::move(start), rng);
    if (keep_log) record.log.push_back(result.objective);
    if (!have || result.objective > record.best.objective) {
      record.best = std::move(result);
      have = true;
    }
    ++record.iterations;
  } while (!clock.exhausted(record.iterations));
  return record;
}

}  // namespace bqp
