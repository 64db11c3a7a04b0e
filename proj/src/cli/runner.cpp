#include "bqp/cli/runner.hpp"

#include <chrono>
#include <stdexcept>

#include "bqp/construct.hpp"
#include "bqp/rowmerge.hpp"
#include "bqp/vnd.hpp"

namespace bqp::cli {

namespace {

class Executor {
 public:
  Executor(const Instance& inst, const RunSettings& settings)
      : inst_(inst), budget_(settings.budget), seed_(settings.seed), rng_(Rng::derive(settings.seed, "run")) {}

  std::uint64_t iterations() const { return iterations_; }

  Solution run(const AlgorithmExpr& expr) { return eval(expr, nullptr, rng_); }

 private:
  // The first (outermost) budgeted operator to ask gets the user budget, or
  // its default when none was given; later ones always get their default.
  Budget take_budget(Budget fallback) {
    top_level_ = !budget_used_;
    budget_used_ = true;
    return top_level_ && budget_ ? *budget_ : fallback;
  }

  void note_iterations(bool top, std::uint64_t count) {
    if (top) iterations_ = count;
  }

  Budget default_rows_budget() const { return Budget::iterations(inst_.rows()); }

  // `start` supplies the starting solution for improvement chains run inside M.
  Solution eval(const AlgorithmExpr& expr, const Solution* start, Rng& rng) {
    auto starting = [&]() -> Solution {
      if (!expr.inner.empty()) return eval(expr.inner.front(), start, rng);
      if (start) return *start;
      return greedy(inst_);
    };
    const std::size_t k = expr.subscript.value_or(0);

    switch (expr.op) {
      case Op::random:
        return random_solution(inst_, 0.5, rng);
      case Op::greedy:
        return greedy(inst_);
      case Op::trivial:
        return trivial_solution(inst_);
      case Op::alternating:
        return alternating(inst_, starting());
      case Op::flip:
        return flip_ls(inst_, starting());
      case Op::vnd_exhaustive:
        return vnd_exhaustive(inst_, starting(), k);
      case Op::vnd: {
        VndOptions options;
        options.p_max = k;
        return vnd(inst_, rng, options);
      }
      case Op::portions: {
        const Budget budget = take_budget(default_rows_budget());
        const bool top = top_level_;
        Solution from = starting();
        std::uint64_t count = 0;
        Solution out = random_portions(inst_, std::move(from), k, budget, rng, &count);
        note_iterations(top, count);
        return out;
      }
      case Op::multistart: {
        const Budget budget = take_budget(Budget::iterations(kDefaultMultiStartIterations));
        const bool top = top_level_;
        const AlgorithmExpr& body = expr.inner.front();
        auto record = multi_start(
            inst_,
            [&](const Instance&, Solution s, Rng& local) { return eval(body, &s, local); },
            budget, Rng::derive(seed_, "multistart").next());
        note_iterations(top, record.iterations);
        return std::move(record.best);
      }
      case Op::rowmerge_cluster: {
        std::vector<Solution> pool;
        pool.reserve(kDefaultClusteringSources);
        for (std::size_t t = 0; t < kDefaultClusteringSources; ++t) {
          Rng local = Rng::derive(seed_, 0x52000000ULL + t);
          pool.push_back(vnd_exhaustive(inst_, random_solution(inst_, 0.5, local), 1));
        }
        return clustering_row_merge(inst_, pool, k);
      }
      case Op::rowmerge_multistart: {
        const Budget budget = take_budget(default_rows_budget());
        const bool top = top_level_;
        std::uint64_t count = 0;
        Solution out = multistart_row_merge(inst_, k, budget, Rng::derive(seed_, "rowmerge").next(), &count);
        note_iterations(top, count);
        return out;
      }
      case Op::rowmerge_ls: {
        const Budget budget = take_budget(default_rows_budget());
        const bool top = top_level_;
        Solution from = starting();
        std::uint64_t count = 0;
        Solution out = rowmerge_local_search(inst_, std::move(from), k, budget, rng, {}, &count);
        note_iterations(top, count);
        return out;
      }
    }
    throw std::logic_error("unhandled algorithm");
  }

  const Instance& inst_;
  std::optional<Budget> budget_;
  std::uint64_t seed_;
  Rng rng_;
  bool budget_used_ = false;
  bool top_level_ = false;
  std::uint64_t iterations_ = 1;
};

}  // namespace

RunResult run_expr(const Instance& inst, const AlgorithmExpr& expr, const RunSettings& settings) {
  const auto t0 = std::chrono::steady_clock::now();
  Executor exec(inst, settings);
  RunResult result;
  result.solution = exec.run(expr);
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  result.iterations = exec.iterations();
  return result;
}

}  // namespace bqp::cli
