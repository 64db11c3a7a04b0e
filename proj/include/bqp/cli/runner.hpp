#pragma once

#include <cstdint>
#include <optional>

#include "bqp/cli/expr.hpp"
#include "bqp/core.hpp"
#include "bqp/localsearch.hpp"

namespace bqp::cli {

inline constexpr std::uint64_t kDefaultMultiStartIterations = 100;
inline constexpr std::size_t kDefaultClusteringSources = 100;

struct RunSettings {
  /// Budget for the outermost budgeted operator (M, P, Rm, Rls). Budgeted
  /// operators without it run their default: M 100 iterations, the others
  /// m iterations.
  std::optional<Budget> budget;
  std::uint64_t seed = 0;
};

struct RunResult {
  Solution solution;
  double seconds = 0.0;
  /// Iterations of the outermost budgeted operator, or 1.
  std::uint64_t iterations = 1;
};

/// Executes an algorithm expression on an instance.
RunResult run_expr(const Instance& inst, const AlgorithmExpr& expr, const RunSettings& settings);

}  // namespace bqp::cli
