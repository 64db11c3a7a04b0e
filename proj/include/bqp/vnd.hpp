#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "bqp/core.hpp"
#include "bqp/localsearch.hpp"
#include "bqp/rng.hpp"

namespace bqp {

struct VndOptions {
  /// Largest random portion size; portions of size 2..p_max are tried.
  std::size_t p_max = 6;
  /// Leave the portion loops at the first improvement instead of finishing
  /// the sweep. Off by default.
  bool restart_on_improvement = false;
};

/// Variable neighborhood descent from a greedy start. Each round runs
/// alternating then flip; if flip made no progress, every portion size
/// k = 2..p_max is swept with m random portions (the l-th containing row l),
/// each solved exactly. Stops after a round without improvement.
/// Requires 2 <= p_max <= 20; sizes above m are skipped.
Solution vnd(const Instance& inst, Rng& rng, const VndOptions& options = {});

/// Same descent from a caller-supplied start.
Solution vnd_from(const Instance& inst, Solution start, Rng& rng,
                  const VndOptions& options = {});

/// Alternates alternating search and exhaustive_portions(k) until the
/// portions step stops improving. Requires 1 <= k <= m.
Solution vnd_exhaustive(const Instance& inst, Solution sol, std::size_t k);

using Improver = std::function<Solution(const Instance&, Solution, Rng&)>;

struct MultiStartRecord {
  std::uint64_t iterations = 0;
  Solution best;
  /// Objective reached by each iteration, when logging was requested.
  std::vector<Weight> log;
};

/// Random start (p = 0.5) -> improve -> keep the best, until the budget is
/// spent; at least one iteration always runs. Iteration t draws from
/// Rng::derive(seed, t), so results do not depend on scheduling. Ties keep
/// the earlier iteration.
MultiStartRecord multi_start(const Instance& inst, const Improver& improve, const Budget& budget,
                             std::uint64_t seed, bool keep_log = false);

}  // namespace bqp
