#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "bqp/core.hpp"
#include "bqp/localsearch.hpp"
#include "bqp/rng.hpp"

namespace bqp {

/// Disjoint nonempty clusters of row indices covering 0..m-1.
class RowPartition {
 public:
  /// Throws std::invalid_argument unless the clusters form a partition of [0, m).
  RowPartition(std::vector<std::vector<std::size_t>> clusters, std::size_t m);

  static RowPartition singletons(std::size_t m);
  static RowPartition whole(std::size_t m);

  const std::vector<std::vector<std::size_t>>& clusters() const { return clusters_; }
  std::size_t size() const { return clusters_.size(); }
  std::size_t rows() const { return m_; }

  /// Members sorted within clusters, clusters sorted by smallest member.
  RowPartition canonical() const;

  bool operator==(const RowPartition&) const = default;

 private:
  std::vector<std::vector<std::size_t>> clusters_;
  std::size_t m_ = 0;
};

/// BQP(Q, c, d, P): one row per cluster holding the cluster's row sums.
struct MergedInstance {
  Instance reduced;
  RowPartition partition;

  /// x_r = reduced_x[i] for every row r in cluster i.
  BitVector expand(std::span<const std::uint8_t> reduced_x) const;
};

MergedInstance merge_reduce(const Instance& inst, const RowPartition& partition);

/// Complete graph on rows; w(i, l) counts source solutions with x_i = x_l.
class CooccurrenceGraph {
 public:
  CooccurrenceGraph(std::size_t m, std::uint32_t sources, std::vector<std::uint32_t> weights);

  std::size_t rows() const { return m_; }
  std::uint32_t sources() const { return p_; }
  std::uint32_t weight(std::size_t i, std::size_t l) const { return w_[i * m_ + l]; }

 private:
  std::size_t m_;
  std::uint32_t p_;
  std::vector<std::uint32_t> w_;
};

/// Throws std::invalid_argument on an empty pool or mixed lengths.
CooccurrenceGraph cooccurrence(std::span<const BitVector> xs);
CooccurrenceGraph cooccurrence(std::span<const Solution> solutions);

/// mu(C): lightest internal edge, or p for a singleton.
std::uint32_t cluster_mu(const CooccurrenceGraph& graph, std::span<const std::size_t> cluster);
/// w(C) = |C| mu(C).
std::uint64_t cluster_weight(const CooccurrenceGraph& graph, std::span<const std::size_t> cluster);
std::uint64_t partition_weight(const CooccurrenceGraph& graph, const RowPartition& partition);

/// One merge performed by the greedy partitioner. Clusters are named by their
/// smallest row; the merged cluster keeps the name `kept`.
struct MergeStep {
  std::size_t kept = 0;
  std::size_t absorbed = 0;
  std::int64_t delta = 0;
  std::uint32_t mu = 0;  // mu of the merged cluster
};

/// Greedy agglomerative partitioning down to k clusters. Each step merges the
/// pair maximizing delta(P, Q) = w(P u Q) - w(P) - w(Q); ties go to the
/// lexicographically smallest (min P, min Q). Pairs live in buckets indexed
/// by delta in [-pm, 0] and mu is updated by the min-merge rule, giving
/// O(m^2 log m) overall. Requires 1 <= k <= m.
RowPartition greedy_partition(const CooccurrenceGraph& graph, std::size_t k,
                              std::vector<MergeStep>* trace = nullptr);

/// Same contract, re-evaluating the whole partition weight for every
/// candidate pair from scratch. Slow; used as an oracle. `levels`, when
/// given, receives the partition after each merge count, starting at 0.
RowPartition greedy_partition_reference(const CooccurrenceGraph& graph, std::size_t k,
                                        std::vector<RowPartition>* levels = nullptr);

/// Shuffle 0..m-1 and cut it at k-1 distinct random positions.
RowPartition random_partition(std::size_t m, std::size_t k, Rng& rng);

/// Random partition of size k whose clusters never mix x-values. The zero
/// side gets max(1, round(k * zeros / m)) clusters and the one side the rest,
/// each clamped to the side's size.
RowPartition solution_partition(std::span<const std::uint8_t> x, std::size_t k, Rng& rng);

inline constexpr std::size_t kMaxClusters = 20;

/// Partition from the co-occurrence of `sources`, exact solve of the merged
/// problem, expansion, then vnd_exhaustive(1). Requires 1 <= k <= min(m, 20).
Solution clustering_row_merge(const Instance& inst, std::span<const Solution> sources,
                              std::size_t k);

/// Heuristic for merged problems: flip_ls(greedy).
Solution flip_of_greedy(const Instance& inst);

/// Random partition -> flip_ls(greedy) on the merged problem -> expand ->
/// flip_ls, keeping the best, until the budget is spent (at least once).
/// Iteration t draws from Rng::derive(seed, t). Requires 1 <= k <= m.
Solution multistart_row_merge(const Instance& inst, std::size_t k, const Budget& budget,
                              std::uint64_t seed, std::uint64_t* iterations = nullptr);

using MergedSolver = std::function<Solution(const Instance&)>;

/// Improvement over solution_partition(x) neighborhoods; a candidate is
/// accepted only when it strictly beats the incumbent. The merged problem is
/// solved by `solver`, flip_of_greedy when empty. Requires k >= 2.
Solution rowmerge_local_search(const Instance& inst, Solution sol, std::size_t k,
                               const Budget& budget, Rng& rng, const MergedSolver& solver = {},
                               std::uint64_t* iterations = nullptr);

}  // namespace bqp
