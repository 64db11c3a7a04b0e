#include "bqp/rowmerge.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "bqp/construct.hpp"
#include "bqp/exact.hpp"
#include "bqp/vnd.hpp"

namespace bqp {

RowPartition::RowPartition(std::vector<std::vector<std::size_t>> clusters, std::size_t m)
    : clusters_(std::move(clusters)), m_(m) {
  std::vector<std::uint8_t> seen(m, 0);
  std::size_t covered = 0;
  for (const auto& cluster : clusters_) {
    if (cluster.empty()) throw std::invalid_argument("partition has an empty cluster");
    for (std::size_t r : cluster) {
      if (r >= m) throw std::invalid_argument("partition row out of range");
      if (seen[r]) throw std::invalid_argument("partition clusters overlap");
      seen[r] = 1;
      ++covered;
    }
  }
  if (covered != m) throw std::invalid_argument("partition does not cover every row");
}

RowPartition RowPartition::singletons(std::size_t m) {
  std::vector<std::vector<std::size_t>> clusters(m);
  for (std::size_t i = 0; i < m; ++i) clusters[i] = {i};
  return RowPartition(std::move(clusters), m);
}

RowPartition RowPartition::whole(std::size_t m) {
  std::vector<std::size_t> all(m);
  std::iota(all.begin(), all.end(), std::size_t{0});
  return RowPartition({std::move(all)}, m);
}

RowPartition RowPartition::canonical() const {
  auto clusters = clusters_;
  for (auto& c : clusters) std::sort(c.begin(), c.end());
  std::sort(clusters.begin(), clusters.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return RowPartition(std::move(clusters), m_);
}

BitVector MergedInstance::expand(std::span<const std::uint8_t> reduced_x) const {
  if (reduced_x.size() != partition.size()) throw std::invalid_argument("reduced x has wrong length");
  BitVector x(partition.rows(), 0);
  const auto& clusters = partition.clusters();
  for (std::size_t c = 0; c < clusters.size(); ++c)
    for (std::size_t r : clusters[c]) x[r] = reduced_x[c];
  return x;
}

MergedInstance merge_reduce(const Instance& inst, const RowPartition& partition) {
  if (partition.rows() != inst.rows()) throw std::invalid_argument("partition does not match instance");
  const std::size_t n = inst.cols();
  const std::size_t k = partition.size();
  std::vector<Weight> q(k * n, 0);
  std::vector<Weight> c(k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t r : partition.clusters()[i]) {
      c[i] += inst.c(r);
      const auto row = inst.row(r);
      for (std::size_t j = 0; j < n; ++j) q[i * n + j] += row[j];
    }
  }
  std::vector<Weight> d(inst.d().begin(), inst.d().end());
  return MergedInstance{Instance(k, n, std::move(q), std::move(c), std::move(d)), partition};
}

CooccurrenceGraph::CooccurrenceGraph(std::size_t m, std::uint32_t sources,
                                     std::vector<std::uint32_t> weights)
    : m_(m), p_(sources), w_(std::move(weights)) {
  if (w_.size() != m_ * m_) throw std::invalid_argument("co-occurrence matrix must be m x m");
  for (std::size_t i = 0; i < m_; ++i) {
    for (std::size_t l = 0; l < m_; ++l) {
      if (w_[i * m_ + l] != w_[l * m_ + i]) throw std::invalid_argument("co-occurrence matrix must be symmetric");
      if (w_[i * m_ + l] > p_) throw std::invalid_argument("co-occurrence weight exceeds source count");
    }
  }
}

CooccurrenceGraph cooccurrence(std::span<const BitVector> xs) {
  if (xs.empty()) throw std::invalid_argument("cooccurrence needs at least one solution");
  const std::size_t m = xs.front().size();
  std::vector<std::uint32_t> w(m * m, 0);
  for (const auto& x : xs) {
    if (x.size() != m) throw std::invalid_argument("cooccurrence: solutions differ in length");
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t l = 0; l < m; ++l)
        if (x[i] == x[l]) ++w[i * m + l];
  }
  return CooccurrenceGraph(m, static_cast<std::uint32_t>(xs.size()), std::move(w));
}

CooccurrenceGraph cooccurrence(std::span<const Solution> solutions) {
  std::vector<BitVector> xs;
  xs.reserve(solutions.size());
  for (const auto& s : solutions) xs.push_back(s.x);
  return cooccurrence(std::span<const BitVector>(xs));
}

std::uint32_t cluster_mu(const CooccurrenceGraph& graph, std::span<const std::size_t> cluster) {
  if (cluster.size() <= 1) return graph.sources();
  std::uint32_t mu = graph.sources();
  for (std::size_t a = 0; a < cluster.size(); ++a)
    for (std::size_t b = a + 1; b < cluster.size(); ++b)
      mu = std::min(mu, graph.weight(cluster[a], cluster[b]));
  return mu;
}

std::uint64_t cluster_weight(const CooccurrenceGraph& graph, std::span<const std::size_t> cluster) {
  return cluster.size() * static_cast<std::uint64_t>(cluster_mu(graph, cluster));
}

std::uint64_t partition_weight(const CooccurrenceGraph& graph, const RowPartition& partition) {
  std::uint64_t total = 0;
  for (const auto& c : partition.clusters()) total += cluster_weight(graph, c);
  return total;
}

namespace {

void check_k(const CooccurrenceGraph& graph, std::size_t k) {
  if (k < 1 || k > graph.rows()) throw std::invalid_argument("partition size k must be in [1, m]");
}

}  // namespace

RowPartition greedy_partition(const CooccurrenceGraph& graph, std::size_t k,
                              std::vector<MergeStep>* trace) {
  check_k(graph, k);
  const std::size_t m = graph.rows();
  const auto p = static_cast<std::int64_t>(graph.sources());
  const std::int64_t offset = p * static_cast<std::int64_t>(m);

  // Clusters are keyed by their smallest row.
  std::vector<std::vector<std::size_t>> members(m);
  std::vector<std::int64_t> size(m, 1);
  std::vector<std::int64_t> mu(m, p);
  std::vector<std::uint8_t> alive(m, 1);
  std::vector<std::int64_t> pair_mu(m * m, 0);
  std::vector<std::int64_t> pair_delta(m * m, 0);
  std::vector<std::set<std::pair<std::size_t, std::size_t>>> buckets(
      static_cast<std::size_t>(offset) + 1);

  auto weight_of = [&](std::size_t key) { return size[key] * mu[key]; };
  auto insert = [&](std::size_t a, std::size_t b) {
    if (a > b) std::swap(a, b);
    const std::int64_t merged = std::min<std::int64_t>(pair_mu[a * m + b], std::min(mu[a], mu[b]));
    pair_mu[a * m + b] = pair_mu[b * m + a] = merged;
    const std::int64_t delta = (size[a] + size[b]) * merged - weight_of(a) - weight_of(b);
    pair_delta[a * m + b] = delta;
    buckets[static_cast<std::size_t>(delta + offset)].emplace(a, b);
  };
  auto erase = [&](std::size_t a, std::size_t b) {
    if (a > b) std::swap(a, b);
    buckets[static_cast<std::size_t>(pair_delta[a * m + b] + offset)].erase({a, b});
  };

  for (std::size_t i = 0; i < m; ++i) members[i] = {i};
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t l = i + 1; l < m; ++l) {
      pair_mu[i * m + l] = pair_mu[l * m + i] = graph.weight(i, l);
      insert(i, l);
    }
  }

  std::size_t top = buckets.size() - 1;
  for (std::size_t count = m; count > k; --count) {
    while (buckets[top].empty()) --top;
    const auto [a, b] = *buckets[top].begin();
    const std::int64_t delta = pair_delta[a * m + b];
    const std::int64_t merged_mu = pair_mu[a * m + b];

    for (std::size_t r = 0; r < m; ++r) {
      if (!alive[r] || r == a || r == b) continue;
      erase(r, a);
      erase(r, b);
      const std::int64_t via = std::min(pair_mu[r * m + a], pair_mu[r * m + b]);
      pair_mu[r * m + a] = pair_mu[a * m + r] = via;
    }
    erase(a, b);

    members[a].insert(members[a].end(), members[b].begin(), members[b].end());
    members[b].clear();
    size[a] += size[b];
    mu[a] = merged_mu;
    alive[b] = 0;

    for (std::size_t r = 0; r < m; ++r) {
      if (alive[r] && r != a) insert(r, a);
    }
    top = buckets.size() - 1;
    if (trace) trace->push_back({a, b, delta, static_cast<std::uint32_t>(merged_mu)});
  }

  std::vector<std::vector<std::size_t>> clusters;
  for (std::size_t key = 0; key < m; ++key) {
    if (!alive[key]) continue;
    std::sort(members[key].begin(), members[key].end());
    clusters.push_back(std::move(members[key]));
  }
  return RowPartition(std::move(clusters), m);
}

RowPartition greedy_partition_reference(const CooccurrenceGraph& graph, std::size_t k,
                                        std::vector<RowPartition>* levels) {
  check_k(graph, k);
  const std::size_t m = graph.rows();
  std::vector<std::vector<std::size_t>> clusters(m);
  for (std::size_t i = 0; i < m; ++i) clusters[i] = {i};
  if (levels) levels->assign(1, RowPartition(clusters, m));

  while (clusters.size() > k) {
    bool have = false;
    std::uint64_t best = 0;
    std::size_t best_a = 0, best_b = 0;
    // Clusters stay sorted by smallest member, so this scan visits pairs in
    // lexicographic (min P, min Q) order and the first maximum wins ties.
    for (std::size_t a = 0; a < clusters.size(); ++a) {
      for (std::size_t b = a + 1; b < clusters.size(); ++b) {
        std::vector<std::size_t> joined = clusters[a];
        joined.insert(joined.end(), clusters[b].begin(), clusters[b].end());
        std::uint64_t total = cluster_weight(graph, joined);
        for (std::size_t c = 0; c < clusters.size(); ++c) {
          if (c != a && c != b) total += cluster_weight(graph, clusters[c]);
        }
        if (!have || total > best) {
          have = true;
          best = total;
          best_a = a;
          best_b = b;
        }
      }
    }
    auto& into = clusters[best_a];
    into.insert(into.end(), clusters[best_b].begin(), clusters[best_b].end());
    std::sort(into.begin(), into.end());
    clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(best_b));
    if (levels) levels->emplace_back(clusters, m);
  }
  return RowPartition(std::move(clusters), m);
}

RowPartition random_partition(std::size_t m, std::size_t k, Rng& rng) {
  if (k < 1 || k > m) throw std::invalid_argument("random_partition: k must be in [1, m]");
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  rng.shuffle(std::span<std::size_t>(order));
  std::vector<std::size_t> cuts = rng.sample(m - 1, k - 1);
  for (auto& c : cuts) ++c;
  std::sort(cuts.begin(), cuts.end());
  cuts.push_back(m);

  std::vector<std::vector<std::size_t>> clusters;
  clusters.reserve(k);
  std::size_t begin = 0;
  for (std::size_t end : cuts) {
    clusters.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(begin),
                          order.begin() + static_cast<std::ptrdiff_t>(end));
    begin = end;
  }
  return RowPartition(std::move(clusters), m);
}

RowPartition solution_partition(std::span<const std::uint8_t> x, std::size_t k, Rng& rng) {
  const std::size_t m = x.size();
  if (m == 0) throw std::invalid_argument("solution_partition: empty x");
  if (k < 1) throw std::invalid_argument("solution_partition: k must be positive");
  k = std::min(k, m);
  std::vector<std::size_t> zeros, ones;
  for (std::size_t i = 0; i < m; ++i) (x[i] ? ones : zeros).push_back(i);

  std::size_t k0 = 0;
  std::size_t k1 = 0;
  if (ones.empty()) {
    k0 = k;
  } else if (zeros.empty()) {
    k1 = k;
  } else if (k == 1) {
    // A single cluster cannot respect both sides; fall back to one per side.
    k0 = k1 = 1;
  } else {
    const auto share = static_cast<std::size_t>(
        std::llround(static_cast<double>(k) * static_cast<double>(zeros.size()) /
                     static_cast<double>(m)));
    k0 = std::clamp<std::size_t>(share, 1, k - 1);
    k0 = std::min(k0, zeros.size());
    k1 = std::min(k - k0, ones.size());
    k0 = std::min(k - k1, zeros.size());
  }

  std::vector<std::vector<std::size_t>> clusters;
  auto split = [&](const std::vector<std::size_t>& side, std::size_t parts) {
    if (parts == 0) return;
    const auto local = random_partition(side.size(), parts, rng);
    for (const auto& cluster : local.clusters()) {
      std::vector<std::size_t> rows;
      rows.reserve(cluster.size());
      for (std::size_t r : cluster) rows.push_back(side[r]);
      clusters.push_back(std::move(rows));
    }
  };
  split(zeros, k0);
  split(ones, k1);
  return RowPartition(std::move(clusters), m);
}

Solution clustering_row_merge(const Instance& inst, std::span<const Solution> sources,
                              std::size_t k) {
  if (k < 1 || k > std::min(inst.rows(), kMaxClusters)) {
    throw std::invalid_argument("clustering_row_merge: k must be in [1, min(m, 20)]");
  }
  const auto graph = cooccurrence(sources);
  if (graph.rows() != inst.rows()) throw std::invalid_argument("source solutions do not match instance");
  const auto merged = merge_reduce(inst, greedy_partition(graph, k));
  const auto exact = enumerate_exact(merged.reduced);
  Solution sol = Solution::make(inst, merged.expand(exact.x), exact.y);
  return vnd_exhaustive(inst, std::move(sol), 1);
}

Solution flip_of_greedy(const Instance& inst) { return flip_ls(inst, greedy(inst)); }

Solution multistart_row_merge(const Instance& inst, std::size_t k, const Budget& budget,
                              std::uint64_t seed, std::uint64_t* iterations) {
  if (k < 1 || k > inst.rows()) throw std::invalid_argument("multistart_row_merge: k must be in [1, m]");
  BudgetClock clock(budget);
  Solution best;
  std::uint64_t it = 0;
  do {
    Rng rng = Rng::derive(seed, it);
    const auto merged = merge_reduce(inst, random_partition(inst.rows(), k, rng).canonical());
    const Solution reduced = flip_of_greedy(merged.reduced);
    Solution sol = flip_ls(inst, Solution::make(inst, merged.expand(reduced.x), reduced.y));
    if (it == 0 || sol.objective > best.objective) best = std::move(sol);
    ++it;
  } while (!clock.exhausted(it));
  if (iterations) *iterations = it;
  return best;
}

Solution rowmerge_local_search(const Instance& inst, Solution sol, std::size_t k,
                               const Budget& budget, Rng& rng, const MergedSolver& solver,
                               std::uint64_t* iterations) {
  if (k < 2) throw std::invalid_argument("rowmerge_local_search: k must be at least 2");
  if (sol.x.size() != inst.rows() || sol.y.size() != inst.cols()) {
    throw std::invalid_argument("rowmerge_local_search: solution does not match instance");
  }
  const MergedSolver& solve = solver ? solver : MergedSolver(flip_of_greedy);
  BudgetClock clock(budget);
  std::uint64_t it = 0;
  for (; !clock.exhausted(it); ++it) {
    const auto merged = merge_reduce(inst, solution_partition(sol.x, k, rng));
    const Solution reduced = solve(merged.reduced);
    Solution candidate = Solution::make(inst, merged.expand(reduced.x), reduced.y);
    if (candidate.objective > sol.objective) sol = std::move(candidate);
  }
  if (iterations) *iterations = it;
  return sol;
}

}  // namespace bqp
