#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "bqp/core.hpp"
#include "bqp/localsearch.hpp"

namespace bqp::cli {

/// (f_best - f) / f_best * 100; undefined when f_best <= 0.
std::optional<double> gap_percent(Weight objective, Weight best_known);

struct BenchInstance {
  std::string label;
  Instance instance;
};

struct BenchConfig {
  std::vector<std::string> algs;
  /// Budget for every expression; overridden per instance by the reference
  /// timing when `reference_alg` is set.
  std::optional<Budget> budget;
  /// Equal-time policy: run this expression once per instance and give every
  /// competitor its wall-clock time.
  std::optional<std::string> reference_alg;
  std::size_t repetitions = 1;
  std::uint64_t seed = 0;
  std::optional<std::filesystem::path> store;
  /// When false, time_ms is reported as 0 so output is reproducible.
  bool record_time = true;
};

struct BenchRow {
  std::string instance;
  std::string family;
  std::size_t m = 0;
  std::size_t n = 0;
  std::string alg;
  std::uint64_t seed = 0;
  Weight objective = 0;
  std::optional<double> gap;
  double time_ms = 0.0;
};

struct BenchReport {
  std::vector<BenchRow> rows;

  /// Header "instance,family,m,n,alg,seed,objective,gap_pct,time_ms".
  std::string csv() const;
  /// Mean gap and mean time per (instance, alg), columns aligned.
  std::string table() const;
};

/// Seed of repetition r under a master seed; shared by all cells of the row.
std::uint64_t repetition_seed(std::uint64_t master, std::size_t repetition);

/// Runs every (instance, alg, repetition) cell, records strict improvements
/// in the store and reports gaps against max(stored best, best seen here).
/// Throws std::invalid_argument on empty inputs or a bad expression.
BenchReport bench(const std::vector<BenchInstance>& instances, const BenchConfig& config);

}  // namespace bqp::cli
