#include "bqp/cli/bench.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

#include "bqp/cli/expr.hpp"
#include "bqp/cli/runner.hpp"
#include "bqp/cli/store.hpp"
#include "bqp/rng.hpp"

namespace bqp::cli {

namespace {

std::string fixed(double value, int digits) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*f", digits, value);
  return buffer;
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char ch : text) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::optional<double> gap_percent(Weight objective, Weight best_known) {
  if (best_known <= 0) return std::nullopt;
  return static_cast<double>(best_known - objective) / static_cast<double>(best_known) * 100.0;
}

std::uint64_t repetition_seed(std::uint64_t master, std::size_t repetition) {
  return Rng::derive(master, repetition).next();
}

BenchReport bench(const std::vector<BenchInstance>& instances, const BenchConfig& config) {
  if (instances.empty()) throw std::invalid_argument("bench: no instances");
  if (config.algs.empty()) throw std::invalid_argument("bench: no algorithms");
  if (config.repetitions == 0) throw std::invalid_argument("bench: repetitions must be positive");

  std::vector<AlgorithmExpr> exprs;
  for (const auto& alg : config.algs) exprs.push_back(parse_expr(alg));
  std::optional<AlgorithmExpr> reference;
  if (config.reference_alg) reference = parse_expr(*config.reference_alg);

  std::optional<BestKnownStore> store;
  if (config.store) store.emplace(*config.store);

  BenchReport report;
  for (const auto& item : instances) {
    const Instance& inst = item.instance;
    std::optional<Budget> budget = config.budget;
    if (reference) {
      const auto timing = run_expr(inst, *reference, {config.budget, repetition_seed(config.seed, 0)});
      budget = Budget::seconds(std::max(timing.seconds, 1e-6));
    }

    std::optional<Weight> best;
    if (store) {
      if (auto record = store->best(inst)) best = record->objective;
    }

    const std::size_t first_row = report.rows.size();
    for (std::size_t a = 0; a < exprs.size(); ++a) {
      for (std::size_t r = 0; r < config.repetitions; ++r) {
        const std::uint64_t seed = repetition_seed(config.seed, r);
        const auto result = run_expr(inst, exprs[a], {budget, seed});
        if (store) store->update(inst, result.solution, render(exprs[a]), seed);
        if (!best || result.solution.objective > *best) best = result.solution.objective;
        BenchRow row;
        row.instance = item.label;
        row.family = inst.meta().family;
        row.m = inst.rows();
        row.n = inst.cols();
        row.alg = render(exprs[a]);
        row.seed = seed;
        row.objective = result.solution.objective;
        row.time_ms = config.record_time ? result.seconds * 1000.0 : 0.0;
        report.rows.push_back(std::move(row));
      }
    }
    for (std::size_t k = first_row; k < report.rows.size(); ++k) {
      report.rows[k].gap = gap_percent(report.rows[k].objective, *best);
    }
  }
  return report;
}

std::string BenchReport::csv() const {
  std::ostringstream out;
  out << "instance,family,m,n,alg,seed,objective,gap_pct,time_ms\n";
  for (const auto& row : rows) {
    out << csv_field(row.instance) << ',' << csv_field(row.family) << ',' << row.m << ',' << row.n
        << ',' << csv_field(row.alg) << ',' << row.seed << ',' << row.objective << ','
        << (row.gap ? fixed(*row.gap, 4) : std::string()) << ',' << fixed(row.time_ms, 3) << '\n';
  }
  return out.str();
}

std::string BenchReport::table() const {
  struct Cell {
    double gap_sum = 0.0;
    std::size_t gap_count = 0;
    double time_sum = 0.0;
    std::size_t count = 0;
  };
  // Preserve first-appearance order of (instance, alg).
  std::vector<std::pair<std::string, std::string>> order;
  std::map<std::pair<std::string, std::string>, Cell> cells;
  for (const auto& row : rows) {
    const auto key = std::make_pair(row.instance, row.alg);
    auto [it, inserted] = cells.try_emplace(key);
    if (inserted) order.push_back(key);
    Cell& cell = it->second;
    if (row.gap) {
      cell.gap_sum += *row.gap;
      ++cell.gap_count;
    }
    cell.time_sum += row.time_ms;
    ++cell.count;
  }

  std::vector<std::vector<std::string>> lines{{"instance", "alg", "runs", "mean_gap_pct", "mean_time_ms"}};
  for (const auto& key : order) {
    const Cell& cell = cells.at(key);
    lines.push_back({key.first, key.second, std::to_string(cell.count),
                     cell.gap_count == cell.count ? fixed(cell.gap_sum / cell.count, 4) : "n/a",
                     fixed(cell.time_sum / cell.count, 3)});
  }
  std::vector<std::size_t> width(lines.front().size(), 0);
  for (const auto& line : lines) {
    for (std::size_t c = 0; c < line.size(); ++c) width[c] = std::max(width[c], line[c].size());
  }
  std::ostringstream out;
  for (const auto& line : lines) {
    for (std::size_t c = 0; c < line.size(); ++c) {
      const bool numeric = c >= 2;
      const std::string pad(width[c] - line[c].size(), ' ');
      if (c > 0) out << "  ";
      out << (numeric ? pad + line[c] : line[c] + (c + 1 < line.size() ? pad : ""));
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace bqp::cli
