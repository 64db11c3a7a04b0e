#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "bqp/cli/bench.hpp"
#include "bqp/cli/expr.hpp"
#include "bqp/cli/runner.hpp"
#include "bqp/cli/store.hpp"
#include "bqp/exact.hpp"
#include "bqp/testbed.hpp"

namespace {

using namespace bqp;

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
  } else {
    write_text_file(out, text);
  }
}

Instance load(const std::string& path) { return read_instance(read_text_file(path)); }

std::optional<Budget> budget_from(double seconds, std::uint64_t iters) {
  if (seconds != 0.0 && iters != 0) throw CLI::ValidationError("--time and --iters are exclusive");
  if (seconds != 0.0) return Budget::seconds(seconds);
  if (iters != 0) return Budget::iterations(iters);
  return std::nullopt;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bipartite unconstrained 0-1 quadratic programming toolkit"};
  app.require_subcommand(1);

  std::string out;
  std::uint64_t seed = 0;
  double seconds = 0.0;
  std::uint64_t iters = 0;

  std::string family;
  std::size_t m = 0;
  std::size_t n = 0;
  auto* gen = app.add_subcommand("gen", "Generate a benchmark instance");
  gen->add_option("family", family, "random, biclique, maxinduced, maxcut or matrixfact")->required();
  gen->add_option("m", m, "Rows")->required()->check(CLI::PositiveNumber);
  gen->add_option("n", n, "Columns")->required()->check(CLI::PositiveNumber);
  gen->add_option("--seed", seed, "Generator seed");
  gen->add_option("--out", out, "Output file (default stdout)");

  std::string instance_path;
  std::string alg;
  std::string store_path;
  auto* solve = app.add_subcommand("solve", "Run an algorithm expression on an instance");
  solve->add_option("instance", instance_path, "Instance file")->required();
  solve->add_option("--alg", alg, "Algorithm expression, e.g. M(Vex1)")->required();
  solve->add_option("--time", seconds, "Time budget in seconds")->check(CLI::PositiveNumber);
  solve->add_option("--iters", iters, "Iteration budget")->check(CLI::PositiveNumber);
  solve->add_option("--seed", seed, "Master seed");
  solve->add_option("--out", out, "Write a solution certificate");
  solve->add_option("--store", store_path, "Best-known store to update");

  std::vector<std::string> instance_paths;
  std::vector<std::string> algs;
  std::size_t repetitions = 1;
  std::string csv_path;
  std::string ref_alg;
  bool no_time = false;
  auto* benchcmd = app.add_subcommand("bench", "Benchmark expressions over instances");
  benchcmd->add_option("instances", instance_paths, "Instance files")->required();
  benchcmd->add_option("--alg", algs, "Algorithm expression (repeatable)")->required();
  benchcmd->add_option("--time", seconds, "Time budget per run in seconds")->check(CLI::PositiveNumber);
  benchcmd->add_option("--iters", iters, "Iteration budget per run")->check(CLI::PositiveNumber);
  benchcmd->add_option("--ref-alg", ref_alg, "Give every run the time this expression takes");
  benchcmd->add_option("--repetitions", repetitions, "Runs per cell")->check(CLI::PositiveNumber);
  benchcmd->add_option("--seed", seed, "Master seed");
  benchcmd->add_option("--store", store_path, "Best-known store");
  benchcmd->add_option("--csv", csv_path, "CSV output file");
  benchcmd->add_option("--out", out, "Text table output file (default stdout)");
  benchcmd->add_flag("--no-time", no_time, "Report time_ms as 0 for reproducible output");

  auto* exact = app.add_subcommand("exact", "Solve exactly by enumeration (m <= 30)");
  exact->add_option("instance", instance_path, "Instance file")->required();
  exact->add_option("--out", out, "Write a solution certificate");
  exact->add_option("--store", store_path, "Best-known store to update");

  std::string warm_start;
  auto* lp = app.add_subcommand("export-lp", "Write the linearized MIP in LP format");
  lp->add_option("instance", instance_path, "Instance file")->required();
  lp->add_option("--warm-start", warm_start, "Solution certificate to embed as a start");
  lp->add_option("--out", out, "Output file (default stdout)");

  auto* qubo = app.add_subcommand("export-qubo", "Write the single-block QUBO form");
  qubo->add_option("instance", instance_path, "Instance file")->required();
  qubo->add_option("--out", out, "Output file (default stdout)");

  std::string certificate;
  auto* verify = app.add_subcommand("verify", "Check a solution certificate or a store");
  verify->add_option("instance", instance_path, "Instance file")->required();
  verify->add_option("certificate", certificate, "Solution certificate");
  verify->add_option("--store", store_path, "Check the store's records for this instance");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      emit(write_instance(generate_instance(parse_family(family), m, n, seed)), out);
    } else if (solve->parsed()) {
      const Instance inst = load(instance_path);
      const auto expr = cli::parse_expr(alg);
      const auto result = cli::run_expr(inst, expr, {budget_from(seconds, iters), seed});
      std::cout << "instance " << instance_name(inst) << "\n"
                << "alg " << cli::render(expr) << "\n"
                << "objective " << result.solution.objective << "\n"
                << "seconds " << result.seconds << "\n"
                << "iterations " << result.iterations << "\n";
      if (!out.empty()) write_text_file(out, write_solution(result.solution, inst, instance_name(inst)));
      if (!store_path.empty()) {
        const bool improved =
            cli::BestKnownStore(store_path).update(inst, result.solution, cli::render(expr), seed);
        std::cout << "store " << (improved ? "updated" : "unchanged") << "\n";
      }
    } else if (benchcmd->parsed()) {
      std::vector<cli::BenchInstance> instances;
      for (const auto& path : instance_paths) {
        instances.push_back({std::filesystem::path(path).stem().string(), load(path)});
      }
      cli::BenchConfig config;
      config.algs = algs;
      config.budget = budget_from(seconds, iters);
      if (!ref_alg.empty()) config.reference_alg = ref_alg;
      config.repetitions = repetitions;
      config.seed = seed;
      if (!store_path.empty()) config.store = store_path;
      config.record_time = !no_time;
      const auto report = cli::bench(instances, config);
      if (!csv_path.empty()) write_text_file(csv_path, report.csv());
      emit(report.table(), out);
    } else if (exact->parsed()) {
      const Instance inst = load(instance_path);
      const Solution best = enumerate_exact(inst);
      std::cout << "objective " << best.objective << "\n";
      if (!out.empty()) write_text_file(out, write_solution(best, inst, instance_name(inst)));
      if (!store_path.empty()) cli::BestKnownStore(store_path).update(inst, best, "exact", 0);
    } else if (lp->parsed()) {
      const Instance inst = load(instance_path);
      std::optional<Solution> start;
      if (!warm_start.empty()) start = read_solution(read_text_file(warm_start), &inst).solution;
      emit(export_lp(inst, start), out);
    } else if (qubo->parsed()) {
      emit(export_qubo(load(instance_path)), out);
    } else if (verify->parsed()) {
      const Instance inst = load(instance_path);
      if (certificate.empty() && store_path.empty()) {
        throw std::invalid_argument("verify needs a certificate or --store");
      }
      if (!certificate.empty()) {
        const auto record = read_solution(read_text_file(certificate), &inst);
        std::cout << "certificate ok objective " << record.solution.objective << "\n";
      }
      if (!store_path.empty()) {
        const auto best = cli::BestKnownStore(store_path).best(inst);
        if (best) {
          std::cout << "store ok best " << best->objective << "\n";
        } else {
          std::cout << "store has no record for " << instance_digest(inst) << "\n";
        }
      }
    }
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 1;
  }
  return 0;
}
