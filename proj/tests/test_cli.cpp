#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "bqp/cli/bench.hpp"
#include "bqp/cli/expr.hpp"
#include "bqp/cli/runner.hpp"
#include "bqp/cli/store.hpp"
#include "bqp/construct.hpp"
#include "bqp/exact.hpp"
#include "bqp/testbed.hpp"
#include "support.hpp"

using namespace bqp;
using namespace bqp::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("bqp_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run_tool(const std::string& args, const fs::path& stdout_file) {
  const std::string command = std::string(BQP_TOOL) + " " + args + " > " + stdout_file.string() + " 2>&1";
  return std::system(command.c_str());
}

}  // namespace

TEST_CASE("parse named examples") {
  const auto ag = parse_expr("A(G)");
  CHECK(ag.op == Op::alternating);
  REQUIRE(ag.inner.size() == 1);
  CHECK(ag.inner[0].op == Op::greedy);

  const auto mv = parse_expr("M(Vex1)");
  CHECK(mv.op == Op::multistart);
  CHECK(mv.inner[0].op == Op::vnd_exhaustive);
  CHECK(mv.inner[0].subscript == 1u);

  CHECK(parse_expr("Rn").op == Op::random);
  CHECK(parse_expr("R5").op == Op::rowmerge_cluster);
  CHECK(parse_expr("Rm3").op == Op::rowmerge_multistart);
  CHECK(parse_expr("Rls2(F)").op == Op::rowmerge_ls);
  CHECK(parse_expr("V6").subscript == 6u);
  CHECK(parse_expr("P4(Vex1(A(Rn)))").inner[0].inner[0].inner[0].op == Op::random);
}

TEST_CASE("parse errors") {
  for (const char* bad : {"M(", "", "X", "g", "P", "V", "R", "Rm", "Rls", "Vex", "M", "P0", "G1",
                          "A(G", "A(G))", "V6(G)", "M(G)", "M(F(G))", "M(V6)", "A (G)", "T(G)", "P-1"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_expr(bad), std::invalid_argument);
  }
}

TEST_CASE("render round trips") {
  for (const char* text : {"A(G)", "F", "M(Vex1)", "M(F(A))", "P3(Vex2(T))", "Rls4(A(Rn))", "R10", "Rm2", "V6"}) {
    const auto expr = parse_expr(text);
    CHECK(render(expr) == text);
    CHECK(parse_expr(render(expr)) == expr);
  }
}

TEST_CASE("run expressions on the 2x2 example") {
  const Instance inst = test::e1();
  CHECK(run_expr(inst, parse_expr("G"), {}).solution.objective == 2);
  CHECK(run_expr(inst, parse_expr("T"), {}).solution.objective == 0);
  const auto p2 = run_expr(inst, parse_expr("P2"), {Budget::iterations(1), 0});
  CHECK(p2.solution.objective == 3);
  CHECK(p2.iterations == 1);
  CHECK(run_expr(inst, parse_expr("Vex1"), {}).solution.objective == 2);
  CHECK(run_expr(inst, parse_expr("Vex2"), {}).solution.objective == 3);
  CHECK(run_expr(inst, parse_expr("A(T)"), {}).solution.objective == 2);
}

TEST_CASE("run every operator and respect budgets") {
  Rng rng(3);
  const Instance inst = test::random_instance(12, 15, rng, 50);
  const Weight best = enumerate_exact(inst).objective;
  for (const char* text : {"Rn", "G", "T", "A", "F(Rn)", "Vex2", "V3", "P3", "M(A)", "M(Vex1)",
                           "R3", "Rm4", "Rls3", "M(Rls2(F))", "P4(M(F))"}) {
    CAPTURE(text);
    const auto result = run_expr(inst, parse_expr(text), {Budget::iterations(7), 11});
    CHECK(result.solution.objective == evaluate(inst, result.solution));
    CHECK(result.solution.objective <= best);
    CHECK(run_expr(inst, parse_expr(text), {Budget::iterations(7), 11}).solution == result.solution);
  }
  CHECK(run_expr(inst, parse_expr("M(Vex1)"), {Budget::iterations(7), 1}).iterations == 7);
  CHECK(run_expr(inst, parse_expr("M(Vex1)"), {std::nullopt, 1}).iterations == kDefaultMultiStartIterations);
  CHECK(run_expr(inst, parse_expr("P2"), {std::nullopt, 1}).iterations == inst.rows());
  CHECK(run_expr(inst, parse_expr("G"), {Budget::iterations(7), 1}).iterations == 1);
  CHECK(run_expr(inst, parse_expr("M(F)"), {Budget::seconds(0.05), 1}).iterations >= 1);
}

TEST_CASE("gap percent") {
  CHECK(gap_percent(200, 200) == 0.0);
  CHECK(gap_percent(0, 200) == 100.0);
  CHECK(gap_percent(-200, 200) == 200.0);
  CHECK_FALSE(gap_percent(5, 0).has_value());
  CHECK_FALSE(gap_percent(5, -1).has_value());
}

TEST_CASE("store records round trip and reject bad lines") {
  const BestKnownRecord r{"0123456789abcdef", "e1", 3, test::bits({0, 1}), test::bits({0, 1}), "Vex1", 7,
                          "2024-01-01T00:00:00Z"};
  CHECK(parse_record(format_record(r)) == r);
  CHECK_THROWS_AS(parse_record("a\tb\t3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_record("d\tn\tx\t01\t01\tG\t1\tt"), std::invalid_argument);
  CHECK_THROWS_AS(parse_record("d\tn\t3\t02\t01\tG\t1\tt"), std::invalid_argument);
}

TEST_CASE("store updates only on strict improvement") {
  const fs::path dir = scratch_dir("store");
  BestKnownStore store(dir / "best.tsv");
  const Instance inst = test::e1();
  CHECK_FALSE(store.best(inst).has_value());
  CHECK(store.update(inst, Solution::make(inst, test::bits({1, 0}), test::bits({1, 0})), "G", 0));
  CHECK_FALSE(store.update(inst, Solution::make(inst, test::bits({1, 0}), test::bits({1, 0})), "G", 1));
  CHECK(store.update(inst, enumerate_exact(inst), "exact", 0));
  CHECK_FALSE(store.update(inst, Solution::make(inst, test::bits({0, 0}), test::bits({0, 0})), "T", 0));
  CHECK(store.records().size() == 2);
  CHECK(store.best(inst)->objective == 3);
  CHECK(store.best(inst)->alg == "exact");

  Solution lie = enumerate_exact(inst);
  lie.objective = 9;
  CHECK_THROWS_AS(store.update(inst, lie, "bad", 0), std::invalid_argument);

  const Instance other = generate_instance(Family::random, 3, 3, 1);
  CHECK(store.update(other, enumerate_exact(other), "exact", 0));
  CHECK(store.best(inst)->objective == 3);

  std::ofstream(dir / "best.tsv", std::ios::app)
      << format_record({instance_digest(inst), "e1", 5, test::bits({0, 1}), test::bits({0, 1}), "forged", 0, "t"})
      << "\n";
  CHECK_THROWS_AS(store.best(inst), std::runtime_error);
}

TEST_CASE("concurrent store writers serialize") {
  const fs::path dir = scratch_dir("store_threads");
  Rng rng(4);
  const Instance inst = test::random_instance(10, 10, rng, 100);
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&, t] {
      BestKnownStore store(dir / "best.tsv");
      Rng local(t);
      for (int k = 0; k < 25; ++k) {
        store.update(inst, random_solution(inst, 0.5, local), "Rn", t);
      }
    });
  }
  for (auto& th : threads) th.join();
  const auto records = BestKnownStore(dir / "best.tsv").records();
  REQUIRE_FALSE(records.empty());
  for (std::size_t k = 1; k < records.size(); ++k) CHECK(records[k].objective > records[k - 1].objective);
}

TEST_CASE("bench rows, gaps and store") {
  const fs::path dir = scratch_dir("bench");
  const Instance inst = test::e1();
  BestKnownStore(dir / "best.tsv").update(inst, enumerate_exact(inst), "exact", 0);

  BenchConfig config;
  config.algs = {"T"};
  config.store = dir / "best.tsv";
  config.record_time = false;
  const auto report = bench({{"e1", inst}}, config);
  REQUIRE(report.rows.size() == 1);
  CHECK(report.rows[0].gap == 100.0);
  CHECK(report.csv() == "instance,family,m,n,alg,seed,objective,gap_pct,time_ms\n"
                        "e1,,2,2,T," + std::to_string(repetition_seed(0, 0)) + ",0,100.0000,0.000\n");
  CHECK(BestKnownStore(dir / "best.tsv").records().size() == 1);

  CHECK_THROWS_AS(bench({}, config), std::invalid_argument);
  config.algs = {};
  CHECK_THROWS_AS(bench({{"e1", inst}}, config), std::invalid_argument);
}

TEST_CASE("bench is reproducible and updates the store iff it improves") {
  const fs::path dir = scratch_dir("bench_repeat");
  std::vector<BenchInstance> instances;
  for (Family f : {Family::random, Family::maxcut}) {
    const Instance inst = generate_instance(f, 10, 12, 3);
    instances.push_back({instance_name(inst), inst});
  }
  BenchConfig config;
  config.algs = {"G", "A(Rn)", "M(Vex1)", "P3"};
  config.budget = Budget::iterations(5);
  config.repetitions = 3;
  config.seed = 42;
  config.record_time = false;
  const auto first = bench(instances, config);
  const auto second = bench(instances, config);
  CHECK(first.csv() == second.csv());
  CHECK(first.table() == second.table());
  CHECK(first.rows.size() == 2 * 4 * 3);

  config.store = dir / "best.tsv";
  bench(instances, config);
  const auto stored = BestKnownStore(dir / "best.tsv").records().size();
  CHECK(stored >= 2);
  bench(instances, config);
  CHECK(BestKnownStore(dir / "best.tsv").records().size() == stored);

  config.algs = {"Vex1"};
  config.reference_alg = "V6";
  config.record_time = true;
  const auto timed = bench(instances, config);
  CHECK(timed.rows.size() == 2 * 3);
}

TEST_CASE("command line tool") {
  const fs::path dir = scratch_dir("tool");
  const fs::path out = dir / "stdout.txt";
  const fs::path inst = dir / "mf.bqp";
  REQUIRE(run_tool("gen matrixfact 4 4 --seed 7 --out " + inst.string(), out) == 0);
  const Instance mf = read_instance(read_text_file(inst));
  for (Weight v : mf.q_data()) CHECK((v == 1 || v == -1));
  REQUIRE(run_tool("gen matrixfact 4 4 --seed 7 --out " + (dir / "again.bqp").string(), out) == 0);
  CHECK(read_text_file(inst) == read_text_file(dir / "again.bqp"));
  CHECK(run_tool("gen nosuch 4 4", out) != 0);

  const fs::path e1 = dir / "e1.bqp";
  write_text_file(e1, write_instance(test::e1()));
  REQUIRE(run_tool("solve " + e1.string() + " --alg G", out) == 0);
  CHECK(read_text_file(out).find("objective 2\n") != std::string::npos);
  const fs::path cert = dir / "e1.bqpsol";
  REQUIRE(run_tool("solve " + e1.string() + " --alg P2 --iters 1 --out " + cert.string() + " --store " +
                       (dir / "best.tsv").string(),
                   out) == 0);
  CHECK(read_text_file(out).find("objective 3\n") != std::string::npos);
  CHECK(read_text_file(out).find("store updated") != std::string::npos);
  REQUIRE(run_tool("verify " + e1.string() + " " + cert.string() + " --store " + (dir / "best.tsv").string(), out) == 0);
  CHECK(read_text_file(out).find("certificate ok objective 3") != std::string::npos);
  CHECK(run_tool("solve " + e1.string() + " --alg T", out) == 0);
  CHECK(read_text_file(out).find("objective 0\n") != std::string::npos);
  CHECK(run_tool("solve " + e1.string() + " --alg 'M('", out) != 0);
  CHECK(run_tool("solve " + e1.string() + " --alg G --time 0", out) != 0);
  CHECK(run_tool("solve " + (dir / "missing.bqp").string() + " --alg G", out) != 0);

  std::string cert_text = read_text_file(cert);
  cert_text.replace(cert_text.find("objective 3"), 11, "objective 2");
  write_text_file(dir / "bad.bqpsol", cert_text);
  CHECK(run_tool("verify " + e1.string() + " " + (dir / "bad.bqpsol").string(), out) != 0);

  REQUIRE(run_tool("exact " + e1.string(), out) == 0);
  CHECK(read_text_file(out) == "objective 3\n");
  REQUIRE(run_tool("export-qubo " + e1.string(), out) == 0);
  CHECK(read_text_file(out) == export_qubo(test::e1()));
  REQUIRE(run_tool("export-lp " + e1.string() + " --warm-start " + cert.string(), out) == 0);
  CHECK(read_text_file(out).find("Warm start, objective 3") != std::string::npos);

  const fs::path csv = dir / "bench.csv";
  REQUIRE(run_tool("bench " + e1.string() + " " + inst.string() + " --alg G --alg Vex1 --repetitions 2 --no-time --csv " +
                       csv.string(),
                   out) == 0);
  const std::string csv_text = read_text_file(csv);
  CHECK(csv_text.rfind("instance,family,m,n,alg,seed,objective,gap_pct,time_ms\n", 0) == 0);
  CHECK(std::count(csv_text.begin(), csv_text.end(), '\n') == 1 + 2 * 2 * 2);
  CHECK(read_text_file(out).find("mean_gap_pct") != std::string::npos);
}
