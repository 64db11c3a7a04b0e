#include <doctest.h>

#include <stdexcept>

#include <cctype>
#include <map>
#include <sstream>

#include "bqp/exact.hpp"
#include "bqp/testbed.hpp"
#include "support.hpp"

using namespace bqp;
using bqp::test::bits;

TEST_CASE("exact methods on fixed instances") {
  const Instance inst = test::e1();
  for (const Solution& sol : {enumerate_exact(inst), brute_force_oracle(inst)}) {
    CHECK(sol.objective == 3);
    CHECK(sol.x == bits({0, 1}));
    CHECK(sol.y == bits({0, 1}));
  }
  const Instance negative(2, 2, {-1, -2, 0, -3}, {-1, 0}, {0, -4});
  CHECK(enumerate_exact(negative).objective == 0);
  CHECK(brute_force_oracle(negative).objective == 0);
  CHECK(enumerate_exact(test::tight(3)).objective == 2);
  CHECK(brute_force_oracle(test::tight(3)).objective == 2);
}

TEST_CASE("size guards") {
  CHECK_THROWS_AS(enumerate_exact(Instance::zeros(31, 1)), std::invalid_argument);
  CHECK_THROWS_AS(brute_force_oracle(Instance::zeros(12, 13)), std::invalid_argument);
}

TEST_CASE("enumeration agrees with the oracle across families") {
  for (Family family : kAllFamilies) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      Rng rng(seed);
      const Instance inst = generate_instance(family, 1 + rng.below(10), 1 + rng.below(10), seed);
      const Solution fast = enumerate_exact(inst);
      CHECK(fast.objective == brute_force_oracle(inst).objective);
      CHECK(fast.objective == evaluate(inst, fast));
      CHECK(fast.objective == test::optimum(inst));
    }
  }
}

TEST_CASE("restricted exact solve keeps the first optimum") {
  const Instance zero = Instance::zeros(3, 2);
  const std::vector<std::size_t> rows{0, 1, 2};
  const std::vector<Weight> s{0, 0};
  const auto best = solve_rows_exact(zero, rows, s);
  CHECK(best.mask == 0);
  CHECK(best.value == 0);
}

TEST_CASE("lp export of a single cell") {
  const Instance one(1, 1, {5}, {0}, {0});
  const std::string lp = export_lp(one);
  CHECK(lp.find("Maximize") != std::string::npos);
  CHECK(lp.find("obj: 5 z_1_1\n") != std::string::npos);
  CHECK(lp.find("Subject To") != std::string::npos);
  CHECK(lp.find("Bounds") != std::string::npos);
  CHECK(lp.find("Binaries") != std::string::npos);
  CHECK(lp.rfind("End\n") == lp.size() - 4);
}

namespace {

struct LpSummary {
  std::size_t constraints = 0;
  std::size_t bounded = 0;
  std::vector<std::string> binaries;
  std::map<std::string, Weight> objective;
};

// Minimal reader for the emitted LP layout.
LpSummary read_lp(const std::string& text) {
  LpSummary out;
  std::istringstream in(text);
  std::string line;
  std::string section;
  while (std::getline(in, line)) {
    if (line.empty() || line.rfind("\\", 0) == 0) continue;
    if (line == "Maximize" || line == "Subject To" || line == "Bounds" || line == "Binaries" || line == "End") {
      section = line;
      continue;
    }
    std::istringstream tokens(line);
    if (section == "Maximize") {
      std::string tok;
      tokens >> tok;  // "obj:"
      Weight sign = 1;
      Weight coef = 0;
      while (tokens >> tok) {
        if (tok == "+" || tok == "-") {
          sign = tok == "-" ? -1 : 1;
        } else if (std::isdigit(static_cast<unsigned char>(tok[0]))) {
          coef = std::stoll(tok);
        } else {
          out.objective[tok] += sign * coef;
          sign = 1;
        }
      }
    } else if (section == "Subject To") {
      ++out.constraints;
    } else if (section == "Bounds") {
      ++out.bounded;
    } else if (section == "Binaries") {
      std::string var;
      while (tokens >> var) out.binaries.push_back(var);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("lp export counts and coefficients") {
  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    const std::size_t m = 1 + rng.below(5);
    const std::size_t n = 1 + rng.below(5);
    const Instance inst = test::random_instance(m, n, rng);
    const auto lp = read_lp(export_lp(inst));
    CHECK(lp.constraints == 3 * m * n);
    CHECK(lp.binaries.size() == m);
    CHECK(lp.bounded == n + m * n);
    for (std::size_t i = 0; i < m; ++i) {
      const std::string x = "x_" + std::to_string(i + 1);
      CHECK((lp.objective.count(x) ? lp.objective.at(x) : 0) == inst.c(i));
      for (std::size_t j = 0; j < n; ++j) {
        const std::string z = "z_" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
        CHECK((lp.objective.count(z) ? lp.objective.at(z) : 0) == inst.q(i, j));
      }
    }
    for (std::size_t j = 0; j < n; ++j) {
      const std::string y = "y_" + std::to_string(j + 1);
      CHECK((lp.objective.count(y) ? lp.objective.at(y) : 0) == inst.d(j));
    }
  }
}

TEST_CASE("lp export warm start block") {
  const Instance inst = test::e1();
  const std::string lp = export_lp(inst, enumerate_exact(inst));
  CHECK(lp.find("\\   x_2 = 1") != std::string::npos);
  CHECK(read_lp(lp).constraints == 12);
}

TEST_CASE("qubo export of the 2x2 example") {
  const std::string text = export_qubo(test::e1());
  CHECK(text ==
        "4 7\n"
        "1 1 1\n"
        "2 2 -1\n"
        "3 3 -2\n"
        "1 3 3\n"
        "1 4 -2\n"
        "2 3 -1\n"
        "2 4 4\n");
  CHECK(export_qubo(Instance::zeros(2, 3)) == "5 0\n");
}

TEST_CASE("qubo form equals the objective") {
  Rng rng(15);
  for (int t = 0; t < 30; ++t) {
    const Instance inst = test::random_instance(1 + rng.below(8), 1 + rng.below(8), rng, 100);
    const auto model = parse_qubo(export_qubo(inst));
    CHECK(model.variables == inst.rows() + inst.cols());
    for (int a = 0; a < 50; ++a) {
      BitVector x(inst.rows());
      BitVector y(inst.cols());
      for (auto& b : x) b = rng.bernoulli(0.5);
      for (auto& b : y) b = rng.bernoulli(0.5);
      BitVector z = x;
      z.insert(z.end(), y.begin(), y.end());
      CHECK(evaluate_qubo(model, z) == evaluate(inst, x, y));
    }
  }
  CHECK_THROWS(parse_qubo("2 1\n1 3 4\n"));
}
