#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "bqp/core.hpp"
#include "bqp/rng.hpp"

namespace bqp {

enum class Family { random, biclique, maxinduced, maxcut, matrixfact };

inline constexpr Family kAllFamilies[] = {Family::random, Family::biclique, Family::maxinduced,
                                          Family::maxcut, Family::matrixfact};

std::string_view family_name(Family family);
/// Throws std::invalid_argument for an unknown name.
Family parse_family(std::string_view name);

/// Degree bounds and weight distribution for a random bipartite graph with
/// m left and n right nodes.
struct BipartiteGraphSpec {
  std::size_t m = 1;
  std::size_t n = 1;
  std::size_t left_min = 0;
  std::size_t left_max = 0;
  std::size_t right_min = 0;
  std::size_t right_max = 0;
  double mean = 0.0;
  double stddev = 100.0;

  /// Throws std::invalid_argument when the bounds admit no degree sequence
  /// with equal sums.
  void validate() const;
};

struct Edge {
  std::size_t left = 0;
  std::size_t right = 0;
  Weight weight = 0;
};

struct GeneratedGraph {
  std::size_t m = 0;
  std::size_t n = 0;
  /// Sorted by (left, right).
  std::vector<Edge> edges;
  std::vector<std::size_t> left_degree;
  std::vector<std::size_t> right_degree;
  /// Whether the degree sums had to be balanced by the deterministic fixer.
  bool used_fixing = false;
  /// Times edge realization got stuck and degrees were redrawn.
  std::size_t restarts = 0;
};

/// Random bipartite graph: target degrees drawn uniformly within bounds,
/// sums balanced by alternating redraws (V first) and, after 50(m+n) redraws,
/// by a +-1 fixing pass; edges realized greedily with relocation of an
/// existing edge when a left node has no free partner; weights normal(mean,
/// stddev) rounded half away from zero. Degrees, edges and weights use
/// separate substreams of `seed`.
GeneratedGraph generate_graph(const BipartiteGraphSpec& spec, std::uint64_t seed);

/// Degree bounds used by the graph-based families: left in [max(1, n/5), n],
/// right in [max(1, m/5), m].
BipartiteGraphSpec family_graph_spec(Family family, std::size_t m, std::size_t n);

/// One of the five benchmark families. Deterministic in (family, m, n, seed).
Instance generate_instance(Family family, std::size_t m, std::size_t n, std::uint64_t seed);

/// Versioned text format: "bqp 1", "# key=value" comments, "m n", c, d, Q rows.
std::string write_instance(const Instance& inst);
/// Throws std::invalid_argument on malformed input.
Instance read_instance(std::string_view text);

/// 16 hex digits of FNV-1a over dimensions and weights (metadata excluded).
std::string instance_digest(const Instance& inst);

/// Short identifier: family-MxN-seed when known, else the digest.
std::string instance_name(const Instance& inst);

struct SolutionRecord {
  std::string digest;
  std::string name;
  Solution solution;
};

std::string write_solution(const Solution& sol, const Instance& inst,
                           const std::string& name = {});
/// Parses a certificate. With an instance, the digest and the stored
/// objective are re-verified; a mismatch throws std::invalid_argument.
SolutionRecord read_solution(std::string_view text, const Instance* inst = nullptr);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace bqp
