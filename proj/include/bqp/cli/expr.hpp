#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bqp::cli {

/// Algorithm names of the composition language.
///
///   Rn  random solution          A    alternating          M    multi-start
///   G   greedy                   F    flip                 R_k  clustering row-merge
///   T   trivial (all zero)       Vex_k VND exhaustive      Rm_k multi-start row-merge
///   V_k VND, portions up to k    P_k  random portions      Rls_k row-merge local search
enum class Op {
  random,
  greedy,
  trivial,
  alternating,
  flip,
  vnd_exhaustive,
  vnd,
  portions,
  multistart,
  rowmerge_cluster,
  rowmerge_multistart,
  rowmerge_ls,
};

struct AlgorithmExpr {
  Op op = Op::greedy;
  std::optional<std::size_t> subscript;
  /// Zero or one element: the expression producing the starting solution.
  std::vector<AlgorithmExpr> inner;

  bool operator==(const AlgorithmExpr&) const = default;
};

/// Grammar: expr := NAME [INTEGER] ["(" expr ")"], no whitespace.
/// Improvement names (A, F, Vex, P, Rls) start from G when no inner
/// expression is given; inside M they start from M's random solutions, and
/// M's body must not name a starting solution itself.
/// Throws std::invalid_argument with a readable message on bad input.
AlgorithmExpr parse_expr(std::string_view text);

std::string render(const AlgorithmExpr& expr);

std::string_view op_name(Op op);

/// Whether the operator consumes an iteration/time budget (M, P, Rm, Rls).
bool uses_budget(Op op);

}  // namespace bqp::cli
