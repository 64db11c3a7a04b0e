#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "bqp/core.hpp"

namespace bqp {

inline constexpr std::size_t kMaxEnumerationRows = 30;
inline constexpr std::size_t kMaxOracleVariables = 24;

/// Best on/off choice for a subset of rows with every other row frozen.
struct SubsetOptimum {
  /// Bit r set iff rows[r] is switched on.
  std::uint64_t mask = 0;
  /// sum of c over switched-on subset rows + sum_j positive(s_j).
  Weight value = 0;
};

/// Exact optimum over the rows in `rows`, where base_s holds the column sums
/// contributed by d and all rows outside the subset. Walks the 2^k choices in
/// Gray-code order, one row toggle (O(n)) per step. Ties keep the first
/// choice met, starting from the all-off mask.
SubsetOptimum solve_rows_exact(const Instance& inst, std::span<const std::size_t> rows,
                               std::span<const Weight> base_s);

/// Global optimum in O(n 2^m). Requires m <= 30.
Solution enumerate_exact(const Instance& inst);

/// Global optimum by scanning all 2^(m+n) assignments in natural binary
/// order. Test oracle; shares no search code with enumerate_exact.
/// Requires m + n <= 24.
Solution brute_force_oracle(const Instance& inst);

/// Linearized MIP in LP-file syntax. When `start` is given, a commented
/// warm-start block lists its assignment.
std::string export_lp(const Instance& inst, const std::optional<Solution>& start = std::nullopt);

/// The (m+n)-variable 0-1 quadratic program in sparse triple format:
/// header "N nnz", then "i i c" diagonal lines, then "i j q" cross lines
/// (1-based, i < j). Zero coefficients are omitted.
std::string export_qubo(const Instance& inst);

struct QuboModel {
  std::size_t variables = 0;
  /// (row, col, value), 1-based as written.
  std::vector<std::tuple<std::size_t, std::size_t, Weight>> terms;
};

QuboModel parse_qubo(std::string_view text);

/// sum over terms of value * z_row * z_col (diagonal terms are linear).
Weight evaluate_qubo(const QuboModel& model, std::span<const std::uint8_t> z);

}  // namespace bqp
