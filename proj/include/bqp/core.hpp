#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace bqp {

using Weight = std::int64_t;

/// One 0/1 value per byte. Byte storage keeps scans branch-light and
/// avoids the proxy semantics of std::vector<bool>.
using BitVector = std::vector<std::uint8_t>;

inline Weight positive(Weight v) { return v > 0 ? v : 0; }

struct InstanceMeta {
  std::string family;
  std::optional<std::uint64_t> seed;
  /// Ordered free-form key/value pairs (generator parameters, penalty M, ...).
  std::vector<std::pair<std::string, std::string>> notes;

  bool operator==(const InstanceMeta&) const = default;
};

/// A BQP instance: maximize x'Qy + cx + dy over x in {0,1}^m, y in {0,1}^n.
///
/// Q is stored dense and row-major. Immutable after construction, so one
/// instance may be shared read-only by concurrent solver runs.
class Instance {
 public:
  /// Throws std::invalid_argument on empty dimensions, size mismatches, or
  /// weights whose absolute sum does not fit in a signed 64-bit integer.
  Instance(std::size_t m, std::size_t n, std::vector<Weight> q, std::vector<Weight> c,
           std::vector<Weight> d, InstanceMeta meta = {});

  static Instance zeros(std::size_t m, std::size_t n);

  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }

  Weight q(std::size_t i, std::size_t j) const { return q_[i * n_ + j]; }
  std::span<const Weight> row(std::size_t i) const { return {q_.data() + i * n_, n_}; }
  std::span<const Weight> q_data() const { return q_; }
  std::span<const Weight> c() const { return c_; }
  std::span<const Weight> d() const { return d_; }
  Weight c(std::size_t i) const { return c_[i]; }
  Weight d(std::size_t j) const { return d_[j]; }

  const InstanceMeta& meta() const { return meta_; }
  Instance with_meta(InstanceMeta meta) const;

  /// Equality of dimensions and weights; metadata is ignored.
  bool same_weights(const Instance& other) const;
  bool operator==(const Instance& other) const {
    return same_weights(other) && meta_ == other.meta_;
  }

 private:
  std::size_t m_;
  std::size_t n_;
  std::vector<Weight> q_;
  std::vector<Weight> c_;
  std::vector<Weight> d_;
  InstanceMeta meta_;
};

/// An assignment (x, y) with its cached objective value.
struct Solution {
  BitVector x;
  BitVector y;
  Weight objective = 0;

  /// Builds a solution and computes its objective.
  static Solution make(const Instance& inst, BitVector x, BitVector y);

  bool operator==(const Solution&) const = default;
};

/// f(x, y) in exact integer arithmetic. Throws on dimension mismatch.
Weight evaluate(const Instance& inst, std::span<const std::uint8_t> x,
                std::span<const std::uint8_t> y);
inline Weight evaluate(const Instance& inst, const Solution& sol) {
  return evaluate(inst, sol.x, sol.y);
}

/// y_j = 1 iff sum_i q_ij x_i + d_j > 0.
BitVector optimal_y_given_x(const Instance& inst, std::span<const std::uint8_t> x);

/// x_i = 1 iff sum_j q_ij y_j + c_i > 0.
BitVector optimal_x_given_y(const Instance& inst, std::span<const std::uint8_t> y);

/// Column sums s_j = d_j + sum_i q_ij x_i and row sums w_i = c_i + sum_j q_ij y_j
/// for a solution, kept current across single-bit flips.
class IncrementalState {
 public:
  IncrementalState(const Instance& inst, const Solution& sol);

  std::span<const Weight> s() const { return s_; }
  std::span<const Weight> w() const { return w_; }
  Weight s(std::size_t j) const { return s_[j]; }
  Weight w(std::size_t i) const { return w_[i]; }

  /// Toggles x_i: objective moves by +-w_i, s moves by +-row i.
  void flip_x(const Instance& inst, Solution& sol, std::size_t i);
  /// Toggles y_j: objective moves by +-s_j, w moves by +-column j.
  void flip_y(const Instance& inst, Solution& sol, std::size_t j);

  bool operator==(const IncrementalState&) const = default;

 private:
  std::vector<Weight> s_;
  std::vector<Weight> w_;
};

/// Expected objective of a solution whose bits are independently 1 with
/// probability p_x (rows) and p_y (columns).
double expected_random_objective(const Instance& inst, double p_x, double p_y);

/// Column sums d_j + sum_i q_ij x_i.
std::vector<Weight> column_sums(const Instance& inst, std::span<const std::uint8_t> x);
/// Row sums c_i + sum_j q_ij y_j.
std::vector<Weight> row_sums(const Instance& inst, std::span<const std::uint8_t> y);

}  // namespace bqp
