#include "bqp/core.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace bqp {

namespace {

void check_dims(const Instance& inst, std::size_t x_len, std::size_t y_len) {
  if (x_len != inst.rows() || y_len != inst.cols()) {
    throw std::invalid_argument("solution dimensions " + std::to_string(x_len) + "x" +
                                std::to_string(y_len) + " do not match instance " +
                                std::to_string(inst.rows()) + "x" +
                                std::to_string(inst.cols()));
  }
}

// Adds |v| to total, throwing if the running sum leaves int64 range.
void accumulate_abs(unsigned __int128& total, Weight v) {
  const auto mag = v < 0 ? static_cast<unsigned __int128>(-(static_cast<__int128>(v)))
                         : static_cast<unsigned __int128>(v);
  total += mag;
  if (total > static_cast<unsigned __int128>(std::numeric_limits<Weight>::max())) {
    throw std::invalid_argument("instance weights overflow the 64-bit objective range");
  }
}

}  // namespace

Instance::Instance(std::size_t m, std::size_t n, std::vector<Weight> q, std::vector<Weight> c,
                   std::vector<Weight> d, InstanceMeta meta)
    : m_(m), n_(n), q_(std::move(q)), c_(std::move(c)), d_(std::move(d)),
      meta_(std::move(meta)) {
  if (m_ == 0 || n_ == 0) throw std::invalid_argument("instance needs m >= 1 and n >= 1");
  if (q_.size() != m_ * n_) throw std::invalid_argument("Q must have m*n entries");
  if (c_.size() != m_) throw std::invalid_argument("c must have m entries");
  if (d_.size() != n_) throw std::invalid_argument("d must have n entries");
  unsigned __int128 total = 0;
  for (Weight v : q_) accumulate_abs(total, v);
  for (Weight v : c_) accumulate_abs(total, v);
  for (Weight v : d_) accumulate_abs(total, v);
}

Instance Instance::zeros(std::size_t m, std::size_t n) {
  return Instance(m, n, std::vector<Weight>(m * n, 0), std::vector<Weight>(m, 0),
                  std::vector<Weight>(n, 0));
}

Instance Instance::with_meta(InstanceMeta meta) const {
  Instance copy = *this;
  copy.meta_ = std::move(meta);
  return copy;
}

bool Instance::same_weights(const Instance& other) const {
  return m_ == other.m_ && n_ == other.n_ && q_ == other.q_ && c_ == other.c_ &&
         d_ == other.d_;
}

Solution Solution::make(const Instance& inst, BitVector x, BitVector y) {
  Solution sol{std::move(x), std::move(y), 0};
  sol.objective = evaluate(inst, sol.x, sol.y);
  return sol;
}

Weight evaluate(const Instance& inst, std::span<const std::uint8_t> x,
                std::span<const std::uint8_t> y) {
  check_dims(inst, x.size(), y.size());
  Weight total = 0;
  for (std::size_t i = 0; i < inst.rows(); ++i) {
    if (!x[i]) continue;
    total += inst.c(i);
    const auto row = inst.row(i);
    for (std::size_t j = 0; j < inst.cols(); ++j) {
      if (y[j]) total += row[j];
    }
  }
  for (std::size_t j = 0; j < inst.cols(); ++j) {
    if (y[j]) total += inst.d(j);
  }
  return total;
}

std::vector<Weight> column_sums(const Instance& inst, std::span<const std::uint8_t> x) {
  if (x.size() != inst.rows()) throw std::invalid_argument("x has wrong length");
  std::vector<Weight> s(inst.d().begin(), inst.d().end());
  for (std::size_t i = 0; i < inst.rows(); ++i) {
    if (!x[i]) continue;
    const auto row = inst.row(i);
    for (std::size_t j = 0; j < inst.cols(); ++j) s[j] += row[j];
  }
  return s;
}

std::vector<Weight> row_sums(const Instance& inst, std::span<const std::uint8_t> y) {
  if (y.size() != inst.cols()) throw std::invalid_argument("y has wrong length");
  std::vector<Weight> w(inst.c().begin(), inst.c().end());
  for (std::size_t i = 0; i < inst.rows(); ++i) {
    const auto row = inst.row(i);
    Weight acc = 0;
    for (std::size_t j = 0; j < inst.cols(); ++j) {
      if (y[j]) acc += row[j];
    }
    w[i] += acc;
  }
  return w;
}

BitVector optimal_y_given_x(const Instance& inst, std::span<const std::uint8_t> x) {
  const auto s = column_sums(inst, x);
  BitVector y(inst.cols());
  for (std::size_t j = 0; j < y.size(); ++j) y[j] = s[j] > 0 ? 1 : 0;
  return y;
}

BitVector optimal_x_given_y(const Instance& inst, std::span<const std::uint8_t> y) {
  const auto w = row_sums(inst, y);
  BitVector x(inst.rows());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = w[i] > 0 ? 1 : 0;
  return x;
}

IncrementalState::IncrementalState(const Instance& inst, const Solution& sol)
    : s_(column_sums(inst, sol.x)), w_(row_sums(inst, sol.y)) {}

void IncrementalState::flip_x(const Instance& inst, Solution& sol, std::size_t i) {
  if (i >= inst.rows()) throw std::out_of_range("flip_x: row index out of range");
  const auto row = inst.row(i);
  if (sol.x[i]) {
    sol.x[i] = 0;
    sol.objective -= w_[i];
    for (std::size_t j = 0; j < s_.size(); ++j) s_[j] -= row[j];
  } else {
    sol.x[i] = 1;
    sol.objective += w_[i];
    for (std::size_t j = 0; j < s_.size(); ++j) s_[j] += row[j];
  }
}

void IncrementalState::flip_y(const Instance& inst, Solution& sol, std::size_t j) {
  if (j >= inst.cols()) throw std::out_of_range("flip_y: column index out of range");
  const std::size_t n = inst.cols();
  const auto q = inst.q_data();
  if (sol.y[j]) {
    sol.y[j] = 0;
    sol.objective -= s_[j];
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] -= q[i * n + j];
  } else {
    sol.y[j] = 1;
    sol.objective += s_[j];
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] += q[i * n + j];
  }
}

double expected_random_objective(const Instance& inst, double p_x, double p_y) {
  if (p_x < 0.0 || p_x > 1.0 || p_y < 0.0 || p_y > 1.0) {
    throw std::invalid_argument("probabilities must lie in [0, 1]");
  }
  const double m = static_cast<double>(inst.rows());
  const double n = static_cast<double>(inst.cols());
  long double q_sum = 0, c_sum = 0, d_sum = 0;
  for (Weight v : inst.q_data()) q_sum += v;
  for (Weight v : inst.c()) c_sum += v;
  for (Weight v : inst.d()) d_sum += v;
  const double q_mean = static_cast<double>(q_sum / (m * n));
  const double c_mean = static_cast<double>(c_sum / m);
  const double d_mean = static_cast<double>(d_sum / n);
  const double m1 = m * p_x;
  const double n1 = n * p_y;
  return n1 * m1 * q_mean + m1 * c_mean + n1 * d_mean;
}

}  // namespace bqp
