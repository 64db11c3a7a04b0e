#include "bqp/localsearch.hpp"

#include <limits>
#include <stdexcept>

#include "bqp/exact.hpp"

namespace bqp {

Budget Budget::iterations(std::uint64_t count) {
  if (count == 0) throw std::invalid_argument("iteration budget must be positive");
  return {Mode::iterations, static_cast<double>(count)};
}

Budget Budget::seconds(double limit) {
  if (!(limit > 0.0)) throw std::invalid_argument("time budget must be positive");
  return {Mode::seconds, limit};
}

BudgetClock::BudgetClock(const Budget& budget)
    : budget_(budget), start_(std::chrono::steady_clock::now()) {}

bool BudgetClock::exhausted(std::uint64_t completed) const {
  if (budget_.mode == Budget::Mode::iterations) {
    return static_cast<double>(completed) >= budget_.limit;
  }
  return elapsed_seconds() >= budget_.limit;
}

double BudgetClock::elapsed_seconds() const {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
}

BitVector RestrictedReduction::expand(std::span<const std::uint8_t> reduced_x) const {
  if (reduced_x.size() != rows.size()) throw std::invalid_argument("reduced x has wrong length");
  BitVector x = base;
  for (std::size_t r = 0; r < rows.size(); ++r) x[rows[r]] = reduced_x[r];
  return x;
}

RestrictedReduction reduce_restricted(const Instance& inst, std::span<const std::size_t> rows,
                                      std::span<const std::uint8_t> base) {
  const std::size_t m = inst.rows();
  const std::size_t n = inst.cols();
  if (rows.empty()) throw std::invalid_argument("reduce_restricted: empty row set");
  if (base.size() != m) throw std::invalid_argument("reduce_restricted: x0 has wrong length");
  std::vector<std::uint8_t> freed(m, 0);
  for (std::size_t i : rows) {
    if (i >= m) throw std::out_of_range("reduce_restricted: row index out of range");
    if (freed[i]) throw std::invalid_argument("reduce_restricted: duplicate row");
    freed[i] = 1;
  }

  std::vector<Weight> q;
  q.reserve(rows.size() * n);
  std::vector<Weight> c;
  for (std::size_t i : rows) {
    const auto row = inst.row(i);
    q.insert(q.end(), row.begin(), row.end());
    c.push_back(inst.c(i));
  }
  std::vector<Weight> d(inst.d().begin(), inst.d().end());
  Weight constant = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (freed[i] || !base[i]) continue;
    constant += inst.c(i);
    const auto row = inst.row(i);
    for (std::size_t j = 0; j < n; ++j) d[j] += row[j];
  }
  return RestrictedReduction{std::vector<std::size_t>(rows.begin(), rows.end()),
                             Instance(rows.size(), n, std::move(q), std::move(c), std::move(d)),
                             BitVector(base.begin(), base.end()), constant};
}

Solution alternating(const Instance& inst, Solution sol) {
  IncrementalState state(inst, sol);
  const std::size_t m = inst.rows();
  const std::size_t n = inst.cols();
  int lambda = -1;
  while (lambda <= 0) {
    ++lambda;
    for (std::size_t j = 0; j < n; ++j) {
      const Weight s = state.s(j);
      if ((!sol.y[j] && s > 0) || (sol.y[j] && s < 0)) {
        state.flip_y(inst, sol, j);
        lambda = 0;
      }
    }
    if (lambda == 1) break;
    lambda = 1;
    for (std::size_t i = 0; i < m; ++i) {
      const Weight w = state.w(i);
      if ((!sol.x[i] && w > 0) || (sol.x[i] && w < 0)) {
        state.flip_x(inst, sol, i);
        lambda = 0;
      }
    }
  }
  return sol;
}

namespace {

std::uint64_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 result = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
    if (result > std::numeric_limits<std::uint64_t>::max()) {
      return std::numeric_limits<std::uint64_t>::max();
    }
  }
  return static_cast<std::uint64_t>(result);
}

// Advances to the next p-combination of [0, m) in lexicographic order,
// wrapping from the last combination back to the first.
void next_combination(std::vector<std::size_t>& idx, std::size_t m) {
  const std::size_t p = idx.size();
  std::size_t pos = p;
  while (pos > 0) {
    --pos;
    if (idx[pos] < m - p + pos) {
      ++idx[pos];
      for (std::size_t t = pos + 1; t < p; ++t) idx[t] = idx[t - 1] + 1;
      return;
    }
  }
  for (std::size_t t = 0; t < p; ++t) idx[t] = t;
}

Weight linear_part(const Instance& inst, std::span<const std::uint8_t> x) {
  Weight total = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i]) total += inst.c(i);
  }
  return total;
}

// Objective of x with the rows in `idx` complemented and y re-optimized.
Weight complement_value(const Instance& inst, const BitVector& x, std::span<const Weight> s,
                        Weight linear, std::span<const std::size_t> idx,
                        std::vector<Weight>& scratch) {
  const std::size_t n = inst.cols();
  if (idx.size() == 1) {
    const std::size_t i = idx[0];
    const auto row = inst.row(i);
    Weight value = 0;
    if (x[i]) {
      value = linear - inst.c(i);
      for (std::size_t j = 0; j < n; ++j) value += positive(s[j] - row[j]);
    } else {
      value = linear + inst.c(i);
      for (std::size_t j = 0; j < n; ++j) value += positive(s[j] + row[j]);
    }
    return value;
  }
  scratch.assign(s.begin(), s.end());
  Weight value = linear;
  for (std::size_t i : idx) {
    const auto row = inst.row(i);
    if (x[i]) {
      value -= inst.c(i);
      for (std::size_t j = 0; j < n; ++j) scratch[j] -= row[j];
    } else {
      value += inst.c(i);
      for (std::size_t j = 0; j < n; ++j) scratch[j] += row[j];
    }
  }
  for (Weight v : scratch) value += positive(v);
  return value;
}

}  // namespace

Solution exhaustive_portions(const Instance& inst, Solution sol, std::size_t k) {
  const std::size_t m = inst.rows();
  const std::size_t n = inst.cols();
  if (k < 1 || k > m) throw std::invalid_argument("exhaustive_portions: k must be in [1, m]");

  std::vector<Weight> s = column_sums(inst, sol.x);
  Weight linear = linear_part(inst, sol.x);
  std::vector<Weight> scratch;
  bool moved = false;

  bool restart = true;
  while (restart) {
    restart = false;
    for (std::size_t p = 1; p <= k; ++p) {
      const std::uint64_t total = binomial(m, p);
      std::vector<std::size_t> idx(p);
      for (std::size_t t = 0; t < p; ++t) idx[t] = t;
      std::uint64_t misses = 0;
      while (misses < total) {
        const Weight value = complement_value(inst, sol.x, s, linear, idx, scratch);
        if (value > sol.objective) {
          for (std::size_t i : idx) {
            const auto row = inst.row(i);
            if (sol.x[i]) {
              sol.x[i] = 0;
              linear -= inst.c(i);
              for (std::size_t j = 0; j < n; ++j) s[j] -= row[j];
            } else {
              sol.x[i] = 1;
              linear += inst.c(i);
              for (std::size_t j = 0; j < n; ++j) s[j] += row[j];
            }
          }
          sol.objective = value;
          moved = true;
          misses = 0;
          if (p > 1) restart = true;
        } else {
          ++misses;
        }
        next_combination(idx, m);
      }
      if (restart) break;
    }
  }

  if (moved) {
    for (std::size_t j = 0; j < n; ++j) sol.y[j] = s[j] > 0 ? 1 : 0;
  }
  return sol;
}

Solution flip_ls(const Instance& inst, Solution sol) { return exhaustive_portions(inst, std::move(sol), 1); }

bool improve_portion(const Instance& inst, Solution& sol, std::vector<Weight>& s,
                     std::span<const std::size_t> rows) {
  const std::size_t n = inst.cols();
  std::vector<Weight> base = s;
  Weight base_linear = linear_part(inst, sol.x);
  for (std::size_t i : rows) {
    if (!sol.x[i]) continue;
    base_linear -= inst.c(i);
    const auto row = inst.row(i);
    for (std::size_t j = 0; j < n; ++j) base[j] -= row[j];
  }
  const auto best = solve_rows_exact(inst, rows, base);
  const Weight value = base_linear + best.value;
  if (value <= sol.objective) return false;

  for (std::size_t r = 0; r < rows.size(); ++r) {
    const std::size_t i = rows[r];
    sol.x[i] = (best.mask >> r) & 1U;
    if (!sol.x[i]) continue;
    const auto row = inst.row(i);
    for (std::size_t j = 0; j < n; ++j) base[j] += row[j];
  }
  s = std::move(base);
  for (std::size_t j = 0; j < n; ++j) sol.y[j] = s[j] > 0 ? 1 : 0;
  sol.objective = value;
  return true;
}

Solution random_portions(const Instance& inst, Solution sol, std::size_t k,
                         const Budget& budget, Rng& rng, std::uint64_t* iterations) {
  const std::size_t m = inst.rows();
  if (k < 2 || k > std::min(m, kMaxPortion)) {
    throw std::invalid_argument("random_portions: k must be in [2, min(m, 20)]");
  }
  std::vector<Weight> s = column_sums(inst, sol.x);
  BudgetClock clock(budget);
  std::uint64_t it = 0;
  for (; !clock.exhausted(it); ++it) {
    const auto rows = rng.sample(m, k);
    improve_portion(inst, sol, s, rows);
  }
  if (iterations) *iterations = it;
  return sol;
}

}  // namespace bqp
