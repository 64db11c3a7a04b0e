#include "bqp/exact.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

namespace bqp {

namespace {

Weight positive_sum(std::span<const Weight> s) {
  Weight total = 0;
  for (Weight v : s) total += positive(v);
  return total;
}

}  // namespace

SubsetOptimum solve_rows_exact(const Instance& inst, std::span<const std::size_t> rows,
                               std::span<const Weight> base_s) {
  const std::size_t k = rows.size();
  if (k > kMaxEnumerationRows) throw std::invalid_argument("too many rows to enumerate");
  if (base_s.size() != inst.cols()) throw std::invalid_argument("base_s has wrong length");

  std::vector<Weight> s(base_s.begin(), base_s.end());
  Weight linear = 0;
  std::uint64_t mask = 0;
  SubsetOptimum best{0, positive_sum(s)};

  const std::uint64_t steps = std::uint64_t{1} << k;
  for (std::uint64_t g = 1; g < steps; ++g) {
    const auto r = static_cast<std::size_t>(std::countr_zero(g));
    const std::size_t i = rows[r];
    const auto row = inst.row(i);
    mask ^= std::uint64_t{1} << r;
    Weight value = 0;
    if (mask >> r & 1U) {
      linear += inst.c(i);
      for (std::size_t j = 0; j < s.size(); ++j) {
        s[j] += row[j];
        value += positive(s[j]);
      }
    } else {
      linear -= inst.c(i);
      for (std::size_t j = 0; j < s.size(); ++j) {
        s[j] -= row[j];
        value += positive(s[j]);
      }
    }
    value += linear;
    if (value > best.value) best = {mask, value};
  }
  return best;
}

Solution enumerate_exact(const Instance& inst) {
  const std::size_t m = inst.rows();
  if (m > kMaxEnumerationRows) {
    throw std::invalid_argument("enumerate_exact supports at most 30 rows");
  }
  std::vector<std::size_t> rows(m);
  for (std::size_t i = 0; i < m; ++i) rows[i] = i;
  const auto best = solve_rows_exact(inst, rows, inst.d());
  BitVector x(m);
  for (std::size_t i = 0; i < m; ++i) x[i] = (best.mask >> i) & 1U;
  BitVector y = optimal_y_given_x(inst, x);
  return Solution::make(inst, std::move(x), std::move(y));
}

Solution brute_force_oracle(const Instance& inst) {
  const std::size_t m = inst.rows();
  const std::size_t n = inst.cols();
  if (m + n > kMaxOracleVariables) {
    throw std::invalid_argument("brute_force_oracle supports at most 24 variables");
  }
  bool have = false;
  Weight best = 0;
  std::uint64_t best_x = 0;
  std::uint64_t best_y = 0;
  std::vector<Weight> col(n);
  for (std::uint64_t xm = 0; xm < (std::uint64_t{1} << m); ++xm) {
    Weight lin = 0;
    for (std::size_t j = 0; j < n; ++j) col[j] = inst.d(j);
    for (std::size_t i = 0; i < m; ++i) {
      if (!((xm >> i) & 1U)) continue;
      lin += inst.c(i);
      for (std::size_t j = 0; j < n; ++j) col[j] += inst.q(i, j);
    }
    for (std::uint64_t ym = 0; ym < (std::uint64_t{1} << n); ++ym) {
      Weight value = lin;
      for (std::size_t j = 0; j < n; ++j) {
        if ((ym >> j) & 1U) value += col[j];
      }
      if (!have || value > best) {
        have = true;
        best = value;
        best_x = xm;
        best_y = ym;
      }
    }
  }
  BitVector x(m), y(n);
  for (std::size_t i = 0; i < m; ++i) x[i] = (best_x >> i) & 1U;
  for (std::size_t j = 0; j < n; ++j) y[j] = (best_y >> j) & 1U;
  return Solution::make(inst, std::move(x), std::move(y));
}

namespace {

// Appends "+ 5 name" / "- 5 name"; zero coefficients are skipped.
void append_term(std::ostringstream& out, bool& first, Weight coef, const std::string& name) {
  if (coef == 0) return;
  if (first) {
    if (coef < 0) out << "- ";
  } else {
    out << (coef < 0 ? " - " : " + ");
  }
  const Weight mag = coef < 0 ? -coef : coef;
  out << mag << ' ' << name;
  first = false;
}

std::string xname(std::size_t i) { return "x_" + std::to_string(i + 1); }
std::string yname(std::size_t j) { return "y_" + std::to_string(j + 1); }
std::string zname(std::size_t i, std::size_t j) {
  return "z_" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
}

}  // namespace

std::string export_lp(const Instance& inst, const std::optional<Solution>& start) {
  const std::size_t m = inst.rows();
  const std::size_t n = inst.cols();
  std::ostringstream out;
  out << "\\ BQP linearization: " << m << " rows, " << n << " columns\n";
  out << "Maximize\n obj: ";
  bool first = true;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) append_term(out, first, inst.q(i, j), zname(i, j));
  for (std::size_t i = 0; i < m; ++i) append_term(out, first, inst.c(i), xname(i));
  for (std::size_t j = 0; j < n; ++j) append_term(out, first, inst.d(j), yname(j));
  if (first) out << "0 " << xname(0);
  out << "\nSubject To\n";
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto z = zname(i, j);
      const auto suffix = std::to_string(i + 1) + "_" + std::to_string(j + 1);
      out << " zx_" << suffix << ": " << z << " - " << xname(i) << " <= 0\n";
      out << " zy_" << suffix << ": " << z << " - " << yname(j) << " <= 0\n";
      out << " zxy_" << suffix << ": " << z << " - " << xname(i) << " - " << yname(j)
          << " >= -1\n";
    }
  }
  out << "Bounds\n";
  for (std::size_t j = 0; j < n; ++j) out << " 0 <= " << yname(j) << " <= 1\n";
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) out << " 0 <= " << zname(i, j) << " <= 1\n";
  out << "Binaries\n";
  for (std::size_t i = 0; i < m; ++i) out << ' ' << xname(i) << '\n';
  if (start) {
    if (start->x.size() != m || start->y.size() != n) {
      throw std::invalid_argument("warm start does not match instance");
    }
    out << "\\ Warm start, objective " << start->objective << '\n';
    for (std::size_t i = 0; i < m; ++i)
      out << "\\   " << xname(i) << " = " << int{start->x[i]} << '\n';
    for (std::size_t j = 0; j < n; ++j)
      out << "\\   " << yname(j) << " = " << int{start->y[j]} << '\n';
  }
  out << "End\n";
  return out.str();
}

std::string export_qubo(const Instance& inst) {
  const std::size_t m = inst.rows();
  const std::size_t n = inst.cols();
  std::ostringstream body;
  std::size_t nnz = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (inst.c(i) == 0) continue;
    body << i + 1 << ' ' << i + 1 << ' ' << inst.c(i) << '\n';
    ++nnz;
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (inst.d(j) == 0) continue;
    body << m + j + 1 << ' ' << m + j + 1 << ' ' << inst.d(j) << '\n';
    ++nnz;
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (inst.q(i, j) == 0) continue;
      body << i + 1 << ' ' << m + j + 1 << ' ' << inst.q(i, j) << '\n';
      ++nnz;
    }
  }
  return std::to_string(m + n) + ' ' + std::to_string(nnz) + '\n' + body.str();
}

QuboModel parse_qubo(std::string_view text) {
  std::istringstream in{std::string(text)};
  QuboModel model;
  std::size_t nnz = 0;
  if (!(in >> model.variables >> nnz)) throw std::invalid_argument("qubo: malformed header");
  model.terms.reserve(nnz);
  for (std::size_t t = 0; t < nnz; ++t) {
    std::size_t r = 0, c = 0;
    Weight v = 0;
    if (!(in >> r >> c >> v)) throw std::invalid_argument("qubo: truncated term list");
    if (r == 0 || c == 0 || r > model.variables || c > model.variables) {
      throw std::invalid_argument("qubo: variable index out of range");
    }
    model.terms.emplace_back(r, c, v);
  }
  std::string extra;
  if (in >> extra) throw std::invalid_argument("qubo: trailing data");
  return model;
}

Weight evaluate_qubo(const QuboModel& model, std::span<const std::uint8_t> z) {
  if (z.size() != model.variables) throw std::invalid_argument("qubo: assignment size");
  Weight total = 0;
  for (const auto& [r, c, v] : model.terms) {
    if (z[r - 1] && z[c - 1]) total += v;
  }
  return total;
}

}  // namespace bqp
