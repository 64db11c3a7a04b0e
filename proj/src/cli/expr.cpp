#include "bqp/cli/expr.hpp"

#include <cctype>
#include <charconv>
#include <stdexcept>

namespace bqp::cli {

namespace {

struct OpInfo {
  Op op;
  std::string_view name;
  bool subscript;     // required (otherwise forbidden)
  bool takes_inner;   // may carry a start expression
  bool needs_inner;
  bool improvement;   // transforms a starting solution
};

constexpr OpInfo kOps[] = {
    {Op::random, "Rn", false, false, false, false},
    {Op::greedy, "G", false, false, false, false},
    {Op::trivial, "T", false, false, false, false},
    {Op::alternating, "A", false, true, false, true},
    {Op::flip, "F", false, true, false, true},
    {Op::vnd_exhaustive, "Vex", true, true, false, true},
    {Op::vnd, "V", true, false, false, false},
    {Op::portions, "P", true, true, false, true},
    {Op::multistart, "M", false, true, true, false},
    {Op::rowmerge_cluster, "R", true, false, false, false},
    {Op::rowmerge_multistart, "Rm", true, false, false, false},
    {Op::rowmerge_ls, "Rls", true, true, false, true},
};

const OpInfo& info(Op op) {
  for (const auto& i : kOps) {
    if (i.op == op) return i;
  }
  throw std::logic_error("unknown op");
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  AlgorithmExpr parse() {
    if (text_.empty()) fail("empty expression");
    AlgorithmExpr expr = parse_node();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return expr;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("algorithm '" + std::string(text_) + "': " + why + " at position " +
                                std::to_string(pos_));
  }

  AlgorithmExpr parse_node() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const auto name = text_.substr(start, pos_ - start);
    if (name.empty()) fail("expected an algorithm name");
    const OpInfo* found = nullptr;
    for (const auto& i : kOps) {
      if (i.name == name) found = &i;
    }
    if (!found) {
      pos_ = start;
      fail("unknown algorithm '" + std::string(name) + "'");
    }

    AlgorithmExpr expr;
    expr.op = found->op;
    const std::size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ > digits) {
      if (!found->subscript) fail(std::string(name) + " takes no subscript");
      std::size_t value = 0;
      const auto [ptr, ec] = std::from_chars(text_.data() + digits, text_.data() + pos_, value);
      if (ec != std::errc{} || ptr != text_.data() + pos_ || value == 0) {
        fail("subscript must be a positive integer");
      }
      expr.subscript = value;
    } else if (found->subscript) {
      fail(std::string(name) + " needs a subscript, e.g. " + std::string(name) + "2");
    }

    if (pos_ < text_.size() && text_[pos_] == '(') {
      if (!found->takes_inner) fail(std::string(name) + " takes no inner expression");
      ++pos_;
      expr.inner.push_back(parse_node());
      if (pos_ >= text_.size() || text_[pos_] != ')') fail("missing ')'");
      ++pos_;
    } else if (found->needs_inner) {
      fail(std::string(name) + " needs an inner expression, e.g. M(F)");
    }

    if (expr.op == Op::multistart) check_multistart_body(expr.inner.front());
    return expr;
  }

  void check_multistart_body(const AlgorithmExpr& body) const {
    const AlgorithmExpr* node = &body;
    for (;;) {
      if (!info(node->op).improvement) {
        throw std::invalid_argument("algorithm '" + std::string(text_) +
                                    "': M needs an improvement chain such as F or Vex1(A), not '" +
                                    render(*node) + "'");
      }
      if (node->inner.empty()) return;
      node = &node->inner.front();
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

AlgorithmExpr parse_expr(std::string_view text) { return Parser(text).parse(); }

std::string render(const AlgorithmExpr& expr) {
  std::string out(info(expr.op).name);
  if (expr.subscript) out += std::to_string(*expr.subscript);
  if (!expr.inner.empty()) out += "(" + render(expr.inner.front()) + ")";
  return out;
}

std::string_view op_name(Op op) { return info(op).name; }

bool uses_budget(Op op) {
  return op == Op::multistart || op == Op::portions || op == Op::rowmerge_multistart ||
         op == Op::rowmerge_ls;
}

}  // namespace bqp::cli
