#include "bqp/testbed.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bqp {

std::string_view family_name(Family family) {
  switch (family) {
    case Family::random: return "random";
    case Family::biclique: return "biclique";
    case Family::maxinduced: return "maxinduced";
    case Family::maxcut: return "maxcut";
    case Family::matrixfact: return "matrixfact";
  }
  return "unknown";
}

Family parse_family(std::string_view name) {
  for (Family f : kAllFamilies) {
    if (family_name(f) == name) return f;
  }
  throw std::invalid_argument("unknown instance family '" + std::string(name) +
                              "' (expected random, biclique, maxinduced, maxcut, matrixfact)");
}

void BipartiteGraphSpec::validate() const {
  if (m == 0 || n == 0) throw std::invalid_argument("graph needs m, n >= 1");
  if (left_min > left_max || left_max > n) throw std::invalid_argument("left degree bounds invalid");
  if (right_min > right_max || right_max > m) throw std::invalid_argument("right degree bounds invalid");
  if (m * left_min > n * right_max || m * left_max < n * right_min) {
    throw std::invalid_argument("degree bounds admit no balanced degree sequence");
  }
}

namespace {

struct Degrees {
  std::vector<std::size_t> left;
  std::vector<std::size_t> right;
  bool fixed = false;
};

std::size_t sum(const std::vector<std::size_t>& v) {
  std::size_t total = 0;
  for (auto d : v) total += d;
  return total;
}

std::size_t draw(Rng& rng, std::size_t lo, std::size_t hi) {
  return static_cast<std::size_t>(rng.between(static_cast<std::int64_t>(lo), static_cast<std::int64_t>(hi)));
}

Degrees draw_degrees(const BipartiteGraphSpec& spec, Rng& rng) {
  Degrees deg;
  deg.left.resize(spec.m);
  deg.right.resize(spec.n);
  for (auto& d : deg.left) d = draw(rng, spec.left_min, spec.left_max);
  for (auto& d : deg.right) d = draw(rng, spec.right_min, spec.right_max);

  std::size_t left_sum = sum(deg.left);
  std::size_t right_sum = sum(deg.right);
  const std::size_t attempts = 50 * (spec.m + spec.n);
  bool left_turn = true;
  for (std::size_t a = 0; a < attempts && left_sum != right_sum; ++a, left_turn = !left_turn) {
    if (left_turn) {
      auto& d = deg.left[rng.below(spec.m)];
      left_sum -= d;
      d = draw(rng, spec.left_min, spec.left_max);
      left_sum += d;
    } else {
      auto& d = deg.right[rng.below(spec.n)];
      right_sum -= d;
      d = draw(rng, spec.right_min, spec.right_max);
      right_sum += d;
    }
  }
  if (left_sum == right_sum) return deg;

  // Deterministic balancing: walk the left sum toward the right sum within
  // its bounds, then close the remaining gap on the right side.
  deg.fixed = true;
  const long step = left_sum < right_sum ? 1 : -1;
  const std::size_t left_lo = spec.m * spec.left_min;
  const std::size_t left_hi = spec.m * spec.left_max;
  std::vector<std::size_t> candidates;
  while (left_sum != right_sum) {
    const auto next = static_cast<long>(left_sum) + step;
    if (next < static_cast<long>(left_lo) || next > static_cast<long>(left_hi)) break;
    candidates.clear();
    for (std::size_t v = 0; v < spec.m; ++v) {
      const auto moved = static_cast<long>(deg.left[v]) + step;
      if (moved >= static_cast<long>(spec.left_min) && moved <= static_cast<long>(spec.left_max)) {
        candidates.push_back(v);
      }
    }
    const std::size_t v = candidates[rng.below(candidates.size())];
    deg.left[v] = static_cast<std::size_t>(static_cast<long>(deg.left[v]) + step);
    left_sum = static_cast<std::size_t>(next);
  }
  while (left_sum != right_sum) {
    candidates.clear();
    for (std::size_t u = 0; u < spec.n; ++u) {
      const auto moved = static_cast<long>(deg.right[u]) - step;
      if (moved >= static_cast<long>(spec.right_min) && moved <= static_cast<long>(spec.right_max)) {
        candidates.push_back(u);
      }
    }
    if (candidates.empty()) throw std::logic_error("degree fixing ran out of candidates");
    const std::size_t u = candidates[rng.below(candidates.size())];
    deg.right[u] = static_cast<std::size_t>(static_cast<long>(deg.right[u]) - step);
    right_sum = static_cast<std::size_t>(static_cast<long>(right_sum) - step);
  }
  return deg;
}

// Realizes the target degrees; false when the process gets stuck.
bool realize_edges(const BipartiteGraphSpec& spec, const Degrees& target, Rng& rng,
                   std::vector<std::uint8_t>& adj) {
  const std::size_t m = spec.m;
  const std::size_t n = spec.n;
  adj.assign(m * n, 0);
  std::vector<std::size_t> left_deg(m, 0), right_deg(n, 0);
  std::vector<std::vector<std::size_t>> right_adj(n);
  const std::size_t edges = sum(target.left);
  const std::size_t step_cap = 50 * (edges + m + n);
  std::vector<std::size_t> candidates;

  std::size_t cursor = 0;
  for (std::size_t steps = 0;; ++steps) {
    while (cursor < m && left_deg[cursor] >= target.left[cursor]) ++cursor;
    if (cursor == m) return true;
    if (steps >= step_cap) return false;
    const std::size_t v = cursor;

    candidates.clear();
    for (std::size_t u = 0; u < n; ++u) {
      if (right_deg[u] < target.right[u] && !adj[v * n + u]) candidates.push_back(u);
    }
    std::size_t u = 0;
    if (!candidates.empty()) {
      u = candidates[rng.below(candidates.size())];
    } else {
      for (std::size_t t = 0; t < n; ++t) {
        if (!adj[v * n + t] && target.right[t] > 0) candidates.push_back(t);
      }
      if (candidates.empty()) return false;
      u = candidates[rng.below(candidates.size())];
      auto& nbrs = right_adj[u];
      const std::size_t pick = rng.below(nbrs.size());
      const std::size_t other = nbrs[pick];
      nbrs.erase(nbrs.begin() + static_cast<std::ptrdiff_t>(pick));
      adj[other * n + u] = 0;
      --left_deg[other];
      --right_deg[u];
      cursor = std::min(cursor, other);
    }
    adj[v * n + u] = 1;
    right_adj[u].push_back(v);
    ++left_deg[v];
    ++right_deg[u];
  }
}

constexpr std::size_t kMaxRestarts = 100;

}  // namespace

GeneratedGraph generate_graph(const BipartiteGraphSpec& spec, std::uint64_t seed) {
  spec.validate();
  Rng degree_rng = Rng::derive(seed, "degrees");
  Rng edge_rng = Rng::derive(seed, "edges");
  Rng weight_rng = Rng::derive(seed, "weights");

  GeneratedGraph graph;
  graph.m = spec.m;
  graph.n = spec.n;
  std::vector<std::uint8_t> adj;
  for (;;) {
    const Degrees target = draw_degrees(spec, degree_rng);
    graph.used_fixing = target.fixed;
    if (realize_edges(spec, target, edge_rng, adj)) break;
    if (++graph.restarts > kMaxRestarts) {
      throw std::runtime_error("bipartite graph generation failed to realize degrees");
    }
  }

  graph.left_degree.assign(spec.m, 0);
  graph.right_degree.assign(spec.n, 0);
  for (std::size_t v = 0; v < spec.m; ++v) {
    for (std::size_t u = 0; u < spec.n; ++u) {
      if (!adj[v * spec.n + u]) continue;
      graph.edges.push_back({v, u, weight_rng.normal_int(spec.mean, spec.stddev)});
      ++graph.left_degree[v];
      ++graph.right_degree[u];
    }
  }
  return graph;
}

BipartiteGraphSpec family_graph_spec(Family family, std::size_t m, std::size_t n) {
  BipartiteGraphSpec spec;
  spec.m = m;
  spec.n = n;
  spec.left_min = std::max<std::size_t>(1, n / 5);
  spec.left_max = n;
  spec.right_min = std::max<std::size_t>(1, m / 5);
  spec.right_max = m;
  spec.mean = family == Family::biclique ? 100.0 : 0.0;
  spec.stddev = 100.0;
  return spec;
}

Instance generate_instance(Family family, std::size_t m, std::size_t n, std::uint64_t seed) {
  if (m == 0 || n == 0) throw std::invalid_argument("instance needs m, n >= 1");
  std::vector<Weight> q(m * n, 0), c(m, 0), d(n, 0);
  InstanceMeta meta;
  meta.family = std::string(family_name(family));
  meta.seed = seed;

  switch (family) {
    case Family::random: {
      Rng rq = Rng::derive(seed, "q");
      Rng rc = Rng::derive(seed, "c");
      Rng rd = Rng::derive(seed, "d");
      for (auto& v : q) v = rq.normal_int(0.0, 100.0);
      for (auto& v : c) v = rc.normal_int(0.0, 100.0);
      for (auto& v : d) v = rd.normal_int(0.0, 100.0);
      break;
    }
    case Family::matrixfact: {
      Rng rh = Rng::derive(seed, "h");
      for (auto& v : q) v = rh.bernoulli(0.5) ? -1 : 1;  // 1 - 2h
      break;
    }
    case Family::biclique:
    case Family::maxinduced:
    case Family::maxcut: {
      const auto spec = family_graph_spec(family, m, n);
      const auto graph = generate_graph(spec, Rng::derive(seed, "graph").next());
      std::ostringstream params;
      params << spec.left_min << ',' << spec.left_max << ',' << spec.right_min << ','
             << spec.right_max << ',' << spec.mean << ',' << spec.stddev;
      meta.notes.emplace_back("graph", params.str());
      meta.notes.emplace_back("edges", std::to_string(graph.edges.size()));
      if (family == Family::biclique) {
        Weight penalty = 1;
        for (const auto& e : graph.edges) penalty += positive(e.weight);
        std::fill(q.begin(), q.end(), -penalty);
        for (const auto& e : graph.edges) q[e.left * n + e.right] = e.weight;
        meta.notes.emplace_back("M", std::to_string(penalty));
      } else if (family == Family::maxinduced) {
        for (const auto& e : graph.edges) q[e.left * n + e.right] = e.weight;
      } else {
        for (const auto& e : graph.edges) q[e.left * n + e.right] = -2 * e.weight;
        for (std::size_t i = 0; i < m; ++i)
          for (std::size_t j = 0; j < n; ++j) {
            c[i] += q[i * n + j] / 2;
            d[j] += q[i * n + j] / 2;
          }
      }
      break;
    }
  }
  return Instance(m, n, std::move(q), std::move(c), std::move(d), std::move(meta));
}

namespace {

void write_numbers(std::ostringstream& out, std::span<const Weight> values) {
  for (std::size_t t = 0; t < values.size(); ++t) {
    if (t) out << ' ';
    out << values[t];
  }
  out << '\n';
}

std::string content_text(const Instance& inst) {
  std::ostringstream out;
  out << inst.rows() << ' ' << inst.cols() << '\n';
  write_numbers(out, inst.c());
  write_numbers(out, inst.d());
  for (std::size_t i = 0; i < inst.rows(); ++i) write_numbers(out, inst.row(i));
  return out.str();
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t begin = 0;
  while (begin < text.size()) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(begin, end - begin);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    begin = end + 1;
  }
  return lines;
}

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t t = 0;
  while (t < line.size()) {
    while (t < line.size() && (line[t] == ' ' || line[t] == '\t')) ++t;
    std::size_t start = t;
    while (t < line.size() && line[t] != ' ' && line[t] != '\t') ++t;
    if (t > start) tokens.push_back(line.substr(start, t - start));
  }
  return tokens;
}

template <typename T>
T parse_number(std::string_view token, const char* what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw std::invalid_argument(std::string(what) + ": not an integer: '" + std::string(token) + "'");
  }
  return value;
}

std::vector<Weight> parse_row(std::string_view line, std::size_t expected, const char* what) {
  const auto tokens = split_tokens(line);
  if (tokens.size() != expected) {
    throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(expected) +
                                " entries, found " + std::to_string(tokens.size()));
  }
  std::vector<Weight> values;
  values.reserve(expected);
  for (auto tok : tokens) values.push_back(parse_number<Weight>(tok, what));
  return values;
}

BitVector parse_bits(std::string_view text, std::size_t expected, const char* what) {
  if (text.size() != expected) throw std::invalid_argument(std::string(what) + " has wrong length");
  BitVector bits(text.size());
  for (std::size_t t = 0; t < text.size(); ++t) {
    if (text[t] != '0' && text[t] != '1') throw std::invalid_argument(std::string(what) + " must be a 0/1 string");
    bits[t] = text[t] == '1';
  }
  return bits;
}

std::string bits_text(const BitVector& bits) {
  std::string s(bits.size(), '0');
  for (std::size_t t = 0; t < bits.size(); ++t) s[t] = bits[t] ? '1' : '0';
  return s;
}

}  // namespace

std::string write_instance(const Instance& inst) {
  std::ostringstream out;
  out << "bqp 1\n";
  const auto& meta = inst.meta();
  if (!meta.family.empty()) out << "# family=" << meta.family << '\n';
  if (meta.seed) out << "# seed=" << *meta.seed << '\n';
  for (const auto& [key, value] : meta.notes) out << "# " << key << '=' << value << '\n';
  out << content_text(inst);
  return out.str();
}

Instance read_instance(std::string_view text) {
  const auto lines = split_lines(text);
  std::size_t at = 0;
  if (lines.empty() || split_tokens(lines[0]) != std::vector<std::string_view>{"bqp", "1"}) {
    throw std::invalid_argument("instance: missing 'bqp 1' header");
  }
  ++at;
  InstanceMeta meta;
  for (; at < lines.size() && !lines[at].empty() && lines[at][0] == '#'; ++at) {
    auto body = lines[at].substr(1);
    if (!body.empty() && body[0] == ' ') body.remove_prefix(1);
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) throw std::invalid_argument("instance: comment is not key=value");
    const std::string key(body.substr(0, eq));
    const std::string value(body.substr(eq + 1));
    if (key == "family") {
      meta.family = value;
    } else if (key == "seed") {
      meta.seed = parse_number<std::uint64_t>(value, "seed");
    } else {
      meta.notes.emplace_back(key, value);
    }
  }
  if (at >= lines.size()) throw std::invalid_argument("instance: missing dimensions");
  const auto dims = split_tokens(lines[at++]);
  if (dims.size() != 2) throw std::invalid_argument("instance: dimension line must be 'm n'");
  const auto m = parse_number<std::size_t>(dims[0], "m");
  const auto n = parse_number<std::size_t>(dims[1], "n");
  if (m == 0 || n == 0) throw std::invalid_argument("instance: dimensions must be positive");
  if (lines.size() < at + 2 + m) throw std::invalid_argument("instance: truncated");
  auto c = parse_row(lines[at++], m, "c");
  auto d = parse_row(lines[at++], n, "d");
  std::vector<Weight> q;
  q.reserve(m * n);
  for (std::size_t i = 0; i < m; ++i) {
    auto row = parse_row(lines[at++], n, "Q row");
    q.insert(q.end(), row.begin(), row.end());
  }
  for (; at < lines.size(); ++at) {
    if (!split_tokens(lines[at]).empty()) throw std::invalid_argument("instance: trailing data");
  }
  return Instance(m, n, std::move(q), std::move(c), std::move(d), std::move(meta));
}

std::string instance_digest(const Instance& inst) {
  const auto text = content_text(inst);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string instance_name(const Instance& inst) {
  const auto& meta = inst.meta();
  if (meta.family.empty() || !meta.seed) return instance_digest(inst);
  return meta.family + "-" + std::to_string(inst.rows()) + "x" + std::to_string(inst.cols()) +
         "-" + std::to_string(*meta.seed);
}

std::string write_solution(const Solution& sol, const Instance& inst, const std::string& name) {
  if (sol.x.size() != inst.rows() || sol.y.size() != inst.cols()) {
    throw std::invalid_argument("solution does not match instance");
  }
  std::ostringstream out;
  out << "bqpsol 1\n";
  out << "instance " << instance_digest(inst) << ' ' << (name.empty() ? instance_name(inst) : name)
      << '\n';
  out << "objective " << sol.objective << '\n';
  out << "x " << bits_text(sol.x) << '\n';
  out << "y " << bits_text(sol.y) << '\n';
  return out.str();
}

SolutionRecord read_solution(std::string_view text, const Instance* inst) {
  std::vector<std::vector<std::string_view>> rows;
  for (auto line : split_lines(text)) {
    auto tokens = split_tokens(line);
    if (!tokens.empty()) rows.push_back(std::move(tokens));
  }
  auto expect = [&](std::size_t idx, std::string_view key, std::size_t count) {
    if (idx >= rows.size() || rows[idx][0] != key || rows[idx].size() != count) {
      throw std::invalid_argument("certificate: malformed '" + std::string(key) + "' line");
    }
    return rows[idx];
  };
  if (rows.empty() || rows[0] != std::vector<std::string_view>{"bqpsol", "1"}) {
    throw std::invalid_argument("certificate: missing 'bqpsol 1' header");
  }
  const auto id = expect(1, "instance", 3);
  const auto obj = expect(2, "objective", 2);
  const auto xs = expect(3, "x", 2);
  const auto ys = expect(4, "y", 2);
  if (rows.size() != 5) throw std::invalid_argument("certificate: trailing data");

  SolutionRecord rec;
  rec.digest = std::string(id[1]);
  rec.name = std::string(id[2]);
  rec.solution.objective = parse_number<Weight>(obj[1], "objective");
  rec.solution.x = parse_bits(xs[1], xs[1].size(), "x");
  rec.solution.y = parse_bits(ys[1], ys[1].size(), "y");
  if (inst) {
    if (rec.digest != instance_digest(*inst)) {
      throw std::invalid_argument("certificate: instance digest mismatch");
    }
    if (rec.solution.x.size() != inst->rows() || rec.solution.y.size() != inst->cols()) {
      throw std::invalid_argument("certificate: dimensions do not match instance");
    }
    if (evaluate(*inst, rec.solution) != rec.solution.objective) {
      throw std::invalid_argument("certificate: stored objective does not match the assignment");
    }
  }
  return rec;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace bqp
