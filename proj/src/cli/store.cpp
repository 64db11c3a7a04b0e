#include "bqp/cli/store.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <charconv>
#include <chrono>
#include <ctime>
#include <sstream>
#include <stdexcept>

#include "bqp/testbed.hpp"

namespace bqp::cli {

namespace {

std::string bits_text(const BitVector& bits) {
  std::string out;
  out.reserve(bits.size());
  for (auto b : bits) out.push_back(b ? '1' : '0');
  return out;
}

BitVector parse_bits(std::string_view text) {
  BitVector bits;
  bits.reserve(text.size());
  for (char ch : text) {
    if (ch != '0' && ch != '1') throw std::invalid_argument("store: bad bit string");
    bits.push_back(ch == '1' ? 1 : 0);
  }
  return bits;
}

template <typename T>
T parse_number(std::string_view text, const char* what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument(std::string("store: bad ") + what);
  }
  return value;
}

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  ::gmtime_r(&now, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

std::vector<BestKnownRecord> parse_all(std::string_view text) {
  std::vector<BestKnownRecord> records;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    if (!line.empty()) records.push_back(parse_record(line));
    pos = end + 1;
  }
  return records;
}

std::optional<BestKnownRecord> best_of(const std::vector<BestKnownRecord>& records,
                                       const Instance& inst) {
  const std::string digest = instance_digest(inst);
  std::optional<BestKnownRecord> best;
  for (const auto& record : records) {
    if (record.digest != digest) continue;
    if (record.x.size() != inst.rows() || record.y.size() != inst.cols() ||
        evaluate(inst, record.x, record.y) != record.objective) {
      throw std::runtime_error("store: record for " + digest + " fails verification");
    }
    if (!best || record.objective > best->objective) best = record;
  }
  return best;
}

class FileLock {
 public:
  explicit FileLock(const std::filesystem::path& path)
      : fd_(::open(path.c_str(), O_RDWR | O_CREAT | O_APPEND, 0644)) {
    if (fd_ < 0) throw std::runtime_error("store: cannot open " + path.string());
    if (::flock(fd_, LOCK_EX) != 0) {
      ::close(fd_);
      throw std::runtime_error("store: cannot lock " + path.string());
    }
  }
  ~FileLock() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;

  std::string read_all() const {
    std::string text;
    char buffer[4096];
    off_t offset = 0;
    for (;;) {
      const ssize_t got = ::pread(fd_, buffer, sizeof buffer, offset);
      if (got < 0) throw std::runtime_error("store: read failed");
      if (got == 0) break;
      text.append(buffer, static_cast<std::size_t>(got));
      offset += got;
    }
    return text;
  }

  void append(std::string_view text) const {
    std::size_t done = 0;
    while (done < text.size()) {
      const ssize_t put = ::write(fd_, text.data() + done, text.size() - done);
      if (put < 0) throw std::runtime_error("store: write failed");
      done += static_cast<std::size_t>(put);
    }
    ::fsync(fd_);
  }

 private:
  int fd_;
};

}  // namespace

std::string format_record(const BestKnownRecord& r) {
  for (const std::string* field : {&r.digest, &r.name, &r.alg, &r.timestamp}) {
    if (field->find_first_of("\t\n") != std::string::npos) {
      throw std::invalid_argument("store: field contains a tab or newline");
    }
  }
  std::ostringstream out;
  out << r.digest << '\t' << r.name << '\t' << r.objective << '\t' << bits_text(r.x) << '\t'
      << bits_text(r.y) << '\t' << r.alg << '\t' << r.seed << '\t' << r.timestamp;
  return out.str();
}

BestKnownRecord parse_record(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  for (;;) {
    const std::size_t tab = line.find('\t', pos);
    fields.push_back(line.substr(pos, tab == std::string_view::npos ? std::string_view::npos : tab - pos));
    if (tab == std::string_view::npos) break;
    pos = tab + 1;
  }
  if (fields.size() != 8) throw std::invalid_argument("store: expected 8 fields");
  BestKnownRecord r;
  r.digest = fields[0];
  r.name = fields[1];
  r.objective = parse_number<Weight>(fields[2], "objective");
  r.x = parse_bits(fields[3]);
  r.y = parse_bits(fields[4]);
  r.alg = fields[5];
  r.seed = parse_number<std::uint64_t>(fields[6], "seed");
  r.timestamp = fields[7];
  if (r.digest.empty()) throw std::invalid_argument("store: empty digest");
  return r;
}

BestKnownStore::BestKnownStore(std::filesystem::path path) : path_(std::move(path)) {}

std::vector<BestKnownRecord> BestKnownStore::records() const {
  if (!std::filesystem::exists(path_)) return {};
  return parse_all(read_text_file(path_));
}

std::optional<BestKnownRecord> BestKnownStore::best(const Instance& inst) const {
  return best_of(records(), inst);
}

bool BestKnownStore::update(const Instance& inst, const Solution& sol, std::string_view alg,
                            std::uint64_t seed) {
  if (evaluate(inst, sol) != sol.objective) {
    throw std::invalid_argument("store: solution objective does not verify");
  }
  FileLock lock(path_);
  const auto current = best_of(parse_all(lock.read_all()), inst);
  if (current && sol.objective <= current->objective) return false;
  BestKnownRecord record{instance_digest(inst), instance_name(inst), sol.objective, sol.x, sol.y,
                         std::string(alg), seed, utc_now()};
  lock.append(format_record(record) + "\n");
  return true;
}

}  // namespace bqp::cli
