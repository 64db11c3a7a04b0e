#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bqp/core.hpp"

namespace bqp::cli {

/// One line of the store: digest, name, objective, x bits, y bits,
/// algorithm, seed and UTC timestamp, separated by tabs.
struct BestKnownRecord {
  std::string digest;
  std::string name;
  Weight objective = 0;
  BitVector x;
  BitVector y;
  std::string alg;
  std::uint64_t seed = 0;
  std::string timestamp;

  bool operator==(const BestKnownRecord&) const = default;
};

std::string format_record(const BestKnownRecord& record);
/// Throws std::invalid_argument on a malformed line.
BestKnownRecord parse_record(std::string_view line);

/// Append-only file of best-known solutions. Appends are serialized with an
/// exclusive file lock and happen only on strict improvement.
class BestKnownStore {
 public:
  explicit BestKnownStore(std::filesystem::path path);

  const std::filesystem::path& path() const { return path_; }

  /// All records in file order; a missing file reads as empty.
  std::vector<BestKnownRecord> records() const;

  /// Best record for the instance. Throws std::runtime_error when a stored
  /// certificate fails to re-evaluate to its objective.
  std::optional<BestKnownRecord> best(const Instance& inst) const;

  /// Appends the solution iff it verifies and strictly beats the stored best.
  /// Returns whether a record was written. Throws std::invalid_argument when
  /// the solution's cached objective is wrong.
  bool update(const Instance& inst, const Solution& sol, std::string_view alg,
              std::uint64_t seed);

 private:
  std::filesystem::path path_;
};

}  // namespace bqp::cli
