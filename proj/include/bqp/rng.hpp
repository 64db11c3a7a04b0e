#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

namespace bqp {

/// Repository-wide random source.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The standard distributions are not, so every derived quantity
/// (bounded integers, uniforms, normals, shuffles) is computed here with
/// explicit arithmetic. Together this makes seeded runs reproducible across
/// compilers and platforms.
///
/// Substreams are derived from a master seed with SplitMix64 mixing, so that
/// e.g. instance degrees, edges and weights consume independent streams.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix(seed)) {}

  /// Independent stream for (seed, stream id).
  static Rng derive(std::uint64_t seed, std::uint64_t stream) {
    return Rng(mix(seed ^ mix(stream + 0x632be59bd9b4e019ULL)));
  }
  static Rng derive(std::uint64_t seed, std::string_view tag) {
    return derive(seed, hash_tag(tag));
  }

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound);

  /// Uniform integer in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi);

  /// Uniform double in (0, 1); never returns exactly 0 or 1.
  double uniform01();

  bool bernoulli(double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return uniform01() < p;
  }

  /// Normal deviate by inverse CDF of one uniform draw.
  double normal(double mean, double stddev);

  /// Normal deviate rounded half away from zero.
  std::int64_t normal_int(double mean, double stddev);

  /// k distinct values from [0, n) via partial Fisher-Yates, in draw order.
  std::vector<std::size_t> sample(std::size_t n, std::size_t k);

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = below(i);
      std::swap(items[i - 1], items[j]);
    }
  }

  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  static std::uint64_t hash_tag(std::string_view tag) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : tag) {
      h ^= ch;
      h *= 0x100000001b3ULL;
    }
    return h;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace bqp
