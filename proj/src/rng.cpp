#include "bqp/rng.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include <boost/math/special_functions/erf.hpp>

namespace bqp {

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::below: bound must be positive");
  // Rejection sampling on the top of the range keeps the result unbiased.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t r = next();
  while (r >= limit) r = next();
  return r % bound;
}

std::int64_t Rng::between(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw std::invalid_argument("Rng::between: empty range");
  const auto span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(next());
  return lo + static_cast<std::int64_t>(below(span));
}

double Rng::uniform01() {
  // 53 random bits, centred in their cell: (k + 0.5) / 2^53.
  const std::uint64_t k = next() >> 11;
  return (static_cast<double>(k) + 0.5) * 0x1.0p-53;
}

double Rng::normal(double mean, double stddev) {
  const double u = uniform01();
  const double z = -std::sqrt(2.0) * boost::math::erfc_inv(2.0 * u);
  return mean + stddev * z;
}

std::int64_t Rng::normal_int(double mean, double stddev) {
  return static_cast<std::int64_t>(std::round(normal(mean, stddev)));
}

std::vector<std::size_t> Rng::sample(std::size_t n, std::size_t k) {
  if (k > n) throw std::invalid_argument("Rng::sample: k exceeds population");
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t j = i + below(n - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

}  // namespace bqp
