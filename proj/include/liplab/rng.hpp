#pragma once

#include <cstdint>
#include <limits>
#include <string_view>

namespace liplab {

std::uint64_t mix64(std::uint64_t x);
std::uint64_t hash_label(std::string_view label);
std::uint64_t combine_keys(std::uint64_t a, std::uint64_t b);

// Uniform [0,1) draw that is a pure function of its arguments.
double keyed_uniform(std::uint64_t key, std::uint64_t a, std::uint64_t b = 0);

// Counter-based generator: output i is a hash of (key, i). Streams split by
// label produce independent keys, so draws never depend on call interleaving
// between streams.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed = 0) : key_(mix64(seed ^ 0x6a09e667f3bcc909ULL)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return mix64(key_ ^ mix64(counter_++ + 0x9e3779b97f4a7c15ULL)); }

  Rng split(std::string_view label) const { return from_key(combine_keys(key_, hash_label(label))); }
  Rng split(std::uint64_t index) const { return from_key(combine_keys(key_, mix64(index + 1))); }

  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) { return uniform() < p; }
  // Uniform integer in [0, n); n > 0.
  std::uint64_t below(std::uint64_t n);

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

 private:
  static Rng from_key(std::uint64_t key) {
    Rng r;
    r.key_ = key;
    return r;
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace liplab
