#pragma once

#include <cstdint>
#include <string_view>

namespace ssn {

/// splitmix64 finaliser.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t hash_key(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  return mix64(mix64(mix64(seed) ^ a) + b);
}

/// Seed for a named sub-stream; labels are hashed with FNV-1a.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view label) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return hash_key(master, h);
}

inline double to_unit(std::uint64_t x) { return static_cast<double>(x >> 11) * 0x1.0p-53; }

/// Counter-based stream: value k is a pure function of (key, k).
class Stream {
 public:
  explicit Stream(std::uint64_t key = 0) : key_(key) {}
  Stream(std::uint64_t seed, std::uint64_t label) : key_(hash_key(seed, label)) {}

  std::uint64_t at(std::uint64_t index) const { return hash_key(key_, index); }
  double uniform_at(std::uint64_t index) const { return to_unit(at(index)); }

  std::uint64_t next() { return at(counter_++); }
  double uniform() { return to_unit(next()); }
  std::uint64_t below(std::uint64_t n) { return static_cast<std::uint64_t>(uniform() * static_cast<double>(n)) % n; }

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }
  void seek(std::uint64_t counter) { counter_ = counter; }

  // UniformRandomBitGenerator interface.
  using result_type = std::uint64_t;
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()() { return next(); }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace ssn
