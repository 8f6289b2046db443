#ifndef DOFCOUNT_RANDOM_HPP
#define DOFCOUNT_RANDOM_HPP

#include <cstdint>
#include <random>

#include "dofcount/error.hpp"

namespace dofcount {

/// splitmix64 finalizer; used to derive child stream ids from a parent id.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t child_stream(std::uint64_t parent, std::uint64_t index) noexcept {
  return mix64(mix64(parent) ^ (index + 0x632be59bd9b4e019ULL));
}

/// A reproducible random source keyed by (seed, stream id). Two streams with
/// the same key produce the same draws; different ids give unrelated draws.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream_id)
      : seed_(seed), stream_id_(stream_id), engine_(make_engine(seed, stream_id)) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  /// A new stream sharing this seed, keyed off this stream's id.
  RandomStream child(std::uint64_t index) const {
    return RandomStream(seed_, child_stream(stream_id_, index));
  }

  /// Uniform in [0, bound).
  std::uint64_t uniform_index(std::uint64_t bound) {
    if (bound == 0) {
      throw Error(ErrorCode::InvalidArgument, "uniform_index bound must be positive");
    }
    return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(engine_);
  }

  /// Uniform in [lo, hi].
  std::uint64_t uniform_between(std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(engine_);
  }

  /// Uniform in [0, 1).
  double uniform01() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }

  double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }

 private:
  static std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t id) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(id), static_cast<std::uint32_t>(id >> 32)};
    return std::mt19937_64(seq);
  }

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
};

}  // namespace dofcount

#endif  // DOFCOUNT_RANDOM_HPP
