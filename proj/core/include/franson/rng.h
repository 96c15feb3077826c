#pragma once

#include <cstdint>
#include <limits>

namespace franson {

// Identifies which part of the simulation a random stream feeds. Streams for
// different tags never share draws, so adding a detector or reordering scan
// points leaves every other stream untouched.
enum class StreamTag : std::uint64_t {
  kEmission = 1,
  kCoupler = 2,
  kFiber = 3,
  kInterferometer = 4,
  kDetector = 5,
  kElectronics = 6,
  kBootstrap = 7,
  kSynthetic = 8,
};

// Counter-based splittable generator. The key is a hash of
// (seed, tag, entity, sub); draw n is mix(key + n * golden_gamma), i.e. a
// SplitMix64 sequence whose starting point is fixed by the key. Any draw can
// be recomputed from the key and its index alone.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t seed, StreamTag tag, std::uint64_t entity,
            std::uint64_t sub = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()() { return next_u64(); }

  std::uint64_t next_u64();
  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Ziggurat samplers from Boost.Random.
  double exponential(double mean);
  double normal();
  bool bernoulli(double p);

  std::uint64_t key() const { return key_; }
  std::uint64_t draws() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

std::uint64_t mix64(std::uint64_t x);

}  // namespace franson
