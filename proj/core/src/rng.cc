#include "franson/rng.h"

#include <boost/random/exponential_distribution.hpp>
#include <boost/random/normal_distribution.hpp>

namespace franson {

namespace {

constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

}  // namespace

std::uint64_t mix64(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

RngStream::RngStream(std::uint64_t seed, StreamTag tag, std::uint64_t entity,
                     std::uint64_t sub) {
  std::uint64_t h = mix64(seed + kGoldenGamma);
  h = mix64(h ^ (static_cast<std::uint64_t>(tag) * 0xD6E8FEB86659FD93ULL));
  h = mix64(h ^ (entity + 0xA0761D6478BD642FULL));
  h = mix64(h ^ (sub * 0xE7037ED1A0B428DBULL + 1));
  key_ = h;
}

std::uint64_t RngStream::next_u64() {
  ++counter_;
  return mix64(key_ + counter_ * kGoldenGamma);
}

double RngStream::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::exponential(double mean) {
  return mean * boost::random::exponential_distribution<double>(1.0)(*this);
}

double RngStream::normal() {
  return boost::random::normal_distribution<double>(0.0, 1.0)(*this);
}

bool RngStream::bernoulli(double p) {
  if (p >= 1.0) return true;
  if (p <= 0.0) return false;
  return uniform() < p;
}

}  // namespace franson
