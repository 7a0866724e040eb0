#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace selfish {

/// SplitMix64 finalizer; derives well-separated stream seeds from one base.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Named streams split off a run's base seed.
enum class Stream : std::uint64_t { MinerIdentity = 1, TieChoice = 2 };

/// mt19937_64 with platform-independent conversions to [0, 1) and to
/// exponential variates (the std distributions are implementation-defined).
class Rng {
 public:
  Rng(std::uint64_t seed, Stream stream)
      : engine_(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(stream)))) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) { return uniform() < p; }
  double exponential(double rate) { return -std::log1p(-uniform()) / rate; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace selfish
