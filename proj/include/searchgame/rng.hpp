#pragma once

#include <cstdint>
#include <random>

namespace searchgame {

// splitmix64: cheap, well-mixed stream used for per-trial / per-instance
// stream derivation so results do not depend on scheduling.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_stream(std::uint64_t master, std::uint64_t index) {
  std::uint64_t s = master ^ (0x9e3779b97f4a7c15ULL * (index + 1));
  splitmix64(s);
  return splitmix64(s);
}

/// Deterministic uniform generator. Doubles are built from raw 64-bit draws
/// so outputs are identical across standard libraries.
struct Rng {
  std::mt19937_64 engine;

  explicit Rng(std::uint64_t seed) : engine(seed) {}

  double uniform() {  // [0,1)
    return static_cast<double>(engine() >> 11) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  long long uniform_int(long long lo, long long hi) {  // inclusive
    auto span = static_cast<unsigned long long>(hi - lo + 1);
    auto draw = static_cast<long long>(
        static_cast<unsigned long long>(uniform() * static_cast<double>(span)));
    if (draw > hi - lo) draw = hi - lo;
    return lo + draw;
  }
};

}  // namespace searchgame
