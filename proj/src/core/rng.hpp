#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace crowdship {

using Rng = std::mt19937_64;

// Derives an independent stream seed from a base seed and a path of labels, so
// that consumers (arrivals, solvers, relocation) never share draws.
inline std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
  auto splitmix = [](std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  };
  std::uint64_t h = splitmix(seed);
  for (std::uint64_t v : path) h = splitmix(h ^ splitmix(v + 0x632be59bd9b4e019ULL));
  return h;
}

inline double uniform01(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

}  // namespace crowdship
