#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace sepkit {

using Rng = std::mt19937_64;

// Deterministic child seed for (stream, index) under a root seed (SplitMix64 finaliser).
constexpr std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream, std::uint64_t index = 0) {
  std::uint64_t z = root ^ (stream * 0x9e3779b97f4a7c15ULL) ^ (index * 0xbf58476d1ce4e5b9ULL + 0x94d049bb133111ebULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Uniform direction on the unit sphere in R^d: d standard normals, normalised.
std::vector<double> random_unit_vector(int d, Rng& rng);

}  // namespace sepkit
