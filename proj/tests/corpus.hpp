#pragma once

// Test graphs and oracles written independently of the library code paths
// they check.

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "sepkit/graph.hpp"

namespace corpus {

using sepkit::Graph;
using Edges = std::vector<Graph::Edge>;

inline Graph cycle(int n) {
  Edges e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph(n, e);
}

inline Graph path(int n) {
  Edges e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph(n, e);
}

inline Graph complete(int n) {
  Edges e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return Graph(n, e);
}

inline Graph complete_bipartite(int a, int b) {
  Edges e;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) e.emplace_back(i, a + j);
  return Graph(a + b, e);
}

// Outer 5-cycle 0..4, spokes i -- i+5, inner pentagram on 5..9.
inline Edges petersen_edges() {
  Edges e;
  for (int i = 0; i < 5; ++i) {
    e.emplace_back(i, (i + 1) % 5);
    e.emplace_back(i, i + 5);
    e.emplace_back(5 + i, 5 + (i + 2) % 5);
  }
  return e;
}

// Subgraph of the Petersen graph induced on vertices 0..k-1.
inline Graph petersen_induced(int k) {
  Edges e;
  for (auto [a, b] : petersen_edges())
    if (a < k && b < k) e.emplace_back(a, b);
  return Graph(k, e);
}

inline Graph gnp(int n, double prob, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(prob);
  Edges e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng)) e.emplace_back(i, j);
  return Graph(n, e);
}

struct Named {
  std::string name;
  Graph graph;
};

// The fixed soundness corpus: small named graphs, induced Petersen
// subgraphs, and ten seeded G(n, 1/2) with n cycling through 6, 8, 10.
inline std::vector<Named> fixed_corpus() {
  std::vector<Named> out = {
      {"C4", cycle(4)},           {"C6", cycle(6)},
      {"C8", cycle(8)},           {"P5", path(5)},
      {"K4", complete(4)},        {"K5", complete(5)},
      {"K33", complete_bipartite(3, 3)},
      {"Petersen[0..7]", petersen_induced(8)},
      {"Petersen[0..8]", petersen_induced(9)},
      {"Petersen", petersen_induced(10)},
  };
  const int sizes[] = {6, 8, 10};
  for (int k = 0; k < 10; ++k) {
    const int n = sizes[k % 3];
    out.push_back({"G(" + std::to_string(n) + ",0.5)#" + std::to_string(k), gnp(n, 0.5, 1000 + k)});
  }
  return out;
}

// Crossing edges of the subset encoded by mask.
inline int crossing(const Graph& g, std::uint64_t mask) {
  int count = 0;
  for (auto [a, b] : g.edges()) count += static_cast<int>(((mask >> a) & 1) != ((mask >> b) & 1));
  return count;
}

// min crossing over subsets S with cn < |S| < (1 - c)n; -1 when none.
inline int brute_force_alpha(const Graph& g, double c) {
  const int n = g.num_vertices();
  int best = -1;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    int k = 0;
    for (int v = 0; v < n; ++v) k += static_cast<int>((mask >> v) & 1);
    if (!(c * n < k && k < (1.0 - c) * n)) continue;
    const int value = crossing(g, mask);
    if (best < 0 || value < best) best = value;
  }
  return best;
}

}  // namespace corpus
