#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sepkit {

using Vertex = int;

// Undirected simple graph. Edges are stored once with first < second, sorted.
class Graph {
 public:
  using Edge = std::pair<Vertex, Vertex>;

  // Throws DomainError on self-loops or out-of-range endpoints; duplicates and
  // reversed pairs are collapsed.
  Graph(int n, std::vector<Edge> edges);

  int num_vertices() const noexcept { return n_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const Vertex> neighbors(Vertex v) const noexcept { return adjacency_[v]; }
  bool has_edge(Vertex a, Vertex b) const;

 private:
  int n_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adjacency_;
};

// A vertex subset S of a graph with n vertices; the complement is implied.
class Cut {
 public:
  Cut(int n, std::vector<Vertex> members);
  static Cut from_mask(int n, std::uint64_t mask);

  int universe() const noexcept { return n_; }
  std::size_t size() const noexcept { return members_.size(); }
  std::span<const Vertex> members() const noexcept { return members_; }
  bool contains(Vertex v) const noexcept { return in_set_[v] != 0; }
  Cut complement() const;

  friend bool operator==(const Cut&, const Cut&) = default;

 private:
  int n_;
  std::vector<Vertex> members_;
  std::vector<char> in_set_;
};

// |E(S, S̄)| / |S| kept as an exact ratio.
struct Sparsity {
  std::size_t cut_edges;
  std::size_t side_size;
  double value() const noexcept { return static_cast<double>(cut_edges) / static_cast<double>(side_size); }
};

struct SeparatorResult {
  Cut cut;
  std::size_t value;
};

inline constexpr int kDefaultBruteForceCap = 20;

Graph load_graph(std::string_view text);
Graph load_graph_file(const std::string& path);
std::string to_edge_list(const Graph& g);

// DIMACS ("p edge n m" / "e u v", 1-based) to the edge-list document.
std::string convert_dimacs(std::string_view dimacs_text);

std::size_t cut_size(const Graph& g, const Cut& s);
Sparsity sparsity(const Graph& g, const Cut& s);

// cn < |S| < (1-c)n, strict on both sides.
bool is_c_balanced(int n, std::size_t side, double c);
bool is_c_balanced(const Graph& g, const Cut& s, double c);

// Smallest and largest admissible side sizes, or nullopt when none exists.
std::optional<std::pair<int, int>> balanced_size_range(int n, double c);
void require_balance_feasible(int n, double c);

// Exhaustive minimum over all c-balanced subsets. Ties resolve to the
// lexicographically smallest sorted member list.
SeparatorResult exact_balanced_separator(const Graph& g, double c, int cap = kDefaultBruteForceCap);

// Every c-balanced subset that contains vertex 0 (one representative per
// {S, S̄} pair), in increasing mask order. Requires n <= 30.
std::vector<Cut> enumerate_balanced_cuts(const Graph& g, double c);

}  // namespace sepkit
