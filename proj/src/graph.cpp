#include "sepkit/graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <sstream>

#include "sepkit/errors.hpp"

namespace sepkit {

Graph::Graph(int n, std::vector<Edge> edges) : n_(n) {
  if (n <= 0) throw DomainError("vertex count must be positive, got " + std::to_string(n));
  for (auto& [a, b] : edges) {
    if (a < 0 || a >= n || b < 0 || b >= n)
      throw DomainError("edge (" + std::to_string(a) + "," + std::to_string(b) + ") out of range [0," +
                        std::to_string(n) + ")");
    if (a == b) throw DomainError("self-loop on vertex " + std::to_string(a));
    if (a > b) std::swap(a, b);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);
  adjacency_.resize(n);
  for (const auto& [a, b] : edges_) {
    adjacency_[a].push_back(b);
    adjacency_[b].push_back(a);
  }
  for (auto& row : adjacency_) std::sort(row.begin(), row.end());
}

bool Graph::has_edge(Vertex a, Vertex b) const {
  if (a < 0 || a >= n_ || b < 0 || b >= n_) return false;
  const auto& row = adjacency_[a];
  return std::binary_search(row.begin(), row.end(), b);
}

Cut::Cut(int n, std::vector<Vertex> members) : n_(n), in_set_(static_cast<std::size_t>(n), 0) {
  if (n <= 0) throw DomainError("cut universe must be positive");
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  for (Vertex v : members) {
    if (v < 0 || v >= n) throw DomainError("cut member " + std::to_string(v) + " out of range");
    in_set_[v] = 1;
  }
  members_ = std::move(members);
}

Cut Cut::from_mask(int n, std::uint64_t mask) {
  std::vector<Vertex> members;
  for (int v = 0; v < n; ++v)
    if (mask >> v & 1u) members.push_back(v);
  return Cut(n, std::move(members));
}

Cut Cut::complement() const {
  std::vector<Vertex> rest;
  for (int v = 0; v < n_; ++v)
    if (!in_set_[v]) rest.push_back(v);
  return Cut(n_, std::move(rest));
}

namespace {

bool is_comment_or_blank(std::string_view line) {
  auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string_view::npos || line[pos] == '#';
}

// Parses exactly `count` integers from `line`; anything else is an error.
std::vector<long long> parse_ints(std::string_view line, std::size_t count, std::size_t lineno) {
  std::istringstream in{std::string(line)};
  std::vector<long long> out;
  long long v;
  while (in >> v) out.push_back(v);
  if (!in.eof()) throw ParseError(lineno, "expected integers, got '" + std::string(line) + "'");
  if (out.size() != count)
    throw ParseError(lineno, "expected " + std::to_string(count) + " integers, got " + std::to_string(out.size()));
  return out;
}

}  // namespace

Graph load_graph(std::string_view text) {
  std::size_t lineno = 0;
  std::optional<std::pair<long long, long long>> header;
  std::vector<Graph::Edge> edges;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    start = end + 1;
    ++lineno;
    if (is_comment_or_blank(line)) continue;
    if (!header) {
      auto h = parse_ints(line, 2, lineno);
      if (h[0] <= 0) throw ParseError(lineno, "vertex count must be positive");
      if (h[1] < 0) throw ParseError(lineno, "edge count must be nonnegative");
      header = {h[0], h[1]};
      continue;
    }
    auto e = parse_ints(line, 2, lineno);
    for (long long v : e)
      if (v < 0 || v >= header->first)
        throw ParseError(lineno, "vertex " + std::to_string(v) + " out of range [0," +
                                     std::to_string(header->first) + ")");
    if (e[0] == e[1]) throw ParseError(lineno, "self-loop on vertex " + std::to_string(e[0]));
    edges.emplace_back(static_cast<Vertex>(e[0]), static_cast<Vertex>(e[1]));
  }
  if (!header) throw ParseError(lineno, "missing 'n m' header");
  // m counts distinct edges; repeated lines are allowed and collapse.
  Graph g(static_cast<int>(header->first), std::move(edges));
  if (static_cast<long long>(g.num_edges()) != header->second)
    throw ParseError(lineno, "declared " + std::to_string(header->second) + " edges, found " +
                                 std::to_string(g.num_edges()) + " distinct");
  return g;
}

Graph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open graph file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return load_graph(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(e.line(), path + ": " + e.message());
  }
}

std::string to_edge_list(const Graph& g) {
  std::ostringstream out;
  out << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (const auto& [a, b] : g.edges()) out << a << ' ' << b << '\n';
  return out.str();
}

std::string convert_dimacs(std::string_view text) {
  std::size_t lineno = 0;
  long long n = -1;
  std::vector<Graph::Edge> edges;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(start, end - start));
    start = end + 1;
    ++lineno;
    std::istringstream in(line);
    std::string tag;
    if (!(in >> tag) || tag == "c") continue;
    if (tag == "p") {
      std::string kind;
      long long m;
      if (!(in >> kind >> n >> m) || n <= 0) throw ParseError(lineno, "malformed problem line");
    } else if (tag == "e" || tag == "a") {
      if (n < 0) throw ParseError(lineno, "edge before problem line");
      long long a, b;
      if (!(in >> a >> b)) throw ParseError(lineno, "malformed edge line");
      if (a < 1 || a > n || b < 1 || b > n)
        throw ParseError(lineno, "vertex out of range [1," + std::to_string(n) + "]");
      if (a == b) continue;  // DIMACS files occasionally carry loops; the edge-list format has none
      edges.emplace_back(static_cast<Vertex>(a - 1), static_cast<Vertex>(b - 1));
    } else {
      throw ParseError(lineno, "unknown line tag '" + tag + "'");
    }
  }
  if (n < 0) throw ParseError(lineno, "missing problem line");
  return to_edge_list(Graph(static_cast<int>(n), std::move(edges)));
}

std::size_t cut_size(const Graph& g, const Cut& s) {
  if (s.universe() != g.num_vertices()) throw DomainError("cut universe does not match graph");
  std::size_t crossing = 0;
  for (const auto& [a, b] : g.edges()) crossing += s.contains(a) != s.contains(b);
  return crossing;
}

Sparsity sparsity(const Graph& g, const Cut& s) {
  if (s.size() == 0 || static_cast<int>(s.size()) == g.num_vertices())
    throw DomainError("sparsity undefined for empty or full side");
  return {cut_size(g, s), s.size()};
}

bool is_c_balanced(int n, std::size_t side, double c) {
  const double k = static_cast<double>(side);
  return c * n < k && k < (1.0 - c) * n;
}

bool is_c_balanced(const Graph& g, const Cut& s, double c) { return is_c_balanced(g.num_vertices(), s.size(), c); }

std::optional<std::pair<int, int>> balanced_size_range(int n, double c) {
  int lo = -1, hi = -1;
  for (int k = 0; k <= n; ++k) {
    if (!is_c_balanced(n, static_cast<std::size_t>(k), c)) continue;
    if (lo < 0) lo = k;
    hi = k;
  }
  if (lo < 0) return std::nullopt;
  return std::pair{lo, hi};
}

void require_balance_feasible(int n, double c) {
  if (!(c > 0.0)) throw DomainError("balance fraction c must be positive");
  if (!balanced_size_range(n, c))
    throw InfeasibleBalanceError("no subset size k satisfies " + std::to_string(c) + "*" + std::to_string(n) +
                                 " < k < (1-c)*" + std::to_string(n));
}

namespace {

// Lexicographic comparison of the sorted member lists encoded by two masks.
bool lex_less(std::uint64_t a, std::uint64_t b) {
  while (a && b) {
    int la = std::countr_zero(a), lb = std::countr_zero(b);
    if (la != lb) return la < lb;
    a &= a - 1;
    b &= b - 1;
  }
  return !a && b;
}

}  // namespace

SeparatorResult exact_balanced_separator(const Graph& g, double c, int cap) {
  const int n = g.num_vertices();
  if (n > cap)
    throw CapError("exact oracle enumerates 2^n subsets; n=" + std::to_string(n) + " exceeds cap " +
                   std::to_string(cap) + " (raise --cap or use a smaller graph)");
  if (n > 62) throw CapError("exact oracle supports at most 62 vertices");
  require_balance_feasible(n, c);

  std::vector<std::uint64_t> adj(n, 0);
  for (const auto& [a, b] : g.edges()) {
    adj[a] |= std::uint64_t{1} << b;
    adj[b] |= std::uint64_t{1} << a;
  }
  const std::uint64_t full = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  std::size_t best = static_cast<std::size_t>(-1);
  std::uint64_t best_mask = 0;
  for (std::uint64_t mask = 1; mask < full; ++mask) {
    if (!is_c_balanced(n, static_cast<std::size_t>(std::popcount(mask)), c)) continue;
    std::size_t crossing = 0;
    for (std::uint64_t rest = mask; rest; rest &= rest - 1)
      crossing += static_cast<std::size_t>(std::popcount(adj[std::countr_zero(rest)] & ~mask & full));
    if (crossing < best || (crossing == best && lex_less(mask, best_mask))) {
      best = crossing;
      best_mask = mask;
    }
  }
  return {Cut::from_mask(n, best_mask), best};
}

std::vector<Cut> enumerate_balanced_cuts(const Graph& g, double c) {
  const int n = g.num_vertices();
  if (n > 30) throw CapError("balanced-cut enumeration supports at most 30 vertices");
  require_balance_feasible(n, c);
  std::vector<Cut> out;
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  for (std::uint64_t mask = 1; mask < full; mask += 2)  // odd masks contain vertex 0
    if (is_c_balanced(n, static_cast<std::size_t>(std::popcount(mask)), c)) out.push_back(Cut::from_mask(n, mask));
  return out;
}

}  // namespace sepkit
