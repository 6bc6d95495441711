#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "corpus.hpp"
#include "sepkit/errors.hpp"
#include "sepkit/graph.hpp"

using namespace sepkit;

TEST_CASE("load_graph reads an edge list") {
  const Graph g = load_graph("4 4\n0 1\n1 2\n2 3\n3 0");
  CHECK(g.num_vertices() == 4);
  CHECK(g.num_edges() == 4);
  CHECK(g.has_edge(3, 0));
  CHECK(g.has_edge(0, 3));
  CHECK_FALSE(g.has_edge(0, 2));
}

TEST_CASE("duplicate edges collapse") {
  const Graph g = load_graph("2 1\n0 1\n0 1");
  CHECK(g.num_edges() == 1);
  CHECK(load_graph("2 1\n1 0\n0 1").num_edges() == 1);
  // The header counts distinct edges.
  CHECK_THROWS_AS(load_graph("3 2\n0 1\n1 0"), ParseError);
}

TEST_CASE("comments and blank lines are skipped") {
  const Graph g = load_graph("# triangle\n3 3\n\n0 1\n1 2\n2 0\n");
  CHECK(g.num_edges() == 3);
}

TEST_CASE("parse errors carry the line number") {
  auto line_of = [](std::string_view text) -> std::size_t {
    try {
      load_graph(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("3 1\n0 5") == 2);
  CHECK(line_of("3 2\n0 1\n1 1") == 3);
  CHECK(line_of("3 1\n0 x") == 2);
  CHECK(line_of("3 1\n0 1 2") == 2);
  CHECK_THROWS_AS(load_graph(""), ParseError);
  CHECK_THROWS_WITH_AS(load_graph("3 1\n0 5"), doctest::Contains("5"), ParseError);
}

TEST_CASE("load_graph_file reports missing files as IoError") {
  CHECK_THROWS_AS(load_graph_file("/nonexistent/graph.txt"), IoError);
}

TEST_CASE("edge list serialisation round-trips") {
  const Graph g = corpus::petersen_induced(10);
  const Graph h = load_graph(to_edge_list(g));
  CHECK(h.num_vertices() == 10);
  CHECK(h.num_edges() == 15);
  for (auto [a, b] : g.edges()) CHECK(h.has_edge(a, b));
}

TEST_CASE("convert_dimacs shifts to zero-based ids") {
  const std::string text = "c comment\np edge 3 2\ne 1 2\ne 2 3\n";
  const Graph g = load_graph(convert_dimacs(text));
  CHECK(g.num_vertices() == 3);
  CHECK(g.has_edge(0, 1));
  CHECK(g.has_edge(1, 2));
  CHECK_THROWS_AS(convert_dimacs("p edge 2 1\ne 1 3\n"), ParseError);
  CHECK_THROWS_AS(convert_dimacs("e 1 2\n"), ParseError);
}

TEST_CASE("cut_size") {
  const Graph c4 = corpus::cycle(4);
  CHECK(cut_size(c4, Cut(4, {0, 1})) == 2);
  CHECK(cut_size(c4, Cut(4, {})) == 0);
  CHECK(cut_size(c4, Cut(4, {0, 2})) == 4);
  CHECK_THROWS_AS(cut_size(c4, Cut(5, {0})), DomainError);
}

TEST_CASE("cut_size is symmetric and matches the oracle") {
  for (const auto& [name, g] : corpus::fixed_corpus()) {
    const int n = g.num_vertices();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); mask += 7) {
      const Cut s = Cut::from_mask(n, mask);
      CHECK(cut_size(g, s) == static_cast<std::size_t>(corpus::crossing(g, mask)));
      CHECK(cut_size(g, s) == cut_size(g, s.complement()));
    }
  }
}

TEST_CASE("sparsity") {
  const Graph star = corpus::complete_bipartite(1, 3);
  CHECK(sparsity(star, Cut(4, {1})).value() == 1.0);
  const Graph c4 = corpus::cycle(4);
  CHECK(sparsity(c4, Cut(4, {0, 1})).value() == 1.0);
  CHECK(sparsity(c4, Cut(4, {0})).value() == 2.0);
  CHECK_THROWS_AS(sparsity(c4, Cut(4, {})), DomainError);
  CHECK_THROWS_AS(sparsity(c4, Cut(4, {0, 1, 2, 3})), DomainError);
}

TEST_CASE("sparsity times side size equals cut size") {
  const Graph g = corpus::gnp(9, 0.5, 5);
  for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << 9); ++mask) {
    const Cut s = Cut::from_mask(9, mask);
    const Sparsity sp = sparsity(g, s);
    CHECK(sp.cut_edges == cut_size(g, s));
    CHECK(sp.side_size == s.size());
  }
}

TEST_CASE("is_c_balanced uses strict bounds") {
  CHECK(is_c_balanced(4, 2, 0.25));
  CHECK_FALSE(is_c_balanced(4, 1, 0.25));
  CHECK_FALSE(is_c_balanced(4, 3, 0.25));
  CHECK(is_c_balanced(3, 1, 0.25));
  CHECK(is_c_balanced(3, 2, 0.25));
  const auto range = balanced_size_range(10, 0.25);
  REQUIRE(range);
  CHECK(range->first == 3);
  CHECK(range->second == 7);
  CHECK_FALSE(balanced_size_range(2, 0.6));
  CHECK_THROWS_AS(require_balance_feasible(2, 0.6), InfeasibleBalanceError);
}

TEST_CASE("exact_balanced_separator examples") {
  const auto c4 = exact_balanced_separator(corpus::cycle(4), 0.25);
  CHECK(c4.value == 2);
  CHECK(std::vector<Vertex>(c4.cut.members().begin(), c4.cut.members().end()) == std::vector<Vertex>{0, 1});
  CHECK(exact_balanced_separator(corpus::complete(4), 0.25).value == 4);
  const auto p3 = exact_balanced_separator(corpus::path(3), 0.25);
  CHECK(p3.value == 1);
  CHECK(std::vector<Vertex>(p3.cut.members().begin(), p3.cut.members().end()) == std::vector<Vertex>{0});
}

TEST_CASE("exact_balanced_separator agrees with brute force on the corpus") {
  for (const auto& [name, g] : corpus::fixed_corpus()) {
    CAPTURE(name);
    for (double c : {0.1, 0.25, 0.4}) {
      if (!balanced_size_range(g.num_vertices(), c)) continue;
      const auto r = exact_balanced_separator(g, c);
      CHECK(static_cast<int>(r.value) == corpus::brute_force_alpha(g, c));
      CHECK(is_c_balanced(g, r.cut, c));
      CHECK(cut_size(g, r.cut) == r.value);
    }
  }
}

TEST_CASE("exact_balanced_separator errors") {
  CHECK_THROWS_AS(exact_balanced_separator(corpus::cycle(25), 0.25), CapError);
  CHECK_NOTHROW(exact_balanced_separator(corpus::cycle(21), 0.25, 21));
  CHECK_THROWS_AS(exact_balanced_separator(corpus::path(2), 0.6), InfeasibleBalanceError);
}

TEST_CASE("enumerate_balanced_cuts lists one side of every admissible split") {
  // n=6, c=1/4: sizes 2..4, so C(6,2)+C(6,3)+C(6,4) subsets, half containing 0.
  const auto cuts = enumerate_balanced_cuts(corpus::cycle(6), 0.25);
  CHECK(cuts.size() == (15 + 20 + 15) / 2);
  for (const Cut& s : cuts) {
    CHECK(s.contains(0));
    CHECK(is_c_balanced(6, s.size(), 0.25));
  }
}

TEST_CASE("Graph constructor rejects bad edges") {
  CHECK_THROWS_AS(Graph(3, {{0, 3}}), DomainError);
  CHECK_THROWS_AS(Graph(3, {{1, 1}}), DomainError);
  CHECK_THROWS_AS(Graph(0, {}), DomainError);
}
