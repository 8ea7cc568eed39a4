#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "valence/error.hpp"
#include "valence/graph.hpp"

using namespace valence;

namespace {

Graph tree_closure(const std::vector<std::pair<std::string, std::string>>& parent) {
  // comparability graph of a rooted forest: each vertex sees all ancestors
  Graph g;
  std::map<std::string, std::string> up;
  for (const auto& [child, par] : parent) {
    if (!g.find(child)) g.add_vertex(child);
    if (!par.empty()) {
      if (!g.find(par)) g.add_vertex(par);
      up[child] = par;
    }
  }
  for (const auto& [child, par] : up)
    for (auto a = par;; a = up[a]) {
      g.add_edge(child, a);
      if (!up.count(a)) break;
    }
  return g;
}

}  // namespace

TEST_CASE("graph text round trip") {
  auto g = parse_graph("vertex a loop\nvertex b\nedge a b\n");
  REQUIRE(g.size() == 2);
  CHECK(g.looped(0));
  CHECK_FALSE(g.looped(1));
  CHECK(g.adjacent(0, 1));
  CHECK(parse_graph(format_graph(g)) == g);
  CHECK_THROWS_AS(parse_graph("edge a b\n"), Error);
}

TEST_CASE("transitive forest examples") {
  CHECK_FALSE(is_transitive_forest(load_graph(oracle::data("p4.graph"))));
  CHECK_FALSE(is_transitive_forest(load_graph(oracle::data("c4.graph"))));
  CHECK(is_transitive_forest(load_graph(oracle::data("b.graph"))));
  // the two trees of the forest figure
  auto fig = tree_closure({{"a", ""}, {"b", "a"}, {"c", "b"}, {"d", "b"}, {"e", "a"},
                           {"f", "e"}, {"g", "f"}, {"h", "f"}, {"x", ""}, {"y", "x"},
                           {"z", "x"}});
  CHECK(fig.size() == 11);
  CHECK(is_transitive_forest(fig));
  CHECK_FALSE(oracle::has_induced_c4_p4(fig));
}

TEST_CASE("PPN freeness examples") {
  auto ppn = load_graph(oracle::data("ppn.graph"));
  CHECK_FALSE(is_ppn_free(ppn));
  auto w = find_ppn(ppn);
  REQUIRE(w);
  CHECK(ppn.name(w->vertices[0]) == "c");
  CHECK(witness_holds(ppn, *w));
  CHECK(is_ppn_free(graph_from_masks(3, 0, 0b111)));
  CHECK(is_ppn_free(graph_from_masks(3, 0, 0)));
  // a looped centre is not a PPN-graph
  ppn.set_looped(0, true);
  CHECK(is_ppn_free(ppn));
}

TEST_CASE("classification examples") {
  auto c4 = classify(load_graph(oracle::data("c4.graph")));
  CHECK(c4.verdict == Verdict::Undecidable);
  REQUIRE(c4.witness);
  CHECK(c4.witness->shape == InducedShape::C4);
  CHECK(c4.witness->vertices.size() == 4);

  auto bb = classify(load_graph(oracle::data("bb.graph")));
  CHECK(bb.verdict == Verdict::Decidable);
  CHECK(bb.expr == parse_expr("FreeProduct(B, B)"));

  CHECK(classify(load_graph(oracle::data("ppn.graph"))).verdict == Verdict::OpenPPN);
  CHECK(classify(Graph{}).verdict == Verdict::Decidable);
  CHECK(classify(Graph{}).expr == MonoidExpr::power(MonoidExpr::Kind::B, 0));
}

TEST_CASE("decompose examples") {
  auto clique = parse_graph("vertex u\nvertex w loop\nedge u w\n");
  CHECK(format_expr(decompose_dec(clique)) == format_expr(parse_expr("DirectProduct(B, Z)")));
  CHECK(decompose_dec(load_graph(oracle::data("bb.graph"))) == parse_expr("FreeProduct(B,B)"));
  auto hub = parse_graph("vertex h loop\nvertex x\nvertex y\nedge h x\nedge h y\n");
  CHECK(decompose_dec(hub) == parse_expr("DirectProduct(Z, FreeProduct(B,B))"));
  CHECK_THROWS_AS(decompose_dec(load_graph(oracle::data("c4.graph"))), Error);
}

TEST_CASE("expr_to_graph examples") {
  auto b = expr_to_graph(parse_expr("B"));
  REQUIRE(b.size() == 1);
  CHECK_FALSE(b.looped(0));
  auto z = expr_to_graph(parse_expr("Z"));
  REQUIRE(z.size() == 1);
  CHECK(z.looped(0));
  auto bb = expr_to_graph(parse_expr("DirectProduct(B,B)"));
  REQUIRE(bb.size() == 2);
  CHECK(bb.adjacent(0, 1));
  CHECK(expr_to_graph(parse_expr("B^3")).edge_count() == 3);
  CHECK(parse_expr(format_expr(parse_expr("FreeProduct(Z, DirectProduct(B, Z^2))"))) ==
        parse_expr("FreeProduct(Z, DirectProduct(B, Z^2))"));
}

TEST_CASE("transitive forests are the C4/P4-free graphs up to 5 vertices") {
  for (std::size_t n = 0; n <= 5; ++n) {
    std::size_t pairs = n * (n - (n ? 1 : 0)) / 2;
    for (unsigned long long e = 0; e < (1ULL << pairs); ++e) {
      auto g = graph_from_masks(n, 0, e);
      REQUIRE(is_transitive_forest(g) == !oracle::has_induced_c4_p4(g));
    }
  }
}

TEST_CASE("verdicts partition graphs up to 4 vertices with loops") {
  for (std::size_t n = 0; n <= 4; ++n) {
    std::size_t pairs = n * (n - (n ? 1 : 0)) / 2;
    for (unsigned loops = 0; loops < (1U << n); ++loops)
      for (unsigned long long e = 0; e < (1ULL << pairs); ++e) {
        auto g = graph_from_masks(n, loops, e);
        auto c = classify(g);
        bool cp = oracle::has_induced_c4_p4(g);
        bool ppn = oracle::has_ppn(g);
        if (cp) REQUIRE(c.verdict == Verdict::Undecidable);
        else if (ppn) REQUIRE(c.verdict == Verdict::OpenPPN);
        else REQUIRE(c.verdict == Verdict::Decidable);
        if (c.witness) REQUIRE(witness_holds(g, *c.witness));
        if (c.verdict == Verdict::Decidable) REQUIRE(c.expr.leaf_count() == n);
      }
  }
}

TEST_CASE("graph combinators") {
  auto b = load_graph(oracle::data("b.graph"));
  auto u = disjoint_union(b, b);
  CHECK(u.graph.size() == 2);
  CHECK(u.graph.edge_count() == 0);
  CHECK(u.graph.name(u.left[0]) != u.graph.name(u.right[0]));
  auto j = join(b, b);
  CHECK(j.graph.edge_count() == 1);
}
