#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "valence/constructions.hpp"
#include "valence/error.hpp"

using namespace valence;

namespace {

Word w(const std::string& s) {
  Word out;
  for (char c : s) out.push_back(std::string(1, c));
  return out;
}

// Words over the generator names of g that represent the identity.
WordSet identity_words(const Graph& g, std::size_t max_len) {
  std::vector<std::string> gens;
  for (const auto& n : g.names()) gens.push_back(n + "+"), gens.push_back(n + "-");
  WordSet out;
  for (const auto& x : oracle::all_words(gens, max_len)) {
    MonoidWord m;
    for (const auto& s : x)
      m.push_back({static_cast<std::uint32_t>(g.index(s.substr(0, s.size() - 1))), s.back() == '-'});
    if (oracle::free_identity(g, m)) out.insert(x);
  }
  return out;
}

}  // namespace

TEST_CASE("free product grammar over two bicyclic monoids") {
  auto b = load_graph(oracle::data("b.graph"));
  auto g = freeproduct_grammar(identity_automaton(b), identity_automaton(b));
  auto u = disjoint_union(b, b).graph;
  auto e = generate(g, 4, 60, 10);
  CHECK(e.complete);
  CHECK(e.words == identity_words(u, 4));
}

TEST_CASE("free product grammar over Z and B") {
  auto z = load_graph(oracle::data("z.graph"));
  auto b = load_graph(oracle::data("b.graph"));
  auto g = freeproduct_grammar(identity_automaton(z), identity_automaton(b));
  auto u = disjoint_union(z, b);
  auto zv = u.graph.name(u.left[0]), bv = u.graph.name(u.right[0]);
  auto e = generate(g, 4, 60, 10);
  CHECK(e.words.count(Word{zv + "-", zv + "+"}));
  CHECK_FALSE(e.words.count(Word{bv + "-", bv + "+"}));
  CHECK(e.words == identity_words(u.graph, 4));
}

TEST_CASE("free product grammar over trivial monoids") {
  auto g = freeproduct_grammar(identity_automaton(Graph{}), identity_automaton(Graph{}));
  CHECK(generate(g, 4, 40, 4).words == WordSet{Word{}});
}

TEST_CASE("algebraic extension examples") {
  auto anbn = to_valence_grammar(load_cfg(oracle::data("anbn.cfg")));
  auto a = grammar_to_valence(anbn);
  auto e = enumerate_bounded(a, 6, 200, 40);
  CHECK(e.complete);
  CHECK(e.words == WordSet{{}, w("ab"), w("aabb"), w("aaabbb")});

  auto eps = to_valence_grammar(parse_cfg("start: S\nS -> -\n"));
  CHECK(enumerate_bounded(grammar_to_valence(eps), 4, 40, 10).words == WordSet{Word{}});

  // right-hand side a^n S b^n (n >= 1) over B
  auto vg = parse_valence_grammar(R"(start: S
S -> c
S -> @automaton {
  states: p p1 q r
  init: p
  final: r
  graph {
    vertex v
  }
  edge p p1 in=a m="v+"
  edge p1 p1 in=a m="v+"
  edge p1 q in=S
  edge q r in=-
  edge r r in=b m="v-"
}
)");
  auto direct = generate(vg, 7, 80, 10);
  auto via = enumerate_bounded(grammar_to_valence(vg), 7, 300, 40);
  CHECK(via.complete);
  CHECK(via.words == direct.words);
  CHECK(via.words.count(w("aacbb")));
  CHECK_FALSE(via.words.count(w("acbb")));
}

TEST_CASE("brackets balance in every accepted word") {
  auto g = to_valence_grammar(load_cfg(oracle::data("dyck_cnf.cfg")));
  auto e = enumerate_bounded(grammar_to_valence(g, true), 10, 400, 40);
  REQUIRE(e.complete);
  REQUIRE_FALSE(e.words.empty());
  for (const auto& x : e.words) {
    Word br;
    for (const auto& s : x)
      if (s == "[" || s == "]") br.push_back(s);
    REQUIRE(oracle::semi_dyck(br, "[", "]"));
  }
}

TEST_CASE("B-power embedding") {
  auto g = parse_graph("vertex p\nvertex q\nvertex m\n");
  auto e = bpowers_embedding(g, "p", "q");
  auto r = e.graph.name(e.r), m = e.graph.name(e.m);
  CHECK(m == "m");
  auto pp = bpowers_apply(e, parse_monoid_word("p+ p-", g));
  CHECK(format_monoid_word(pp, e.graph) == r + "+ " + r + "+ " + r + "- " + r + "-");
  CHECK(is_identity(e.graph, pp));
  auto qp = parse_monoid_word("q+ p-", g);
  CHECK(format_monoid_word(bpowers_apply(e, qp), e.graph) ==
        r + "+ m+ " + r + "+ " + r + "- " + r + "-");
  CHECK_FALSE(is_identity(g, qp));
  CHECK_FALSE(is_identity(e.graph, bpowers_apply(e, qp)));
  // the map preserves identity on every short word
  std::vector<std::string> gens{"p+", "p-", "q+", "q-", "m+", "m-"};
  for (const auto& x : oracle::all_words(gens, 4)) {
    std::string text;
    for (const auto& s : x) text += s + " ";
    auto mw = parse_monoid_word(x.empty() ? "-" : text, g);
    REQUIRE(is_identity(g, mw) == is_identity(e.graph, bpowers_apply(e, mw)));
  }

  auto a = parse_automaton(R"(states: s t
init: s
final: s t
graph {
  vertex p
  vertex q
  vertex m
}
edge s s in=a m="p+"
edge s t in=b m="p-"
edge t t in=b m="p-"
)");
  CHECK(enumerate_bounded(bpowers_embed(a, "p", "q"), 6, 80, 20).words ==
        enumerate_bounded(a, 6, 80, 20).words);
  CHECK_THROWS_AS(bpowers_embedding(parse_graph("vertex p\nvertex q\n"), "p", "q"), Error);
}

TEST_CASE("B2 witness examples") {
  CHECK(b2_member(Word{"a1", "A1", "b1"}));
  CHECK(b2_member(Word{"b1", "b2"}));
  CHECK_FALSE(b2_member(Word{"a1", "b1", "A1"}));
  auto a = b2_witness(load_graph(oracle::data("c4.graph")));
  CHECK(accepts_bounded(a, Word{"a1", "A1", "b1"}, 100, 20) == Membership::Accept);
  CHECK(accepts_bounded(a, Word{"b1", "b2"}, 100, 20) == Membership::Accept);
  CHECK(accepts_bounded(a, Word{"a1", "b1", "A1"}, 100, 20) == Membership::Reject);
  CHECK_THROWS_AS(b2_witness(load_graph(oracle::data("bb.graph"))), Error);
}

TEST_CASE("B2 membership matches the projection check") {
  auto sigma = b2_alphabet().symbols();
  for (const auto& x : oracle::all_words(sigma, 5)) REQUIRE(b2_member(x) == oracle::b2_by_projection(x));
}

TEST_CASE("B2 witness over P4 up to length 5") {
  auto a = b2_witness(load_graph(oracle::data("p4.graph")));
  auto e = enumerate_bounded(a, 5, 200, 40);
  CHECK(e.complete);
  for (const auto& x : oracle::all_words(b2_alphabet().symbols(), 5))
    REQUIRE(e.words.count(x) == (oracle::b2_by_projection(x) ? 1U : 0U));
}

TEST_CASE("Parikh flattening") {
  auto anbn = load_cfg(oracle::data("anbn.cfg"));
  auto m = parikh_flatten(to_prio_grammar(anbn));
  auto img = prio_parikh_image(m, 6, 8);
  CHECK(img.vectors == parikh_set(oracle::cfg_language(anbn, 6)));

  auto right = parse_cfg("start: S\nS -> a S | b T | -\nT -> b T | a\n");
  CHECK(prio_parikh_image(parikh_flatten(to_prio_grammar(right)), 5, 8).vectors ==
        parikh_set(oracle::cfg_language(right, 5)));

  auto eps = parse_cfg("start: S\nS -> -\n");
  CHECK(prio_parikh_image(parikh_flatten(to_prio_grammar(eps)), 4, 4).vectors == ParikhSet{{}});

  auto dyck = load_cfg(oracle::data("dyck_cnf.cfg"));
  CHECK(prio_parikh_image(parikh_flatten(to_prio_grammar(dyck)), 6, 8).vectors ==
        parikh_set(oracle::cfg_language(dyck, 6)));
}
