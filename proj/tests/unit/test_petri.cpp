#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "valence/error.hpp"
#include "valence/petri.hpp"

using namespace valence;

namespace {

Word w(const std::string& s) {
  Word out;
  for (char c : s) out.push_back(std::string(1, c));
  return out;
}

WordSet ws(std::initializer_list<const char*> xs) {
  WordSet out;
  for (auto x : xs) out.insert(w(x));
  return out;
}

// One counter: a increments, b decrements; accepts {a^n b^n}.
PriorityMachine anbn_machine() {
  PriorityMachine m;
  m.counters = 1;
  m.alphabet = Alphabet({"a", "b"});
  m.initial = m.add_state("p", true);
  auto q = m.add_state("q", true);
  m.add_edge(0, 0, {"a"}, 0, {1});
  m.add_edge(0, q, {"b"}, 0, {-1});
  m.add_edge(q, q, {"b"}, 0, {-1});
  return m;
}

PriorityMachine star(std::initializer_list<const char*> xs) {
  PriorityMachine m;
  m.initial = m.add_state("s", true);
  for (auto x : xs) {
    m.alphabet.add(x);
    m.add_edge(0, 0, {x});
  }
  return m;
}

}  // namespace

TEST_CASE("petri net parsing") {
  auto n = load_petri(oracle::data("counter1.net"));
  CHECK(n.dim == 1);
  CHECK(n.transitions.size() == 2);
  CHECK(n.initial == Vector{0});
  REQUIRE(n.finals.size() == 1);
  auto again = parse_petri(format_petri(n));
  CHECK(again.transitions.size() == 2);
  CHECK_THROWS_AS(parse_petri("dim: 1\ntrans a (+1,-1)\n"), Error);
  CHECK_THROWS_AS(parse_petri("dim: 1\ninit: (-1)\n"), Error);
}

TEST_CASE("petri enumeration examples") {
  auto n = load_petri(oracle::data("counter1.net"));
  auto e = petri_enumerate(n, {0}, {0}, 4, 100);
  CHECK(e.words == ws({"", "ab", "abab", "aabb"}));
  CHECK(e.complete);

  PetriNet none;
  none.dim = 1;
  CHECK(petri_enumerate(none, {0}, {1}, 4, 100).words.empty());
  CHECK_THROWS_AS(petri_enumerate(n, {0, 0}, {0}, 4, 100), Error);

  auto silent = parse_petri("dim: 2\ntrans a (+1,0)\ntrans - (-1,+1)\ntrans b (0,-1)\n");
  auto s = petri_enumerate(silent, {0, 0}, {0, 0}, 4, 100);
  for (const auto& x : oracle::all_words({"a", "b"}, 4))
    REQUIRE(s.words.count(x) == (oracle::net_reads(silent, {0, 0}, {0, 0}, x) ? 1U : 0U));
}

TEST_CASE("petri semantics agree with valence automata over B^d") {
  std::vector<PetriNet> nets{
      load_petri(oracle::data("counter1.net")),
      parse_petri("dim: 2\ntrans a (+1,0)\ntrans b (-1,+1)\ntrans c (0,-1)\n"),
      parse_petri("dim: 2\ntrans a (+1,+1)\ntrans b (-1,0)\ntrans c (0,-1)\n")};
  for (const auto& n : nets)
    for (std::int64_t x = 0; x <= 1; ++x) {
      Vector mu(n.dim, x), nu(n.dim, 0);
      auto p = petri_enumerate(n, mu, nu, 5, 100);
      auto v = enumerate_bounded(petri_to_valence(n, mu, nu), 5, 100, 20);
      REQUIRE(p.complete);
      REQUIRE(v.complete);
      REQUIRE(p.words == v.words);
    }
}

TEST_CASE("priority machine emptiness examples") {
  PriorityMachine eps;
  eps.initial = eps.add_state("p", true);
  auto r = prio_emptiness_bounded(eps, 10, 4);
  CHECK(r.nonempty());
  CHECK(r.witness.empty());

  PriorityMachine blocked;
  blocked.counters = 1;
  blocked.alphabet = Alphabet({"a"});
  blocked.initial = blocked.add_state("p");
  auto q = blocked.add_state("q");
  auto f = blocked.add_state("f", true);
  blocked.add_edge(0, q, {"a"}, 0, {1});
  blocked.add_edge(q, f, {}, 1, {0});
  CHECK_FALSE(prio_emptiness_bounded(blocked, 50, 8).nonempty());

  auto m = anbn_machine();
  m.finals[0] = false;
  auto wit = prio_emptiness_bounded(m, 50, 8);
  REQUIRE(wit.nonempty());
  CHECK(wit.witness == w("ab"));
}

TEST_CASE("priority machine enumeration and text") {
  auto m = anbn_machine();
  CHECK(prio_enumerate(m, 6, 100, 8).words == ws({"", "ab", "aabb", "aaabbb"}));
  auto again = parse_machine(format_machine(m));
  CHECK(prio_enumerate(again, 6, 100, 8).words == prio_enumerate(m, 6, 100, 8).words);
  auto img = prio_parikh_image(m, 4, 8);
  CHECK(img.vectors == ParikhSet{{}, {{"a", 1}, {"b", 1}}, {{"a", 2}, {"b", 2}}});
}

TEST_CASE("zero tests read only the counter prefix") {
  // counter 2 may stay nonzero across a test of counter 1
  PriorityMachine m;
  m.counters = 2;
  m.alphabet = Alphabet({"a", "b"});
  m.initial = m.add_state("p");
  auto q = m.add_state("q");
  auto f = m.add_state("f", true);
  m.add_edge(0, 0, {"a"}, 0, {0, 1});
  m.add_edge(0, q, {}, 1, {});
  m.add_edge(q, q, {"b"}, 0, {0, -1});
  m.add_edge(q, f, {}, 2, {});
  CHECK(prio_enumerate(m, 4, 100, 8).words == ws({"", "ab", "aabb"}));
}

TEST_CASE("substitution composition") {
  auto c = star({"c"});
  std::map<Symbol, PriorityMachine> id{{"c", word_machine({"c"})}};
  CHECK(prio_enumerate(substitution_compose(c, id), 4, 100, 8).words == ws({"", "c", "cc", "ccc", "cccc"}));

  auto blocks = prio_enumerate(substitution_compose(c, {{"c", anbn_machine()}}), 6, 200, 8);
  WordSet expect;
  for (const auto& x : oracle::all_words({"a", "b"}, 6)) {
    // concatenations of a^n b^n blocks
    std::size_t i = 0;
    bool ok = true;
    while (i < x.size() && ok) {
      std::size_t a = 0, b = 0;
      while (i < x.size() && x[i] == "a") ++a, ++i;
      while (i < x.size() && x[i] == "b" && b < a) ++b, ++i;
      ok = a == b && a > 0;
    }
    if (ok) expect.insert(x);
  }
  CHECK(blocks.words == expect);

  CHECK(prio_enumerate(substitution_compose(c, {{"c", word_machine({})}}), 4, 100, 8).words == ws({""}));

  auto two = anbn_machine();
  two.counters = 2;
  for (auto& e : two.edges) e.delta.push_back(0);
  CHECK_THROWS_AS(substitution_compose(star({"c", "d"}), {{"c", anbn_machine()}, {"d", two}}), Error);
}

TEST_CASE("Presburger closure") {
  auto ab = star({"a", "b"});
  auto any = parse_semilinear("alphabet: a b\ncomponent base=(a:0,b:0) periods=[(a:1),(b:1)]\n");
  CHECK(prio_enumerate(presburger_close(ab, any, {}), 4, 100, 8).words ==
        prio_enumerate(ab, 4, 100, 8).words);

  auto balanced = load_semilinear(oracle::data("balanced.sl"));
  auto bal = prio_enumerate(presburger_close(ab, balanced, {}), 4, 100, 8);
  for (const auto& x : oracle::all_words({"a", "b"}, 4)) {
    auto v = oracle::letter_count(x);
    REQUIRE(bal.words.count(x) == (v["a"] == v["b"] ? 1U : 0U));
  }

  Morphism erase;
  erase.set("b", {});
  CHECK(prio_enumerate(presburger_close(ab, balanced, erase), 2, 100, 8).words == ws({"", "a", "aa"}));
  auto foreign = parse_semilinear("alphabet: z\ncomponent base=(z:1) periods=[]\n");
  CHECK_THROWS_AS(presburger_close(ab, foreign, {}), Error);
}
