#include <catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "valence/error.hpp"
#include "valence/word.hpp"

using namespace valence;

namespace {

Graph b_graph() { return parse_graph("vertex v\n"); }
Graph z_graph() { return parse_graph("vertex v loop\n"); }

std::vector<MonoidWord> words_upto(std::size_t vertices, std::size_t len) {
  std::vector<MonoidWord> out{{}};
  std::size_t start = 0;
  for (std::size_t l = 1; l <= len; ++l) {
    std::size_t end = out.size();
    for (std::size_t i = start; i < end; ++i)
      for (std::uint32_t c = 0; c < 2 * vertices; ++c) {
        auto w = out[i];
        w.push_back(Token::from_code(c));
        out.push_back(std::move(w));
      }
    start = end;
  }
  return out;
}

}  // namespace

TEST_CASE("identity examples") {
  auto b = b_graph();
  CHECK(is_identity(b, parse_monoid_word("v+ v-", b)));
  CHECK_FALSE(is_identity(b, parse_monoid_word("v- v+", b)));
  auto z = z_graph();
  CHECK(is_identity(z, parse_monoid_word("v- v+", z)));
  auto uw = parse_graph("vertex u\nvertex w\nedge u w\n");
  CHECK(is_identity(uw, parse_monoid_word("u+ w+ u- w-", uw)));
  CHECK(is_identity_oracle(uw, parse_monoid_word("u+ w+ u- w-", uw)) == Tri::Yes);
  auto free = parse_graph("vertex u\nvertex w\n");
  CHECK_FALSE(is_identity(free, parse_monoid_word("u+ w+ u- w-", free)));
  CHECK(is_identity(b, parse_monoid_word("-", b)));
  CHECK_THROWS_AS(parse_monoid_word("x+", b), Error);
  CHECK_THROWS_AS(parse_monoid_word("v", b), Error);
}

TEST_CASE("oracle examples") {
  auto b = b_graph();
  CHECK(is_identity_oracle(b, parse_monoid_word("v+ v-", b)) == Tri::Yes);
  CHECK(is_identity_oracle(b, parse_monoid_word("v- v+", b)) == Tri::No);
  CHECK(is_identity_oracle(b, parse_monoid_word("v+ v+ v- v-", b), 1) == Tri::Unknown);
}

TEST_CASE("right invertible elements") {
  CHECK_FALSE(has_nontrivial_right_invertible(parse_expr("B^0")));
  CHECK(has_nontrivial_right_invertible(parse_expr("B")));
  CHECK(has_nontrivial_right_invertible(parse_expr("FreeProduct(Z,B)")));
}

TEST_CASE("edgeless graphs agree with stack reduction") {
  for (unsigned loops = 0; loops < 4; ++loops) {
    auto g = graph_from_masks(2, loops, 0);
    for (const auto& w : words_upto(2, 6)) REQUIRE(is_identity(g, w) == oracle::free_identity(g, w));
  }
}

TEST_CASE("two-vertex graphs agree with the rewriting oracle and the bidirectional closure") {
  for (unsigned loops = 0; loops < 4; ++loops)
    for (unsigned long long e = 0; e < 2; ++e) {
      auto g = graph_from_masks(2, loops, e);
      for (const auto& w : words_upto(2, 4)) {
        bool fast = is_identity(g, w);
        REQUIRE(is_identity_oracle(g, w) == (fast ? Tri::Yes : Tri::No));
        REQUIRE(is_identity_bidirectional(g, w) == (fast ? Tri::Yes : Tri::No));
      }
    }
}

TEST_CASE("identity words are balanced, closed under products and projections") {
  std::mt19937 rng(7);
  for (unsigned loops = 0; loops < 8; ++loops)
    for (unsigned long long e = 0; e < 8; ++e) {
      auto g = graph_from_masks(3, loops, e);
      std::vector<MonoidWord> ids;
      for (const auto& w : words_upto(3, 4)) {
        if (!is_identity(g, w)) continue;
        ids.push_back(w);
        std::map<std::uint32_t, long> bal;
        for (auto t : w) bal[t.vertex] += t.negative ? -1 : 1;
        for (auto [v, c] : bal) REQUIRE(c == 0);
        // projection onto any vertex set keeps the identity
        for (unsigned keep = 0; keep < 8; ++keep) {
          std::vector<bool> k{(keep & 1) != 0, (keep & 2) != 0, (keep & 4) != 0};
          REQUIRE(is_identity(g, project(w, k)));
        }
      }
      for (int i = 0; i < 50 && !ids.empty(); ++i) {
        auto u = ids[rng() % ids.size()], v = ids[rng() % ids.size()];
        u.insert(u.end(), v.begin(), v.end());
        REQUIRE(is_identity(g, u));
      }
    }
}

TEST_CASE("canonical forms respect commutation") {
  auto uw = parse_graph("vertex u\nvertex w\nedge u w\n");
  auto a = parse_monoid_word("w+ u+", uw), b = parse_monoid_word("u+ w+", uw);
  CHECK(canonical(uw, a) == canonical(uw, b));
  auto free = parse_graph("vertex u\nvertex w\n");
  CHECK_FALSE(canonical(free, parse_monoid_word("w+ u+", free)) ==
              canonical(free, parse_monoid_word("u+ w+", free)));
  CHECK(format_monoid_word(parse_monoid_word("u+ w-", uw), uw) == "u+ w-");
}
