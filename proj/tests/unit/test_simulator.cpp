#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "valence/error.hpp"
#include "valence/simulator.hpp"

using namespace valence;

namespace {

ParikhSet expected(const WordSet& k, const PetriNet& n, const Vector& mu, const Vector& nu) {
  ParikhSet out;
  for (const auto& x : k)
    if (oracle::net_reads(n, mu, nu, x)) out.insert(oracle::letter_count(x));
  return out;
}

PetriNet two_dim() { return parse_petri("dim: 2\ninit: (0,0)\nfinal: (0,0)\ntrans a (+1,0)\ntrans b (-1,+1)\n"); }

}  // namespace

TEST_CASE("simulator layout") {
  auto net = load_petri(oracle::data("counter1.net"));
  auto base = build_simulator(load_automaton(oracle::data("ab_star.va")), net);
  CHECK(base.aux == 0);
  CHECK(base.machine.counters == base.dim);
  auto h = build_simulator(load_cfg(oracle::data("anbn_cnf.cfg")), 2, net);
  CHECK(h.dim == 1);
  CHECK(h.machine.counters == h.aux + 3 * h.dim);
  CHECK(h.dims.size() == h.machine.counters);
  auto h2 = build_simulator(load_cfg(oracle::data("dyck_cnf.cfg")), 2, two_dim());
  CHECK(h2.machine.counters == h2.aux + 6);
  CHECK_THROWS_AS(build_simulator(load_cfg(oracle::data("anbn.cfg")), 1, net), Error);
  CHECK_THROWS_AS(build_simulator(load_cfg(oracle::data("anbn_cnf.cfg")), 0, net), Error);
}

TEST_CASE("simulator law for a^n b^n") {
  auto g = load_cfg(oracle::data("anbn_cnf.cfg"));
  auto net = load_petri(oracle::data("counter1.net"));
  auto h = build_simulator(g, 2, net);
  auto k = oracle::index_derive(g, 2, 6);
  std::vector<Vector> targets{{0}, {1}, {2}};
  for (std::int64_t m = 0; m <= 2; ++m) {
    auto r = simulator_parikh(h, net, {m}, targets, 6);
    for (std::size_t t = 0; t < targets.size(); ++t)
      REQUIRE(r.per_target[t] == expected(k, net, {m}, targets[t]));
  }
  auto zero = simulator_parikh(h, net, {0}, {{0}}, 6);
  CHECK(zero.vectors == ParikhSet{{{"a", 1}, {"b", 1}}, {{"a", 2}, {"b", 2}}, {{"a", 3}, {"b", 3}}});
}

TEST_CASE("simulator law for a regular language") {
  auto a = load_automaton(oracle::data("ab_star.va"));
  auto k = enumerate_bounded(a, 6, 40, 0).words;
  for (const auto& net : {load_petri(oracle::data("counter1.net")), two_dim()}) {
    auto h = build_simulator(a, net);
    std::vector<Vector> targets;
    for (std::int64_t x = 0; x <= 1; ++x)
      for (std::int64_t y = 0; y <= (net.dim > 1 ? 1 : 0); ++y)
        targets.push_back(net.dim > 1 ? Vector{x, y} : Vector{x});
    for (const auto& mu : targets) {
      auto r = simulator_parikh(h, net, mu, targets, 6);
      for (std::size_t t = 0; t < targets.size(); ++t)
        REQUIRE(r.per_target[t] == expected(k, net, mu, targets[t]));
    }
  }
}

TEST_CASE("simulator with a net without transitions") {
  auto all = parse_automaton("states: s\ninit: s\nfinal: s\nedge s s in=a\nedge s s in=b\n");
  PetriNet idle = parse_petri("dim: 1\nalphabet: a b\n");
  auto h = build_simulator(all, idle);
  CHECK(simulator_parikh(h, idle, {1}, {{1}}, 4).vectors == ParikhSet{{}});
  CHECK(simulator_parikh(h, idle, {1}, {{0}}, 4).vectors.empty());
}

TEST_CASE("intersection machine examples") {
  auto g = load_cfg(oracle::data("anbn_cnf.cfg"));
  auto net = load_petri(oracle::data("counter1.net"));
  auto k = oracle::index_derive(g, 2, 6);
  auto h = build_simulator(g, 2, net);
  CHECK(intersection_machine_parikh(h, net, 6).vectors == expected(k, net, {0}, {0}));

  auto free = parse_petri("dim: 0\ninit: ()\nfinal: ()\ntrans a ()\ntrans b ()\n");
  CHECK(intersection_machine_parikh(build_simulator(g, 2, free), free, 6).vectors == parikh_set(k));

  auto only_a = load_petri(oracle::data("only_a.net"));
  auto r = intersection_machine_parikh(build_simulator(g, 2, only_a), only_a, 6);
  CHECK(r.vectors.empty());
  CHECK(prio_emptiness_bounded(intersection_machine(g, 2, only_a), 200, 8).nonempty() == false);
}

TEST_CASE("intersection with several final markings") {
  auto g = load_cfg(oracle::data("anbn_cnf.cfg"));
  auto net = parse_petri("dim: 1\ninit: (1)\nfinal: (0) (2)\ntrans a (+1)\ntrans b (-1)\n");
  auto k = oracle::index_derive(g, 2, 6);
  ParikhSet want;
  for (const auto& f : net.finals)
    for (const auto& v : expected(k, net, net.initial, f)) want.insert(v);
  CHECK(intersection_machine_parikh(build_simulator(g, 2, net), net, 6).vectors == want);
}

TEST_CASE("recipes") {
  auto yes = g_emptiness(load_recipe(oracle::data("nonempty.recipe")), 200, 16);
  CHECK(yes.nonempty());
  auto no = g_emptiness(load_recipe(oracle::data("empty.recipe")), 200, 16);
  CHECK_FALSE(no.nonempty());

  auto eps = parse_recipe("leaf e nfa=eps.va net=free3.net\nalg g start=S rules=S:e\nroot g\n",
                          VALENCE_TEST_DATA);
  auto r = g_emptiness(eps, 50, 4);
  REQUIRE(r.nonempty());
  CHECK(r.witness.empty());
  CHECK_THROWS_AS(parse_recipe("root nowhere\n", VALENCE_TEST_DATA), Error);
}
