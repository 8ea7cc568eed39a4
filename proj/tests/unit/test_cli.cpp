#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "valence/cli.hpp"

using valence::dispatch;

namespace {

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

}  // namespace

TEST_CASE("classify") {
  auto r = dispatch({"classify", oracle::data("c4.graph")});
  CHECK(r.exit_code == 0);
  CHECK(first_line(r.out) == "undecidable");
  CHECK(first_line(dispatch({"classify", oracle::data("bb.graph")}).out) == "decidable");
  CHECK(first_line(dispatch({"classify", oracle::data("ppn.graph")}).out) == "open");
}

TEST_CASE("word") {
  auto r = dispatch({"word", oracle::data("b.graph"), "v+ v-"});
  CHECK(r.exit_code == 0);
  CHECK(first_line(r.out) == "identity");
  CHECK(first_line(dispatch({"word", oracle::data("b.graph"), "v- v+"}).out) == "not-identity");
}

TEST_CASE("automaton queries") {
  auto e = dispatch({"enum", oracle::data("anbn.va"), "--max-len", "4"});
  CHECK(e.exit_code == 0);
  CHECK(e.out.rfind("-\nab\naabb\ncount: 3\ncomplete: true\n", 0) == 0);
  CHECK(e.out.find("max-len: 4") != std::string::npos);
  CHECK(first_line(dispatch({"accept", oracle::data("anbn.va"), "aabb"}).out) == "accept");
  CHECK(first_line(dispatch({"accept", oracle::data("anbn.va"), "aab"}).out) == "reject");
  CHECK(first_line(dispatch({"empty", oracle::data("anbn.va")}).out) == "nonempty");
}

TEST_CASE("gcheck") {
  CHECK(first_line(dispatch({"gcheck", oracle::data("nonempty.recipe")}).out) == "nonempty");
  CHECK(first_line(dispatch({"gcheck", oracle::data("empty.recipe")}).out) == "empty-up-to-bound");
}

TEST_CASE("document format and stable output") {
  std::vector<std::string> args{"classify", oracle::data("ppn.graph"), "--format", "doc"};
  auto a = dispatch(args), b = dispatch(args);
  CHECK(a.out == b.out);
  CHECK(first_line(a.out) == "verdict: open");
}

TEST_CASE("construct") {
  auto r = dispatch({"construct", "gell", oracle::data("anbn_cnf.cfg"), "--ell", "1"});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("S@1") != std::string::npos);
  CHECK(dispatch({"construct", "b2", oracle::data("c4.graph")}).exit_code == 0);
  CHECK(dispatch({"construct", "b2", oracle::data("bb.graph")}).exit_code == 2);
}

TEST_CASE("usage errors") {
  CHECK(dispatch({}).exit_code == 2);
  CHECK(dispatch({"classify"}).exit_code == 2);
  CHECK(dispatch({"classify", "/nonexistent.graph"}).exit_code == 2);
  auto r = dispatch({"frobnicate"});
  CHECK(r.exit_code == 2);
  CHECK(r.err.find('\n') == r.err.size() - 1);
  CHECK(dispatch({"--help"}).exit_code == 0);
}
