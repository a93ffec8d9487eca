#include "doctest.h"
#include "kt/propagation.hpp"

using namespace kt;

namespace {
const Diamond W = Diamond::White, B = Diamond::Black;
}

TEST_CASE("propagation graph of a nested sequent") {
  PropagationGraph g = pg_of_nested(parse_nested("p, o{q, b{r}}"));
  CHECK(g.nodes.size() == 3);
  CHECK(g.has_edge(".", "0", W));
  CHECK(g.has_edge("0", ".", B));
  CHECK(g.has_edge("0", "0.0", B));
  CHECK(g.has_edge("0.0", "0", W));
  CHECK(g.edges.size() == 4);
}

TEST_CASE("propagation graph of a labeled sequent") {
  PropagationGraph g = pg_of_labeled(parse_labeled("R(x,y), R(y,y), x:p"));
  CHECK(g.has_edge("y", "y", W));
  CHECK(g.has_edge("y", "y", B));
  CHECK(g.has_edge("y", "x", B));
}

TEST_CASE("paths") {
  PropagationGraph g = pg_of_nested(parse_nested("o{o{p}}"));
  PropPath p = parse_path(". <> 0 <> 0.0");
  CHECK(path_valid(g, p));
  CHECK(path_string(p) == DiamondString{W, W});
  CHECK(path_text(p) == ". <> 0 <> 0.0");
  CHECK_FALSE(path_valid(g, parse_path(". <#> 0")));
}

TEST_CASE("reachability respects the grammar") {
  PropagationGraph g = pg_of_nested(parse_nested("o{o{p}}"));
  CHECK_FALSE(reachable(g, ".", "0.0", W, build_grammar({})));
  auto p = reachable(g, ".", "0.0", W, build_grammar({{{W, W}, W}}));
  REQUIRE(p);
  CHECK(path_string(*p) == DiamondString{W, W});
  // symmetry lets <> travel upwards
  auto up = reachable(g, "0.0", ".", W, build_grammar({{{B}, W}, {{W, W}, W}}));
  CHECK(up);
  auto all = reachable_all(g, ".", B, build_grammar({{{W}, B}}));
  CHECK(all.count("0"));
  CHECK_FALSE(all.count("0.0"));
}

TEST_CASE("unknown nodes are reported") {
  PropagationGraph g = pg_of_nested(parse_nested("p"));
  CHECK_THROWS_AS(reachable(g, ".", "7", W, build_grammar({})), UnknownNode);
}
