#include "doctest.h"
#include "kt/sequent.hpp"

using namespace kt;

TEST_CASE("nested sequents round trip through text") {
  const char* s = "<><#>p, o{~p, b{q}}, b{}";
  NestedSequent n = parse_nested(s);
  CHECK(n.node_count() == 4);
  CHECK(nested_equal(parse_nested(print(n)), n));
  CHECK(node_at(n, parse_address("0.0"))->formulas.at(0) == parse_formula("q"));
}

TEST_CASE("nested equality ignores order") {
  CHECK(nested_equal(parse_nested("p, o{q}, b{r}"), parse_nested("b{r}, o{q}, p")));
  CHECK_FALSE(nested_equal(parse_nested("o{q}"), parse_nested("b{q}")));
  CHECK(canonical(parse_nested("q, p")) == canonical(parse_nested("p, q")));
}

TEST_CASE("interpretation of a nested sequent") {
  CHECK(interpret(parse_nested("p, o{q}")) == parse_formula("p | []q"));
  CHECK(interpret(parse_nested("b{q}")) == parse_formula("[#]q"));
}

TEST_CASE("addresses") {
  CHECK(address_text({}) == ".");
  CHECK(address_text({0, 2}) == "0.2");
  CHECK(parse_address("1.0") == Address{1, 0});
}

TEST_CASE("labeled sequents") {
  LabeledSequent s = parse_labeled("R(x,y), x:<>p, y:~p");
  CHECK(s.has_rel("x", "y"));
  CHECK_FALSE(s.has_rel("y", "x"));
  CHECK(s.labels() == std::set<Label>{"x", "y"});
  CHECK(labeled_equal(parse_labeled(print(s)), s));
  auto m = labeled_iso(s, parse_labeled("R(u,v), v:~p, u:<>p"));
  REQUIRE(m);
  CHECK(m->at("x") == "u");
  CHECK_FALSE(labeled_iso(s, parse_labeled("R(v,u), v:~p, u:<>p")));
}

TEST_CASE("substitution collapses duplicate relational atoms") {
  LabeledSequent s = substitute(parse_labeled("R(x,y), R(x,z), z:p"), "y", "z");
  CHECK(s.rel.size() == 1);
  CHECK(s.has(("y"), parse_formula("p")));
}

TEST_CASE("letter labels skip reserved names") {
  LabelGen g(LabelGen::Mode::Letters);
  g.reserve("z");
  CHECK(g.fresh() == "y");
  LabelGen h;
  CHECK(h.fresh() != h.fresh());
}
