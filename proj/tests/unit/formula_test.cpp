#include "doctest.h"
#include "kt/formula.hpp"

using namespace kt;

TEST_CASE("formulas print canonically") {
  CHECK(print(parse_formula("[#][]~p | <><#>p")) == "[#][]~p | <><#>p");
  CHECK(print(parse_formula("(p & q) | r")) == "p & q | r");
  CHECK(print(parse_formula("p & (q | r)")) == "p & (q | r)");
  CHECK(parse_formula("A & B1").left().name() == "A");
}

TEST_CASE("implication unfolds into negation normal form") {
  Formula f = parse_formula("<#><#>p -> <#>p");
  CHECK(f.kind() == FKind::Or);
  CHECK(f.left() == parse_formula("[#][#]~p"));
}

TEST_CASE("negation is dual") {
  Formula f = parse_formula("[](p & <#>~q)");
  CHECK(negate(f) == parse_formula("<>(~p | [#]q)"));
  CHECK(negate(negate(f)) == f);
}

TEST_CASE("parse errors carry an offset") {
  CHECK_THROWS_AS(parse_formula("p &"), ParseError);
  try {
    parse_formula("p ) q");
  } catch (const ParseError& e) {
    CHECK(e.offset == 2);
  }
}

TEST_CASE("diamond helpers") {
  CHECK(inv(Diamond::White) == Diamond::Black);
  CHECK(Formula::diamond(Diamond::Black, Formula::pos("p")) == parse_formula("<#>p"));
  CHECK(word_text({}) == "e");
}
