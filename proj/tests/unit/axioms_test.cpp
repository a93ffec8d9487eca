#include "doctest.h"
#include "kt/axioms.hpp"

using namespace kt;

namespace {
const Diamond W = Diamond::White, B = Diamond::Black;
}

TEST_CASE("axiom parsing") {
  GeneralPathAxiom a = parse_axiom("<#><> -> <><#>");
  CHECK(a.ante == DiamondString{B, W});
  CHECK(a.cons == DiamondString{W, B});
  CHECK_FALSE(a.is_path());
  CHECK(axiom_text(parse_axiom("e -> <>")) == "e -> <>");
  auto set = parse_axiom_set("# comment\n<><> -> <>\n\n<> -> <#>\n");
  CHECK(set.size() == 2);
  CHECK_THROWS(parse_axiom_set("<><> -> <>\n<> <>\n"));
}

TEST_CASE("inverse and composition") {
  PathAxiom f{{W, W}, W};
  CHECK(inverse(f) == PathAxiom{{B, B}, B});
  PathAxiom g{{B}, W};
  // g's antecedent replaces the first <> of f's
  CHECK(compose(g, f, 1) == PathAxiom{{B, W}, W});
  CHECK(compose(g, f, 2) == PathAxiom{{W, B}, W});
  CHECK_THROWS_AS(compose(PathAxiom{{W}, B}, f, 1), NotComposable);
  CHECK_THROWS_AS(compose(g, f, 3), NotComposable);
}

TEST_CASE("scope row") {
  CHECK_THROWS_AS(check_scope(parse_axiom("<> -> e")), ScopeError);
  CHECK_NOTHROW(check_scope(parse_axiom("e -> <>")));
  CHECK_THROWS_AS(path_axioms({parse_axiom("<#> -> e")}), ScopeError);
}

TEST_CASE("completion membership") {
  PathGrammar t = build_grammar({{{W, W}, W}});
  CHECK(completion_member(t, {W, W, W}, W));
  CHECK(completion_member(t, {B, B}, B));
  CHECK_FALSE(completion_member(t, {W, B}, W));
  CHECK(completion_member(t, {W}, W));
  PathGrammar r = build_grammar({{{}, W}});
  CHECK(completion_member(r, {}, W));
  CHECK(completion_member(r, {}, B));
  CHECK_FALSE(completion_member(build_grammar({}), {}, W));
}

TEST_CASE("parse trees cover the string") {
  PathGrammar g = build_grammar({{{W, B, W}, W}, {{W, W}, B}});
  DiamondString s{W, W, W, W};
  auto t = parse_tree(g, s, W);
  REQUIRE(t);
  CHECK(frontier(*t) == s);
  CHECK(parse_size(*t) >= 1);
}

TEST_CASE("cfl engine on a chain") {
  PathGrammar g = build_grammar({{{W, W}, W}});
  CflEngine e(g, 4, {{0, 1, W}, {1, 2, W}, {2, 3, W}, {1, 0, B}, {2, 1, B}, {3, 2, B}});
  CHECK(e.has(W, 0, 3));
  CHECK(e.has(B, 3, 0));
  CHECK_FALSE(e.has(W, 3, 0));
  auto t = e.tree(W, 0, 3);
  REQUIRE(t);
  CHECK(frontier(*t).size() == 3);
}
