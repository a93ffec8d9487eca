#include "doctest.h"
#include "kt/polytree.hpp"

using namespace kt;

TEST_CASE("nested sequent to labeled polytree and back") {
  NestedSequent n = parse_nested("A, o{B, b{C}}, b{D}");
  LabelGen gen(LabelGen::Mode::Letters);
  gen.reserve("x");
  Polytree g = to_polytree("x", n, gen);
  CHECK(is_polytree(g));
  CHECK(g.vertices.size() == 4);
  CHECK(g.edges.size() == 3);
  CHECK(nested_equal(to_nested("x", g), n));
}

TEST_CASE("any vertex can serve as the root") {
  LabeledSequent s = parse_labeled("R(x,z), R(y,z), R(w,x), x:A, z:B, y:C, w:D");
  Polytree g = graph_of(s);
  REQUIRE(is_polytree_sequent(s));
  NestedSequent from_z = to_nested("z", g);
  CHECK(from_z.formulas.at(0) == parse_formula("B"));
  CHECK(from_z.children.size() == 2);
  LabelGen gen;
  gen.reserve("z");
  CHECK(iso(to_polytree("z", from_z, gen), g));
}

TEST_CASE("non-polytrees are recognised") {
  CHECK_FALSE(is_polytree_sequent(parse_labeled("R(x,y), R(y,x)")));
  CHECK_FALSE(is_polytree_sequent(parse_labeled("R(x,y), R(z,w)")));
  CHECK_FALSE(is_polytree_sequent(parse_labeled("R(x,x)")));
  CHECK(is_polytree_sequent(parse_labeled("x:p")));
}

TEST_CASE("merge shares exactly one vertex") {
  Polytree g = graph_of(parse_labeled("R(x,y), y:p"));
  Polytree h = graph_of(parse_labeled("R(z,x), z:q"));
  Polytree m = merge(g, h, "x");
  CHECK(m.vertices.size() == 3);
  CHECK(is_polytree(m));
  CHECK_THROWS_AS(merge(g, graph_of(parse_labeled("R(x,y)")), "x"), MergeError);
}

TEST_CASE("distances") {
  Polytree g = graph_of(parse_labeled("R(x,z), R(y,z), R(w,x)"));
  CHECK(tree_distance(g, "w", "y") == 3);
  CHECK(tree_path(g, "w", "y") == std::vector<Label>{"w", "x", "z", "y"});
  CHECK(diameter(g) == 3);
}
