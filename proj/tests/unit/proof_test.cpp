#include <fstream>
#include <sstream>

#include "doctest.h"
#include "kt/proof.hpp"

using namespace kt;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(KT_DATA_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool mentions(const Report& r, const std::string& what) {
  for (auto& d : r.diagnostics)
    if (d.message.find(what) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("calculus names") {
  CHECK(parse_calc("lkt") == Calc::LktSt);
  CHECK(parse_calc("lkt-pr") == Calc::LktPr);
  CHECK(rule_in(CalculusId{Calc::Dkt, {}}, "dp"));
  CHECK_FALSE(rule_in(CalculusId{Calc::LktPr, {}}, "l_gp"));
  CHECK_FALSE(rule_in(CalculusId{Calc::Skt, {}, true}, "bdia"));
}

TEST_CASE("golden shallow derivation checks and round trips") {
  CalculusId c{Calc::Skt, parse_axiom_set(slurp("conf.ax"))};
  Proof p = read_proof(slurp("golden_skt.prf"), false);
  Report r = check(p, c);
  CHECK(r.ok);
  CHECK(r.nodes == proof_size(p));
  Proof q = read_proof(write_proof(p), false);
  CHECK(write_proof(q) == write_proof(p));
  CHECK(rule_counts(p)["rp"] == 2);
  CHECK(rule_counts(p)["rf"] == 2);
  // without the axiom the gp step is foreign
  CHECK_FALSE(check(p, CalculusId{Calc::Skt, {}}).ok);
}

TEST_CASE("golden labeled derivation checks") {
  CalculusId c{Calc::LktSt, parse_axiom_set(slurp("conf.ax"))};
  Proof p = read_proof(slurp("golden_lkt.prf"), true);
  CHECK(check(p, c).ok);
  CHECK(proof_height(p) == 7);
}

TEST_CASE("wrong premises are diagnosed where they occur") {
  Proof p = read_proof(R"((infer or :concl "p | q" (infer id :concl "p, r")))", false);
  Report r = check(p, CalculusId{Calc::Skt, {}});
  CHECK_FALSE(r.ok);
  REQUIRE_FALSE(r.diagnostics.empty());
  CHECK(r.diagnostics[0].where == ".");
}

TEST_CASE("eigenvariable condition") {
  Proof p = read_proof(R"((infer l_box :concl "R(x,y), y:~p, x:[]p" :params (label "x" formula "[]p" fresh "y")
  (infer id :concl "R(x,y), R(x,y), y:~p, y:p")))",
                       true);
  Report r = check(p, CalculusId{Calc::LktSt, {}});
  CHECK_FALSE(r.ok);
  CHECK(mentions(r, "eigenvariable"));
}

TEST_CASE("dp witness must be in the completion") {
  Proof p = read_proof(R"((infer dp :concl "<>~p, o{o{p}}" :params (at "." to "0.0" formula "<>~p" path ". <> 0 <> 0.0")
  (infer id :concl "<>~p, o{o{p, ~p}}")))",
                       false);
  CHECK_FALSE(check(p, CalculusId{Calc::Dkt, {}}).ok);
  CHECK(check(p, CalculusId{Calc::Dkt, {parse_axiom("<><> -> <>")}}).ok);
}

TEST_CASE("open leaves need permission") {
  Proof d = display_derivation(parse_nested("p, o{q, b{r}}"), {0, 0});
  CHECK(top_leaf(d).rule == "open");
  CHECK(top_leaf(d).nested.formulas.at(0) == parse_formula("r"));
  CHECK_FALSE(check(d, CalculusId{Calc::Skt, {}}).ok);
  CheckOptions o;
  o.allow_open = true;
  CHECK(check(d, CalculusId{Calc::Skt, {}}, o).ok);
}

TEST_CASE("apply_rule produces the premises") {
  auto ps = apply_rule(parse_nested("p & q, r"), "and", {{"formula", "p & q"}}, CalculusId{Calc::Skt, {}});
  REQUIRE(ps.size() == 2);
  CHECK(nested_equal(ps[0], parse_nested("p, r")));
  auto ls = apply_rule(parse_labeled("x:<>p, R(x,y)"), "l_dia", {{"label", "x"}, {"formula", "<>p"}, {"to", "y"}},
                       CalculusId{Calc::LktSt, {}});
  REQUIRE(ls.size() == 1);
  CHECK(ls[0].has("y", parse_formula("p")));
}
