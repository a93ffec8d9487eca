#include <fstream>
#include <sstream>

#include "doctest.h"
#include "kt/polytree.hpp"
#include "kt/prover.hpp"
#include "kt/translate.hpp"

using namespace kt;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(KT_DATA_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool structural_free(const Proof& p) {
  bool ok = true;
  for_each_node(p, [&](const Proof& q) {
    if (q.rule == "l_gp" || q.rule == "l_path") ok = false;
    if (!is_polytree_sequent(q.lab)) ok = false;
  });
  return ok;
}

}  // namespace

TEST_CASE("shallow to labeled on the golden derivation") {
  CalculusId c{Calc::Skt, parse_axiom_set(slurp("conf.ax"))};
  Proof l = shallow_to_labeled(read_proof(slurp("golden_skt.prf"), false), c);
  CHECK(check(l, target_calculus(c, Calc::LktSt)).ok);
  CHECK(rule_spine(l).front() == "l_or");
  CHECK(labeled_iso(l.lab, parse_labeled("y:[#][]~p | <><#>p")));
}

TEST_CASE("elimination needs path axioms") {
  CalculusId c{Calc::LktSt, parse_axiom_set(slurp("conf.ax"))};
  Proof l = read_proof(slurp("golden_lkt.prf"), true);
  CHECK_THROWS_AS(eliminate_structural(l, c), ScopeError);
}

TEST_CASE("full cycle through all three calculi") {
  std::vector<PathAxiom> t4{{{Diamond::White, Diamond::White}, Diamond::White}};
  CalculusId skt{Calc::Skt, {general(t4[0])}};
  auto p = prove_shallow(parse_formula("<><><>p -> <>p"), t4);
  REQUIRE(p);
  CHECK(check(*p, skt).ok);
  Proof l = shallow_to_labeled(*p, skt);
  CHECK(check(l, target_calculus(skt, Calc::LktSt)).ok);
  Proof e = eliminate_structural(l, target_calculus(skt, Calc::LktSt));
  CHECK(check(e, target_calculus(skt, Calc::LktPr)).ok);
  CHECK(labeled_equal(e.lab, l.lab));
  CHECK(structural_free(e));
  Proof d = labeled_to_deep(e, target_calculus(skt, Calc::LktPr));
  CHECK(check(d, target_calculus(skt, Calc::Dkt)).ok);
  Proof s = deep_to_shallow(d, target_calculus(skt, Calc::Dkt));
  CHECK(check(s, skt).ok);
  CHECK(nested_equal(s.nested, p->nested));
}

TEST_CASE("pipeline_reverse keeps the end sequent") {
  std::vector<PathAxiom> ax{{{Diamond::Black}, Diamond::White}};
  CalculusId skt{Calc::Skt, {general(ax[0])}};
  auto p = prove_shallow(parse_formula("<#>p -> <>p"), ax);
  REQUIRE(p);
  Proof l = shallow_to_labeled(*p, skt);
  Proof back = pipeline_reverse(l, target_calculus(skt, Calc::LktSt));
  CHECK(check(back, skt).ok);
  CHECK(nested_equal(back.nested, p->nested));
}

TEST_CASE("weakening below a propagation keeps the atoms it needs") {
  Proof p = read_proof(R"((infer l_path :concl "R(x,y), R(y,z), x:<>p, z:~p" :params (axiom "<><> -> <>" label "x" to "z")
  (infer l_w :concl "R(x,y), R(y,z), R(x,z), x:<>p, z:~p"
    (infer l_dia :concl "R(y,z), R(x,z), x:<>p, z:~p" :params (label "x" formula "<>p" to "z")
      (infer id :concl "R(y,z), R(x,z), x:<>p, z:~p, z:p")))))",
                       true);
  CalculusId c{Calc::LktSt, {parse_axiom("<><> -> <>")}};
  REQUIRE(check(p, c).ok);
  Proof e = eliminate_structural(p, c);
  CHECK(check(e, target_calculus(c, Calc::LktPr)).ok);
  CHECK(e.rule == "l_prop");
  CHECK(labeled_equal(e.lab, p.lab));
  CHECK(structural_free(e));
}

TEST_CASE("substitution over a used label is out of scope") {
  Proof p = read_proof(R"((infer l_path :concl "R(x,y), R(y,z), x:<>p, z:~p" :params (axiom "<><> -> <>" label "x" to "z")
  (infer l_s :concl "R(x,y), R(y,z), R(x,z), x:<>p, z:~p" :params (x "z" y "w")
    (infer l_dia :concl "R(x,y), R(y,z), R(x,w), x:<>p, w:~p" :params (label "x" formula "<>p" to "w")
      (infer id :concl "R(x,y), R(y,z), R(x,w), x:<>p, w:~p, w:p")))))",
                       true);
  CalculusId c{Calc::LktSt, {parse_axiom("<><> -> <>")}};
  REQUIRE(check(p, c).ok);
  CHECK_THROWS_AS(eliminate_structural(p, c), ScopeError);
}
