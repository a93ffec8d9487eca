#include <algorithm>

#include "../support.hpp"
#include "doctest.h"

using namespace kt;
using namespace kt::testing;

namespace {

std::size_t display_steps_in(const Proof& p) {
  auto n = rule_counts(p);
  return n["rf"] + n["rp"];
}

std::size_t max_depth(const NestedSequent& s) {
  std::size_t d = 0;
  for (auto& c : s.children) d = std::max(d, 1 + max_depth(c.node));
  return d;
}

}  // namespace

TEST_CASE("translations stay within their size bounds") {
  Rng rng(7);
  auto corpus = build_corpus(rng, 40);
  REQUIRE(corpus.size() == 40);
  for (auto& s : corpus) {
    CAPTURE(print(s.goal));
    std::size_t n = proof_size(s.skt);
    // display steps cost nothing
    CHECK(proof_size(s.lab) <= n - display_steps_in(s.skt));

    CalculusId st = target_calculus(s.calc, Calc::LktSt);
    Proof e = eliminate_structural(s.lab, st);
    std::size_t m = proof_size(s.lab);
    CHECK(proof_size(e) <= m);
    Proof d = labeled_to_deep(e, target_calculus(s.calc, Calc::LktPr));
    CHECK(proof_size(d) <= 4 * m * m);

    Proof back = deep_to_shallow(d, target_calculus(s.calc, Calc::Dkt));
    std::size_t depth = 1;
    for_each_node(d, [&](const Proof& q) { depth = std::max(depth, 1 + max_depth(q.nested)); });
    std::size_t grammar = build_grammar(path_axioms(s.calc.axioms)).bins.size() + 1;
    CHECK(proof_size(back) <= 8 * proof_size(d) * depth * grammar);
  }
}

TEST_CASE("translations are deterministic") {
  Rng a(11), b(11);
  auto x = build_corpus(a, 5), y = build_corpus(b, 5);
  for (std::size_t i = 0; i < x.size(); ++i) {
    CHECK(write_proof(x[i].skt) == write_proof(y[i].skt));
    CHECK(write_proof(x[i].lab) == write_proof(y[i].lab));
  }
}
