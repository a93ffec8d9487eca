// Acceptance suite: one PASS/FAIL line per criterion.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "kt/polytree.hpp"
#include "kt/proof.hpp"
#include "kt/prover.hpp"
#include "kt/translate.hpp"
#include "support.hpp"

using namespace kt;
using namespace kt::testing;

namespace {

std::string data_dir = KT_DATA_DIR;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Outcome {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

// ---- 1 ----

Outcome golden_example() {
  Outcome o;
  CalculusId c{Calc::Skt, parse_axiom_set(slurp(data_dir + "/conf.ax"))};
  Proof p = read_proof(slurp(data_dir + "/golden_skt.prf"), false);
  if (!check(p, c).ok) o.fail("SKT derivation rejected");
  Proof l = shallow_to_labeled(p, c);
  if (!check(l, target_calculus(c, Calc::LktSt)).ok) o.fail("labeled derivation rejected");
  std::vector<std::string> want{"l_or", "l_bbox", "l_box", "l_gp", "l_dia", "l_bdia", "id"};
  if (rule_spine(l) != want) o.fail("rule spine differs");
  Proof g = read_proof(slurp(data_dir + "/golden_lkt.prf"), true);
  // compare node by node along the spine, up to label renaming
  const Proof* a = &l;
  const Proof* b = &g;
  while (true) {
    if (a->rule != b->rule) o.fail("rule " + a->rule + " vs " + b->rule);
    if (!labeled_iso(a->lab, b->lab)) o.fail("sequent " + print(a->lab) + " vs " + print(b->lab));
    if (a->premises.size() != b->premises.size()) {
      o.fail("arity differs at " + a->rule);
      break;
    }
    if (a->premises.empty()) break;
    a = &a->premises[0];
    b = &b->premises[0];
  }
  if (print(l.lab) != "x:[#][]~p | <><#>p") o.fail("end sequent " + print(l.lab));
  if (o.ok) o.detail = "spine (<#>),(<>),(GP),([]),([#]),(|) matches the reference column";
  return o;
}

// ---- 2 ----

Outcome completion_facts(Rng& rng) {
  Outcome o;
  auto g1 = build_grammar(path_axioms(parse_axiom_set("<><#><> -> <>\n<><> -> <#>")));
  if (!completion_member(g1, parse_word("<><><><>"), Diamond::White)) o.fail("<><><><> -> <> missing");
  auto g2 = build_grammar(path_axioms(parse_axiom_set("<><> -> <>")));
  if (!completion_member(g2, parse_word("<#><#>"), Diamond::Black)) o.fail("<#><#> -> <#> missing");
  int sets = 250, strings = 0;
  for (int s = 0; s < sets && o.ok; ++s) {
    auto p = random_axioms(rng);
    auto g = build_grammar(p);
    CompletionOracle oracle(p, 8);
    for (std::size_t len = 0; len <= 6 && o.ok; ++len)
      for (std::size_t bits = 0; bits < (std::size_t{1} << len); ++bits) {
        DiamondString w;
        for (std::size_t i = 0; i < len; ++i) w.push_back((bits >> i) & 1 ? Diamond::Black : Diamond::White);
        for (Diamond d : {Diamond::White, Diamond::Black}) {
          ++strings;
          if (completion_member(g, w, d) != oracle.member(w, d)) {
            std::string ax;
            for (auto& a : p) ax += axiom_text(a) + "; ";
            o.fail("disagreement on " + word_text(w) + " -> " + diamond_text(d) + " for " + ax);
          }
        }
      }
  }
  if (o.ok) o.detail = std::to_string(sets) + " axiom sets, " + std::to_string(strings) + " queries, 0 disagreements";
  return o;
}

// ---- 3 ----

Outcome polytree_round_trips(Rng& rng) {
  Outcome o;
  const int n = 1200;
  for (int i = 0; i < n && o.ok; ++i) {
    NestedSequent x = random_nested(rng, 12, 6);
    LabelGen gen;
    std::map<std::string, Label> amap;
    Polytree l = to_polytree("x", x, gen, &amap);
    if (l.empty()) continue;
    NestedSequent nx = to_nested("x", l);
    LabelGen gen2;
    Polytree l2 = to_polytree("x", nx, gen2);
    if (!iso(l2, l)) o.fail("L(N(L(X))) not isomorphic to L(X) for " + print(x));
    // display at a random vertex
    auto it = amap.begin();
    std::advance(it, uniform(rng, 0, static_cast<int>(amap.size()) - 1));
    NestedSequent nz = to_nested(it->second, l);
    Proof d = display_derivation(x, parse_address(it->first));
    CheckOptions opt;
    opt.allow_open = true;
    if (!check(d, CalculusId{Calc::Skt, {}}, opt).ok) o.fail("display derivation rejected");
    if (!nested_equal(top_leaf(d).nested, nz)) o.fail("N_z(L(X)) is not the displayed sequent");
    auto counts = rule_counts(d);
    for (auto& [r, k] : counts)
      if (r != "rf" && r != "rp" && r != "open") o.fail("non-display rule " + r);
    int len = counts["rf"] + counts["rp"];
    if (len > diameter(l)) o.fail("display derivation longer than the diameter");
  }
  if (o.ok) o.detail = std::to_string(n) + " sequents";
  return o;
}

// ---- 4 ----

Outcome display_invariance(Rng& rng) {
  Outcome o;
  const int n = 600;
  for (int i = 0; i < n && o.ok; ++i) {
    NestedSequent x = random_nested(rng, 10, 6);
    IdGen ids;
    assign_ids(x, ids);
    NestedSequent y = x;
    int moves = uniform(rng, 0, 10);
    for (int m = 0; m < moves && !y.children.empty(); ++m)
      y = display_child(y, static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(y.children.size()) - 1)));
    LabelGen g1, g2;
    NestedSequent xp = x, yp = y;
    clear_ids(xp);
    clear_ids(yp);
    if (!iso(to_polytree("x", xp, g1), to_polytree("x", yp, g2))) o.fail("polytrees differ for " + print(x));
    if (!(pg_of_nested(x) == pg_of_nested(y))) o.fail("propagation graphs differ for " + print(x));
  }
  if (o.ok) o.detail = std::to_string(n) + " display sequences";
  return o;
}

// ---- 5 ----

Outcome cfl_reachability(Rng& rng) {
  Outcome o;
  const int n = 600;
  int positive = 0;
  for (int i = 0; i < n && o.ok; ++i) {
    PropagationGraph g;
    int nodes = uniform(rng, 1, 6);
    for (int k = 0; k < nodes; ++k) g.nodes.push_back("v" + std::to_string(k));
    int edges = uniform(rng, 0, 7);
    for (int k = 0; k < edges; ++k)
      g.add_pair(g.nodes[static_cast<std::size_t>(uniform(rng, 0, nodes - 1))],
                 g.nodes[static_cast<std::size_t>(uniform(rng, 0, nodes - 1))], any_diamond(rng));
    auto p = random_axioms(rng);
    auto gr = build_grammar(p);
    const NodeName& a = g.nodes[static_cast<std::size_t>(uniform(rng, 0, nodes - 1))];
    const NodeName& b = g.nodes[static_cast<std::size_t>(uniform(rng, 0, nodes - 1))];
    Diamond d = any_diamond(rng);
    auto fast = reachable(g, a, b, d, gr);
    auto slow = brute_reachable(g, a, b, d, gr, 8);
    if (fast) {
      ++positive;
      if (!path_valid(g, *fast) || fast->from() != a || fast->to() != b ||
          !completion_member(gr, path_string(*fast), d))
        o.fail("witness does not re-verify");
    }
    if (fast.has_value() != slow.has_value())
      o.fail(std::string("existence disagrees (") + (fast ? "engine" : "enumeration") + " found a path " +
             (fast ? path_text(*fast) : path_text(*slow)) + ")");
  }
  if (o.ok) o.detail = std::to_string(n) + " instances, " + std::to_string(positive) + " reachable";
  return o;
}

// ---- 6, 7 ----

Outcome elimination(const std::vector<Sample>& corpus) {
  Outcome o;
  std::size_t structural_in = 0;
  for (auto& s : corpus) {
    if (!o.ok) break;
    auto rc = rule_counts(s.lab);
    structural_in += static_cast<std::size_t>(rc["l_gp"] + rc["l_path"]);
    if (!check(s.lab, target_calculus(s.calc, Calc::LktSt)).ok) {
      o.fail("labeled input rejected for " + print(s.goal));
      break;
    }
    Proof e;
    try {
      e = eliminate_structural(s.lab, s.calc);
    } catch (const std::exception& ex) {
      o.fail(std::string("elimination failed: ") + ex.what() + " for " + print(s.goal));
      break;
    }
    Report r = check(e, target_calculus(s.calc, Calc::LktPr));
    if (!r.ok) o.fail("output rejected for " + print(s.goal) + ": " + r.diagnostics[0].message);
    if (!labeled_equal(e.lab, s.lab.lab)) o.fail("end sequent changed for " + print(s.goal));
    auto out = rule_counts(e);
    if (out["l_gp"] + out["l_path"] != 0) o.fail("structural rule left for " + print(s.goal));
    bool poly = true;
    for_each_node(e, [&](const Proof& q) { poly = poly && is_polytree_sequent(q.lab); });
    if (!poly) o.fail("non-polytree sequent for " + print(s.goal));
  }
  if (corpus.size() < 200) o.fail("corpus has only " + std::to_string(corpus.size()) + " proofs");
  if (o.ok)
    o.detail = std::to_string(corpus.size()) + " proofs, " + std::to_string(structural_in) + " structural steps removed";
  return o;
}

Outcome round_trip(const std::vector<Sample>& corpus) {
  Outcome o;
  std::size_t nodes = 0;
  for (auto& s : corpus) {
    if (!o.ok) break;
    Proof r;
    try {
      r = pipeline_reverse(s.lab, s.calc);
    } catch (const std::exception& ex) {
      o.fail(std::string("pipeline failed: ") + ex.what() + " for " + print(s.goal));
      break;
    }
    nodes += proof_size(r);
    Report rep = check(r, s.calc);
    if (!rep.ok) o.fail("SKT output rejected for " + print(s.goal) + ": " + rep.diagnostics[0].message);
    if (!display_equivalent(s.skt.nested, r.nested)) o.fail("end sequent not display equivalent for " + print(s.goal));
  }
  if (corpus.size() < 200) o.fail("corpus has only " + std::to_string(corpus.size()) + " proofs");
  if (o.ok) o.detail = std::to_string(corpus.size()) + " proofs, " + std::to_string(nodes) + " SKT nodes";
  return o;
}

// ---- 8 ----

Outcome necessity_examples() {
  Outcome o;
  struct Case {
    const char* goal;
    const char* axioms;
  };
  for (auto [goal, axioms] : {Case{"<#><#>p -> <#>p", "<><> -> <>"},
                              Case{"<><><><>p -> <>p", "<><#><> -> <>\n<><> -> <#>"}}) {
    auto gp = parse_axiom_set(axioms);
    Budget b;
    b.depth = 12;
    auto d = prove_deep(parse_formula(goal), path_axioms(gp), b);
    if (!d) {
      o.fail(std::string("no proof of ") + goal);
      continue;
    }
    if (!check(*d, CalculusId{Calc::Dkt, gp}).ok) o.fail(std::string("DKT proof rejected: ") + goal);
    auto s = deep_to_shallow(*d, CalculusId{Calc::Dkt, gp});
    if (!check(s, CalculusId{Calc::Skt, gp}).ok) o.fail(std::string("SKT proof rejected: ") + goal);
    o.detail += std::string(o.detail.empty() ? "" : ", ") + goal + " (" + std::to_string(proof_size(*d)) + " deep / " +
                std::to_string(proof_size(s)) + " shallow nodes)";
  }
  return o;
}

// ---- 9 ----

bool rejected_with(const Proof& p, const CalculusId& c, const std::string& needle) {
  Report r = check(p, c);
  if (r.ok) return false;
  for (auto& d : r.diagnostics)
    if (d.message.find(needle) != std::string::npos) return true;
  return false;
}

Outcome negative_controls() {
  Outcome o;
  // reuses y as the eigenvariable of []p
  Proof eigen = read_proof(R"((infer l_box :concl "R(x,y), y:~p, x:[]p" :params (label "x" formula "[]p" fresh "y")
  (infer id :concl "R(x,y), R(x,y), y:~p, y:p")))",
                           true);
  if (!rejected_with(eigen, CalculusId{Calc::LktSt, {}}, "eigenvariable")) o.fail("eigenvariable violation accepted");
  // <><> is not in the completion of the empty set
  Proof dp = read_proof(R"((infer dp :concl "<>~p, o{o{p}}" :params (at "." to "0.0" formula "<>~p" path ". <> 0 <> 0.0")
  (infer id :concl "<>~p, o{o{p, ~p}}")))",
                        false);
  if (!rejected_with(dp, CalculusId{Calc::Dkt, {}}, "not in the completion")) o.fail("non-member witness accepted");
  CalculusId bad{Calc::Skt, {parse_axiom("<> -> e")}};
  Proof any = read_proof(R"((infer id :concl "p, ~p"))", false);
  if (!rejected_with(any, bad, "scope")) o.fail("(Pi:+, Sigma:e) axiom accepted");
  for (int depth = 0; depth <= 12; ++depth) {
    Budget b;
    b.depth = depth;
    if (prove_labeled(parse_formula("<>p -> []p"), {}, b)) o.fail("<>p -> []p proved at depth " + std::to_string(depth));
  }
  if (o.ok) o.detail = "eigenvariable, non-member witness, scope row rejected; <>p -> []p absent at depths 0..12";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance suite"};
  std::uint64_t seed = 20240611;
  int only = 0;
  app.add_option("--seed", seed, "random seed");
  app.add_option("--only", only, "run a single criterion");
  app.add_option("--data", data_dir, "data directory");
  CLI11_PARSE(app, argc, argv);

  struct Item {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  std::vector<Sample> corpus;
  bool corpus_built = false;
  auto get_corpus = [&]() -> const std::vector<Sample>& {
    if (!corpus_built) {
      Rng r(seed + 6);
      corpus = build_corpus(r, 220);
      corpus_built = true;
    }
    return corpus;
  };
  std::vector<Item> items{
      {1, "golden worked example", [] { return golden_example(); }},
      {2, "completion facts and oracle agreement", [&] { Rng r(seed + 2); return completion_facts(r); }},
      {3, "polytree round trips", [&] { Rng r(seed + 3); return polytree_round_trips(r); }},
      {4, "display invariance", [&] { Rng r(seed + 4); return display_invariance(r); }},
      {5, "CFL reachability vs enumeration", [&] { Rng r(seed + 5); return cfl_reachability(r); }},
      {6, "structural rule elimination", [&] { return elimination(get_corpus()); }},
      {7, "reverse pipeline round trip", [&] { return round_trip(get_corpus()); }},
      {8, "necessity examples via prove_deep", [] { return necessity_examples(); }},
      {9, "negative controls", [] { return negative_controls(); }},
  };
  int failed = 0;
  for (auto& it : items) {
    if (only && it.id != only) continue;
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = it.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << (o.ok ? "PASS" : "FAIL") << " [" << it.id << "] " << it.name << ": " << o.detail << " (" << s
              << " s)" << std::endl;
    failed += o.ok ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
