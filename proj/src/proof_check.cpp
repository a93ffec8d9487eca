#include <algorithm>

#include "kt/polytree.hpp"
#include "kt/proof.hpp"

namespace kt {

namespace {

std::size_t arity(const std::string& rule) {
  if (rule == "id" || rule == "open") return 0;
  if (rule == "and" || rule == "l_and") return 2;
  return 1;
}

struct Checker {
  const CalculusId& calc;
  const CheckOptions& opt;
  std::optional<PathGrammar> grammar;
  Report report;

  void fail(const std::string& where, const std::string& rule, const std::string& msg) {
    report.ok = false;
    report.diagnostics.push_back({where, rule, msg});
  }

  void node(const Proof& p, const std::string& where) {
    ++report.nodes;
    if (p.labeled != calc.labeled()) {
      fail(where, p.rule, "sequent kind does not fit the calculus");
      return;
    }
    if (p.rule == "open") {
      if (!opt.allow_open) fail(where, p.rule, "open leaf in a complete derivation");
      if (!p.premises.empty()) fail(where, p.rule, "open leaf with premises");
      return;
    }
    if (!rule_in(calc, p.rule)) {
      fail(where, p.rule, "unknown rule for calculus " + calculus_name(calc));
    } else if (p.premises.size() != arity(p.rule)) {
      fail(where, p.rule,
           "shape mismatch: expected " + std::to_string(arity(p.rule)) + " premises, got " +
               std::to_string(p.premises.size()));
    } else {
      std::string err;
      const PathGrammar* g = grammar ? &*grammar : nullptr;
      if (p.labeled) {
        std::vector<LabeledSequent> prem;
        for (auto& q : p.premises) prem.push_back(q.lab);
        if (!match_labeled(p.lab, p.rule, p.params, &prem, calc, g, err)) fail(where, p.rule, err);
      } else {
        std::vector<NestedSequent> prem;
        for (auto& q : p.premises) prem.push_back(q.nested);
        NestedSequent c = p.nested;
        IdGen gen("_c");
        clear_ids(c);
        assign_ids(c, gen);
        if (!match_nested(c, p.rule, p.params, &prem, calc, g, gen, err)) fail(where, p.rule, err);
      }
    }
  }

  void run(const Proof& root) {
    // explicit stack; translated proofs can be deep
    std::vector<std::pair<const Proof*, std::string>> stack{{&root, "."}};
    while (!stack.empty()) {
      auto [p, where] = stack.back();
      stack.pop_back();
      node(*p, where);
      for (std::size_t i = p->premises.size(); i-- > 0;) {
        std::string w = where == "." ? std::to_string(i) : where + "." + std::to_string(i);
        stack.emplace_back(&p->premises[i], w);
      }
    }
  }
};

}  // namespace

Report check(const Proof& p, const CalculusId& c, const CheckOptions& opt) {
  Checker ch{c, opt, std::nullopt, {}};
  for (auto& a : c.axioms) {
    try {
      check_scope(a);
    } catch (const ScopeError& e) {
      ch.fail(".", "-", std::string("scope error: ") + e.what());
      return ch.report;
    }
  }
  if (c.kind == Calc::Dkt || c.kind == Calc::LktPr) {
    try {
      ch.grammar = build_grammar(path_axioms(c.axioms));
    } catch (const ScopeError& e) {
      ch.fail(".", "-", std::string("scope error: ") + e.what());
      return ch.report;
    }
  }
  ch.run(p);

  // Labeled derivations without structural rules stay inside polytree sequents.
  if (ch.report.ok && c.labeled() && is_polytree_sequent(p.lab)) {
    auto counts = rule_counts(p);
    if (!counts.count("l_gp") && !counts.count("l_path")) {
      std::string bad;
      for_each_node(p, [&](const Proof& q) {
        if (bad.empty() && !is_polytree_sequent(q.lab)) bad = print(q.lab);
      });
      if (!bad.empty()) ch.fail(".", "-", "internal-consistency failure: not a labeled polytree sequent: " + bad);
    }
  }
  return ch.report;
}

std::vector<NestedSequent> apply_rule(const NestedSequent& s, const std::string& rule, const Params& params,
                                      const CalculusId& c) {
  NestedSequent x = s;
  IdGen gen("_a");
  clear_ids(x);
  assign_ids(x, gen);
  std::optional<PathGrammar> g;
  if (c.kind == Calc::Dkt) g = build_grammar(path_axioms(c.axioms));
  std::string err;
  auto m = match_nested(x, rule, params, nullptr, c, g ? &*g : nullptr, gen, err);
  if (!m) throw RuleError(rule + " not applicable: " + err);
  for (auto& p : m->premises) clear_ids(p);
  return m->premises;
}

std::vector<LabeledSequent> apply_rule(const LabeledSequent& s, const std::string& rule, const Params& params,
                                       const CalculusId& c) {
  std::optional<PathGrammar> g;
  if (c.kind == Calc::LktPr) g = build_grammar(path_axioms(c.axioms));
  std::string err;
  auto m = match_labeled(s, rule, params, nullptr, c, g ? &*g : nullptr, err);
  if (!m) throw RuleError(rule + " not applicable: " + err);
  return m->premises;
}

}  // namespace kt
