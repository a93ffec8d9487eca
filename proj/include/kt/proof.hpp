#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kt/axioms.hpp"
#include "kt/kernel.hpp"
#include "kt/propagation.hpp"
#include "kt/sequent.hpp"

namespace kt {

enum class Calc { Skt, Dkt, LktSt, LktPr };

struct CalculusId {
  Calc kind = Calc::Skt;
  std::vector<GeneralPathAxiom> axioms;
  bool modal_fragment = false;  // no black box / black diamond rules
  bool labeled() const { return kind == Calc::LktSt || kind == Calc::LktPr; }
};

std::string calculus_name(const CalculusId& c);
// "skt", "dkt", "lkt" (= lkt-st), "lkt-st", "lkt-pr"
Calc parse_calc(std::string_view s);
const std::vector<std::string>& rule_names(Calc c);
bool rule_in(const CalculusId& c, const std::string& rule);

using Params = std::map<std::string, std::string>;

struct Proof {
  std::string rule;
  Params params;
  bool labeled = false;
  NestedSequent nested;
  LabeledSequent lab;
  std::vector<Proof> premises;

  std::string conclusion_text() const { return labeled ? print(lab) : print(nested); }
};

Proof leaf(std::string rule, NestedSequent s, Params p = {});
Proof leaf(std::string rule, LabeledSequent s, Params p = {});

std::size_t proof_size(const Proof& p);
std::size_t proof_height(const Proof& p);
std::map<std::string, int> rule_counts(const Proof& p);
// rules along the leftmost branch, conclusion first
std::vector<std::string> rule_spine(const Proof& p);
// every conclusion in the proof, preorder
void for_each_node(const Proof& p, const std::function<void(const Proof&)>& f);

// (infer RULE :concl "SEQ" :params (KEY "VALUE" ...) PREMISE ...)
std::string write_proof(const Proof& p);
Proof read_proof(std::string_view text, bool labeled);

struct Diagnostic {
  std::string where;  // premise-index path from the end sequent, "." for the root
  std::string rule;
  std::string message;
};

struct Report {
  bool ok = true;
  std::size_t nodes = 0;
  std::vector<Diagnostic> diagnostics;
};

struct CheckOptions {
  bool allow_open = false;  // accept `open` leaves (derivation fragments)
};

Report check(const Proof& p, const CalculusId& c, const CheckOptions& opt = {});

// ---- instance matching shared by the checker, the translators and the prover ----

struct NestedMatch {
  std::vector<NestedSequent> premises;  // node ids preserved; new nodes fresh
  Address at;                           // node of the principal part (root for shallow rules)
  Address to;                           // target node of propagation rules
  std::optional<Formula> principal;
  std::size_t child = 0;                 // display / shallow diamond / fold child
  std::vector<std::size_t> items;       // w / c / split items at `at`
  std::optional<GeneralPathAxiom> axiom;
  std::vector<std::string> chain;       // fold: Pi chain ids, bottom last
  std::vector<std::string> fresh;       // brand new node ids
  std::map<std::string, std::string> copy_of;
  std::optional<PropPath> path;
};

// `concl` must carry ids.  With `expected`, returns the first candidate whose
// premises equal it; without, the first candidate fitting `params`.
// On failure returns nullopt and sets `err`.
std::optional<NestedMatch> match_nested(const NestedSequent& concl, const std::string& rule, const Params& params,
                                        const std::vector<NestedSequent>* expected, const CalculusId& c,
                                        const PathGrammar* grammar, IdGen& gen, std::string& err);

struct LabMatch {
  std::vector<LabeledSequent> premises;
  Label x, y;
  std::optional<Formula> principal;
  std::optional<GeneralPathAxiom> axiom;
  std::vector<Label> walk;      // gp / path: labels of the Pi walk x..y
  std::vector<Label> fresh;     // eigenvariables
  std::vector<RelAtom> added;   // gp / path: new relational atoms
  std::optional<PropPath> path;
};

std::optional<LabMatch> match_labeled(const LabeledSequent& concl, const std::string& rule, const Params& params,
                                      const std::vector<LabeledSequent>* expected, const CalculusId& c,
                                      const PathGrammar* grammar, std::string& err);

// Premises demanded by a rule instance; params must pin the instance down.
std::vector<NestedSequent> apply_rule(const NestedSequent& s, const std::string& rule, const Params& params,
                                      const CalculusId& c);
std::vector<LabeledSequent> apply_rule(const LabeledSequent& s, const std::string& rule, const Params& params,
                                       const CalculusId& c);

// rf/rp steps from `x` to the sequent displaying `target` at the root,
// topped by an `open` leaf.
Proof display_derivation(const NestedSequent& x, const Address& target);
const Proof& top_leaf(const Proof& p);

}  // namespace kt
