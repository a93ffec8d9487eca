#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kt/axioms.hpp"
#include "kt/sequent.hpp"

namespace kt {

// Node-level operations on nested sequents whose nodes carry ids.  Items of
// a node are indexed formulas first, then children.

class IdGen {
 public:
  explicit IdGen(std::string prefix = "n") : prefix_(std::move(prefix)) {}
  std::string fresh() { return prefix_ + std::to_string(next_++); }

 private:
  std::string prefix_;
  int next_ = 0;
};

void assign_ids(NestedSequent& s, IdGen& gen);  // only nodes with empty id
void clear_ids(NestedSequent& s);
std::optional<Address> address_of(const NestedSequent& s, const std::string& id);
void collect_ids(const NestedSequent& s, std::vector<std::string>& out);

std::string item_key(const Formula& f);
std::string item_key(const NestedChild& c);
std::vector<std::string> item_keys(const NestedSequent& n);
std::size_t item_count(const NestedSequent& n);

struct RuleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// display: the chosen child becomes the root
// X, o{Y} => b{X}, Y and X, b{Y} => o{X}, Y.  Upwards, (rp) displays a o-child
// and (rf) a b-child.
NestedSequent display_child(const NestedSequent& s, std::size_t child);
inline const char* display_rule(Diamond child_pol) { return child_pol == Diamond::White ? "rp" : "rf"; }
struct DisplayStep {
  std::string rule;
  std::size_t child;
  NestedSequent result;
};
std::vector<DisplayStep> display_steps(const NestedSequent& s, const Address& target);

bool has_literal_pair(const NestedSequent& n);
std::optional<std::size_t> find_formula(const NestedSequent& n, const Formula& f);

// All of the following copy `s` and act on the node at `at`.
NestedSequent op_replace(const NestedSequent& s, const Address& at, const Formula& f, const std::vector<Formula>& by);
NestedSequent op_add(const NestedSequent& s, const Address& at, const Formula& f);
// (box) / (black box): add a child holding the body; `keep` retains the principal
NestedSequent op_modal(const NestedSequent& s, const Address& at, const Formula& f, bool keep, const std::string& new_id);
NestedSequent op_remove_items(const NestedSequent& s, const Address& at, std::vector<std::size_t> items);
// duplicates items; copies get fresh ids, copy_of maps new id -> source id
NestedSequent op_copy_items(const NestedSequent& s, const Address& at, const std::vector<std::size_t>& items, IdGen& gen,
                            std::map<std::string, std::string>* copy_of);

// Root-level structural rule of a general path axiom.
// Pi nonempty: the chain starts at root child `child`; intermediate nodes must
// hold exactly the next nesting.  `chain` receives the ids of the Pi chain
// nodes, bottom last.  New Sigma nodes get fresh ids, the bottom keeps its id.
std::optional<NestedSequent> op_fold(const NestedSequent& s, const GeneralPathAxiom& a, std::size_t child, IdGen& gen,
                                     std::vector<std::string>* chain, std::vector<std::string>* fresh);
// Pi empty: root items `items` move into a new Sigma chain (all nodes fresh).
NestedSequent op_split(const NestedSequent& s, const GeneralPathAxiom& a, std::vector<std::size_t> items, IdGen& gen,
                       std::vector<std::string>* fresh);
// The Sigma chain hanging at root child `child`, bottom node last; empty when
// the shape does not fit.
std::vector<const NestedSequent*> chain_at(const NestedSequent& s, const DiamondString& w, std::size_t child);

// Multiset helpers on item keys.
bool sub_multiset(std::vector<std::string> a, std::vector<std::string> b);  // a <= b
std::vector<std::string> multiset_minus(std::vector<std::string> a, const std::vector<std::string>& b);

// A copy of `layout` carrying the node ids of the equal sequent `src`.
NestedSequent relayout(const NestedSequent& layout, const NestedSequent& src);

}  // namespace kt
