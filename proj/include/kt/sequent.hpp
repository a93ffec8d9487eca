#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "kt/formula.hpp"

namespace kt {

struct NestedChild;

// A node of a nested sequent.  `id` names the node for bookkeeping across
// rule applications and is ignored by equality and printing.  `holes` is
// only used when the value acts as a context.
struct NestedSequent {
  std::vector<Formula> formulas;
  std::vector<NestedChild> children;
  std::string id;
  std::vector<int> holes;

  bool empty() const { return formulas.empty() && children.empty(); }
  NestedSequent& add(Formula f);
  NestedSequent& add(Diamond pol, NestedSequent s);
  std::size_t node_count() const;
};

struct NestedChild {
  Diamond pol;
  NestedSequent node;
};

using Context = NestedSequent;

// Child-index path from the root.  Printed "." for the root, "0.2" otherwise.
using Address = std::vector<int>;
std::string address_text(const Address& a);
Address parse_address(std::string_view s);
const NestedSequent* node_at(const NestedSequent& s, const Address& a);
NestedSequent* node_at(NestedSequent& s, const Address& a);

NestedSequent parse_nested(std::string_view text);
std::string print(const NestedSequent& s);
std::string canonical(const NestedSequent& s);
bool nested_equal(const NestedSequent& a, const NestedSequent& b);

Formula interpret(const NestedSequent& s);
std::vector<NestedSequent> substructures(const NestedSequent& s);

NestedSequent plug(const Context& c, const std::map<int, NestedSequent>& fillers);
std::vector<std::map<int, NestedSequent>> match_context(const Context& pattern, const NestedSequent& target);

struct ArityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---- labeled sequents ----

using Label = std::string;

struct RelAtom {
  Label x, y;
  friend auto operator<=>(const RelAtom&, const RelAtom&) = default;
};

struct LabeledFormula {
  Label x;
  Formula f;
  friend bool operator==(const LabeledFormula&, const LabeledFormula&) = default;
  friend auto operator<=>(const LabeledFormula& a, const LabeledFormula& b) {
    if (auto c = a.x <=> b.x; c != 0) return c;
    return a.f <=> b.f;
  }
};

// Relational atoms form a set (kept in insertion order for printing);
// labeled formulas form a multiset.
struct LabeledSequent {
  std::vector<RelAtom> rel;
  std::vector<LabeledFormula> lf;

  bool add_rel(const Label& x, const Label& y);
  bool has_rel(const Label& x, const Label& y) const;
  void erase_rel(const Label& x, const Label& y);
  void add(const Label& x, Formula f) { lf.push_back({x, std::move(f)}); }
  bool has(const Label& x, const Formula& f) const;
  bool erase_one(const Label& x, const Formula& f);
  std::set<Label> labels() const;
  bool empty() const { return rel.empty() && lf.empty(); }
};

LabeledSequent parse_labeled(std::string_view text);
std::string print(const LabeledSequent& s);
std::string canonical(const LabeledSequent& s);
bool labeled_equal(const LabeledSequent& a, const LabeledSequent& b);
// Equality up to a bijective renaming of labels.
std::optional<std::map<Label, Label>> labeled_iso(const LabeledSequent& a, const LabeledSequent& b);

// s[x/y]: every y becomes x; duplicate relational atoms collapse.
LabeledSequent substitute(const LabeledSequent& s, const Label& x, const Label& y);

// Fresh label supply.  Prefix mode yields _v0, _v1, ...; letter mode walks
// the alphabet downwards from z and falls back to the prefix scheme.
class LabelGen {
 public:
  enum class Mode { Prefix, Letters };
  explicit LabelGen(Mode m = Mode::Prefix) : mode_(m) {}
  void reserve(const Label& l) { used_.insert(l); }
  template <class It>
  void reserve(It b, It e) {
    for (; b != e; ++b) used_.insert(*b);
  }
  Label fresh();

 private:
  Mode mode_;
  std::set<Label> used_;
  int letter_ = 0;
  int counter_ = 0;
};

}  // namespace kt
