#include "kt/kernel.hpp"

#include <algorithm>
#include <functional>

namespace kt {

void assign_ids(NestedSequent& s, IdGen& gen) {
  if (s.id.empty()) s.id = gen.fresh();
  for (auto& c : s.children) assign_ids(c.node, gen);
}

void clear_ids(NestedSequent& s) {
  s.id.clear();
  for (auto& c : s.children) clear_ids(c.node);
}

std::optional<Address> address_of(const NestedSequent& s, const std::string& id) {
  if (s.id == id) return Address{};
  for (std::size_t i = 0; i < s.children.size(); ++i) {
    if (auto a = address_of(s.children[i].node, id)) {
      a->insert(a->begin(), static_cast<int>(i));
      return a;
    }
  }
  return std::nullopt;
}

void collect_ids(const NestedSequent& s, std::vector<std::string>& out) {
  out.push_back(s.id);
  for (auto& c : s.children) collect_ids(c.node, out);
}

std::string item_key(const Formula& f) { return f.text(); }
std::string item_key(const NestedChild& c) {
  return (c.pol == Diamond::White ? "o{" : "b{") + canonical(c.node) + "}";
}

std::vector<std::string> item_keys(const NestedSequent& n) {
  std::vector<std::string> k;
  for (auto& f : n.formulas) k.push_back(item_key(f));
  for (auto& c : n.children) k.push_back(item_key(c));
  return k;
}

std::size_t item_count(const NestedSequent& n) { return n.formulas.size() + n.children.size(); }

namespace {

NestedSequent& at_node(NestedSequent& s, const Address& a) {
  NestedSequent* n = node_at(s, a);
  if (!n) throw RuleError("no node at address " + address_text(a));
  return *n;
}

NestedSequent without_child(const NestedSequent& s, std::size_t child) {
  NestedSequent rest;
  rest.id = s.id;
  rest.formulas = s.formulas;
  for (std::size_t i = 0; i < s.children.size(); ++i)
    if (i != child) rest.children.push_back(s.children[i]);
  return rest;
}


void refresh(NestedSequent& n, IdGen& gen, std::map<std::string, std::string>* copy_of) {
  std::string nid = gen.fresh();
  if (copy_of) copy_of->emplace(nid, n.id);
  n.id = nid;
  for (auto& c : n.children) refresh(c.node, gen, copy_of);
}

NestedSequent wrap_chain(const DiamondString& w, NestedSequent bottom, IdGen& gen, std::vector<std::string>* fresh,
                         bool fresh_bottom) {
  // innermost first
  if (fresh_bottom) {
    bottom.id = gen.fresh();
  }
  std::vector<std::string> ids;
  NestedSequent cur = std::move(bottom);
  ids.push_back(cur.id);
  for (std::size_t k = w.size() - 1; k > 0; --k) {
    NestedSequent outer;
    outer.id = gen.fresh();
    outer.add(w[k], std::move(cur));
    cur = std::move(outer);
    ids.push_back(cur.id);
  }
  if (fresh) {
    // outermost first; the bottom is listed only when it is new
    for (auto it = ids.rbegin(); it != ids.rend(); ++it)
      if (fresh_bottom || *it != ids.front()) fresh->push_back(*it);
  }
  return cur;
}

}  // namespace

NestedSequent display_child(const NestedSequent& s, std::size_t child) {
  if (child >= s.children.size()) throw RuleError("no child " + std::to_string(child) + " to display");
  NestedSequent top = s.children[child].node;
  top.add(inv(s.children[child].pol), without_child(s, child));
  return top;
}

std::vector<DisplayStep> display_steps(const NestedSequent& s, const Address& target) {
  std::vector<DisplayStep> out;
  NestedSequent cur = s;
  for (int k : target) {
    auto idx = static_cast<std::size_t>(k);
    if (idx >= cur.children.size()) throw RuleError("no node at address " + address_text(target));
    std::string rule = display_rule(cur.children[idx].pol);
    cur = display_child(cur, idx);
    out.push_back({rule, idx, cur});
  }
  return out;
}

bool has_literal_pair(const NestedSequent& n) {
  for (auto& f : n.formulas) {
    if (f.kind() != FKind::Pos) continue;
    for (auto& g : n.formulas)
      if (g.kind() == FKind::Neg && g.name() == f.name()) return true;
  }
  return false;
}

std::optional<std::size_t> find_formula(const NestedSequent& n, const Formula& f) {
  for (std::size_t i = 0; i < n.formulas.size(); ++i)
    if (n.formulas[i] == f) return i;
  return std::nullopt;
}

NestedSequent op_replace(const NestedSequent& s, const Address& at, const Formula& f, const std::vector<Formula>& by) {
  NestedSequent r = s;
  auto& n = at_node(r, at);
  auto i = find_formula(n, f);
  if (!i) throw RuleError("principal formula " + print(f) + " not found");
  n.formulas.erase(n.formulas.begin() + static_cast<long>(*i));
  for (auto& b : by) n.formulas.push_back(b);
  return r;
}

NestedSequent op_add(const NestedSequent& s, const Address& at, const Formula& f) {
  NestedSequent r = s;
  at_node(r, at).formulas.push_back(f);
  return r;
}

NestedSequent op_modal(const NestedSequent& s, const Address& at, const Formula& f, bool keep, const std::string& new_id) {
  if (f.kind() != FKind::Box && f.kind() != FKind::BBox) throw RuleError("not a box formula");
  NestedSequent r = keep ? s : op_replace(s, at, f, {});
  if (keep && !find_formula(at_node(r, at), f)) throw RuleError("principal formula " + print(f) + " not found");
  NestedSequent child;
  child.id = new_id;
  child.add(f.left());
  at_node(r, at).add(f.kind() == FKind::Box ? Diamond::White : Diamond::Black, std::move(child));
  return r;
}

NestedSequent op_remove_items(const NestedSequent& s, const Address& at, std::vector<std::size_t> items) {
  NestedSequent r = s;
  auto& n = at_node(r, at);
  std::sort(items.rbegin(), items.rend());
  std::size_t nf = n.formulas.size();
  for (auto i : items) {
    if (i < nf)
      n.formulas.erase(n.formulas.begin() + static_cast<long>(i));
    else if (i - nf < n.children.size())
      n.children.erase(n.children.begin() + static_cast<long>(i - nf));
    else
      throw RuleError("item index out of range");
  }
  return r;
}

NestedSequent op_copy_items(const NestedSequent& s, const Address& at, const std::vector<std::size_t>& items, IdGen& gen,
                            std::map<std::string, std::string>* copy_of) {
  NestedSequent r = s;
  auto& n = at_node(r, at);
  std::size_t nf = n.formulas.size();
  std::vector<Formula> fs;
  std::vector<NestedChild> cs;
  for (auto i : items) {
    if (i < nf) {
      fs.push_back(n.formulas[i]);
    } else if (i - nf < n.children.size()) {
      NestedChild c = n.children[i - nf];
      refresh(c.node, gen, copy_of);
      cs.push_back(std::move(c));
    } else {
      throw RuleError("item index out of range");
    }
  }
  for (auto& f : fs) n.formulas.push_back(f);
  for (auto& c : cs) n.children.push_back(std::move(c));
  return r;
}

std::vector<const NestedSequent*> chain_at(const NestedSequent& s, const DiamondString& w, std::size_t child) {
  std::vector<const NestedSequent*> out;
  if (w.empty() || child >= s.children.size() || s.children[child].pol != w[0]) return {};
  const NestedSequent* cur = &s.children[child].node;
  out.push_back(cur);
  for (std::size_t k = 1; k < w.size(); ++k) {
    if (!cur->formulas.empty() || cur->children.size() != 1 || cur->children[0].pol != w[k]) return {};
    cur = &cur->children[0].node;
    out.push_back(cur);
  }
  return out;
}

std::optional<NestedSequent> op_fold(const NestedSequent& s, const GeneralPathAxiom& a, std::size_t child, IdGen& gen,
                                     std::vector<std::string>* chain, std::vector<std::string>* fresh) {
  check_scope(a);
  auto ch = chain_at(s, a.ante, child);
  if (ch.empty()) return std::nullopt;
  if (chain)
    for (auto* n : ch) chain->push_back(n->id);
  NestedSequent bottom = *ch.back();
  NestedSequent r = without_child(s, child);
  r.add(a.cons[0], wrap_chain(a.cons, std::move(bottom), gen, fresh, false));
  return r;
}

NestedSequent op_split(const NestedSequent& s, const GeneralPathAxiom& a, std::vector<std::size_t> items, IdGen& gen,
                       std::vector<std::string>* fresh) {
  check_scope(a);
  if (!a.ante.empty()) throw RuleError("split needs an empty antecedent");
  if (a.cons.empty()) return s;
  NestedSequent bottom;
  std::size_t nf = s.formulas.size();
  std::sort(items.begin(), items.end());
  for (auto i : items) {
    if (i < nf)
      bottom.formulas.push_back(s.formulas[i]);
    else if (i - nf < s.children.size())
      bottom.children.push_back(s.children[i - nf]);
    else
      throw RuleError("item index out of range");
  }
  NestedSequent r = op_remove_items(s, {}, items);
  r.add(a.cons[0], wrap_chain(a.cons, std::move(bottom), gen, fresh, true));
  return r;
}

bool sub_multiset(std::vector<std::string> a, std::vector<std::string> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::vector<std::string> multiset_minus(std::vector<std::string> a, const std::vector<std::string>& b) {
  for (auto& x : b) {
    auto it = std::find(a.begin(), a.end(), x);
    if (it != a.end()) a.erase(it);
  }
  return a;
}

// `layout` with the ids of the equal sequent `src`
static void transfer_ids(NestedSequent& layout, const NestedSequent& src) {
  layout.id = src.id;
  std::vector<bool> used(src.children.size(), false);
  for (auto& c : layout.children) {
    std::string key = canonical(c.node);
    bool found = false;
    for (std::size_t k = 0; k < src.children.size() && !found; ++k) {
      if (used[k] || src.children[k].pol != c.pol || canonical(src.children[k].node) != key) continue;
      used[k] = true;
      found = true;
      transfer_ids(c.node, src.children[k].node);
    }
    if (!found) throw RuleError("sequents differ");
  }
}

NestedSequent relayout(const NestedSequent& layout, const NestedSequent& src) {
  NestedSequent out = layout;
  transfer_ids(out, src);
  return out;
}

}  // namespace kt
