#include <functional>
#include <set>

#include "kt/polytree.hpp"
#include "kt/translate.hpp"

namespace kt {

namespace {

void strip_ids(Proof& p) {
  std::vector<Proof*> st{&p};
  while (!st.empty()) {
    Proof* q = st.back();
    st.pop_back();
    clear_ids(q->nested);
    for (auto& c : q->premises) st.push_back(&c);
  }
}

std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (auto i : v) s += (s.empty() ? "" : " ") + std::to_string(i);
  return s;
}

std::vector<std::string> formula_keys(const std::vector<Formula>& fs) {
  std::vector<std::string> k;
  for (auto& f : fs) k.push_back(f.text());
  return k;
}

// linear chain of rule applications closed by `tops`
Proof nest(std::vector<Proof> steps, std::vector<Proof> tops) {
  if (steps.empty()) {
    if (tops.size() != 1) throw TranslationError("dangling branch");
    return std::move(tops[0]);
  }
  steps.back().premises = std::move(tops);
  for (std::size_t k = steps.size() - 1; k > 0; --k) steps[k - 1].premises.push_back(std::move(steps[k]));
  return std::move(steps[0]);
}

// ---- labeled -> deep ----

struct LabeledToDeep {
  CalculusId dkt;
  Label start;

  NestedSequent deep_of(const LabeledSequent& L, const std::vector<RelAtom>& ghosts,
                        std::map<Label, Address>* addr = nullptr) const {
    LabeledSequent H = L;
    for (auto& g : ghosts) H.add_rel(g.x, g.y);
    Polytree g = graph_of(H);
    if (!g.has_vertex(start)) g.add_vertex(start);
    if (!is_polytree(g)) throw TranslationError("not a polytree sequent: " + print(L));
    return to_nested(start, g, addr);
  }

  // w / c steps turning D into D' node by node
  static std::vector<Proof> adjust(const NestedSequent& D, const NestedSequent& Dp, bool contract) {
    std::vector<Proof> out;
    NestedSequent cur = D;
    std::vector<std::string> order;
    collect_ids(D, order);
    std::set<std::string> gone;
    for (auto& id : order) {
      if (gone.count(id)) continue;
      Address a = *address_of(cur, id);
      auto pa = address_of(Dp, id);
      if (!pa) throw TranslationError("weakening drops the start node");
      const NestedSequent& n = *node_at(cur, a);
      const NestedSequent& pn = *node_at(Dp, *pa);
      std::vector<std::size_t> items;
      auto kc = formula_keys(n.formulas), kp = formula_keys(pn.formulas);
      auto extra = contract ? multiset_minus(kp, kc) : multiset_minus(kc, kp);
      std::vector<bool> used(kc.size(), false);
      for (auto& e : extra)
        for (std::size_t i = 0; i < kc.size(); ++i)
          if (!used[i] && kc[i] == e) {
            used[i] = true;
            items.push_back(i);
            break;
          }
      if (!contract)
        for (std::size_t k = 0; k < n.children.size(); ++k)
          if (!address_of(Dp, n.children[k].node.id)) {
            items.push_back(n.formulas.size() + k);
            std::vector<std::string> sub;
            collect_ids(n.children[k].node, sub);
            gone.insert(sub.begin(), sub.end());
          }
      if (items.empty()) continue;
      std::sort(items.begin(), items.end());
      out.push_back(leaf(contract ? "c" : "w", cur, {{"at", address_text(a)}, {"items", join(items)}}));
      if (contract) {
        IdGen tmp("_t");
        cur = op_copy_items(cur, a, items, tmp, nullptr);
      } else {
        cur = op_remove_items(cur, a, items);
      }
    }
    if (!nested_equal(cur, Dp)) throw TranslationError("structural step does not reach the premise");
    return out;
  }

  std::vector<RelAtom> ghosts_after(const LabeledSequent& C, const LabeledSequent& P,
                                    const std::vector<RelAtom>& ghosts) const {
    LabeledSequent H = C;
    for (auto& g : ghosts) H.add_rel(g.x, g.y);
    Polytree g = graph_of(H);
    if (!g.has_vertex(start)) g.add_vertex(start);
    std::vector<RelAtom> out;
    for (auto& l : P.labels()) {
      auto path = tree_path(g, start, l);
      if (path.empty()) throw TranslationError("label " + l + " is not connected to " + start);
      for (std::size_t k = 0; k + 1 < path.size(); ++k) {
        RelAtom r = H.has_rel(path[k], path[k + 1]) ? RelAtom{path[k], path[k + 1]} : RelAtom{path[k + 1], path[k]};
        if (!P.has_rel(r.x, r.y) && std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
      }
    }
    return out;
  }

  Proof run(const Proof& p, const std::vector<RelAtom>& ghosts) {
    std::map<Label, Address> addr;
    NestedSequent D = deep_of(p.lab, ghosts, &addr);
    auto at = [&](const Label& l) {
      auto it = addr.find(l);
      if (it == addr.end()) throw TranslationError("unknown label " + l);
      return it->second;
    };
    if (p.rule == "id") return leaf("id", D);
    std::vector<LabeledSequent> expected;
    for (auto& q : p.premises) expected.push_back(q.lab);
    std::string err;
    auto m = match_labeled(p.lab, p.rule, p.params, &expected, target_calculus(dkt, Calc::LktPr), nullptr, err);
    if (!m && p.rule != "l_prop") throw TranslationError("rule " + p.rule + " does not fit: " + err);

    auto sub = [&](std::size_t i, const std::vector<RelAtom>& g) { return run(p.premises[i], g); };
    const std::string& r = p.rule;
    if (r == "l_or" || r == "l_and") {
      Proof out = leaf(r == "l_or" ? "or" : "and", D,
                       {{"at", address_text(at(m->x))}, {"formula", print(*m->principal)}});
      for (std::size_t i = 0; i < p.premises.size(); ++i) out.premises.push_back(sub(i, ghosts));
      return out;
    }
    if (r == "l_box" || r == "l_bbox") {
      Address a = at(m->x);
      NestedSequent D1 = op_modal(D, a, *m->principal, true, m->y);
      std::size_t idx = *find_formula(*node_at(D1, a), *m->principal);
      std::vector<Proof> steps;
      steps.push_back(leaf(r == "l_box" ? "wbox" : "bbox", D,
                           {{"at", address_text(a)}, {"formula", print(*m->principal)}}));
      steps.push_back(leaf("w", D1, {{"at", address_text(a)}, {"items", std::to_string(idx)}}));
      return nest(std::move(steps), {sub(0, ghosts)});
    }
    if (r == "l_dia" || r == "l_bdia") {
      Address ax = at(m->x), ay = at(m->y);
      bool down = ay.size() == ax.size() + 1;
      std::string rule = std::string(r == "l_dia" ? "dia" : "bdia") + (down ? "1" : "2");
      Proof out = leaf(rule, D, {{"at", address_text(ax)}, {"to", address_text(ay)}, {"formula", print(*m->principal)}});
      out.premises.push_back(sub(0, ghosts));
      return out;
    }
    if (r == "l_prop") {
      PropPath path = parse_path(p.params.at("path"));
      for (auto& n : path.nodes) n = address_text(at(n));
      Proof out = leaf("dp", D,
                       {{"at", path.from()}, {"to", path.to()}, {"formula", p.params.at("formula")},
                        {"path", path_text(path)}});
      out.premises.push_back(sub(0, ghosts));
      return out;
    }
    if (r == "l_w" || r == "l_c") {
      const LabeledSequent& P = p.premises[0].lab;
      auto g2 = r == "l_w" ? ghosts_after(p.lab, P, ghosts) : ghosts;
      NestedSequent Dp = deep_of(P, g2);
      return nest(adjust(D, Dp, r == "l_c"), {sub(0, g2)});
    }
    throw TranslationError("rule " + r + " has no deep counterpart");
  }
};

}  // namespace

Proof labeled_to_deep(const Proof& p, const CalculusId& c, std::optional<Label> start) {
  if (!p.labeled) throw TranslationError("expected a labeled proof");
  if (!start) {
    if (!p.lab.lf.empty())
      start = p.lab.lf.front().x;
    else if (!p.lab.rel.empty())
      start = p.lab.rel.front().x;
    else
      start = "x";
  }
  LabeledToDeep t{target_calculus(c, Calc::Dkt), *start};
  Proof out = t.run(p, {});
  strip_ids(out);
  return out;
}

}  // namespace kt
