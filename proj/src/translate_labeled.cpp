#include <algorithm>
#include <functional>
#include <set>

#include "kt/polytree.hpp"
#include "kt/translate.hpp"

namespace kt {

CalculusId target_calculus(const CalculusId& c, Calc kind) {
  CalculusId out = c;
  out.kind = kind;
  return out;
}

namespace {

void push_atom(std::vector<RelAtom>& q, Diamond d, const Label& a, const Label& b) {
  RelAtom r = d == Diamond::White ? RelAtom{a, b} : RelAtom{b, a};
  if (std::find(q.begin(), q.end(), r) == q.end()) q.push_back(r);
}

// image of a nested sequent under a node tagging, plus extra atoms
LabeledSequent image(const NestedSequent& s, const std::map<std::string, Label>& tag, const std::vector<RelAtom>& q) {
  LabeledSequent out;
  std::vector<LabeledFormula> fs;
  std::function<void(const NestedSequent&)> walk = [&](const NestedSequent& n) {
    const Label& t = tag.at(n.id);
    for (auto& f : n.formulas) fs.push_back({t, f});
    for (auto& c : n.children) {
      const Label& u = tag.at(c.node.id);
      if (c.pol == Diamond::White)
        out.add_rel(t, u);
      else
        out.add_rel(u, t);
      walk(c.node);
    }
  };
  walk(s);
  for (auto& r : q) out.add_rel(r.x, r.y);
  out.lf = std::move(fs);
  return out;
}

const char* labeled_rule(const std::string& r) {
  static const std::map<std::string, const char*> m = {
      {"id", "id"},       {"or", "l_or"},       {"and", "l_and"}, {"wbox", "l_box"}, {"bbox", "l_bbox"},
      {"wdia", "l_dia"},  {"bdia", "l_bdia"},   {"c", "l_c"},     {"w", "l_w"},      {"gp", "l_gp"},
      {"path", "l_path"},
  };
  auto it = m.find(r);
  if (it == m.end()) throw TranslationError("no labeled counterpart for rule " + r);
  return it->second;
}

struct ShallowToLabeled {
  const CalculusId& calc;
  IdGen ids{"s"};
  LabelGen labels{LabelGen::Mode::Letters};

  Proof run(const Proof& p, const NestedSequent& S0, const std::map<std::string, Label>& tag,
            const std::vector<RelAtom>& q) {
    NestedSequent S = relayout(p.nested, S0);
    LabeledSequent L = image(S, tag, q);
    const Label& root = tag.at(S.id);
    if (p.rule == "id") return leaf("id", L);
    std::vector<NestedSequent> expected;
    for (auto& pr : p.premises) expected.push_back(pr.nested);
    std::string err;
    auto m = match_nested(S, p.rule, p.params, &expected, calc, nullptr, ids, err);
    if (!m) throw TranslationError("rule " + p.rule + " does not fit: " + err);

    const bool structural = p.rule == "gp" || p.rule == "path";
    const bool split = structural && m->axiom && m->axiom->ante.empty();
    std::vector<Proof> subs;
    Params params;
    for (std::size_t i = 0; i < m->premises.size(); ++i) {
      const NestedSequent& P = m->premises[i];
      auto t2 = tag;
      auto q2 = q;
      for (std::size_t k = 0; k < m->fresh.size(); ++k) {
        if (split && k + 1 == m->fresh.size())
          t2[m->fresh[k]] = root;
        else
          t2[m->fresh[k]] = labels.fresh();
      }
      std::vector<std::string> all;
      collect_ids(P, all);
      for (auto& id : all) {
        if (t2.count(id)) continue;
        auto c = m->copy_of.find(id);
        if (c == m->copy_of.end()) throw TranslationError("untracked node in premise");
        t2[id] = t2.at(c->second);
      }
      if (structural && !split) {
        Label cur = root;
        for (std::size_t k = 0; k < m->axiom->ante.size(); ++k) {
          Label nxt = t2.at(m->chain[k]);
          push_atom(q2, m->axiom->ante[k], cur, nxt);
          cur = nxt;
        }
      }
      if (i == 0) {
        if (p.rule == "wbox" || p.rule == "bbox") params["fresh"] = t2.at(m->fresh[0]);
        if (p.rule == "wdia" || p.rule == "bdia") params["to"] = t2.at(S.children[m->child].node.id);
        if (structural) {
          std::string fr;
          for (std::size_t k = 0; k + (split ? 1 : 0) < m->fresh.size(); ++k)
            fr += (fr.empty() ? "" : " ") + t2.at(m->fresh[k]);
          params["axiom"] = axiom_text(*m->axiom);
          params["label"] = root;
          params["to"] = split ? root : t2.at(m->chain.back());
          if (!fr.empty()) params["fresh"] = fr;
        }
      }
      subs.push_back(run(p.premises[i], P, t2, q2));
    }
    if (p.rule == "rf" || p.rule == "rp") return std::move(subs[0]);
    if (subs.size() == 1 && labeled_equal(subs[0].lab, L)) return std::move(subs[0]);
    Proof out;
    out.labeled = true;
    out.lab = std::move(L);
    out.rule = labeled_rule(p.rule);
    if (m->principal && !structural) {
      params["label"] = root;
      params["formula"] = print(*m->principal);
    }
    out.params = std::move(params);
    out.premises = std::move(subs);
    return out;
  }
};

}  // namespace

Proof shallow_to_labeled(const Proof& p, const CalculusId& c, const Label& start) {
  if (p.labeled || c.kind != Calc::Skt) throw TranslationError("expected an SKT proof");
  ShallowToLabeled t{c};
  NestedSequent plain = p.nested;
  clear_ids(plain);
  std::map<std::string, Label> amap;
  to_polytree(start, plain, t.labels, &amap);
  t.labels.reserve(start);
  NestedSequent S = plain;
  assign_ids(S, t.ids);
  std::map<std::string, Label> tag;
  std::function<void(const NestedSequent&, Address&)> walk = [&](const NestedSequent& n, Address& a) {
    tag[n.id] = a.empty() ? start : amap.at(address_text(a));
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      a.push_back(static_cast<int>(i));
      walk(n.children[i].node, a);
      a.pop_back();
    }
  };
  Address a;
  walk(S, a);
  return t.run(p, S, tag, {});
}

// ---- structural rule elimination ----

namespace {

using AtomKey = std::pair<Label, Label>;

PropPath reversed(const PropPath& p) {
  PropPath r;
  r.nodes.assign(p.nodes.rbegin(), p.nodes.rend());
  for (auto it = p.steps.rbegin(); it != p.steps.rend(); ++it) r.steps.push_back(inv(*it));
  return r;
}

void append(PropPath& a, const PropPath& b) {
  if (a.nodes.empty()) {
    a = b;
    return;
  }
  a.nodes.insert(a.nodes.end(), b.nodes.begin() + 1, b.nodes.end());
  a.steps.insert(a.steps.end(), b.steps.begin(), b.steps.end());
}

struct Eliminator {
  CalculusId st;
  PathGrammar grammar;

  // a single step u -d-> w over real atoms
  static PropPath step(const std::map<AtomKey, PropPath>& v, const Label& u, Diamond d, const Label& w) {
    AtomKey k = d == Diamond::White ? AtomKey{u, w} : AtomKey{w, u};
    auto it = v.find(k);
    if (it == v.end()) return PropPath{{u, w}, {d}};
    return d == Diamond::White ? it->second : reversed(it->second);
  }

  static PropPath expand(const std::map<AtomKey, PropPath>& v, const PropPath& p) {
    PropPath out{{p.nodes.front()}, {}};
    for (std::size_t k = 0; k < p.steps.size(); ++k) append(out, step(v, p.nodes[k], p.steps[k], p.nodes[k + 1]));
    return out;
  }

  static LabeledSequent strip(const LabeledSequent& s, const std::map<AtomKey, PropPath>& v) {
    LabeledSequent r = s;
    std::erase_if(r.rel, [&](const RelAtom& a) { return v.count({a.x, a.y}) > 0; });
    return r;
  }

  // `kept` holds real atoms a lower weakening removed while an expansion still
  // needs them; they stay in every sequent above.
  Proof run(const Proof& p, const std::map<AtomKey, PropPath>& v, const std::vector<RelAtom>& kept = {}) {
    LabeledSequent C = strip(p.lab, v);
    for (auto& a : kept) C.add_rel(a.x, a.y);
    if (p.rule == "id") return leaf("id", C, p.params);
    std::vector<LabeledSequent> expected;
    for (auto& q : p.premises) expected.push_back(q.lab);
    std::string err;
    auto m = match_labeled(p.lab, p.rule, p.params, &expected, st, &grammar, err);
    if (!m) throw TranslationError("rule " + p.rule + " does not fit: " + err);

    if (p.rule == "l_gp" || p.rule == "l_path") {
      if (!m->axiom->is_path()) throw ScopeError("structural rule of a non-path axiom: " + axiom_text(*m->axiom));
      if (m->added.empty()) return run(p.premises[0], v, kept);
      PropPath walk{{m->walk.front()}, {}};
      for (std::size_t k = 0; k < m->axiom->ante.size(); ++k)
        append(walk, step(v, m->walk[k], m->axiom->ante[k], m->walk[k + 1]));
      const RelAtom& a = m->added.front();
      auto v2 = v;
      v2[{a.x, a.y}] = m->axiom->cons[0] == Diamond::White ? walk : reversed(walk);
      return run(p.premises[0], v2, kept);
    }

    Proof out;
    out.labeled = true;
    out.lab = C;
    out.rule = p.rule;
    out.params = p.params;
    if (p.rule == "l_dia" || p.rule == "l_bdia") {
      Diamond d = p.rule == "l_dia" ? Diamond::White : Diamond::Black;
      AtomKey k = d == Diamond::White ? AtomKey{m->x, m->y} : AtomKey{m->y, m->x};
      if (v.count(k)) {
        out.rule = "l_prop";
        out.params = {{"label", m->x}, {"formula", print(*m->principal)}, {"to", m->y},
                      {"path", path_text(step(v, m->x, d, m->y))}};
      }
    } else if (p.rule == "l_prop") {
      out.params["path"] = path_text(expand(v, *m->path));
    } else if (p.rule == "l_w") {
      const LabeledSequent& P = p.premises[0].lab;
      auto keep = kept;
      for (auto& [k, path] : v) {
        if (!P.has_rel(k.first, k.second)) continue;
        for (std::size_t i = 0; i < path.steps.size(); ++i) {
          RelAtom a = path.steps[i] == Diamond::White ? RelAtom{path.nodes[i], path.nodes[i + 1]}
                                                      : RelAtom{path.nodes[i + 1], path.nodes[i]};
          if (!P.has_rel(a.x, a.y) && std::find(keep.begin(), keep.end(), a) == keep.end()) keep.push_back(a);
        }
      }
      Proof sub = run(p.premises[0], v, keep);
      if (labeled_equal(sub.lab, C)) return sub;
      out.premises.push_back(std::move(sub));
      return out;
    } else if (p.rule == "l_s") {
      std::set<Label> used;
      for (auto& [k, path] : v) {
        used.insert({k.first, k.second});
        used.insert(path.nodes.begin(), path.nodes.end());
      }
      if (used.count(m->x) || used.count(m->y))
        throw ScopeError("substitution touches a label used by a structural rule");
    }
    for (auto& q : p.premises) out.premises.push_back(run(q, v, kept));
    if (p.rule == "l_c" && labeled_equal(out.premises[0].lab, C)) return std::move(out.premises[0]);
    return out;
  }
};

}  // namespace

Proof eliminate_structural(const Proof& p, const CalculusId& c) {
  if (!p.labeled) throw TranslationError("expected a labeled proof");
  for (auto& a : c.axioms)
    if (!a.is_path()) throw ScopeError("not a path axiom: " + axiom_text(a));
  Eliminator e{target_calculus(c, Calc::LktSt), build_grammar(path_axioms(c.axioms))};
  return e.run(p, {});
}

}  // namespace kt
