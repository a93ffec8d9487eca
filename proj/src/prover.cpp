#include "kt/prover.hpp"

#include <functional>
#include <set>

#include "kt/polytree.hpp"
#include "kt/translate.hpp"

namespace kt {

namespace {

struct NodeInfo {
  Address addr;
  const NestedSequent* node;
};

std::vector<NodeInfo> nodes_of(const NestedSequent& s) {
  std::vector<NodeInfo> out;
  std::function<void(const NestedSequent&, Address&)> walk = [&](const NestedSequent& n, Address& a) {
    out.push_back({a, &n});
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      a.push_back(static_cast<int>(i));
      walk(n.children[i].node, a);
      a.pop_back();
    }
  };
  Address a;
  walk(s, a);
  return out;
}

using Done = std::set<std::pair<std::string, std::string>>;

template <class Seq>
struct Step {
  std::string rule;
  Params params;
  std::vector<Seq> premises;
  Done done;
  int structural = 0;
};

void drop_ids(Proof& p) {
  std::vector<Proof*> st{&p};
  while (!st.empty()) {
    Proof* q = st.back();
    st.pop_back();
    clear_ids(q->nested);
    for (auto& c : q->premises) st.push_back(&c);
  }
}

struct DeepSearch {
  PathGrammar grammar;
  Budget budget;
  IdGen gen{"p"};
  long steps = 0;

  std::optional<Step<NestedSequent>> next(const NestedSequent& S, const Done& done) {
    auto nodes = nodes_of(S);
    for (auto& n : nodes)
      if (has_literal_pair(*n.node)) return Step<NestedSequent>{"id", {{"at", address_text(n.addr)}}, {}, done};
    for (auto& n : nodes)
      for (auto& f : n.node->formulas)
        if (f.kind() == FKind::Or)
          return Step<NestedSequent>{"or",
                                     {{"at", address_text(n.addr)}, {"formula", print(f)}},
                                     {op_replace(S, n.addr, f, {f.left(), f.right()})},
                                     done};
    auto pg = pg_of_nested(S);
    std::map<std::string, Address> where;
    for (auto& n : nodes) where[n.node->id] = n.addr;
    for (auto& n : nodes)
      for (auto& f : n.node->formulas) {
        if (!f.is_diamond()) continue;
        Diamond d = f.diamond_kind();
        for (auto& [to, path] : reachable_all(pg, n.node->id, d, grammar)) {
          const Address& ta = where.at(to);
          if (find_formula(*node_at(S, ta), f.left()) || done.count({to, "+" + f.left().text()})) continue;
          Params pr{{"at", address_text(n.addr)}, {"to", address_text(ta)}, {"formula", print(f)}};
          std::string rule = "dp";
          if (path.steps.size() == 1 && path.steps[0] == d) {
            bool down = ta.size() == n.addr.size() + 1;
            rule = std::string(d == Diamond::White ? "dia" : "bdia") + (down ? "1" : "2");
          } else {
            PropPath ap = path;
            for (auto& x : ap.nodes) x = address_text(where.at(x));
            pr["path"] = path_text(ap);
          }
          Done d2 = done;
          d2.insert({to, "+" + f.left().text()});
          return Step<NestedSequent>{rule, pr, {op_add(S, ta, f.left())}, d2};
        }
      }
    for (auto& n : nodes)
      for (auto& f : n.node->formulas)
        if (f.kind() == FKind::And)
          return Step<NestedSequent>{"and",
                                     {{"at", address_text(n.addr)}, {"formula", print(f)}},
                                     {op_replace(S, n.addr, f, {f.left()}), op_replace(S, n.addr, f, {f.right()})},
                                     done};
    if (S.node_count() >= static_cast<std::size_t>(budget.node_limit)) return std::nullopt;
    for (auto& n : nodes) {
      if (static_cast<int>(n.addr.size()) >= budget.depth) continue;
      for (auto& f : n.node->formulas) {
        if (f.kind() != FKind::Box && f.kind() != FKind::BBox) continue;
        if (done.count({n.node->id, f.text()})) continue;
        Done d2 = done;
        d2.insert({n.node->id, f.text()});
        return Step<NestedSequent>{f.kind() == FKind::Box ? "wbox" : "bbox",
                                   {{"at", address_text(n.addr)}, {"formula", print(f)}},
                                   {op_modal(S, n.addr, f, true, gen.fresh())},
                                   d2};
      }
    }
    return std::nullopt;
  }

  std::optional<Proof> search(const NestedSequent& S, const Done& done) {
    if (++steps > budget.step_limit) return std::nullopt;
    auto st = next(S, done);
    if (!st) return std::nullopt;
    Proof p = leaf(st->rule, S, st->params);
    for (auto& prem : st->premises) {
      auto sub = search(prem, st->done);
      if (!sub) return std::nullopt;
      p.premises.push_back(std::move(*sub));
    }
    return p;
  }
};

// ---- labeled ----

void add_step(LabeledSequent& s, Diamond d, const Label& a, const Label& b) {
  if (d == Diamond::White)
    s.add_rel(a, b);
  else
    s.add_rel(b, a);
}

// endpoints reachable from x along w
std::set<Label> ends(const LabeledSequent& s, const Label& x, const DiamondString& w) {
  std::set<Label> cur{x};
  for (Diamond d : w) {
    std::set<Label> nxt;
    for (auto& at : cur)
      for (auto& r : s.rel) {
        if (d == Diamond::White && r.x == at) nxt.insert(r.y);
        if (d == Diamond::Black && r.y == at) nxt.insert(r.x);
      }
    cur = std::move(nxt);
  }
  return cur;
}

struct LabeledSearch {
  std::vector<GeneralPathAxiom> gp;
  Budget budget;
  LabelGen labels;
  std::map<Label, int> depth;
  long steps = 0;

  std::optional<Step<LabeledSequent>> next(const LabeledSequent& S, const Done& done, int structural) {
    for (auto& lf : S.lf)
      if (lf.f.kind() == FKind::Pos && S.has(lf.x, negate(lf.f))) return Step<LabeledSequent>{"id", {}, {}, done};
    for (auto& lf : S.lf)
      if (lf.f.kind() == FKind::Or) {
        LabeledSequent p = S;
        p.erase_one(lf.x, lf.f);
        p.add(lf.x, lf.f.left());
        p.add(lf.x, lf.f.right());
        return Step<LabeledSequent>{"l_or", {{"label", lf.x}, {"formula", print(lf.f)}}, {p}, done};
      }
    for (auto& lf : S.lf) {
      if (!lf.f.is_diamond()) continue;
      bool white = lf.f.diamond_kind() == Diamond::White;
      for (auto& r : S.rel) {
        Label y = white ? (r.x == lf.x ? r.y : "") : (r.y == lf.x ? r.x : "");
        if (y.empty() || S.has(y, lf.f.left()) || done.count({y, "+" + lf.f.left().text()})) continue;
        LabeledSequent p = S;
        p.add(y, lf.f.left());
        Done d2 = done;
        d2.insert({y, "+" + lf.f.left().text()});
        return Step<LabeledSequent>{white ? "l_dia" : "l_bdia",
                                    {{"label", lf.x}, {"formula", print(lf.f)}, {"to", y}},
                                    {p},
                                    d2};
      }
    }
    for (auto& lf : S.lf)
      if (lf.f.kind() == FKind::And) {
        LabeledSequent a = S, b = S;
        a.erase_one(lf.x, lf.f);
        a.add(lf.x, lf.f.left());
        b.erase_one(lf.x, lf.f);
        b.add(lf.x, lf.f.right());
        return Step<LabeledSequent>{"l_and", {{"label", lf.x}, {"formula", print(lf.f)}}, {a, b}, done};
      }
    for (auto& lf : S.lf) {
      if (lf.f.kind() != FKind::Box && lf.f.kind() != FKind::BBox) continue;
      if (depth[lf.x] >= budget.depth || done.count({lf.x, lf.f.text()})) continue;
      Done d2 = done;
      d2.insert({lf.x, lf.f.text()});
      Label y = labels.fresh();
      depth[y] = depth[lf.x] + 1;
      LabeledSequent p = S;
      p.erase_one(lf.x, lf.f);
      add_step(p, lf.f.kind() == FKind::Box ? Diamond::White : Diamond::Black, lf.x, y);
      p.add(y, lf.f.left());
      return Step<LabeledSequent>{lf.f.kind() == FKind::Box ? "l_box" : "l_bbox",
                                  {{"label", lf.x}, {"formula", print(lf.f)}, {"fresh", y}},
                                  {p},
                                  d2};
    }
    auto labs = S.labels();
    if (static_cast<int>(labs.size()) >= budget.node_limit || structural >= 4 * budget.depth) return std::nullopt;
    // unsatisfied structural instances whose new labels stay within the depth budget
    for (auto& ax : gp) {
      if (ax.cons.empty()) continue;
      for (auto& x : labs) {
        if (depth[x] + static_cast<int>(ax.cons.size()) - 1 > budget.depth) continue;
        for (auto& y : ends(S, x, ax.ante)) {
          if (ends(S, x, ax.cons).count(y)) continue;
          // lazy: some diamond must be able to use the new atoms
          auto wants = [&](const Label& l, Diamond d) {
            for (auto& f : S.lf)
              if (f.x == l && f.f.is_diamond() && f.f.diamond_kind() == d) return true;
            return false;
          };
          if (!wants(x, ax.cons.front()) && !wants(y, inv(ax.cons.back()))) continue;
          LabeledSequent p = S;
          Label cur = x;
          std::string fresh;
          for (std::size_t k = 0; k < ax.cons.size(); ++k) {
            Label nxt = y;
            if (k + 1 < ax.cons.size()) {
              nxt = labels.fresh();
              depth[nxt] = depth[x] + static_cast<int>(k) + 1;
              fresh += (fresh.empty() ? "" : " ") + nxt;
            }
            add_step(p, ax.cons[k], cur, nxt);
            cur = nxt;
          }
          Params pr{{"axiom", axiom_text(ax)}, {"label", x}, {"to", y}};
          if (!fresh.empty()) pr["fresh"] = fresh;
          return Step<LabeledSequent>{"l_gp", pr, {p}, done, 1};
        }
      }
    }
    return std::nullopt;
  }

  std::optional<Proof> search(const LabeledSequent& S, const Done& done, int structural) {
    if (++steps > budget.step_limit) return std::nullopt;
    auto st = next(S, done, structural);
    if (!st) return std::nullopt;
    Proof p = leaf(st->rule, S, st->params);
    for (auto& prem : st->premises) {
      auto sub = search(prem, st->done, structural + st->structural);
      if (!sub) return std::nullopt;
      p.premises.push_back(std::move(*sub));
    }
    return p;
  }
};

}  // namespace

std::optional<Proof> prove_deep(const Formula& goal, const std::vector<PathAxiom>& p, const Budget& b) {
  DeepSearch s{build_grammar(p), b};
  NestedSequent S;
  S.add(goal);
  assign_ids(S, s.gen);
  auto r = s.search(S, {});
  if (r) drop_ids(*r);
  return r;
}

std::optional<Proof> prove_labeled(const Formula& goal, const std::vector<GeneralPathAxiom>& gp, const Budget& b) {
  for (auto& a : gp) check_scope(a);
  LabeledSearch s{gp, b, LabelGen(LabelGen::Mode::Letters), {}};
  s.labels.reserve("x");
  s.depth["x"] = 0;
  LabeledSequent S;
  S.add("x", goal);
  return s.search(S, {}, 0);
}

std::optional<Proof> prove_shallow(const Formula& goal, const std::vector<PathAxiom>& p, const Budget& b) {
  auto d = prove_deep(goal, p, b);
  if (!d) return std::nullopt;
  CalculusId c{Calc::Dkt, {}};
  for (auto& a : p) c.axioms.push_back(general(a));
  return deep_to_shallow(*d, c);
}

}  // namespace kt
