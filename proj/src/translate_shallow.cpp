#include <functional>

#include "kt/translate.hpp"

namespace kt {

namespace {

std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (auto i : v) s += (s.empty() ? "" : " ") + std::to_string(i);
  return s;
}

Proof nest(std::vector<Proof> steps, std::vector<Proof> tops) {
  if (steps.empty()) {
    if (tops.size() != 1) throw TranslationError("dangling branch");
    return std::move(tops[0]);
  }
  steps.back().premises = std::move(tops);
  for (std::size_t k = steps.size() - 1; k > 0; --k) steps[k - 1].premises.push_back(std::move(steps[k]));
  return std::move(steps[0]);
}

void swap_ids(NestedSequent& s, const std::string& a, const std::string& b) {
  std::function<void(NestedSequent&)> walk = [&](NestedSequent& n) {
    if (n.id == a)
      n.id = b;
    else if (n.id == b)
      n.id = a;
    for (auto& c : n.children) walk(c.node);
  };
  walk(s);
}

// A run of shallow rule applications on a sequent whose nodes carry ids.
struct Sim {
  NestedSequent cur;
  IdGen& gen;
  std::vector<Proof> steps;

  void emit(const std::string& rule, Params params, NestedSequent next) {
    steps.push_back(leaf(rule, cur, std::move(params)));
    cur = std::move(next);
  }

  void show(const std::string& id) {
    auto a = address_of(cur, id);
    if (!a) throw TranslationError("lost node " + id);
    for (auto& d : display_steps(cur, *a)) emit(d.rule, {{"child", std::to_string(d.child)}}, d.result);
  }

  std::size_t child(const std::string& id) const {
    for (std::size_t k = 0; k < cur.children.size(); ++k)
      if (cur.children[k].node.id == id) return k;
    throw TranslationError("node " + id + " is not a neighbour of the displayed node");
  }

  void weaken(std::vector<std::size_t> items) {
    if (items.empty()) return;
    std::sort(items.begin(), items.end());
    emit("w", {{"items", join(items)}}, op_remove_items(cur, {}, items));
  }

  std::map<std::string, std::string> contract(const std::vector<std::size_t>& items) {
    std::map<std::string, std::string> copy_of;
    NestedSequent next = op_copy_items(cur, {}, items, gen, &copy_of);
    emit("c", {{"items", join(items)}}, std::move(next));
    return copy_of;
  }

  void fold(const PathAxiom& f, std::size_t k) {
    std::vector<std::string> chain, fresh;
    auto next = op_fold(cur, general(f), k, gen, &chain, &fresh);
    if (!next) throw TranslationError("path fold does not fit");
    emit("path", {{"axiom", axiom_text(f)}, {"child", std::to_string(k)}}, std::move(*next));
  }

  // new node holding `items` as a Sigma-child of the root; returns its id
  std::string split(const PathAxiom& f, const std::vector<std::size_t>& items) {
    std::vector<std::string> fresh;
    NestedSequent next = op_split(cur, general(f), items, gen, &fresh);
    emit("path", {{"axiom", axiom_text(f)}, {"items", join(items)}}, std::move(next));
    return fresh.back();
  }
};

// Cut-free simulation of one deep propagation step.  A chain of copies is
// grown from the target along the reversed witness, pruned to bare links and
// folded along a parse tree; the diamond rule then reaches the target
// directly and the chain is weakened away.
struct DpSim {
  Sim& sim;
  const PathGrammar& g;
  Formula principal;
  std::vector<std::string> seq;

  std::size_t fold(const ParseNode& t, std::size_t l) {
    if (t.rule < 0) return l + 1;
    const PathAxiom& rule = g.rules[static_cast<std::size_t>(t.rule)];
    int io = g.inverse_of[static_cast<std::size_t>(t.rule)];
    const PathAxiom& f = io >= 0 ? g.source[static_cast<std::size_t>(io)] : rule;
    if (t.kids.empty()) {
      split_at(l, f, io >= 0);
      return l + 1;
    }
    std::size_t e = l;
    for (auto& k : t.kids) e = fold(k, e);
    if (io < 0) {
      sim.show(seq[l]);
      sim.fold(f, sim.child(seq[l + 1]));
    } else {
      sim.show(seq[e]);
      sim.fold(f, sim.child(seq[e - 1]));
    }
    seq.erase(seq.begin() + static_cast<std::ptrdiff_t>(l) + 1, seq.begin() + static_cast<std::ptrdiff_t>(e));
    return l + 1;
  }

  // epsilon production at seq[l]: the node splits in two linked nodes
  void split_at(std::size_t l, const PathAxiom& f, bool inverse) {
    const std::string x = seq[l];
    sim.show(x);
    const bool first = l == 0, last = l + 1 == seq.size();
    if (first && last) {
      auto i = find_formula(sim.cur, principal);
      if (!i) throw TranslationError("principal formula lost");
      sim.contract({*i});
    }
    const NestedSequent& n = sim.cur;
    std::size_t nf = n.formulas.size(), total = item_count(n);
    std::optional<std::size_t> prev, next;
    if (!first) prev = nf + sim.child(seq[l - 1]);
    if (!last) next = nf + sim.child(seq[l + 1]);
    std::vector<std::size_t> a_items, b_items;
    for (std::size_t i = 0; i < total; ++i) {
      if (prev && i == *prev) {
        a_items.push_back(i);
      } else if (next && i == *next) {
        b_items.push_back(i);
      } else if (first && last) {
        (i + 1 == nf ? b_items : a_items).push_back(i);
      } else {
        (first ? a_items : b_items).push_back(i);
      }
    }
    if (!inverse) {
      std::string b = sim.split(f, b_items);
      seq.insert(seq.begin() + static_cast<std::ptrdiff_t>(l) + 1, b);
    } else {
      std::string a = sim.split(f, a_items);
      swap_ids(sim.cur, a, x);
      seq.insert(seq.begin() + static_cast<std::ptrdiff_t>(l) + 1, a);
    }
  }
};

struct DeepToShallow {
  CalculusId dkt, skt;
  PathGrammar grammar;
  IdGen gen{"d"};
  std::string root;

  void dp(Sim& sim, const NestedSequent& S, const NestedMatch& m) {
    const PropPath& path = *m.path;
    std::vector<std::string> q;
    for (auto& n : path.nodes) q.push_back(node_at(S, parse_address(n))->id);
    const std::size_t k = path.steps.size();
    std::vector<std::string> rho(q.rbegin(), q.rend());
    DiamondString word;
    for (std::size_t t = 0; t < k; ++t) word.push_back(inv(path.steps[k - 1 - t]));
    Diamond d = m.principal->diamond_kind();
    auto tree = parse_tree(grammar, word, inv(d));
    if (!tree) throw TranslationError("witness string is not in the completion");

    std::map<std::string, std::string> origin;
    std::vector<std::string> ids;
    collect_ids(sim.cur, ids);
    for (auto& id : ids) origin[id] = id;

    // grow copies of the witness nodes, starting at the target
    std::vector<std::string> chain{rho[0]};
    for (std::size_t t = 0; t < k; ++t) {
      sim.show(chain[t]);
      std::optional<std::size_t> pick;
      int best = -1;
      for (std::size_t c = 0; c < sim.cur.children.size(); ++c) {
        const auto& ch = sim.cur.children[c];
        if (ch.pol != word[t] || origin.at(ch.node.id) != rho[t + 1]) continue;
        bool parent = t > 0 && ch.node.id == chain[t - 1];
        int score = parent ? 0 : (ch.node.id == rho[t + 1] ? 2 : 1);
        if (score > best) {
          best = score;
          pick = c;
        }
      }
      if (!pick) throw TranslationError("no neighbour along the witness");
      auto copy_of = sim.contract({sim.cur.formulas.size() + *pick});
      for (auto& [n, src] : copy_of) origin[n] = origin.at(src);
      chain.push_back(sim.cur.children.back().node.id);
    }
    // prune to bare links; the last node keeps the principal
    for (std::size_t t = 1; t <= k; ++t) {
      sim.show(chain[t]);
      const NestedSequent& n = sim.cur;
      std::vector<std::size_t> drop;
      bool kept = false;
      for (std::size_t i = 0; i < n.formulas.size(); ++i) {
        if (t == k && !kept && n.formulas[i] == *m.principal)
          kept = true;
        else
          drop.push_back(i);
      }
      for (std::size_t c = 0; c < n.children.size(); ++c) {
        const auto& id = n.children[c].node.id;
        if (id == chain[t - 1] || (t < k && id == chain[t + 1])) continue;
        drop.push_back(n.formulas.size() + c);
      }
      if (t == k && !kept) throw TranslationError("principal formula lost");
      sim.weaken(drop);
    }
    DpSim ds{sim, grammar, *m.principal, chain};
    ds.fold(*tree, 0);
    if (ds.seq.size() != 2) throw TranslationError("fold left a chain of length " + std::to_string(ds.seq.size()));
    const std::string j = ds.seq[0], w = ds.seq[1];
    sim.show(w);
    std::size_t cj = sim.child(j);
    sim.emit(d == Diamond::White ? "wdia" : "bdia",
             {{"formula", print(*m.principal)}, {"child", std::to_string(cj)}},
             op_add(sim.cur, {static_cast<int>(cj)}, m.principal->left()));
    sim.show(j);
    sim.weaken({sim.cur.formulas.size() + sim.child(w)});
  }

  Proof run(const Proof& p, const NestedSequent& S) {
    std::vector<NestedSequent> expected;
    for (auto& q : p.premises) expected.push_back(q.nested);
    std::string err;
    auto m = match_nested(S, p.rule, p.params, &expected, dkt, &grammar, gen, err);
    if (!m) throw TranslationError("rule " + p.rule + " does not fit: " + err);
    Sim sim{S, gen, {}};
    const std::string& r = p.rule;
    if (r == "dp") {
      dp(sim, S, *m);
    } else {
      sim.show(node_at(S, m->at)->id);
      if (r == "id") {
        sim.steps.push_back(leaf("id", sim.cur));
        return nest(std::move(sim.steps), {});
      }
      const NestedSequent& n = sim.cur;
      if (r == "or") {
        const Formula& f = *m->principal;
        sim.emit("or", {{"formula", print(f)}}, op_replace(n, {}, f, {f.left(), f.right()}));
      } else if (r == "and") {
        const Formula& f = *m->principal;
        sim.steps.push_back(leaf("and", n, {{"formula", print(f)}}));
        std::vector<Proof> tops;
        for (std::size_t i = 0; i < 2; ++i) {
          Sim b{op_replace(n, {}, f, {i == 0 ? f.left() : f.right()}), gen, {}};
          b.show(root);
          tops.push_back(nest(std::move(b.steps), {run(p.premises[i], relayout(p.premises[i].nested, b.cur))}));
        }
        return nest(std::move(sim.steps), std::move(tops));
      } else if (r == "wbox" || r == "bbox") {
        const Formula& f = *m->principal;
        sim.contract({*find_formula(n, f)});
        sim.emit(r, {{"formula", print(f)}}, op_modal(sim.cur, {}, f, false, gen.fresh()));
      } else if (r == "dia1" || r == "dia2" || r == "bdia1" || r == "bdia2") {
        const Formula& f = *m->principal;
        std::size_t k = sim.child(node_at(S, m->to)->id);
        sim.emit(f.diamond_kind() == Diamond::White ? "wdia" : "bdia",
                 {{"formula", print(f)}, {"child", std::to_string(k)}}, op_add(n, {static_cast<int>(k)}, f.left()));
      } else if (r == "w") {
        sim.weaken(m->items);
      } else if (r == "c") {
        sim.contract(m->items);
      } else {
        throw TranslationError("rule " + r + " has no shallow counterpart");
      }
    }
    sim.show(root);
    if (!nested_equal(sim.cur, p.premises[0].nested))
      throw TranslationError("simulation of " + r + " does not reach its premise");
    return nest(std::move(sim.steps), {run(p.premises[0], relayout(p.premises[0].nested, sim.cur))});
  }
};

void strip_ids(Proof& p) {
  std::vector<Proof*> st{&p};
  while (!st.empty()) {
    Proof* q = st.back();
    st.pop_back();
    clear_ids(q->nested);
    for (auto& c : q->premises) st.push_back(&c);
  }
}

}  // namespace

Proof deep_to_shallow(const Proof& p, const CalculusId& c) {
  if (p.labeled) throw TranslationError("expected a DKT proof");
  DeepToShallow t{target_calculus(c, Calc::Dkt), target_calculus(c, Calc::Skt), build_grammar(path_axioms(c.axioms)),
                  IdGen("d"), ""};
  NestedSequent S = p.nested;
  clear_ids(S);
  assign_ids(S, t.gen);
  t.root = S.id;
  Proof out = t.run(p, S);
  strip_ids(out);
  return out;
}

Proof pipeline_reverse(const Proof& p, const CalculusId& c, std::optional<Label> start) {
  Proof pr = eliminate_structural(p, c);
  Proof deep = labeled_to_deep(pr, c, start);
  return deep_to_shallow(deep, c);
}

}  // namespace kt
