#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "kt/proof.hpp"

namespace kt {

namespace {

std::vector<Address> all_addresses(const NestedSequent& s) {
  std::vector<Address> out;
  std::function<void(const NestedSequent&, Address&)> walk = [&](const NestedSequent& n, Address& a) {
    out.push_back(a);
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

bool same_nested(const std::vector<NestedSequent>& a, const std::vector<NestedSequent>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!nested_equal(a[i], b[i])) return false;
  return true;
}

bool same_labeled(const std::vector<LabeledSequent>& a, const std::vector<LabeledSequent>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!labeled_equal(a[i], b[i])) return false;
  return true;
}

std::optional<Formula> formula_param(const Params& p) {
  auto it = p.find("formula");
  if (it == p.end()) return std::nullopt;
  return parse_formula(it->second);
}

std::optional<Address> address_param(const Params& p, const std::string& key) {
  auto it = p.find(key);
  if (it == p.end()) return std::nullopt;
  return parse_address(it->second);
}

std::optional<std::size_t> index_param(const Params& p, const std::string& key) {
  auto it = p.find(key);
  if (it == p.end()) return std::nullopt;
  return static_cast<std::size_t>(std::stoul(it->second));
}

std::optional<std::vector<std::size_t>> items_param(const Params& p) {
  auto it = p.find("items");
  if (it == p.end()) return std::nullopt;
  std::vector<std::size_t> v;
  std::istringstream in(it->second);
  for (std::size_t k; in >> k;) v.push_back(k);
  return v;
}

std::optional<std::string> str_param(const Params& p, const std::string& key) {
  auto it = p.find(key);
  if (it == p.end()) return std::nullopt;
  return it->second;
}

// distinct formulas of node n of kind k, filtered by the formula param
std::vector<Formula> principals(const std::vector<Formula>& fs, FKind k, const std::optional<Formula>& want) {
  std::vector<Formula> out;
  for (auto& f : fs) {
    if (f.kind() != k) continue;
    if (want && !(f == *want)) continue;
    if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
  }
  return out;
}

// indices in `keys` realizing the multiset `want`; first or last occurrences
std::vector<std::size_t> pick(const std::vector<std::string>& keys, const std::vector<std::string>& want, bool last) {
  std::vector<bool> used(keys.size(), false);
  std::vector<std::size_t> out;
  for (auto& w : want) {
    for (std::size_t k = 0; k < keys.size(); ++k) {
      std::size_t i = last ? keys.size() - 1 - k : k;
      if (!used[i] && keys[i] == w) {
        used[i] = true;
        out.push_back(i);
        break;
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool same_multiset(std::vector<std::string> a, std::vector<std::string> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

// The single node where two trees differ, walking down through unique
// differing children of equal polarity.
std::optional<Address> diff_node(const NestedSequent& c, const NestedSequent& p) {
  if (canonical(c) == canonical(p)) return std::nullopt;
  auto kc = item_keys(c), kp = item_keys(p);
  auto rc = multiset_minus(kc, kp), rp = multiset_minus(kp, kc);
  if (rc.size() == 1 && rp.size() == 1 && rc[0].size() > 1 && rp[0].size() > 1 && rc[0][1] == '{' && rp[0][1] == '{' &&
      rc[0][0] == rp[0][0]) {
    auto ic = pick(kc, rc, false), ip = pick(kp, rp, false);
    std::size_t cc = ic[0] - c.formulas.size(), pc = ip[0] - p.formulas.size();
    if (cc < c.children.size() && pc < p.children.size()) {
      if (auto sub = diff_node(c.children[cc].node, p.children[pc].node)) {
        sub->insert(sub->begin(), static_cast<int>(cc));
        return sub;
      }
    }
  }
  return Address{};
}

std::vector<GeneralPathAxiom> axioms_for(const CalculusId& c, const Params& params, bool path_only, std::string& err) {
  std::vector<GeneralPathAxiom> out;
  if (auto t = str_param(params, "axiom")) {
    auto a = parse_axiom(*t);
    if (std::find(c.axioms.begin(), c.axioms.end(), a) == c.axioms.end()) {
      err = "axiom not declared: " + axiom_text(a);
      return {};
    }
    out.push_back(a);
  } else {
    out = c.axioms;
  }
  if (path_only) std::erase_if(out, [](const GeneralPathAxiom& a) { return !a.is_path(); });
  if (out.empty() && err.empty()) err = "axiom not declared";
  return out;
}

}  // namespace

std::optional<NestedMatch> match_nested(const NestedSequent& C, const std::string& rule, const Params& params,
                                        const std::vector<NestedSequent>* expected, const CalculusId& calc,
                                        const PathGrammar* grammar, IdGen& gen, std::string& err) {
  std::optional<NestedMatch> result;
  auto offer = [&](NestedMatch&& m) {
    if (result) return;
    if (!expected || same_nested(m.premises, *expected)) result = std::move(m);
  };
  const bool deep = calc.kind == Calc::Dkt;
  auto want = formula_param(params);
  auto want_at = address_param(params, "at");
  std::vector<Address> nodes;
  if (deep) {
    for (auto& a : all_addresses(C))
      if (!want_at || a == *want_at) nodes.push_back(a);
  } else {
    nodes.push_back({});
  }

  try {
    if (rule == "id") {
      for (auto& a : nodes)
        if (has_literal_pair(*node_at(C, a))) {
          NestedMatch m;
          m.at = a;
          offer(std::move(m));
        }
    } else if (rule == "or" || rule == "and") {
      bool is_or = rule == "or";
      for (auto& a : nodes)
        for (auto& f : principals(node_at(C, a)->formulas, is_or ? FKind::Or : FKind::And, want)) {
          NestedMatch m;
          m.at = a;
          m.principal = f;
          if (is_or) {
            m.premises.push_back(op_replace(C, a, f, {f.left(), f.right()}));
          } else {
            m.premises.push_back(op_replace(C, a, f, {f.left()}));
            m.premises.push_back(op_replace(C, a, f, {f.right()}));
          }
          offer(std::move(m));
        }
    } else if (rule == "wbox" || rule == "bbox") {
      for (auto& a : nodes)
        for (auto& f : principals(node_at(C, a)->formulas, rule == "wbox" ? FKind::Box : FKind::BBox, want)) {
          NestedMatch m;
          m.at = a;
          m.principal = f;
          std::string nid = gen.fresh();
          m.fresh.push_back(nid);
          m.premises.push_back(op_modal(C, a, f, deep, nid));
          offer(std::move(m));
        }
    } else if (rule == "wdia" || rule == "bdia") {
      Diamond d = rule == "wdia" ? Diamond::White : Diamond::Black;
      auto want_child = index_param(params, "child");
      for (auto& f : principals(C.formulas, d == Diamond::White ? FKind::Dia : FKind::BDia, want))
        for (std::size_t k = 0; k < C.children.size(); ++k) {
          if (C.children[k].pol != d || (want_child && *want_child != k)) continue;
          NestedMatch m;
          m.principal = f;
          m.child = k;
          m.to = {static_cast<int>(k)};
          m.premises.push_back(op_add(C, m.to, f.left()));
          offer(std::move(m));
        }
    } else if (rule == "dia1" || rule == "dia2" || rule == "bdia1" || rule == "bdia2") {
      bool white = rule[0] == 'd';
      bool down = rule.back() == '1';
      Diamond d = white ? Diamond::White : Diamond::Black;
      auto want_to = address_param(params, "to");
      for (auto& a : nodes) {
        const NestedSequent* n = node_at(C, a);
        for (auto& f : principals(n->formulas, white ? FKind::Dia : FKind::BDia, want)) {
          std::vector<Address> targets;
          if (down) {
            for (std::size_t k = 0; k < n->children.size(); ++k)
              if (n->children[k].pol == d) {
                Address t = a;
                t.push_back(static_cast<int>(k));
                targets.push_back(t);
              }
          } else if (!a.empty()) {
            Address par(a.begin(), a.end() - 1);
            if (node_at(C, par)->children[static_cast<std::size_t>(a.back())].pol == inv(d)) targets.push_back(par);
          }
          for (auto& t : targets) {
            if (want_to && t != *want_to) continue;
            NestedMatch m;
            m.at = a;
            m.to = t;
            m.principal = f;
            m.premises.push_back(op_add(C, t, f.left()));
            offer(std::move(m));
          }
        }
      }
    } else if (rule == "dp") {
      auto ptext = str_param(params, "path");
      auto to = address_param(params, "to");
      if (!ptext || !want_at || !to || !want) {
        err = "propagation witness invalid: dp needs at, to, formula and path";
        return std::nullopt;
      }
      if (!grammar) {
        err = "propagation witness invalid: no grammar";
        return std::nullopt;
      }
      PropPath path = parse_path(*ptext);
      NestedSequent plain = C;
      clear_ids(plain);
      auto pg = pg_of_nested(plain);
      const NestedSequent* n = node_at(C, *want_at);
      if (!n || !node_at(C, *to)) {
        err = "no node at the given address";
        return std::nullopt;
      }
      if (!want->is_diamond() || !find_formula(*n, *want)) {
        err = "principal formula " + print(*want) + " not found at " + address_text(*want_at);
        return std::nullopt;
      }
      if (!path_valid(pg, path) || path.from() != address_text(*want_at) || path.to() != address_text(*to)) {
        err = "propagation witness invalid: not a path from " + address_text(*want_at) + " to " + address_text(*to);
        return std::nullopt;
      }
      if (!completion_member(*grammar, path_string(path), want->diamond_kind())) {
        err = "propagation witness invalid: string " + word_text(path_string(path)) + " is not in the completion";
        return std::nullopt;
      }
      NestedMatch m;
      m.at = *want_at;
      m.to = *to;
      m.principal = *want;
      m.path = path;
      m.premises.push_back(op_add(C, *to, want->left()));
      offer(std::move(m));
    } else if (rule == "rf" || rule == "rp") {
      Diamond d = rule == "rp" ? Diamond::White : Diamond::Black;
      auto want_child = index_param(params, "child");
      for (std::size_t k = 0; k < C.children.size(); ++k) {
        if (C.children[k].pol != d || (want_child && *want_child != k)) continue;
        NestedMatch m;
        m.child = k;
        m.premises.push_back(display_child(C, k));
        offer(std::move(m));
      }
    } else if (rule == "c" || rule == "w") {
      bool contract = rule == "c";
      auto items = items_param(params);
      Address a;
      if (items) {
        a = want_at.value_or(Address{});
      } else if (expected && expected->size() == 1) {
        if (deep) {
          auto d = diff_node(C, (*expected)[0]);
          if (!d) {
            err = "premise equals conclusion";
            return std::nullopt;
          }
          a = *d;
        }
        const NestedSequent* pn = node_at((*expected)[0], a);
        const NestedSequent* cn = node_at(C, a);
        if (!pn || !cn) {
          err = "shape mismatch";
          return std::nullopt;
        }
        auto kc = item_keys(*cn), kp = item_keys(*pn);
        if (contract) {
          auto dlt = multiset_minus(kp, kc);
          if (dlt.empty() || !sub_multiset(kc, kp) || !sub_multiset(dlt, kc)) {
            err = "shape mismatch: premise is not the conclusion with duplicated items";
            return std::nullopt;
          }
          items = pick(kc, dlt, false);
        } else {
          if (!sub_multiset(kp, kc)) {
            err = "shape mismatch: premise is not contained in the conclusion";
            return std::nullopt;
          }
          items = pick(kc, multiset_minus(kc, kp), true);
        }
      } else {
        err = "rule needs an items parameter";
        return std::nullopt;
      }
      if (!deep && !a.empty()) {
        err = "shallow structural rules act at the root";
        return std::nullopt;
      }
      NestedMatch m;
      m.at = a;
      m.items = *items;
      if (contract) {
        m.premises.push_back(op_copy_items(C, a, *items, gen, &m.copy_of));
      } else {
        m.premises.push_back(op_remove_items(C, a, *items));
      }
      offer(std::move(m));
    } else if (rule == "gp" || rule == "path") {
      auto axs = axioms_for(calc, params, rule == "path", err);
      if (axs.empty()) return std::nullopt;
      auto want_child = index_param(params, "child");
      auto items = items_param(params);
      for (auto& ax : axs) {
        try {
          check_scope(ax);
        } catch (const ScopeError& e) {
          err = std::string("scope error: ") + e.what();
          return std::nullopt;
        }
        if (!ax.ante.empty()) {
          for (std::size_t k = 0; k < C.children.size(); ++k) {
            if (want_child && *want_child != k) continue;
            NestedMatch m;
            m.axiom = ax;
            m.child = k;
            auto p = op_fold(C, ax, k, gen, &m.chain, &m.fresh);
            if (!p) continue;
            m.premises.push_back(std::move(*p));
            offer(std::move(m));
          }
        } else if (ax.cons.empty()) {
          NestedMatch m;
          m.axiom = ax;
          m.premises.push_back(C);
          offer(std::move(m));
        } else if (items) {
          NestedMatch m;
          m.axiom = ax;
          m.items = *items;
          m.premises.push_back(op_split(C, ax, *items, gen, &m.fresh));
          offer(std::move(m));
        } else if (expected && expected->size() == 1) {
          const NestedSequent& P = (*expected)[0];
          auto kc = item_keys(C);
          auto kp = item_keys(P);
          for (std::size_t k = 0; k < P.children.size(); ++k) {
            auto ch = chain_at(P, ax.cons, k);
            if (ch.empty()) continue;
            auto bottom = item_keys(*ch.back());
            auto rest = multiset_minus(kp, {item_key(P.children[k])});
            rest.insert(rest.end(), bottom.begin(), bottom.end());
            if (!same_multiset(rest, kc)) continue;
            NestedMatch m;
            m.axiom = ax;
            m.items = pick(kc, bottom, false);
            m.premises.push_back(op_split(C, ax, m.items, gen, &m.fresh));
            offer(std::move(m));
          }
        }
      }
    } else if (rule == "open") {
      NestedMatch m;
      offer(std::move(m));
    } else {
      err = "unknown rule '" + rule + "'";
      return std::nullopt;
    }
  } catch (const RuleError& e) {
    err = e.what();
    return std::nullopt;
  } catch (const ParseError& e) {
    err = std::string("bad parameter: ") + e.what();
    return std::nullopt;
  }
  if (!result && err.empty()) err = "shape mismatch: no instance of " + rule + " yields the given premises";
  return result;
}

// ---- labeled ----

namespace {

std::string lf_key(const LabeledFormula& f) { return f.x + ":" + f.f.text(); }

std::vector<std::string> lf_keys(const LabeledSequent& s) {
  std::vector<std::string> k;
  for (auto& f : s.lf) k.push_back(lf_key(f));
  return k;
}

std::set<std::pair<Label, Label>> atom_set(const LabeledSequent& s) {
  std::set<std::pair<Label, Label>> r;
  for (auto& a : s.rel) r.emplace(a.x, a.y);
  return r;
}

void add_step(LabeledSequent& s, Diamond d, const Label& a, const Label& b) {
  if (d == Diamond::White)
    s.add_rel(a, b);
  else
    s.add_rel(b, a);
}

bool has_step(const LabeledSequent& s, Diamond d, const Label& a, const Label& b) {
  return d == Diamond::White ? s.has_rel(a, b) : s.has_rel(b, a);
}

// endpoint -> first walk (labels) following word w from x
std::map<Label, std::vector<Label>> walks(const LabeledSequent& s, const Label& x, const DiamondString& w) {
  std::map<Label, std::vector<Label>> cur{{x, {x}}};
  for (Diamond d : w) {
    std::map<Label, std::vector<Label>> nxt;
    for (auto& [at, walk] : cur)
      for (auto& r : s.rel) {
        Label to;
        if (d == Diamond::White && r.x == at)
          to = r.y;
        else if (d == Diamond::Black && r.y == at)
          to = r.x;
        else
          continue;
        if (!nxt.count(to)) {
          auto w2 = walk;
          w2.push_back(to);
          nxt.emplace(to, std::move(w2));
        }
      }
    cur = std::move(nxt);
  }
  return cur;
}

LabeledSequent with_formula(LabeledSequent s, const Label& x, const Formula& f) {
  s.add(x, f);
  return s;
}

LabeledSequent replace_lf(LabeledSequent s, const Label& x, const Formula& f, const std::vector<Formula>& by) {
  if (!s.erase_one(x, f)) throw RuleError("principal formula not found");
  for (auto& b : by) s.add(x, b);
  return s;
}

}  // namespace

std::optional<LabMatch> match_labeled(const LabeledSequent& C, const std::string& rule, const Params& params,
                                      const std::vector<LabeledSequent>* expected, const CalculusId& calc,
                                      const PathGrammar* grammar, std::string& err) {
  std::optional<LabMatch> result;
  std::string eigen_err;
  auto offer = [&](LabMatch&& m) {
    if (result) return;
    if (!expected || same_labeled(m.premises, *expected)) result = std::move(m);
  };
  auto want = formula_param(params);
  auto want_x = str_param(params, "label");
  auto want_to = str_param(params, "to");
  auto fits = [&](const LabeledFormula& lf, FKind k) {
    return lf.f.kind() == k && (!want || lf.f == *want) && (!want_x || lf.x == *want_x);
  };
  // distinct principal candidates
  auto cands = [&](FKind k) {
    std::vector<LabeledFormula> out;
    for (auto& lf : C.lf)
      if (fits(lf, k) && std::find(out.begin(), out.end(), lf) == out.end()) out.push_back(lf);
    return out;
  };
  auto labels = C.labels();

  try {
    if (rule == "id") {
      for (auto& lf : C.lf)
        if (lf.f.kind() == FKind::Pos && C.has(lf.x, negate(lf.f))) {
          LabMatch m;
          m.x = lf.x;
          m.principal = lf.f;
          offer(std::move(m));
        }
    } else if (rule == "l_or" || rule == "l_and") {
      bool is_or = rule == "l_or";
      for (auto& lf : cands(is_or ? FKind::Or : FKind::And)) {
        LabMatch m;
        m.x = lf.x;
        m.principal = lf.f;
        if (is_or) {
          m.premises.push_back(replace_lf(C, lf.x, lf.f, {lf.f.left(), lf.f.right()}));
        } else {
          m.premises.push_back(replace_lf(C, lf.x, lf.f, {lf.f.left()}));
          m.premises.push_back(replace_lf(C, lf.x, lf.f, {lf.f.right()}));
        }
        offer(std::move(m));
      }
    } else if (rule == "l_box" || rule == "l_bbox") {
      bool white = rule == "l_box";
      for (auto& lf : cands(white ? FKind::Box : FKind::BBox)) {
        std::vector<Label> ys;
        if (auto f = str_param(params, "fresh")) {
          ys.push_back(*f);
        } else if (expected && expected->size() == 1) {
          for (auto& l : (*expected)[0].labels()) ys.push_back(l);
        } else {
          LabelGen gen;
          gen.reserve(labels.begin(), labels.end());
          ys.push_back(gen.fresh());
        }
        for (auto& y : ys) {
          LabMatch m;
          m.x = lf.x;
          m.y = y;
          m.principal = lf.f;
          m.fresh.push_back(y);
          LabeledSequent p = replace_lf(C, lf.x, lf.f, {});
          add_step(p, white ? Diamond::White : Diamond::Black, lf.x, y);
          p.add(y, lf.f.left());
          m.premises.push_back(std::move(p));
          if (labels.count(y)) {
            if (!expected || same_labeled(m.premises, *expected))
              eigen_err = "eigenvariable violation: " + y + " occurs in the conclusion";
            continue;
          }
          offer(std::move(m));
        }
      }
    } else if (rule == "l_dia" || rule == "l_bdia") {
      bool white = rule == "l_dia";
      for (auto& lf : cands(white ? FKind::Dia : FKind::BDia))
        for (auto& r : C.rel) {
          Label y;
          if (white && r.x == lf.x)
            y = r.y;
          else if (!white && r.y == lf.x)
            y = r.x;
          else
            continue;
          if (want_to && y != *want_to) continue;
          LabMatch m;
          m.x = lf.x;
          m.y = y;
          m.principal = lf.f;
          m.premises.push_back(with_formula(C, y, lf.f.left()));
          offer(std::move(m));
        }
    } else if (rule == "l_prop") {
      auto ptext = str_param(params, "path");
      if (!ptext || !want) {
        err = "propagation witness invalid: l_prop needs formula and path";
        return std::nullopt;
      }
      if (!grammar) {
        err = "propagation witness invalid: no grammar";
        return std::nullopt;
      }
      PropPath path = parse_path(*ptext);
      Label x = want_x.value_or(path.from());
      if (!want->is_diamond() || !C.has(x, *want)) {
        err = "principal formula " + x + ":" + print(*want) + " not found";
        return std::nullopt;
      }
      auto pg = pg_of_labeled(C);
      if (!pg.has_node(x)) pg.nodes.push_back(x);
      if (!path_valid(pg, path) || path.from() != x || (want_to && path.to() != *want_to)) {
        err = "propagation witness invalid: not a path of the conclusion";
        return std::nullopt;
      }
      if (!completion_member(*grammar, path_string(path), want->diamond_kind())) {
        err = "propagation witness invalid: string " + word_text(path_string(path)) + " is not in the completion";
        return std::nullopt;
      }
      LabMatch m;
      m.x = x;
      m.y = path.to();
      m.principal = *want;
      m.path = path;
      m.premises.push_back(with_formula(C, path.to(), want->left()));
      offer(std::move(m));
    } else if (rule == "l_gp" || rule == "l_path") {
      auto axs = axioms_for(calc, params, rule == "l_path", err);
      if (axs.empty()) return std::nullopt;
      for (auto& ax : axs) {
        try {
          check_scope(ax);
        } catch (const ScopeError& e) {
          err = std::string("scope error: ") + e.what();
          return std::nullopt;
        }
        std::vector<Label> xs;
        if (want_x)
          xs.push_back(*want_x);
        else
          xs.assign(labels.begin(), labels.end());
        for (auto& x : xs) {
          for (auto& [y, walk] : walks(C, x, ax.ante)) {
            if (want_to && y != *want_to) continue;
            std::size_t m_int = ax.cons.empty() ? 0 : ax.cons.size() - 1;
            std::vector<std::vector<Label>> internals;
            if (auto f = str_param(params, "fresh")) {
              std::istringstream in(*f);
              std::vector<Label> v;
              for (std::string t; in >> t;) v.push_back(t);
              internals.push_back(v);
            } else if (expected && expected->size() == 1) {
              std::vector<Label> fr;
              for (auto& l : (*expected)[0].labels())
                if (!labels.count(l)) fr.push_back(l);
              if (fr.size() == m_int) {
                std::sort(fr.begin(), fr.end());
                do internals.push_back(fr);
                while (std::next_permutation(fr.begin(), fr.end()));
              }
            } else {
              LabelGen gen;
              gen.reserve(labels.begin(), labels.end());
              std::vector<Label> v;
              for (std::size_t k = 0; k < m_int; ++k) v.push_back(gen.fresh());
              internals.push_back(v);
            }
            for (auto& in : internals) {
              if (in.size() != m_int) continue;
              bool clash = false;
              for (auto& l : in) clash = clash || labels.count(l) > 0;
              LabMatch m;
              m.x = x;
              m.y = y;
              m.axiom = ax;
              m.walk = walk;
              m.fresh = in;
              LabeledSequent p = C;
              Label cur = x;
              for (std::size_t k = 0; k < ax.cons.size(); ++k) {
                Label nxt = k + 1 == ax.cons.size() ? y : in[k];
                if (!has_step(p, ax.cons[k], cur, nxt)) {
                  add_step(p, ax.cons[k], cur, nxt);
                  m.added.push_back(ax.cons[k] == Diamond::White ? RelAtom{cur, nxt} : RelAtom{nxt, cur});
                }
                cur = nxt;
              }
              m.premises.push_back(std::move(p));
              if (clash) {
                if (!expected || same_labeled(m.premises, *expected))
                  eigen_err = "eigenvariable violation: internal label of the new relational atoms occurs in the conclusion";
                continue;
              }
              offer(std::move(m));
            }
          }
        }
      }
    } else if (rule == "l_w" || rule == "l_c") {
      if (!expected || expected->size() != 1) {
        err = "rule needs its premise";
        return std::nullopt;
      }
      const LabeledSequent& P = (*expected)[0];
      auto kc = lf_keys(C), kp = lf_keys(P);
      auto ac = atom_set(C), ap = atom_set(P);
      if (rule == "l_w") {
        if (!sub_multiset(kp, kc) || !std::includes(ac.begin(), ac.end(), ap.begin(), ap.end())) {
          err = "shape mismatch: premise is not contained in the conclusion";
          return std::nullopt;
        }
      } else {
        auto d = multiset_minus(kp, kc);
        if (ac != ap || d.empty() || !sub_multiset(kc, kp) || !sub_multiset(d, kc)) {
          err = "shape mismatch: premise is not the conclusion with duplicated formulas";
          return std::nullopt;
        }
      }
      LabMatch m;
      m.premises.push_back(P);
      offer(std::move(m));
    } else if (rule == "l_s") {
      auto x = str_param(params, "x"), y = str_param(params, "y");
      if (!x || !y || !expected || expected->size() != 1) {
        err = "l_s needs x, y and its premise";
        return std::nullopt;
      }
      if (!labeled_equal(substitute((*expected)[0], *x, *y), C)) {
        err = "shape mismatch: conclusion is not the premise with " + *y + " replaced by " + *x;
        return std::nullopt;
      }
      LabMatch m;
      m.x = *x;
      m.y = *y;
      m.premises.push_back((*expected)[0]);
      offer(std::move(m));
    } else {
      err = "unknown rule '" + rule + "'";
      return std::nullopt;
    }
  } catch (const RuleError& e) {
    err = e.what();
    return std::nullopt;
  } catch (const ParseError& e) {
    err = std::string("bad parameter: ") + e.what();
    return std::nullopt;
  }
  if (!result && err.empty())
    err = !eigen_err.empty() ? eigen_err : "shape mismatch: no instance of " + rule + " yields the given premises";
  return result;
}

}  // namespace kt
