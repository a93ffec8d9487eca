#pragma once

// Random generators and brute-force oracles shared by the unit and
// acceptance tests.

#include <random>
#include <set>

#include "kt/axioms.hpp"
#include "kt/kernel.hpp"
#include "kt/propagation.hpp"
#include "kt/prover.hpp"
#include "kt/sequent.hpp"
#include "kt/translate.hpp"

namespace kt::testing {

using Rng = std::mt19937_64;

inline int uniform(Rng& r, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(r); }
inline Diamond any_diamond(Rng& r) { return uniform(r, 0, 1) ? Diamond::Black : Diamond::White; }

inline DiamondString random_word(Rng& r, int lo, int hi) {
  DiamondString w;
  int n = uniform(r, lo, hi);
  for (int i = 0; i < n; ++i) w.push_back(any_diamond(r));
  return w;
}

inline std::vector<PathAxiom> random_axioms(Rng& r, int max_axioms = 3, int max_ante = 3) {
  std::vector<PathAxiom> out;
  int n = uniform(r, 1, max_axioms);
  for (int i = 0; i < n; ++i) out.push_back({random_word(r, 0, max_ante), any_diamond(r)});
  return out;
}

inline Formula random_formula(Rng& r, int depth) {
  static const char* atoms[] = {"p", "q", "r"};
  if (depth == 0 || uniform(r, 0, 3) == 0) {
    Formula a = Formula::pos(atoms[uniform(r, 0, 2)]);
    return uniform(r, 0, 1) ? a : negate(a);
  }
  switch (uniform(r, 0, 5)) {
    case 0: return Formula::conj(random_formula(r, depth - 1), random_formula(r, depth - 1));
    case 1: return Formula::disj(random_formula(r, depth - 1), random_formula(r, depth - 1));
    case 2: return Formula::box(random_formula(r, depth - 1));
    case 3: return Formula::dia(random_formula(r, depth - 1));
    case 4: return Formula::bbox(random_formula(r, depth - 1));
    default: return Formula::bdia(random_formula(r, depth - 1));
  }
}

// random tree shape with at most `nodes` nodes and `formulas` formulas
inline NestedSequent random_nested(Rng& r, int nodes, int formulas) {
  int n = uniform(r, 1, nodes);
  std::vector<NestedSequent> ns(static_cast<std::size_t>(n));
  std::vector<int> parent(static_cast<std::size_t>(n), -1);
  std::vector<Diamond> pol(static_cast<std::size_t>(n), Diamond::White);
  for (int i = 1; i < n; ++i) {
    parent[static_cast<std::size_t>(i)] = uniform(r, 0, i - 1);
    pol[static_cast<std::size_t>(i)] = any_diamond(r);
  }
  int f = uniform(r, 0, formulas);
  for (int i = 0; i < f; ++i) ns[static_cast<std::size_t>(uniform(r, 0, n - 1))].add(random_formula(r, 2));
  for (int i = n - 1; i > 0; --i) {
    auto& par = ns[static_cast<std::size_t>(parent[static_cast<std::size_t>(i)])];
    par.children.insert(par.children.begin(), NestedChild{pol[static_cast<std::size_t>(i)], ns[static_cast<std::size_t>(i)]});
  }
  return ns[0];
}

// Closure of P u I(P) under composition and inverse, antecedents up to
// `bound`.  Words are bit strings (bit i set = <#> at position i).
class CompletionOracle {
 public:
  CompletionOracle(const std::vector<PathAxiom>& p, unsigned bound) : bound_(bound), seen_(key(bound + 1, 0, 0), false) {
    for (auto& a : p) {
      add(encode(a));
      add(inv(encode(a)));
    }
    for (std::size_t k = 0; k < all_.size(); ++k) {
      Ax h = all_[k];
      for (std::size_t j = 0; j <= k; ++j) {
        Ax g = all_[j];
        compose_all(h, g);
        compose_all(g, h);
      }
    }
  }
  bool member(const DiamondString& s, Diamond d) const {
    if (s.size() == 1 && s[0] == d) return true;
    if (s.size() > bound_) return false;
    return seen_[key(static_cast<unsigned>(s.size()), bits(s), d == Diamond::Black)];
  }

 private:
  struct Ax {
    unsigned len, bits;
    bool cons;
  };
  static unsigned bits(const DiamondString& w) {
    unsigned b = 0;
    for (std::size_t i = 0; i < w.size(); ++i)
      if (w[i] == Diamond::Black) b |= 1u << i;
    return b;
  }
  static Ax encode(const PathAxiom& a) { return {static_cast<unsigned>(a.ante.size()), bits(a.ante), a.cons == Diamond::Black}; }
  static Ax inv(const Ax& a) {
    unsigned r = 0;
    for (unsigned i = 0; i < a.len; ++i)
      if (!(a.bits >> i & 1)) r |= 1u << (a.len - 1 - i);
    return {a.len, r, !a.cons};
  }
  static std::size_t key(unsigned len, unsigned b, bool cons) {
    return ((std::size_t{1} << len) - 1 + b) * 2 + (cons ? 1 : 0);
  }
  void add(const Ax& a) {
    if (a.len > bound_) return;
    auto k = key(a.len, a.bits, a.cons);
    if (seen_[k]) return;
    seen_[k] = true;
    all_.push_back(a);
  }
  // f into every matching position of g
  void compose_all(const Ax& f, const Ax& g) {
    if (g.len + f.len - 1 > bound_ && f.len > 0) return;
    for (unsigned i = 0; i < g.len; ++i) {
      if (((g.bits >> i) & 1) != (f.cons ? 1u : 0u)) continue;
      unsigned low = g.bits & ((1u << i) - 1);
      unsigned high = g.bits >> (i + 1);
      Ax c{g.len - 1 + f.len, low | (f.bits << i) | (high << (i + f.len)), g.cons};
      add(c);
      add(inv(c));
    }
  }

  unsigned bound_;
  std::vector<bool> seen_;
  std::vector<Ax> all_;
};

// existence of a path from `from` to `to` of at most `max_len` steps whose
// string is a member
inline std::optional<PropPath> brute_reachable(const PropagationGraph& g, const NodeName& from, const NodeName& to,
                                               Diamond target, const PathGrammar& grammar, std::size_t max_len) {
  std::optional<PropPath> found;
  PropPath cur{{from}, {}};
  std::function<void()> dfs = [&] {
    if (found) return;
    if (cur.to() == to && completion_member(grammar, cur.steps, target)) {
      found = cur;
      return;
    }
    if (cur.steps.size() == max_len) return;
    for (auto& [a, b, d] : g.edges) {
      if (a != cur.to()) continue;
      cur.nodes.push_back(b);
      cur.steps.push_back(d);
      dfs();
      cur.nodes.pop_back();
      cur.steps.pop_back();
    }
  };
  dfs();
  return found;
}

// X and Y are display equivalent when Y is X displayed at some node.
inline bool display_equivalent(const NestedSequent& x, const NestedSequent& y) {
  std::vector<Address> all;
  std::function<void(const NestedSequent&, Address&)> walk = [&](const NestedSequent& n, Address& a) {
    all.push_back(a);
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      a.push_back(static_cast<int>(i));
      walk(n.children[i].node, a);
      a.pop_back();
    }
  };
  Address a;
  walk(x, a);
  for (auto& t : all) {
    NestedSequent cur = x;
    for (auto& st : display_steps(x, t)) cur = st.result;
    if (nested_equal(cur, y)) return true;
  }
  return false;
}

// Random SKT proofs over subsets of a fixed pool of path axioms, with their
// labeled translations.
struct Sample {
  CalculusId calc;
  Formula goal;
  Proof skt;
  Proof lab;
};

inline std::vector<Sample> build_corpus(Rng& rng, std::size_t want) {
  const char* pool[] = {"<><> -> <>", "<#> -> <>", "<#><> -> <>", "e -> <>"};
  std::vector<Sample> out;
  Budget b;
  b.depth = 5;
  b.node_limit = 40;
  b.step_limit = 4000;
  int tries = 0;
  while (out.size() < want && tries < 50 * static_cast<int>(want)) {
    ++tries;
    CalculusId c{Calc::Skt, {}};
    int mask = uniform(rng, 0, 15);
    for (int k = 0; k < 4; ++k)
      if (mask >> k & 1) c.axioms.push_back(parse_axiom(pool[k]));
    Formula goal;
    switch (uniform(rng, 0, 2)) {
      case 0: {
        Formula f = random_formula(rng, 2);
        goal = Formula::disj(f, negate(f));
        break;
      }
      case 1: {
        DiamondString w = random_word(rng, 0, 3);
        Formula f = Formula::pos("p");
        for (auto it = w.rbegin(); it != w.rend(); ++it) f = Formula::diamond(*it, f);
        goal = implies(f, Formula::diamond(any_diamond(rng), Formula::pos("p")));
        break;
      }
      default:
        goal = implies(random_formula(rng, 2), random_formula(rng, 2));
    }
    auto s = prove_shallow(goal, path_axioms(c.axioms), b);
    if (!s) continue;
    out.push_back({c, goal, std::move(*s), {}});
    out.back().lab = shallow_to_labeled(out.back().skt, c);
  }
  return out;
}

}  // namespace kt::testing
