#include "kt/axioms.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace kt {

PathAxiom GeneralPathAxiom::as_path() const {
  if (!is_path()) throw ScopeError("not a path axiom: " + axiom_text(*this));
  return {ante, cons[0]};
}

std::string axiom_text(const PathAxiom& a) { return word_text(a.ante) + " -> " + diamond_text(a.cons); }
std::string axiom_text(const GeneralPathAxiom& a) { return word_text(a.ante) + " -> " + word_text(a.cons); }

DiamondString parse_word(std::string_view s) {
  DiamondString w;
  std::size_t i = 0;
  auto ws = [&] {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  };
  ws();
  if (s.substr(i, 1) == "e") {
    ++i;
    ws();
    if (i != s.size()) throw ParseError("syntax error: 'e' must stand alone", i);
    return w;
  }
  while (true) {
    ws();
    if (i >= s.size()) break;
    if (s.substr(i, 2) == "<>") {
      w.push_back(Diamond::White);
      i += 2;
    } else if (s.substr(i, 3) == "<#>") {
      w.push_back(Diamond::Black);
      i += 3;
    } else {
      throw ParseError("syntax error: expected '<>', '<#>' or 'e'", i);
    }
  }
  if (w.empty()) throw ParseError("syntax error: empty word (write 'e')", i);
  return w;
}

GeneralPathAxiom parse_axiom(std::string_view line) {
  auto arrow = line.find("->");
  if (arrow == std::string_view::npos) throw ParseError("syntax error: expected '->'", line.size());
  GeneralPathAxiom a;
  try {
    a.ante = parse_word(line.substr(0, arrow));
  } catch (const ParseError& e) {
    throw ParseError(e.detail + " in antecedent", e.offset);
  }
  try {
    a.cons = parse_word(line.substr(arrow + 2));
  } catch (const ParseError& e) {
    throw ParseError(e.detail + " in consequent", arrow + 2 + e.offset);
  }
  return a;
}

std::vector<GeneralPathAxiom> parse_axiom_set(std::string_view text) {
  std::vector<GeneralPathAxiom> out;
  std::size_t pos = 0;
  int lineno = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++lineno;
    // '#' starts a comment unless it belongs to <#>
    for (std::size_t h = 0; h < line.size(); ++h)
      if (line[h] == '#' && (h == 0 || line[h - 1] != '<')) {
        line = line.substr(0, h);
        break;
      }
    bool blank = std::all_of(line.begin(), line.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
    if (!blank) {
      try {
        auto a = parse_axiom(line);
        if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
      } catch (const ParseError& e) {
        throw ParseError("line " + std::to_string(lineno) + ": " + e.detail, e.offset);
      }
    }
    if (end == text.size()) break;
    pos = end + 1;
  }
  return out;
}

std::vector<PathAxiom> path_axioms(const std::vector<GeneralPathAxiom>& gp) {
  std::vector<PathAxiom> out;
  for (auto& a : gp) out.push_back(a.as_path());
  return out;
}

PathAxiom inverse(const PathAxiom& f) {
  PathAxiom r;
  for (auto it = f.ante.rbegin(); it != f.ante.rend(); ++it) r.ante.push_back(inv(*it));
  r.cons = inv(f.cons);
  return r;
}

PathAxiom compose(const PathAxiom& f, const PathAxiom& g, std::size_t i) {
  if (i < 1 || i > g.ante.size() || g.ante[i - 1] != f.cons)
    throw NotComposable(axiom_text(f) + " is not composable with " + axiom_text(g) + " at " + std::to_string(i));
  PathAxiom r;
  r.ante.insert(r.ante.end(), g.ante.begin(), g.ante.begin() + (i - 1));
  r.ante.insert(r.ante.end(), f.ante.begin(), f.ante.end());
  r.ante.insert(r.ante.end(), g.ante.begin() + i, g.ante.end());
  r.cons = g.cons;
  return r;
}

void check_scope(const GeneralPathAxiom& a) {
  if (!a.ante.empty() && a.cons.empty())
    throw ScopeError("axiom " + axiom_text(a) + " needs equality atoms; rows with an empty consequent are not supported");
}

namespace {

std::string chain_text(const DiamondString& w, const std::string& inner) {
  std::string s;
  for (Diamond d : w) s += d == Diamond::White ? "o{" : "b{";
  s += inner;
  s += std::string(w.size(), '}');
  return s;
}

std::string atoms_text(const DiamondString& w, const std::string& x, const std::string& y, const std::string& mid,
                       std::vector<std::string>* internal) {
  std::string s;
  std::string cur = x;
  for (std::size_t k = 0; k < w.size(); ++k) {
    std::string nxt = k + 1 == w.size() ? y : mid + std::to_string(k + 1);
    if (k + 1 < w.size() && internal) internal->push_back(nxt);
    if (!s.empty()) s += ", ";
    s += w[k] == Diamond::White ? "R(" + cur + "," + nxt + ")" : "R(" + nxt + "," + cur + ")";
    cur = nxt;
  }
  return s;
}

}  // namespace

RuleSchema rule_schemas(const GeneralPathAxiom& a) {
  check_scope(a);
  RuleSchema r;
  r.axiom = a;
  r.nested_conclusion = "X, " + chain_text(a.ante, "Y");
  r.nested_premise = "X, " + chain_text(a.cons, "Y");
  std::string y = a.ante.empty() ? "x" : "y";
  std::string pi = atoms_text(a.ante, "x", y, "u", nullptr);
  std::string sigma = atoms_text(a.cons, "x", y, "z", &r.eigenvariables);
  r.labeled_conclusion = "R" + (pi.empty() ? "" : ", " + pi) + ", G";
  r.labeled_premise = "R" + (pi.empty() ? "" : ", " + pi) + (sigma.empty() ? "" : ", " + sigma) + ", G";
  return r;
}

// ---- grammar ----

PathGrammar build_grammar(const std::vector<PathAxiom>& p) {
  PathGrammar g;
  g.source = p;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (std::find(g.rules.begin(), g.rules.end(), p[k]) == g.rules.end()) {
      g.rules.push_back(p[k]);
      g.inverse_of.push_back(-1);
    }
  }
  for (std::size_t k = 0; k < p.size(); ++k) {
    PathAxiom i = inverse(p[k]);
    if (std::find(g.rules.begin(), g.rules.end(), i) == g.rules.end()) {
      g.rules.push_back(i);
      g.inverse_of.push_back(static_cast<int>(k));
    }
  }
  g.helper = {false, false};
  auto nt = [](Diamond d) { return d == Diamond::White ? 0 : 1; };
  for (std::size_t r = 0; r < g.rules.size(); ++r) {
    const auto& ax = g.rules[r];
    int lhs = nt(ax.cons);
    int ri = static_cast<int>(r);
    std::size_t n = ax.ante.size();
    if (n == 0) {
      g.eps.emplace_back(lhs, ri);
    } else if (n == 1) {
      g.bins.push_back({lhs, nt(ax.ante[0]), -1, ri});
    } else {
      int cur = lhs;
      int rule = ri;
      for (std::size_t k = 0; k + 2 < n; ++k) {
        int h = g.num_nt++;
        g.helper.push_back(true);
        g.bins.push_back({cur, nt(ax.ante[k]), h, rule});
        cur = h;
        rule = -1;
      }
      g.bins.push_back({cur, nt(ax.ante[n - 2]), nt(ax.ante[n - 1]), rule});
    }
  }
  g.nullable.assign(g.num_nt, false);
  for (auto& [lhs, r] : g.eps) g.nullable[lhs] = true;
  for (bool changed = true; changed;) {
    changed = false;
    for (auto& b : g.bins) {
      if (g.nullable[b.lhs]) continue;
      if (g.nullable[b.a] && (b.b < 0 || g.nullable[b.b])) {
        g.nullable[b.lhs] = true;
        changed = true;
      }
    }
  }
  return g;
}

std::vector<Diamond> frontier(const ParseNode& t) {
  std::vector<Diamond> out;
  if (t.rule < 0) {
    out.push_back(t.sym);
    return out;
  }
  for (auto& k : t.kids) {
    auto f = frontier(k);
    out.insert(out.end(), f.begin(), f.end());
  }
  return out;
}

std::size_t parse_size(const ParseNode& t) {
  std::size_t n = 1;
  for (auto& k : t.kids) n += parse_size(k);
  return n;
}

CflEngine::CflEngine(const PathGrammar& g, int n, std::vector<Edge> edges)
    : g_(g), n_(n), edges_(std::move(edges)) {
  out_.assign(g_.num_nt, std::vector<std::vector<int>>(n_));
  in_.assign(g_.num_nt, std::vector<std::vector<int>>(n_));

  null_how_.assign(g_.num_nt, 0);
  std::vector<bool> done(g_.num_nt, false);
  for (std::size_t e = 0; e < g_.eps.size(); ++e) {
    int lhs = g_.eps[e].first;
    if (!done[lhs]) {
      done[lhs] = true;
      null_how_[lhs] = -static_cast<int>(e) - 1;
    }
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t b = 0; b < g_.bins.size(); ++b) {
      auto& bn = g_.bins[b];
      if (done[bn.lhs]) continue;
      if (done[bn.a] && (bn.b < 0 || done[bn.b])) {
        done[bn.lhs] = true;
        null_how_[bn.lhs] = static_cast<int>(b);
        changed = true;
      }
    }
  }

  std::vector<std::vector<int>> by_a(g_.num_nt), by_b(g_.num_nt);
  for (std::size_t b = 0; b < g_.bins.size(); ++b) {
    by_a[g_.bins[b].a].push_back(static_cast<int>(b));
    if (g_.bins[b].b >= 0) by_b[g_.bins[b].b].push_back(static_cast<int>(b));
  }

  for (std::size_t e = 0; e < edges_.size(); ++e) {
    auto [u, v, d] = edges_[e];
    add(d == Diamond::White ? 0 : 1, u, v, {0, -1, -1, static_cast<int>(e)});
  }
  for (int a = 0; a < g_.num_nt; ++a)
    if (done[a])
      for (int u = 0; u < n_; ++u) add(a, u, u, {3, -1, -1, -1});

  for (std::size_t w = 0; w < work_.size(); ++w) {
    auto [B, u, v] = work_[w];
    for (int b : by_a[B]) {
      auto& bn = g_.bins[b];
      if (bn.b < 0) {
        add(bn.lhs, u, v, {1, b, -1, -1});
      } else {
        std::vector<int> ws = out_[bn.b][v];
        for (int x : ws) add(bn.lhs, u, x, {2, b, v, -1});
      }
    }
    for (int b : by_b[B]) {
      auto& bn = g_.bins[b];
      std::vector<int> ws = in_[bn.a][u];
      for (int x : ws) add(bn.lhs, x, v, {2, b, u, -1});
    }
  }
}

void CflEngine::add(int nt, int u, int v, Back b) {
  Key k{nt, u, v};
  if (facts_.count(k)) return;
  facts_.emplace(k, b);
  out_[nt][u].push_back(v);
  in_[nt][v].push_back(u);
  work_.push_back(k);
}

bool CflEngine::has(Diamond d, int u, int v) const { return facts_.count({d == Diamond::White ? 0 : 1, u, v}) > 0; }

std::vector<ParseNode> CflEngine::expand_nullable(int nt, int at) const {
  int how = null_how_[nt];
  std::vector<ParseNode> seq;
  if (how < 0) {
    auto [lhs, rule] = g_.eps[-how - 1];
    ParseNode n;
    n.sym = lhs == 0 ? Diamond::White : Diamond::Black;
    n.rule = rule;
    n.from = n.to = at;
    return {n};
  }
  auto& bn = g_.bins[how];
  seq = expand_nullable(bn.a, at);
  if (bn.b >= 0) {
    auto rest = expand_nullable(bn.b, at);
    seq.insert(seq.end(), rest.begin(), rest.end());
  }
  if (g_.helper[nt]) return seq;
  ParseNode n;
  n.sym = nt == 0 ? Diamond::White : Diamond::Black;
  n.rule = bn.rule;
  n.from = n.to = at;
  n.kids = std::move(seq);
  return {n};
}

std::vector<ParseNode> CflEngine::expand(int nt, int u, int v) const {
  const Back& b = facts_.at({nt, u, v});
  Diamond sym = nt == 0 ? Diamond::White : Diamond::Black;
  switch (b.kind) {
    case 0: {
      ParseNode n;
      n.sym = sym;
      n.rule = -1;
      n.from = u;
      n.to = v;
      return {n};
    }
    case 1: {
      auto& bn = g_.bins[b.bin];
      ParseNode n;
      n.sym = sym;
      n.rule = bn.rule;
      n.from = u;
      n.to = v;
      n.kids = expand(bn.a, u, v);
      return {n};
    }
    case 2: {
      auto& bn = g_.bins[b.bin];
      auto seq = expand(bn.a, u, b.mid);
      auto rest = expand(bn.b, b.mid, v);
      seq.insert(seq.end(), rest.begin(), rest.end());
      if (g_.helper[nt]) return seq;
      ParseNode n;
      n.sym = sym;
      n.rule = bn.rule;
      n.from = u;
      n.to = v;
      n.kids = std::move(seq);
      return {n};
    }
    default:
      return expand_nullable(nt, u);
  }
}

std::optional<ParseNode> CflEngine::tree(Diamond d, int u, int v) const {
  int nt = d == Diamond::White ? 0 : 1;
  if (!facts_.count({nt, u, v})) return std::nullopt;
  return expand(nt, u, v).front();
}

namespace {

std::vector<CflEngine::Edge> word_edges(const DiamondString& pi) {
  std::vector<CflEngine::Edge> e;
  for (std::size_t i = 0; i < pi.size(); ++i) e.emplace_back(static_cast<int>(i), static_cast<int>(i + 1), pi[i]);
  return e;
}

}  // namespace

bool completion_member(const PathGrammar& g, const DiamondString& pi, Diamond target) {
  CflEngine e(g, static_cast<int>(pi.size()) + 1, word_edges(pi));
  return e.has(target, 0, static_cast<int>(pi.size()));
}

std::optional<ParseNode> parse_tree(const PathGrammar& g, const DiamondString& pi, Diamond target) {
  CflEngine e(g, static_cast<int>(pi.size()) + 1, word_edges(pi));
  return e.tree(target, 0, static_cast<int>(pi.size()));
}

}  // namespace kt
