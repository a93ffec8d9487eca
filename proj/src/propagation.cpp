#include "kt/propagation.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace kt {

bool PropagationGraph::has_node(const NodeName& n) const {
  return std::find(nodes.begin(), nodes.end(), n) != nodes.end();
}

void PropagationGraph::add_pair(const NodeName& a, const NodeName& b, Diamond d) {
  edges.insert({a, b, d});
  edges.insert({b, a, inv(d)});
}

bool operator==(const PropagationGraph& a, const PropagationGraph& b) {
  std::set<NodeName> na(a.nodes.begin(), a.nodes.end()), nb(b.nodes.begin(), b.nodes.end());
  return na == nb && a.edges == b.edges;
}

PropagationGraph pg_of_nested(const NestedSequent& x) {
  PropagationGraph g;
  std::function<void(const NestedSequent&, const Address&)> walk = [&](const NestedSequent& n, const Address& a) {
    NodeName me = n.id.empty() ? address_text(a) : n.id;
    g.nodes.push_back(me);
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      Address ca = a;
      ca.push_back(static_cast<int>(i));
      const auto& c = n.children[i];
      NodeName cn = c.node.id.empty() ? address_text(ca) : c.node.id;
      g.add_pair(me, cn, c.pol);
      walk(c.node, ca);
    }
  };
  walk(x, {});
  return g;
}

PropagationGraph pg_of_labeled(const LabeledSequent& s) {
  PropagationGraph g;
  for (auto& l : s.labels()) g.nodes.push_back(l);
  for (auto& r : s.rel) g.add_pair(r.x, r.y, Diamond::White);
  return g;
}

PropagationGraph rename(const PropagationGraph& g, const std::map<NodeName, NodeName>& m) {
  auto f = [&](const NodeName& n) {
    auto it = m.find(n);
    return it == m.end() ? n : it->second;
  };
  PropagationGraph r;
  for (auto& n : g.nodes) r.nodes.push_back(f(n));
  for (auto& [a, b, d] : g.edges) r.edges.insert({f(a), f(b), d});
  return r;
}

DiamondString path_string(const PropPath& p) { return p.steps; }

bool path_valid(const PropagationGraph& g, const PropPath& p) {
  if (p.nodes.empty() || p.steps.size() + 1 != p.nodes.size()) return false;
  if (!g.has_node(p.nodes[0])) return false;
  for (std::size_t i = 0; i < p.steps.size(); ++i)
    if (!g.has_edge(p.nodes[i], p.nodes[i + 1], p.steps[i])) return false;
  return true;
}

std::string path_text(const PropPath& p) {
  std::string s = p.nodes[0];
  for (std::size_t i = 0; i < p.steps.size(); ++i) {
    s += ' ';
    s += diamond_text(p.steps[i]);
    s += ' ';
    s += p.nodes[i + 1];
  }
  return s;
}

PropPath parse_path(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<std::string> tok;
  for (std::string t; in >> t;) tok.push_back(t);
  if (tok.empty() || tok.size() % 2 == 0) throw ParseError("syntax error: malformed path", 0);
  PropPath p;
  p.nodes.push_back(tok[0]);
  for (std::size_t i = 1; i < tok.size(); i += 2) {
    if (tok[i] == "<>")
      p.steps.push_back(Diamond::White);
    else if (tok[i] == "<#>")
      p.steps.push_back(Diamond::Black);
    else
      throw ParseError("syntax error: expected '<>' or '<#>' in path", i);
    p.nodes.push_back(tok[i + 1]);
  }
  return p;
}

namespace {

struct Indexed {
  std::map<NodeName, int> idx;
  std::vector<CflEngine::Edge> edges;
};

Indexed index(const PropagationGraph& g) {
  Indexed r;
  for (auto& n : g.nodes) r.idx.emplace(n, static_cast<int>(r.idx.size()));
  for (auto& [a, b, d] : g.edges) r.edges.emplace_back(r.idx.at(a), r.idx.at(b), d);
  return r;
}

void leaves(const ParseNode& t, std::vector<const ParseNode*>& out) {
  if (t.rule < 0) {
    out.push_back(&t);
    return;
  }
  for (auto& k : t.kids) leaves(k, out);
}

PropPath extract(const PropagationGraph& g, const CflEngine& e, int u, int v, Diamond target) {
  auto t = e.tree(target, u, v);
  std::vector<const ParseNode*> ls;
  leaves(*t, ls);
  PropPath p;
  p.nodes.push_back(g.nodes[u]);
  for (auto* l : ls) {
    p.steps.push_back(l->sym);
    p.nodes.push_back(g.nodes[l->to]);
  }
  return p;
}

}  // namespace

std::optional<PropPath> reachable(const PropagationGraph& g, const NodeName& from, const NodeName& to, Diamond target,
                                  const PathGrammar& grammar) {
  if (!g.has_node(from)) throw UnknownNode("unknown node " + from);
  if (!g.has_node(to)) throw UnknownNode("unknown node " + to);
  auto ix = index(g);
  CflEngine e(grammar, static_cast<int>(g.nodes.size()), ix.edges);
  int u = ix.idx.at(from), v = ix.idx.at(to);
  if (!e.has(target, u, v)) return std::nullopt;
  return extract(g, e, u, v, target);
}

std::map<NodeName, PropPath> reachable_all(const PropagationGraph& g, const NodeName& from, Diamond target,
                                           const PathGrammar& grammar) {
  if (!g.has_node(from)) throw UnknownNode("unknown node " + from);
  auto ix = index(g);
  CflEngine e(grammar, static_cast<int>(g.nodes.size()), ix.edges);
  int u = ix.idx.at(from);
  std::map<NodeName, PropPath> out;
  for (std::size_t v = 0; v < g.nodes.size(); ++v)
    if (e.has(target, u, static_cast<int>(v))) out.emplace(g.nodes[v], extract(g, e, u, static_cast<int>(v), target));
  return out;
}

std::string to_dot(const PropagationGraph& g, const std::string& name) {
  std::ostringstream o;
  o << "digraph " << name << " {\n";
  for (auto& n : g.nodes) o << "  \"" << n << "\";\n";
  for (auto& [a, b, d] : g.edges)
    o << "  \"" << a << "\" -> \"" << b << "\" [label=\"" << diamond_text(d) << "\"];\n";
  o << "}\n";
  return o.str();
}

}  // namespace kt
