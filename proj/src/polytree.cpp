#include "kt/polytree.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>

namespace kt {

void Polytree::add_vertex(const Label& v) {
  if (has_vertex(v)) return;
  vertices.push_back(v);
  labeling[v];
}

bool Polytree::has_edge(const Label& a, const Label& b) const {
  return std::find(edges.begin(), edges.end(), std::make_pair(a, b)) != edges.end();
}

void Polytree::add_edge(const Label& a, const Label& b) {
  add_vertex(a);
  add_vertex(b);
  if (!has_edge(a, b)) edges.emplace_back(a, b);
}

void Polytree::remove_edge(const Label& a, const Label& b) {
  edges.erase(std::remove(edges.begin(), edges.end(), std::make_pair(a, b)), edges.end());
}

void Polytree::remove_vertex(const Label& v) {
  vertices.erase(std::remove(vertices.begin(), vertices.end(), v), vertices.end());
  labeling.erase(v);
  edges.erase(std::remove_if(edges.begin(), edges.end(), [&](auto& e) { return e.first == v || e.second == v; }),
              edges.end());
}

std::vector<Label> Polytree::out_neighbors(const Label& v) const {
  std::vector<Label> out;
  for (auto& [a, b] : edges)
    if (a == v) out.push_back(b);
  return out;
}

std::vector<Label> Polytree::in_neighbors(const Label& v) const {
  std::vector<Label> out;
  for (auto& [a, b] : edges)
    if (b == v) out.push_back(a);
  return out;
}

std::vector<std::pair<Label, Diamond>> Polytree::neighbors(const Label& v) const {
  std::vector<std::pair<Label, Diamond>> out;
  for (auto& [a, b] : edges) {
    if (a == v) out.emplace_back(b, Diamond::White);
    if (b == v) out.emplace_back(a, Diamond::Black);
  }
  return out;
}

bool is_polytree(const Polytree& g) {
  if (g.vertices.empty()) return g.edges.empty();
  for (auto& [a, b] : g.edges)
    if (a == b || g.has_edge(b, a)) return false;
  if (g.edges.size() + 1 != g.vertices.size()) return false;
  return [&] {
           std::set<Label> seen{g.vertices.front()};
           std::deque<Label> q{g.vertices.front()};
           while (!q.empty()) {
             Label v = q.front();
             q.pop_front();
             for (auto& [u, d] : g.neighbors(v))
               if (seen.insert(u).second) q.push_back(u);
           }
           return seen.size() == g.vertices.size();
         }();
}

namespace {

void build_polytree(const Label& x, const NestedSequent& s, LabelGen& gen, Polytree& g, const std::string& addr,
                    std::map<std::string, Label>* amap) {
  g.add_vertex(x);
  if (amap) (*amap)[addr] = x;
  for (auto& f : s.formulas) g.labeling[x].push_back(f);
  for (std::size_t i = 0; i < s.children.size(); ++i) {
    auto& c = s.children[i];
    Label y = c.node.id.empty() ? gen.fresh() : c.node.id;
    gen.reserve(y);
    if (c.pol == Diamond::White)
      g.add_edge(x, y);
    else
      g.add_edge(y, x);
    std::string sub = addr == "." ? std::to_string(i) : addr + "." + std::to_string(i);
    build_polytree(y, c.node, gen, g, sub, amap);
  }
}

void reserve_ids(const NestedSequent& s, LabelGen& gen) {
  if (!s.id.empty()) gen.reserve(s.id);
  for (auto& c : s.children) reserve_ids(c.node, gen);
}

NestedSequent build_nested(const Label& x, const Label& parent, const Polytree& g, const Address& here,
                           std::map<Label, Address>* amap) {
  NestedSequent n;
  n.id = x;
  if (amap) (*amap)[x] = here;
  n.formulas = g.labeling.at(x);
  for (auto& y : g.out_neighbors(x)) {
    if (y == parent) continue;
    Address a = here;
    a.push_back(static_cast<int>(n.children.size()));
    n.add(Diamond::White, build_nested(y, x, g, a, amap));
  }
  for (auto& y : g.in_neighbors(x)) {
    if (y == parent) continue;
    Address a = here;
    a.push_back(static_cast<int>(n.children.size()));
    n.add(Diamond::Black, build_nested(y, x, g, a, amap));
  }
  return n;
}

void pair_up(const NestedSequent& a, const NestedSequent& b, std::map<Label, Label>& m) {
  m[a.id] = b.id;
  std::vector<bool> used(b.children.size(), false);
  for (auto& ca : a.children) {
    std::string key = canonical(ca.node);
    for (std::size_t j = 0; j < b.children.size(); ++j) {
      if (used[j] || b.children[j].pol != ca.pol) continue;
      if (canonical(b.children[j].node) != key) continue;
      used[j] = true;
      pair_up(ca.node, b.children[j].node, m);
      break;
    }
  }
}

}  // namespace

Polytree to_polytree(const Label& x, const NestedSequent& s, LabelGen& gen, std::map<std::string, Label>* addr) {
  Polytree g;
  if (s.empty() && s.children.empty()) {
    if (addr) (*addr)["."] = x;
    return g;
  }
  gen.reserve(x);
  reserve_ids(s, gen);
  build_polytree(x, s, gen, g, ".", addr);
  return g;
}

NestedSequent to_nested(const Label& x, const Polytree& g, std::map<Label, Address>* addr) {
  if (g.empty()) return NestedSequent{};
  if (!g.has_vertex(x)) throw UnknownLabel("unknown label " + x);
  return build_nested(x, "", g, {}, addr);
}

std::optional<std::map<Label, Label>> iso(const Polytree& g, const Polytree& h) {
  if (g.vertices.size() != h.vertices.size() || g.edges.size() != h.edges.size()) return std::nullopt;
  if (g.empty()) return std::map<Label, Label>{};
  if (!is_polytree(g) || !is_polytree(h)) {
    return labeled_iso(labeled_sequent_of(g), labeled_sequent_of(h));
  }
  NestedSequent ga = to_nested(g.vertices.front(), g);
  std::string key = canonical(ga);
  for (auto& b : h.vertices) {
    NestedSequent hb = to_nested(b, h);
    if (canonical(hb) != key) continue;
    std::map<Label, Label> m;
    pair_up(ga, hb, m);
    return m;
  }
  return std::nullopt;
}

Polytree merge(const Polytree& g, const Polytree& h, const Label& x) {
  std::vector<Label> shared;
  for (auto& v : g.vertices)
    if (h.has_vertex(v)) shared.push_back(v);
  if (shared.size() != 1 || shared[0] != x) throw MergeError("merge requires exactly the vertex " + x + " in common");
  Polytree out = g;
  for (auto& v : h.vertices) {
    out.add_vertex(v);
    if (v == x) {
      for (auto& f : h.labeling.at(v)) out.labeling[v].push_back(f);
    } else {
      out.labeling[v] = h.labeling.at(v);
    }
  }
  for (auto& [a, b] : h.edges) out.add_edge(a, b);
  if (!is_polytree(out)) throw MergeError("merge result is not a polytree");
  return out;
}

LabeledSequent labeled_sequent_of(const Polytree& g) {
  LabeledSequent s;
  for (auto& [a, b] : g.edges) s.add_rel(a, b);
  for (auto& v : g.vertices)
    for (auto& f : g.labeling.at(v)) s.add(v, f);
  return s;
}

Polytree graph_of(const LabeledSequent& s) {
  Polytree g;
  for (auto& r : s.rel) g.add_edge(r.x, r.y);
  for (auto& l : s.lf) {
    g.add_vertex(l.x);
    g.labeling[l.x].push_back(l.f);
  }
  return g;
}

bool is_polytree_sequent(const LabeledSequent& s) { return is_polytree(graph_of(s)); }

std::vector<Label> tree_path(const Polytree& g, const Label& a, const Label& b) {
  std::map<Label, Label> prev;
  std::deque<Label> q{a};
  prev[a] = a;
  while (!q.empty()) {
    Label v = q.front();
    q.pop_front();
    if (v == b) break;
    for (auto& [u, d] : g.neighbors(v))
      if (!prev.count(u)) {
        prev[u] = v;
        q.push_back(u);
      }
  }
  if (!prev.count(b)) return {};
  std::vector<Label> path{b};
  while (path.back() != a) path.push_back(prev[path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

int tree_distance(const Polytree& g, const Label& a, const Label& b) {
  auto p = tree_path(g, a, b);
  return p.empty() ? -1 : static_cast<int>(p.size()) - 1;
}

int diameter(const Polytree& g) {
  int best = 0;
  for (auto& a : g.vertices)
    for (auto& b : g.vertices) best = std::max(best, tree_distance(g, a, b));
  return best;
}

std::string to_dot(const Polytree& g, const std::string& name) {
  auto esc = [](const std::string& s) {
    std::string o;
    for (char c : s) {
      if (c == '"' || c == '\\') o += '\\';
      o += c;
    }
    return o;
  };
  std::string out = "digraph " + name + " {\n";
  for (auto& v : g.vertices) {
    std::string lab = v + ": {";
    bool first = true;
    for (auto& f : g.labeling.at(v)) {
      if (!first) lab += ", ";
      first = false;
      lab += f.text();
    }
    lab += "}";
    out += "  \"" + esc(v) + "\" [label=\"" + esc(lab) + "\"];\n";
  }
  for (auto& [a, b] : g.edges) out += "  \"" + esc(a) + "\" -> \"" + esc(b) + "\";\n";
  out += "}\n";
  return out;
}

}  // namespace kt
