#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kt/sequent.hpp"

namespace kt {

// Directed graph with formula-multiset vertex labels.  Used both for
// labeled polytrees and, through graph_of, for arbitrary labeled sequents.
struct Polytree {
  std::vector<Label> vertices;
  std::vector<std::pair<Label, Label>> edges;
  std::map<Label, std::vector<Formula>> labeling;

  bool has_vertex(const Label& v) const { return labeling.count(v) > 0; }
  void add_vertex(const Label& v);
  bool has_edge(const Label& a, const Label& b) const;
  void add_edge(const Label& a, const Label& b);
  void remove_edge(const Label& a, const Label& b);
  void remove_vertex(const Label& v);  // together with incident edges
  std::vector<Label> out_neighbors(const Label& v) const;
  std::vector<Label> in_neighbors(const Label& v) const;
  // neighbours with the diamond leading from v to them: White for (v,u), Black for (u,v)
  std::vector<std::pair<Label, Diamond>> neighbors(const Label& v) const;
  bool empty() const { return vertices.empty(); }
};

struct MergeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnknownLabel : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool is_polytree(const Polytree& g);

// L_x(s).  Non-root nodes take their `id` when set, otherwise a fresh label.
// `addr`, when given, receives address text -> label.
Polytree to_polytree(const Label& x, const NestedSequent& s, LabelGen& gen,
                     std::map<std::string, Label>* addr = nullptr);
// N_x(g).  Node ids of the result are the vertex labels.  `addr`, when
// given, receives label -> address in the result.
NestedSequent to_nested(const Label& x, const Polytree& g, std::map<Label, Address>* addr = nullptr);

std::optional<std::map<Label, Label>> iso(const Polytree& g, const Polytree& h);
Polytree merge(const Polytree& g, const Polytree& h, const Label& x);

LabeledSequent labeled_sequent_of(const Polytree& g);
Polytree graph_of(const LabeledSequent& s);
bool is_polytree_sequent(const LabeledSequent& s);

// Undirected tree distance; -1 when unreachable.
int tree_distance(const Polytree& g, const Label& a, const Label& b);
// Vertices on the unique undirected path a..b, inclusive.
std::vector<Label> tree_path(const Polytree& g, const Label& a, const Label& b);
int diameter(const Polytree& g);

std::string to_dot(const Polytree& g, const std::string& name = "G");

}  // namespace kt
