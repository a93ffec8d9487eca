#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "kt/axioms.hpp"
#include "kt/sequent.hpp"

namespace kt {

using NodeName = std::string;

struct PropagationGraph {
  std::vector<NodeName> nodes;
  std::set<std::tuple<NodeName, NodeName, Diamond>> edges;

  bool has_node(const NodeName& n) const;
  bool has_edge(const NodeName& a, const NodeName& b, Diamond d) const { return edges.count({a, b, d}) > 0; }
  // adds (a,b,d) together with its dual (b,a,inv d)
  void add_pair(const NodeName& a, const NodeName& b, Diamond d);
  friend bool operator==(const PropagationGraph& a, const PropagationGraph& b);
};

// Nodes are named by their id when set, by address text otherwise.
PropagationGraph pg_of_nested(const NestedSequent& x);
PropagationGraph pg_of_labeled(const LabeledSequent& s);
PropagationGraph rename(const PropagationGraph& g, const std::map<NodeName, NodeName>& m);

struct PropPath {
  std::vector<NodeName> nodes;  // k >= 1
  std::vector<Diamond> steps;   // k - 1
  const NodeName& from() const { return nodes.front(); }
  const NodeName& to() const { return nodes.back(); }
};

DiamondString path_string(const PropPath& p);
bool path_valid(const PropagationGraph& g, const PropPath& p);
// "x <> v <#> y"
std::string path_text(const PropPath& p);
PropPath parse_path(std::string_view text);

struct UnknownNode : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::optional<PropPath> reachable(const PropagationGraph& g, const NodeName& from, const NodeName& to, Diamond target,
                                  const PathGrammar& grammar);
// every destination reachable from `from`, in node order
std::map<NodeName, PropPath> reachable_all(const PropagationGraph& g, const NodeName& from, Diamond target,
                                           const PathGrammar& grammar);

std::string to_dot(const PropagationGraph& g, const std::string& name = "PG");

}  // namespace kt
