#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "kt/formula.hpp"

namespace kt {

// <F1>...<Fn> A -> <F> A
struct PathAxiom {
  DiamondString ante;
  Diamond cons = Diamond::White;
  friend bool operator==(const PathAxiom&, const PathAxiom&) = default;
  friend auto operator<=>(const PathAxiom&, const PathAxiom&) = default;
};

// Pi A -> Sigma A
struct GeneralPathAxiom {
  DiamondString ante;
  DiamondString cons;
  bool is_path() const { return cons.size() == 1; }
  PathAxiom as_path() const;
  friend bool operator==(const GeneralPathAxiom&, const GeneralPathAxiom&) = default;
  friend auto operator<=>(const GeneralPathAxiom&, const GeneralPathAxiom&) = default;
};

inline GeneralPathAxiom general(const PathAxiom& p) { return {p.ante, {p.cons}}; }

std::string axiom_text(const PathAxiom& a);
std::string axiom_text(const GeneralPathAxiom& a);

struct NotComposable : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ScopeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

DiamondString parse_word(std::string_view s);
GeneralPathAxiom parse_axiom(std::string_view line);
// One axiom per line, '#' starts a comment.  Errors carry "line N".
std::vector<GeneralPathAxiom> parse_axiom_set(std::string_view text);
std::vector<PathAxiom> path_axioms(const std::vector<GeneralPathAxiom>& gp);  // throws ScopeError

PathAxiom inverse(const PathAxiom& f);
// F |>^i G, i counted from 1.
PathAxiom compose(const PathAxiom& f, const PathAxiom& g, std::size_t i);

// Throws ScopeError for the (Pi nonempty, Sigma empty) row.
void check_scope(const GeneralPathAxiom& a);

struct RuleSchema {
  GeneralPathAxiom axiom;
  std::string nested_premise, nested_conclusion;
  std::string labeled_premise, labeled_conclusion;
  std::vector<std::string> eigenvariables;
};
RuleSchema rule_schemas(const GeneralPathAxiom& a);

// Grammar whose language from <?> is { Pi | Pi A -> <?>A in the completion }.
struct PathGrammar {
  std::vector<PathAxiom> source;      // P as given
  std::vector<PathAxiom> rules;       // P u I(P), deduplicated
  std::vector<int> inverse_of;        // rules[k] = I(source[inverse_of[k]]) or -1 when it is in P

  struct Bin {
    int lhs;
    int a, b;   // b < 0: unary
    int rule;   // index into rules, or -1 for helper links
  };
  int num_nt = 2;                     // 0 = <>, 1 = <#>, then helpers
  std::vector<Bin> bins;
  std::vector<std::pair<int, int>> eps;  // (lhs, rule)
  std::vector<bool> nullable;
  std::vector<bool> helper;
};

PathGrammar build_grammar(const std::vector<PathAxiom>& p);

// Derivation tree over P u I(P).  Leaves with rule == -1 are identity
// productions and carry the consumed edge.
struct ParseNode {
  Diamond sym = Diamond::White;
  int rule = -1;
  int from = -1, to = -1;
  std::vector<ParseNode> kids;
};
std::vector<Diamond> frontier(const ParseNode& t);
std::size_t parse_size(const ParseNode& t);

bool completion_member(const PathGrammar& g, const DiamondString& pi, Diamond target);
std::optional<ParseNode> parse_tree(const PathGrammar& g, const DiamondString& pi, Diamond target);

// CFL reachability over an edge-labelled graph with nodes 0..n-1.
class CflEngine {
 public:
  using Edge = std::tuple<int, int, Diamond>;
  CflEngine(const PathGrammar& g, int n, std::vector<Edge> edges);
  bool has(Diamond d, int u, int v) const;
  std::optional<ParseNode> tree(Diamond d, int u, int v) const;

 private:
  struct Back {
    int kind;  // 0 terminal, 1 unary, 2 binary, 3 nullable
    int bin;
    int mid;
    int edge;
  };
  using Key = std::tuple<int, int, int>;
  void add(int nt, int u, int v, Back b);
  std::vector<ParseNode> expand(int nt, int u, int v) const;
  std::vector<ParseNode> expand_nullable(int nt, int at) const;

  const PathGrammar& g_;
  int n_;
  std::vector<Edge> edges_;
  std::map<Key, Back> facts_;
  std::vector<std::vector<std::vector<int>>> out_;  // out_[nt][u] -> v
  std::vector<std::vector<std::vector<int>>> in_;   // in_[nt][v] -> u
  std::vector<Key> work_;
  std::vector<int> null_how_;  // per nonterminal: index into bins or -(eps index)-1
};

}  // namespace kt
