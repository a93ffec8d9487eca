// ktool: command-line front end for the Kt proof engine.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "kt/polytree.hpp"
#include "kt/proof.hpp"
#include "kt/prover.hpp"
#include "kt/translate.hpp"

using namespace kt;
using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<GeneralPathAxiom> load_axioms(const std::string& path) {
  if (path.empty()) return {};
  try {
    return parse_axiom_set(slurp(path));
  } catch (const ParseError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

Proof load_proof(const std::string& path, bool labeled) {
  try {
    return read_proof(slurp(path), labeled);
  } catch (const ParseError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

void write_out(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

json counts_json(const Proof& p) {
  json j = json::object();
  for (auto& [r, n] : rule_counts(p)) j[r] = n;
  return j;
}

Calc calc_arg(const std::string& s) {
  try {
    return parse_calc(s);
  } catch (const std::exception&) {
    throw UsageError("unknown calculus " + s);
  }
}

// ---- subcommands ----

struct Common {
  bool json = false;
  std::string axioms;
};

int cmd_check(const Common& o, const std::string& calc, const std::string& proof, bool modal, bool allow_open) {
  CalculusId c{calc_arg(calc), load_axioms(o.axioms), modal};
  Proof p = load_proof(proof, c.labeled());
  Report r = check(p, c, {allow_open});
  if (o.json) {
    json j{{"accepted", r.ok}, {"calculus", calculus_name(c)}, {"nodes", r.nodes}, {"diagnostics", json::array()}};
    for (auto& d : r.diagnostics) j["diagnostics"].push_back({{"where", d.where}, {"rule", d.rule}, {"message", d.message}});
    std::cout << j.dump(2) << "\n";
  } else if (r.ok) {
    std::cout << "accepted: " << r.nodes << " nodes\n";
  } else {
    for (auto& d : r.diagnostics) std::cout << d.where << " (" << d.rule << "): " << d.message << "\n";
    std::cout << "rejected\n";
  }
  return r.ok ? 0 : 1;
}

Calc calc_kind(const std::string& s) {
  if (s == "skt") return Calc::Skt;
  if (s == "dkt") return Calc::Dkt;
  if (s == "lkt") return Calc::LktSt;
  throw UsageError("expected one of skt, lkt, dkt: " + s);
}

int cmd_translate(const Common& o, const std::string& from, const std::string& to, const std::string& proof,
                  const std::string& out, bool modal, const std::string& start) {
  Calc a = calc_kind(from), b = calc_kind(to);
  if (a == b) throw UsageError("--from and --to coincide");
  CalculusId c{Calc::Skt, load_axioms(o.axioms), modal};
  Proof cur = load_proof(proof, a == Calc::LktSt);
  json stages = json::array();
  json in_counts = counts_json(cur);
  auto stage = [&](const char* name, auto&& f) {
    auto t0 = std::chrono::steady_clock::now();
    Proof next = f(cur);
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    stages.push_back({{"stage", name}, {"ms", ms}, {"rules_in", proof_size(cur)}, {"rules_out", proof_size(next)}});
    cur = std::move(next);
  };
  std::optional<Label> st;
  if (!start.empty()) st = start;
  // skt -> lkt -> dkt -> skt
  Calc at = a;
  while (at != b) {
    if (at == Calc::Skt) {
      stage("shallow_to_labeled", [&](const Proof& p) { return shallow_to_labeled(p, c, st.value_or("x")); });
      at = Calc::LktSt;
    } else if (at == Calc::LktSt) {
      stage("eliminate_structural", [&](const Proof& p) { return eliminate_structural(p, c); });
      stage("labeled_to_deep", [&](const Proof& p) { return labeled_to_deep(p, c, st); });
      at = Calc::Dkt;
    } else {
      stage("deep_to_shallow", [&](const Proof& p) { return deep_to_shallow(p, c); });
      at = Calc::Skt;
    }
  }
  write_out(out, write_proof(cur));
  std::ostream& sum = out.empty() || out == "-" ? std::cerr : std::cout;
  if (o.json) {
    json j{{"from", from}, {"to", to}, {"stages", stages}, {"rules_in", in_counts}, {"rules_out", counts_json(cur)},
           {"end_sequent", cur.conclusion_text()}};
    sum << j.dump(2) << "\n";
  } else {
    for (auto& s : stages)
      sum << s["stage"].get<std::string>() << ": " << s["rules_in"] << " -> " << s["rules_out"] << " nodes, "
          << s["ms"].get<double>() << " ms\n";
    sum << "rules in:";
    for (auto& [r, n] : in_counts.items()) sum << " " << r << "=" << n;
    sum << "\nrules out:";
    for (auto& [r, n] : rule_counts(cur)) sum << " " << r << "=" << n;
    sum << "\n";
  }
  return 0;
}

int cmd_prove(const Common& o, const std::string& calc, const std::string& formula, int depth, const std::string& out) {
  Calc k = calc_kind(calc);
  auto axs = load_axioms(o.axioms);
  Formula g;
  try {
    g = parse_formula(formula);
  } catch (const ParseError& e) {
    throw UsageError(std::string("formula: ") + e.what());
  }
  Budget b;
  b.depth = depth;
  std::optional<Proof> p;
  if (k == Calc::LktSt) {
    p = prove_labeled(g, axs, b);
  } else {
    auto pa = path_axioms(axs);
    p = k == Calc::Dkt ? prove_deep(g, pa, b) : prove_shallow(g, pa, b);
  }
  if (o.json) {
    json j{{"found", p.has_value()}, {"formula", print(g)}, {"calculus", calc}, {"depth", depth}};
    if (p) {
      j["size"] = proof_size(*p);
      j["height"] = proof_height(*p);
      j["rules"] = counts_json(*p);
    }
    std::cout << j.dump(2) << "\n";
    if (p && !out.empty()) write_out(out, write_proof(*p));
  } else if (p) {
    write_out(out, write_proof(*p));
  } else {
    std::cout << "absent\n";
  }
  return p ? 0 : 1;
}

int cmd_complete(const Common& o, const std::string& query, bool tree) {
  auto pa = path_axioms(load_axioms(o.axioms));
  PathAxiom q;
  try {
    q = parse_axiom(query).as_path();
  } catch (const std::exception& e) {
    throw UsageError(std::string("query: ") + e.what());
  }
  auto g = build_grammar(pa);
  auto t = parse_tree(g, q.ante, q.cons);
  if (o.json) {
    json j{{"string", word_text(q.ante)}, {"target", diamond_text(q.cons)}, {"member", t.has_value()}};
    if (t) j["parse_size"] = parse_size(*t);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << (t ? "member" : "non-member") << "\n";
    if (t && tree) {
      std::function<void(const ParseNode&, int)> show = [&](const ParseNode& n, int ind) {
        std::cout << std::string(2 * ind, ' ') << diamond_text(n.sym);
        if (n.rule >= 0)
          std::cout << "  by " << axiom_text(g.rules[static_cast<std::size_t>(n.rule)]);
        else
          std::cout << "  edge " << n.from << "-" << n.to;
        std::cout << "\n";
        for (auto& k : n.kids) show(k, ind + 1);
      };
      show(*t, 1);
    }
  }
  return t ? 0 : 1;
}

int cmd_poly(const Common& o, const std::string& to_lab, const std::string& to_nest, const std::string& start,
             bool dot) {
  if (to_lab.empty() == to_nest.empty()) throw UsageError("give exactly one of --to-labeled, --to-nested");
  Polytree g;
  std::string text;
  try {
    if (!to_lab.empty()) {
      LabelGen gen(LabelGen::Mode::Letters);
      g = to_polytree(start, parse_nested(to_lab), gen);
      text = print(labeled_sequent_of(g));
    } else {
      LabeledSequent l = parse_labeled(to_nest);
      if (!is_polytree_sequent(l)) {
        std::cerr << "not a polytree sequent\n";
        return 1;
      }
      g = graph_of(l);
      text = print(to_nested(start, g));
    }
  } catch (const ParseError& e) {
    throw UsageError(e.what());
  } catch (const UnknownLabel& e) {
    throw UsageError(e.what());
  }
  if (dot)
    std::cout << to_dot(g);
  else if (o.json)
    std::cout << json{{"result", text}, {"start", start}, {"vertices", g.vertices.size()}}.dump(2) << "\n";
  else
    std::cout << text << "\n";
  return 0;
}

int cmd_pg(const Common& o, const std::string& seq, bool labeled) {
  PropagationGraph g;
  try {
    g = labeled ? pg_of_labeled(parse_labeled(seq)) : pg_of_nested(parse_nested(seq));
  } catch (const ParseError& e) {
    throw UsageError(e.what());
  }
  if (o.json) {
    json j{{"nodes", g.nodes}, {"edges", json::array()}};
    for (auto& [a, b, d] : g.edges) j["edges"].push_back({{"from", a}, {"to", b}, {"diamond", diamond_text(d)}});
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << to_dot(g);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Proof engine for tense logic Kt with path axioms"};
  app.require_subcommand(1);
  Common o;
  app.add_flag("--json", o.json, "machine-readable output");

  std::string calc, proof, out, from, to, start = "x", formula, query, to_lab, to_nest, seq;
  bool modal = false, allow_open = false, tree = false, dot = false, labeled = false;
  int depth = 12;

  auto* ck = app.add_subcommand("check", "check a proof file");
  ck->add_option("--calculus", calc, "skt, dkt, lkt, lkt-st or lkt-pr")->required();
  ck->add_option("--axioms", o.axioms, "axiom file");
  ck->add_option("--proof", proof, "proof file")->required();
  ck->add_flag("--modal-fragment", modal);
  ck->add_flag("--allow-open", allow_open, "accept open leaves");

  auto* tr = app.add_subcommand("translate", "translate a proof between calculi");
  tr->add_option("--from", from)->required();
  tr->add_option("--to", to)->required();
  tr->add_option("--axioms", o.axioms, "axiom file");
  tr->add_option("--proof", proof)->required();
  tr->add_option("--out,-o", out, "output proof file (default stdout)");
  tr->add_flag("--modal-fragment", modal);
  std::string tr_start;
  tr->add_option("--start", tr_start, "start label");

  auto* pv = app.add_subcommand("prove", "bounded proof search");
  pv->add_option("--calculus", calc)->required();
  pv->add_option("--axioms", o.axioms, "axiom file");
  pv->add_option("--formula", formula)->required();
  pv->add_option("--depth", depth)->check(CLI::PositiveNumber);
  pv->add_option("--out,-o", out);

  auto* cp = app.add_subcommand("complete", "completion membership query");
  cp->add_option("--axioms", o.axioms, "axiom file");
  cp->add_option("query", query, "STRING -> DIAMOND")->required();
  cp->add_flag("--tree", tree, "print the parse tree");

  auto* po = app.add_subcommand("poly", "nested <-> labeled sequent conversion");
  po->add_option("--to-labeled", to_lab);
  po->add_option("--to-nested", to_nest);
  po->add_option("--start", start);
  po->add_flag("--dot", dot);

  auto* pg = app.add_subcommand("pg", "propagation graph as DOT");
  pg->add_option("sequent", seq)->required();
  pg->add_flag("--labeled", labeled);

  for (auto* s : {ck, tr, pv, cp, po, pg}) s->add_flag("--json", o.json, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*ck) return cmd_check(o, calc, proof, modal, allow_open);
    if (*tr) return cmd_translate(o, from, to, proof, out, modal, tr_start);
    if (*pv) return cmd_prove(o, calc, formula, depth, out);
    if (*cp) return cmd_complete(o, query, tree);
    if (*po) return cmd_poly(o, to_lab, to_nest, start, dot);
    if (*pg) return cmd_pg(o, seq, labeled);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ScopeError& e) {
    std::cerr << "scope error: " << e.what() << "\n";
    return 1;
  } catch (const TranslationError& e) {
    std::cerr << "translation failed: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
