#include <cctype>
#include <sstream>

#include "kt/proof.hpp"

namespace kt {

std::string calculus_name(const CalculusId& c) {
  std::string s;
  switch (c.kind) {
    case Calc::Skt: s = "skt"; break;
    case Calc::Dkt: s = "dkt"; break;
    case Calc::LktSt: s = "lkt-st"; break;
    case Calc::LktPr: s = "lkt-pr"; break;
  }
  if (c.modal_fragment) s += " (modal fragment)";
  return s;
}

Calc parse_calc(std::string_view s) {
  if (s == "skt") return Calc::Skt;
  if (s == "dkt") return Calc::Dkt;
  if (s == "lkt" || s == "lkt-st") return Calc::LktSt;
  if (s == "lkt-pr") return Calc::LktPr;
  throw std::invalid_argument("unknown calculus '" + std::string(s) + "'");
}

const std::vector<std::string>& rule_names(Calc c) {
  static const std::vector<std::string> skt{"id", "or", "and", "c", "w", "rf", "rp", "bbox", "wbox", "bdia", "wdia", "gp", "path"};
  static const std::vector<std::string> dkt{"id", "or", "and", "wbox", "bbox", "dia1", "dia2", "bdia1", "bdia2", "dp", "w", "c"};
  static const std::vector<std::string> st{"id", "l_or", "l_and", "l_box", "l_bbox", "l_dia", "l_bdia", "l_gp", "l_path", "l_w", "l_c", "l_s"};
  static const std::vector<std::string> pr{"id", "l_or", "l_and", "l_box", "l_bbox", "l_dia", "l_bdia", "l_prop", "l_w", "l_c", "l_s"};
  switch (c) {
    case Calc::Skt: return skt;
    case Calc::Dkt: return dkt;
    case Calc::LktSt: return st;
    default: return pr;
  }
}

bool rule_in(const CalculusId& c, const std::string& rule) {
  auto& names = rule_names(c.kind);
  if (std::find(names.begin(), names.end(), rule) == names.end()) return false;
  if (c.modal_fragment) {
    static const std::vector<std::string> black{"bbox", "bdia", "bdia1", "bdia2", "l_bbox", "l_bdia"};
    if (std::find(black.begin(), black.end(), rule) != black.end()) return false;
  }
  return true;
}

Proof leaf(std::string rule, NestedSequent s, Params p) {
  Proof r;
  r.rule = std::move(rule);
  r.nested = std::move(s);
  r.params = std::move(p);
  return r;
}

Proof leaf(std::string rule, LabeledSequent s, Params p) {
  Proof r;
  r.rule = std::move(rule);
  r.labeled = true;
  r.lab = std::move(s);
  r.params = std::move(p);
  return r;
}

std::size_t proof_size(const Proof& p) {
  std::size_t n = 0;
  for_each_node(p, [&](const Proof&) { ++n; });
  return n;
}

std::size_t proof_height(const Proof& p) {
  std::size_t h = 0;
  for (auto& q : p.premises) h = std::max(h, proof_height(q));
  return h + 1;
}

std::map<std::string, int> rule_counts(const Proof& p) {
  std::map<std::string, int> m;
  for_each_node(p, [&](const Proof& q) { ++m[q.rule]; });
  return m;
}

std::vector<std::string> rule_spine(const Proof& p) {
  std::vector<std::string> out;
  for (const Proof* q = &p;; q = &q->premises[0]) {
    out.push_back(q->rule);
    if (q->premises.empty()) break;
  }
  return out;
}

void for_each_node(const Proof& p, const std::function<void(const Proof&)>& f) {
  std::vector<const Proof*> stack{&p};
  while (!stack.empty()) {
    const Proof* q = stack.back();
    stack.pop_back();
    f(*q);
    for (auto it = q->premises.rbegin(); it != q->premises.rend(); ++it) stack.push_back(&*it);
  }
}

namespace {

std::string quote(const std::string& s) {
  std::string r = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') r += '\\';
    r += c;
  }
  return r + "\"";
}

void write(const Proof& p, int depth, std::string& out) {
  std::string pad(static_cast<std::size_t>(std::min(depth, 16)) * 2, ' ');
  out += pad + "(infer " + p.rule + " :concl " + quote(p.conclusion_text());
  if (!p.params.empty()) {
    out += " :params (";
    bool first = true;
    for (auto& [k, v] : p.params) {
      if (!first) out += ' ';
      first = false;
      out += k + " " + quote(v);
    }
    out += ")";
  }
  for (auto& q : p.premises) {
    out += "\n";
    write(q, depth + 1, out);
  }
  out += ")";
}

class SexprReader {
 public:
  SexprReader(std::string_view s, bool labeled) : s_(s), labeled_(labeled) {}

  Proof top() {
    Proof p = proof();
    ws();
    if (i_ != s_.size()) fail("trailing input");
    return p;
  }

 private:
  Proof proof() {
    ws();
    expect('(');
    if (symbol() != "infer") fail("expected 'infer'");
    Proof p;
    p.labeled = labeled_;
    p.rule = symbol();
    bool have_concl = false;
    while (true) {
      ws();
      if (peek() == ')') {
        ++i_;
        break;
      }
      if (peek() == '(') {
        p.premises.push_back(proof());
        continue;
      }
      std::size_t at = i_;
      std::string kw = symbol();
      if (kw == ":concl") {
        ws();
        std::size_t sat = i_;
        std::string text = string();
        try {
          if (labeled_)
            p.lab = parse_labeled(text);
          else
            p.nested = parse_nested(text);
        } catch (const ParseError& e) {
          i_ = sat;
          fail(std::string("bad sequent: ") + e.what());
        }
        have_concl = true;
      } else if (kw == ":params") {
        ws();
        expect('(');
        while (true) {
          ws();
          if (peek() == ')') {
            ++i_;
            break;
          }
          std::string k = symbol();
          ws();
          std::string v = peek() == '"' ? string() : symbol();
          p.params[k] = v;
        }
      } else {
        i_ = at;
        fail("unexpected '" + kw + "'");
      }
    }
    if (!have_concl) fail("missing :concl");
    return p;
  }

  char peek() const { return i_ < s_.size() ? s_[i_] : '\0'; }
  void ws() {
    while (i_ < s_.size()) {
      if (std::isspace(static_cast<unsigned char>(s_[i_]))) {
        ++i_;
      } else if (s_[i_] == ';') {
        while (i_ < s_.size() && s_[i_] != '\n') ++i_;
      } else {
        break;
      }
    }
  }
  void expect(char c) {
    ws();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++i_;
  }
  std::string symbol() {
    ws();
    std::size_t b = i_;
    while (i_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[i_])) && s_[i_] != '(' && s_[i_] != ')' &&
           s_[i_] != '"')
      ++i_;
    if (b == i_) fail("expected a symbol");
    return std::string(s_.substr(b, i_ - b));
  }
  std::string string() {
    expect('"');
    std::string r;
    while (true) {
      if (i_ >= s_.size()) fail("unterminated string");
      char c = s_[i_++];
      if (c == '"') break;
      if (c == '\\' && i_ < s_.size()) c = s_[i_++];
      r += c;
    }
    return r;
  }
  [[noreturn]] void fail(const std::string& what) {
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k < i_ && k < s_.size(); ++k) {
      if (s_[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + what, i_);
  }

  std::string_view s_;
  bool labeled_;
  std::size_t i_ = 0;
};

}  // namespace

std::string write_proof(const Proof& p) {
  std::string out;
  write(p, 0, out);
  out += "\n";
  return out;
}

Proof read_proof(std::string_view text, bool labeled) { return SexprReader(text, labeled).top(); }

Proof display_derivation(const NestedSequent& x, const Address& target) {
  auto steps = display_steps(x, target);
  Proof top = leaf("open", steps.empty() ? x : steps.back().result);
  for (std::size_t k = steps.size(); k-- > 0;) {
    Proof p = leaf(steps[k].rule, k == 0 ? x : steps[k - 1].result, {{"child", std::to_string(steps[k].child)}});
    p.premises.push_back(std::move(top));
    top = std::move(p);
  }
  return top;
}

const Proof& top_leaf(const Proof& p) {
  const Proof* q = &p;
  while (!q->premises.empty()) q = &q->premises[0];
  return *q;
}

}  // namespace kt
