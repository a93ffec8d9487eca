#include "kt/sequent.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace kt {

NestedSequent& NestedSequent::add(Formula f) {
  formulas.push_back(std::move(f));
  return *this;
}

NestedSequent& NestedSequent::add(Diamond pol, NestedSequent s) {
  children.push_back({pol, std::move(s)});
  return *this;
}

std::size_t NestedSequent::node_count() const {
  std::size_t n = 1;
  for (auto& c : children) n += c.node.node_count();
  return n;
}

std::string address_text(const Address& a) {
  if (a.empty()) return ".";
  std::string s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) s += '.';
    s += std::to_string(a[i]);
  }
  return s;
}

Address parse_address(std::string_view s) {
  Address a;
  if (s == "." || s.empty()) return a;
  std::size_t i = 0;
  while (i < s.size()) {
    std::size_t j = s.find('.', i);
    if (j == std::string_view::npos) j = s.size();
    a.push_back(std::stoi(std::string(s.substr(i, j - i))));
    i = j + 1;
  }
  return a;
}

const NestedSequent* node_at(const NestedSequent& s, const Address& a) {
  const NestedSequent* n = &s;
  for (int i : a) {
    if (i < 0 || i >= static_cast<int>(n->children.size())) return nullptr;
    n = &n->children[i].node;
  }
  return n;
}

NestedSequent* node_at(NestedSequent& s, const Address& a) {
  return const_cast<NestedSequent*>(node_at(static_cast<const NestedSequent&>(s), a));
}

// ---- text ----

namespace {

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class SeqReader {
 public:
  explicit SeqReader(std::string_view s) : s_(s) {}

  NestedSequent top() {
    NestedSequent n = items('\0');
    ws();
    if (p_ != s_.size()) throw ParseError("syntax error: trailing input", p_);
    return n;
  }

 private:
  void ws() {
    while (p_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[p_]))) ++p_;
  }
  bool at_end(char close) {
    ws();
    if (close == '\0') return p_ >= s_.size();
    return p_ < s_.size() && s_[p_] == close;
  }
  bool keyword(std::string_view k) {
    ws();
    if (s_.substr(p_, k.size()) != k) return false;
    if (p_ + k.size() < s_.size() && ident_char(s_[p_ + k.size()])) return false;
    p_ += k.size();
    return true;
  }

  NestedSequent items(char close) {
    NestedSequent n;
    if (at_end(close)) return n;
    while (true) {
      item(n);
      ws();
      if (p_ < s_.size() && s_[p_] == ',') {
        ++p_;
        continue;
      }
      break;
    }
    if (!at_end(close)) {
      if (close == '\0') throw ParseError("syntax error: expected ','", p_);
      throw ParseError(std::string("syntax error: expected '") + close + "'", p_);
    }
    return n;
  }

  void item(NestedSequent& n) {
    ws();
    if (keyword("emp")) return;
    if (s_.substr(p_, 2) == "o{" || s_.substr(p_, 2) == "b{") {
      Diamond pol = s_[p_] == 'o' ? Diamond::White : Diamond::Black;
      p_ += 2;
      NestedSequent c = items('}');
      ++p_;
      n.add(pol, std::move(c));
      return;
    }
    FormulaReader r(s_, p_);
    n.add(r.expr());
    p_ = r.pos();
  }

  std::string_view s_;
  std::size_t p_ = 0;
};

void print_items(const NestedSequent& s, std::string& out) {
  bool first = true;
  for (auto& f : s.formulas) {
    if (!first) out += ", ";
    first = false;
    out += f.text();
  }
  for (auto& c : s.children) {
    if (!first) out += ", ";
    first = false;
    out += c.pol == Diamond::White ? "o{" : "b{";
    print_items(c.node, out);
    out += "}";
  }
}

}  // namespace

NestedSequent parse_nested(std::string_view text) { return SeqReader(text).top(); }

std::string print(const NestedSequent& s) {
  if (s.empty()) return "emp";
  std::string out;
  print_items(s, out);
  return out;
}

std::string canonical(const NestedSequent& s) {
  std::vector<std::string> parts;
  parts.reserve(s.formulas.size() + s.children.size());
  for (auto& f : s.formulas) parts.push_back(f.text());
  std::sort(parts.begin(), parts.end());
  std::vector<std::string> kids;
  for (auto& c : s.children) kids.push_back((c.pol == Diamond::White ? "o{" : "b{") + canonical(c.node) + "}");
  std::sort(kids.begin(), kids.end());
  std::string out;
  for (auto& p : parts) {
    if (!out.empty()) out += ", ";
    out += p;
  }
  for (auto& k : kids) {
    if (!out.empty()) out += ", ";
    out += k;
  }
  return out;
}

bool nested_equal(const NestedSequent& a, const NestedSequent& b) { return canonical(a) == canonical(b); }

Formula interpret(const NestedSequent& s) {
  std::vector<Formula> items;
  for (auto& f : s.formulas) items.push_back(f);
  for (auto& c : s.children)
    if (c.pol == Diamond::White) items.push_back(Formula::box(interpret(c.node)));
  for (auto& c : s.children)
    if (c.pol == Diamond::Black) items.push_back(Formula::bbox(interpret(c.node)));
  if (items.empty()) return Formula::top();
  Formula acc = items[0];
  for (std::size_t i = 1; i < items.size(); ++i) acc = Formula::disj(acc, items[i]);
  return acc;
}

namespace {

// Comma is read left-associated in stored order: ((I1, I2), I3) ...
void collect_substructures(const NestedSequent& s, std::vector<NestedSequent>& out) {
  std::vector<NestedSequent> items;
  for (auto& f : s.formulas) items.push_back(NestedSequent{}.add(f));
  for (auto& c : s.children) items.push_back(NestedSequent{}.add(c.pol, c.node));
  NestedSequent prefix;
  for (std::size_t k = 0; k < items.size(); ++k) {
    const NestedSequent& it = items[k];
    if (k < s.formulas.size()) {
      prefix.formulas.push_back(s.formulas[k]);
      out.push_back(it);
    } else {
      auto& c = s.children[k - s.formulas.size()];
      prefix.children.push_back(c);
      out.push_back(it);
      collect_substructures(c.node, out);
    }
    if (k >= 1) out.push_back(prefix);
  }
}

}  // namespace

std::vector<NestedSequent> substructures(const NestedSequent& s) {
  std::vector<NestedSequent> all;
  collect_substructures(s, all);
  std::vector<NestedSequent> out;
  std::set<std::string> seen;
  for (auto& x : all)
    if (seen.insert(canonical(x)).second) out.push_back(x);
  return out;
}

// ---- contexts ----

namespace {

void collect_holes(const Context& c, std::vector<int>& out) {
  for (int h : c.holes) out.push_back(h);
  for (auto& k : c.children) collect_holes(k.node, out);
}

void plug_into(Context& c, const std::map<int, NestedSequent>& fillers) {
  for (int h : c.holes) {
    const NestedSequent& f = fillers.at(h);
    for (auto& x : f.formulas) c.formulas.push_back(x);
    for (auto& k : f.children) c.children.push_back(k);
  }
  c.holes.clear();
  for (auto& k : c.children) plug_into(k.node, fillers);
}

using FillMap = std::map<int, NestedSequent>;

bool sub_multiset(const std::vector<Formula>& small, const std::vector<Formula>& big, std::vector<Formula>& rest) {
  rest = big;
  for (auto& f : small) {
    auto it = std::find(rest.begin(), rest.end(), f);
    if (it == rest.end()) return false;
    rest.erase(it);
  }
  return true;
}

std::vector<FillMap> match_node(const Context& p, const NestedSequent& t);

void match_children(const Context& p, const NestedSequent& t, std::size_t i, std::vector<bool>& used,
                    FillMap acc, const std::vector<Formula>& rest_f, std::vector<FillMap>& out) {
  if (i == p.children.size()) {
    NestedSequent left;
    left.formulas = rest_f;
    for (std::size_t j = 0; j < t.children.size(); ++j)
      if (!used[j]) left.children.push_back(t.children[j]);
    if (p.holes.empty()) {
      if (!left.empty()) return;
    } else {
      acc[p.holes[0]] = left;
      for (std::size_t h = 1; h < p.holes.size(); ++h) acc[p.holes[h]] = NestedSequent{};
    }
    out.push_back(std::move(acc));
    return;
  }
  const auto& pc = p.children[i];
  for (std::size_t j = 0; j < t.children.size(); ++j) {
    if (used[j] || t.children[j].pol != pc.pol) continue;
    auto sub = match_node(pc.node, t.children[j].node);
    if (sub.empty()) continue;
    used[j] = true;
    for (auto& m : sub) {
      FillMap next = acc;
      next.insert(m.begin(), m.end());
      match_children(p, t, i + 1, used, std::move(next), rest_f, out);
    }
    used[j] = false;
  }
}

std::vector<FillMap> match_node(const Context& p, const NestedSequent& t) {
  std::vector<FillMap> out;
  std::vector<Formula> rest;
  if (!sub_multiset(p.formulas, t.formulas, rest)) return out;
  std::vector<bool> used(t.children.size(), false);
  match_children(p, t, 0, used, {}, rest, out);
  return out;
}

}  // namespace

NestedSequent plug(const Context& c, const std::map<int, NestedSequent>& fillers) {
  std::vector<int> hs;
  collect_holes(c, hs);
  std::set<int> hset(hs.begin(), hs.end());
  if (hset.size() != hs.size()) throw ArityError("duplicate hole identifier");
  for (int h : hs)
    if (!fillers.count(h)) throw ArityError("missing filler for hole " + std::to_string(h));
  for (auto& [h, _] : fillers)
    if (!hset.count(h)) throw ArityError("no hole " + std::to_string(h) + " in context");
  NestedSequent out = c;
  plug_into(out, fillers);
  return out;
}

std::vector<std::map<int, NestedSequent>> match_context(const Context& pattern, const NestedSequent& target) {
  auto all = match_node(pattern, target);
  std::vector<FillMap> out;
  std::set<std::string> seen;
  for (auto& m : all) {
    std::string key;
    for (auto& [h, s] : m) key += std::to_string(h) + "=" + canonical(s) + ";";
    if (seen.insert(key).second) out.push_back(std::move(m));
  }
  return out;
}

// ---- labeled ----

bool LabeledSequent::add_rel(const Label& x, const Label& y) {
  if (has_rel(x, y)) return false;
  rel.push_back({x, y});
  return true;
}

bool LabeledSequent::has_rel(const Label& x, const Label& y) const {
  for (auto& r : rel)
    if (r.x == x && r.y == y) return true;
  return false;
}

void LabeledSequent::erase_rel(const Label& x, const Label& y) {
  rel.erase(std::remove_if(rel.begin(), rel.end(), [&](const RelAtom& r) { return r.x == x && r.y == y; }),
            rel.end());
}

bool LabeledSequent::has(const Label& x, const Formula& f) const {
  for (auto& l : lf)
    if (l.x == x && l.f == f) return true;
  return false;
}

bool LabeledSequent::erase_one(const Label& x, const Formula& f) {
  for (auto it = lf.begin(); it != lf.end(); ++it)
    if (it->x == x && it->f == f) {
      lf.erase(it);
      return true;
    }
  return false;
}

std::set<Label> LabeledSequent::labels() const {
  std::set<Label> out;
  for (auto& r : rel) {
    out.insert(r.x);
    out.insert(r.y);
  }
  for (auto& l : lf) out.insert(l.x);
  return out;
}

namespace {

class LabReader {
 public:
  explicit LabReader(std::string_view s) : s_(s) {}

  LabeledSequent top() {
    LabeledSequent out;
    ws();
    if (p_ >= s_.size()) return out;
    while (true) {
      item(out);
      ws();
      if (p_ < s_.size() && s_[p_] == ',') {
        ++p_;
        continue;
      }
      break;
    }
    ws();
    if (p_ != s_.size()) throw ParseError("syntax error: expected ','", p_);
    return out;
  }

 private:
  void ws() {
    while (p_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[p_]))) ++p_;
  }
  void expect(char c) {
    ws();
    if (p_ >= s_.size() || s_[p_] != c) throw ParseError(std::string("syntax error: expected '") + c + "'", p_);
    ++p_;
  }
  Label label() {
    ws();
    std::size_t b = p_;
    if (p_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[p_])) || s_[p_] == '_')) {
      while (p_ < s_.size() && ident_char(s_[p_])) ++p_;
    }
    if (b == p_) throw ParseError("syntax error: expected label", p_);
    return std::string(s_.substr(b, p_ - b));
  }
  void item(LabeledSequent& out) {
    ws();
    std::size_t save = p_;
    if (s_.substr(p_, 3) == "emp" && (p_ + 3 >= s_.size() || !ident_char(s_[p_ + 3]))) {
      std::size_t q = p_ + 3;
      while (q < s_.size() && std::isspace(static_cast<unsigned char>(s_[q]))) ++q;
      if (q >= s_.size() || s_[q] == ',') {
        p_ += 3;
        return;
      }
    }
    if (s_.substr(p_, 1) == "R") {
      ++p_;
      ws();
      if (p_ < s_.size() && s_[p_] == '(') {
        ++p_;
        Label x = label();
        expect(',');
        Label y = label();
        expect(')');
        out.add_rel(x, y);
        return;
      }
      p_ = save;
    }
    Label x = label();
    expect(':');
    FormulaReader r(s_, p_);
    out.add(x, r.expr());
    p_ = r.pos();
  }

  std::string_view s_;
  std::size_t p_ = 0;
};

}  // namespace

LabeledSequent parse_labeled(std::string_view text) { return LabReader(text).top(); }

std::string print(const LabeledSequent& s) {
  if (s.empty()) return "emp";
  std::string out;
  for (auto& r : s.rel) {
    if (!out.empty()) out += ", ";
    out += "R(" + r.x + "," + r.y + ")";
  }
  for (auto& l : s.lf) {
    if (!out.empty()) out += ", ";
    out += l.x + ":" + l.f.text();
  }
  return out;
}

std::string canonical(const LabeledSequent& s) {
  LabeledSequent c = s;
  std::sort(c.rel.begin(), c.rel.end());
  std::sort(c.lf.begin(), c.lf.end());
  return print(c);
}

bool labeled_equal(const LabeledSequent& a, const LabeledSequent& b) { return canonical(a) == canonical(b); }

std::optional<std::map<Label, Label>> labeled_iso(const LabeledSequent& a, const LabeledSequent& b) {
  if (a.rel.size() != b.rel.size() || a.lf.size() != b.lf.size()) return std::nullopt;
  auto sig = [](const LabeledSequent& s, const Label& l) {
    std::vector<std::string> fs;
    for (auto& x : s.lf)
      if (x.x == l) fs.push_back(x.f.text());
    std::sort(fs.begin(), fs.end());
    int in = 0, out = 0, loop = 0;
    for (auto& r : s.rel) {
      if (r.x == l && r.y == l) ++loop;
      else if (r.x == l) ++out;
      else if (r.y == l) ++in;
    }
    std::string k = std::to_string(in) + "/" + std::to_string(out) + "/" + std::to_string(loop) + "|";
    for (auto& f : fs) k += f + ";";
    return k;
  };
  auto las = a.labels();
  std::vector<Label> la(las.begin(), las.end());
  auto lbs = b.labels();
  std::vector<Label> lb(lbs.begin(), lbs.end());
  if (la.size() != lb.size()) return std::nullopt;
  std::map<Label, std::string> sa, sb;
  for (auto& l : la) sa[l] = sig(a, l);
  for (auto& l : lb) sb[l] = sig(b, l);
  std::map<Label, Label> m;
  std::set<Label> used;
  std::function<bool(std::size_t)> go = [&](std::size_t i) -> bool {
    if (i == la.size()) {
      for (auto& r : a.rel)
        if (!b.has_rel(m[r.x], m[r.y])) return false;
      return true;
    }
    for (auto& cand : lb) {
      if (used.count(cand) || sa[la[i]] != sb[cand]) continue;
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) {
        if (a.has_rel(la[i], la[j]) != b.has_rel(cand, m[la[j]])) ok = false;
        if (a.has_rel(la[j], la[i]) != b.has_rel(m[la[j]], cand)) ok = false;
      }
      if (!ok) continue;
      m[la[i]] = cand;
      used.insert(cand);
      if (go(i + 1)) return true;
      used.erase(cand);
      m.erase(la[i]);
    }
    return false;
  };
  if (!go(0)) return std::nullopt;
  return m;
}

LabeledSequent substitute(const LabeledSequent& s, const Label& x, const Label& y) {
  LabeledSequent out;
  auto sub = [&](const Label& l) { return l == y ? x : l; };
  for (auto& r : s.rel) out.add_rel(sub(r.x), sub(r.y));
  for (auto& l : s.lf) out.add(sub(l.x), l.f);
  return out;
}

Label LabelGen::fresh() {
  if (mode_ == Mode::Letters) {
    while (letter_ < 26) {
      Label l(1, static_cast<char>('z' - letter_++));
      if (!used_.count(l)) {
        used_.insert(l);
        return l;
      }
    }
  }
  while (true) {
    Label l = "_v" + std::to_string(counter_++);
    if (!used_.count(l)) {
      used_.insert(l);
      return l;
    }
  }
}

}  // namespace kt
