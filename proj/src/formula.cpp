#include "kt/formula.hpp"

#include <cctype>

namespace kt {

struct Formula::Node {
  FKind kind;
  std::string name;
  Formula l, r;
  std::string text;
};

const char* diamond_text(Diamond d) { return d == Diamond::White ? "<>" : "<#>"; }

std::string word_text(const DiamondString& w) {
  if (w.empty()) return "e";
  std::string s;
  for (Diamond d : w) s += diamond_text(d);
  return s;
}

namespace {

int level(FKind k) {
  switch (k) {
    case FKind::Or: return 1;
    case FKind::And: return 2;
    default: return 3;
  }
}

std::string wrap(const Formula& f, int min_level) {
  if (level(f.kind()) < min_level) return "(" + f.text() + ")";
  return f.text();
}

const char* prefix(FKind k) {
  switch (k) {
    case FKind::Box: return "[]";
    case FKind::Dia: return "<>";
    case FKind::BBox: return "[#]";
    case FKind::BDia: return "<#>";
    default: return "";
  }
}

}  // namespace

FKind Formula::kind() const { return n_->kind; }
const std::string& Formula::name() const { return n_->name; }
const Formula& Formula::left() const { return n_->l; }
const Formula& Formula::right() const { return n_->r; }
const std::string& Formula::text() const { return n_->text; }

Formula Formula::pos(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = FKind::Pos;
  n->text = name;
  n->name = std::move(name);
  return Formula(n);
}

Formula Formula::neg(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = FKind::Neg;
  n->text = "~" + name;
  n->name = std::move(name);
  return Formula(n);
}

Formula Formula::conj(Formula a, Formula b) {
  auto n = std::make_shared<Node>();
  n->kind = FKind::And;
  n->text = wrap(a, 2) + " & " + wrap(b, 3);
  n->l = std::move(a);
  n->r = std::move(b);
  return Formula(n);
}

Formula Formula::disj(Formula a, Formula b) {
  auto n = std::make_shared<Node>();
  n->kind = FKind::Or;
  n->text = wrap(a, 1) + " | " + wrap(b, 2);
  n->l = std::move(a);
  n->r = std::move(b);
  return Formula(n);
}

Formula Formula::make_unary(FKind k, Formula a) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->text = std::string(prefix(k)) + wrap(a, 3);
  n->l = std::move(a);
  return Formula(n);
}

Formula Formula::box(Formula a) { return make_unary(FKind::Box, std::move(a)); }
Formula Formula::dia(Formula a) { return make_unary(FKind::Dia, std::move(a)); }
Formula Formula::bbox(Formula a) { return make_unary(FKind::BBox, std::move(a)); }
Formula Formula::bdia(Formula a) { return make_unary(FKind::BDia, std::move(a)); }

Formula Formula::top() {
  auto n = std::make_shared<Node>();
  n->kind = FKind::Top;
  n->text = "T";
  return Formula(n);
}

Formula Formula::bot() {
  auto n = std::make_shared<Node>();
  n->kind = FKind::Bot;
  n->text = "F";
  return Formula(n);
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.n_ == b.n_) return true;
  if (!a.n_ || !b.n_) return false;
  return a.n_->text == b.n_->text;
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  if (a.n_ == b.n_) return std::strong_ordering::equal;
  if (!a.n_) return std::strong_ordering::less;
  if (!b.n_) return std::strong_ordering::greater;
  int c = a.n_->text.compare(b.n_->text);
  return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

Formula negate(const Formula& a) {
  switch (a.kind()) {
    case FKind::Pos: return Formula::neg(a.name());
    case FKind::Neg: return Formula::pos(a.name());
    case FKind::And: return Formula::disj(negate(a.left()), negate(a.right()));
    case FKind::Or: return Formula::conj(negate(a.left()), negate(a.right()));
    case FKind::Box: return Formula::dia(negate(a.left()));
    case FKind::Dia: return Formula::box(negate(a.left()));
    case FKind::BBox: return Formula::bdia(negate(a.left()));
    case FKind::BDia: return Formula::bbox(negate(a.left()));
    case FKind::Top:
    case FKind::Bot: throw UnsupportedConstant("negation of a constant: " + a.text());
  }
  throw std::logic_error("negate");
}

Formula implies(const Formula& a, const Formula& b) { return Formula::disj(negate(a), b); }
Formula iff(const Formula& a, const Formula& b) { return Formula::conj(implies(a, b), implies(b, a)); }

std::string print(const Formula& a) { return a.text(); }

// ---- reader ----

void FormulaReader::skip_ws() {
  while (p_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[p_]))) ++p_;
}

bool FormulaReader::peek(std::string_view tok) {
  skip_ws();
  return s_.substr(p_, tok.size()) == tok;
}

bool FormulaReader::eat(std::string_view tok) {
  if (!peek(tok)) return false;
  p_ += tok.size();
  return true;
}

void FormulaReader::fail(const std::string& what) {
  skip_ws();
  throw ParseError("syntax error: " + what, p_);
}

Formula FormulaReader::expr() { return iff_level(); }

Formula FormulaReader::iff_level() {
  Formula a = imp_level();
  while (eat("<->")) a = iff(a, imp_level());
  return a;
}

Formula FormulaReader::imp_level() {
  Formula a = or_level();
  while (!peek("<->") && eat("->")) a = implies(a, or_level());
  return a;
}

Formula FormulaReader::or_level() {
  Formula a = and_level();
  while (eat("|")) a = Formula::disj(a, and_level());
  return a;
}

Formula FormulaReader::and_level() {
  Formula a = unary();
  while (eat("&")) a = Formula::conj(a, unary());
  return a;
}

Formula FormulaReader::unary() {
  skip_ws();
  if (eat("~")) return negate(unary());
  if (eat("[]")) return Formula::box(unary());
  if (eat("[#]")) return Formula::bbox(unary());
  if (peek("<->")) fail("unexpected '<->'");
  if (eat("<>")) return Formula::dia(unary());
  if (eat("<#>")) return Formula::bdia(unary());
  if (eat("(")) {
    Formula a = expr();
    if (!eat(")")) fail("expected ')'");
    return a;
  }
  if (p_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[p_]))) {
    std::size_t b = p_;
    while (p_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[p_])) ||
                              std::isdigit(static_cast<unsigned char>(s_[p_])) || s_[p_] == '_'))
      ++p_;
    return Formula::pos(std::string(s_.substr(b, p_ - b)));
  }
  if (p_ >= s_.size()) fail("unexpected end of input");
  fail(std::string("unexpected '") + s_[p_] + "'");
}

Formula parse_formula(std::string_view text) {
  FormulaReader r(text);
  Formula f = r.expr();
  r.skip_ws();
  if (r.pos() != text.size()) throw ParseError("syntax error: trailing input", r.pos());
  return f;
}

}  // namespace kt
