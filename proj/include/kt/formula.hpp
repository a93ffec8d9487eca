#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace kt {

// White is the future diamond <>, Black the past diamond <#>.  The same
// enum doubles as the polarity of a nesting: White = o{..}, Black = b{..}.
enum class Diamond : std::uint8_t { White, Black };

inline Diamond inv(Diamond d) { return d == Diamond::White ? Diamond::Black : Diamond::White; }
const char* diamond_text(Diamond d);

using DiamondString = std::vector<Diamond>;
std::string word_text(const DiamondString& w);  // "e" for the empty word

enum class FKind : std::uint8_t { Pos, Neg, And, Or, Box, Dia, BBox, BDia, Top, Bot };

struct ParseError : std::runtime_error {
  ParseError(const std::string& what, std::size_t off)
      : std::runtime_error(what + " at offset " + std::to_string(off)), detail(what), offset(off) {}
  std::string detail;
  std::size_t offset;
};

struct UnsupportedConstant : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Formula {
 public:
  Formula() = default;

  static Formula pos(std::string name);
  static Formula neg(std::string name);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula box(Formula a);
  static Formula dia(Formula a);
  static Formula bbox(Formula a);
  static Formula bdia(Formula a);
  static Formula top();
  static Formula bot();
  // diamond / box of the given colour
  static Formula diamond(Diamond d, Formula a) { return d == Diamond::White ? dia(std::move(a)) : bdia(std::move(a)); }
  static Formula boxof(Diamond d, Formula a) { return d == Diamond::White ? box(std::move(a)) : bbox(std::move(a)); }

  bool valid() const { return n_ != nullptr; }
  FKind kind() const;
  const std::string& name() const;
  const Formula& left() const;   // also the body of a modal formula
  const Formula& right() const;
  const std::string& text() const;  // canonical printed form

  bool is_literal() const { return kind() == FKind::Pos || kind() == FKind::Neg; }
  bool is_diamond() const { return kind() == FKind::Dia || kind() == FKind::BDia; }
  Diamond diamond_kind() const { return kind() == FKind::Dia ? Diamond::White : Diamond::Black; }

  friend bool operator==(const Formula& a, const Formula& b);
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

 private:
  struct Node;
  static Formula make_unary(FKind k, Formula a);
  explicit Formula(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

Formula negate(const Formula& a);
Formula implies(const Formula& a, const Formula& b);
Formula iff(const Formula& a, const Formula& b);

Formula parse_formula(std::string_view text);
std::string print(const Formula& a);

// Parser state shared with the sequent reader.
class FormulaReader {
 public:
  FormulaReader(std::string_view s, std::size_t pos = 0) : s_(s), p_(pos) {}
  Formula expr();
  std::size_t pos() const { return p_; }
  void skip_ws();

 private:
  Formula iff_level();
  Formula imp_level();
  Formula or_level();
  Formula and_level();
  Formula unary();
  bool eat(std::string_view tok);
  bool peek(std::string_view tok);
  [[noreturn]] void fail(const std::string& what);

  std::string_view s_;
  std::size_t p_;
};

}  // namespace kt
