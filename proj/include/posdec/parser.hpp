#pragma once

#include <cctype>
#include <cstddef>
#include <set>
#include <string>
#include <string_view>

#include "posdec/error.hpp"
#include "posdec/formula.hpp"

namespace posdec {

struct ParseOptions {
  /// When set, every atom must belong to this vocabulary (strict mode).
  const std::set<std::string>* vocabulary = nullptr;
  /// Position of the first character of the text, for error reporting.
  std::size_t line = 1;
  std::size_t column = 1;
};

namespace detail {

// Precedence, loosest first: <-> (left), -> (right), | (left), & (left), ~.
class FormulaParser {
 public:
  FormulaParser(std::string_view text, const ParseOptions& opts) : text_(text), opts_(opts) {}

  Formula parse() {
    skip_ws();
    if (at_end()) fail("empty formula");
    Formula f = parse_iff();
    skip_ws();
    if (!at_end()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return f;
  }

 private:
  Formula parse_iff() {
    Formula lhs = parse_implies();
    while (accept("<->")) lhs = iff(lhs, parse_implies());
    return lhs;
  }

  Formula parse_implies() {
    Formula lhs = parse_or();
    if (accept("->")) return implies(lhs, parse_implies());
    return lhs;
  }

  Formula parse_or() {
    Formula lhs = parse_and();
    while (accept("|")) lhs = disj(lhs, parse_and());
    return lhs;
  }

  Formula parse_and() {
    Formula lhs = parse_unary();
    while (accept("&")) lhs = conj(lhs, parse_unary());
    return lhs;
  }

  Formula parse_unary() {
    if (accept("~")) return neg(parse_unary());
    return parse_primary();
  }

  Formula parse_primary() {
    skip_ws();
    if (at_end()) fail("unexpected end of formula");
    const std::size_t start = pos_;
    if (text_[pos_] == '(') {
      ++pos_;
      Formula inner = parse_iff();
      if (!accept(")")) fail("expected ')'");
      return inner;
    }
    const char c = text_[pos_];
    if (!(std::islower(static_cast<unsigned char>(c)) || c == '_')) fail(std::string("unexpected '") + c + "'");
    while (pos_ < text_.size()) {
      const char d = text_[pos_];
      if (std::islower(static_cast<unsigned char>(d)) || std::isdigit(static_cast<unsigned char>(d)) || d == '_')
        ++pos_;
      else
        break;
    }
    std::string name(text_.substr(start, pos_ - start));
    if (name == "true") return truth();
    if (name == "false") return falsity();
    if (opts_.vocabulary && !opts_.vocabulary->count(name)) {
      auto [line, col] = position(start);
      throw UnknownAtom(std::to_string(line) + ":" + std::to_string(col) + ": undeclared atom '" + name + "'");
    }
    return atom(std::move(name));
  }

  bool accept(std::string_view tok) {
    skip_ws();
    if (text_.substr(pos_, tok.size()) != tok) return false;
    pos_ += tok.size();
    return true;
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at_end() const { return pos_ >= text_.size(); }

  std::pair<std::size_t, std::size_t> position(std::size_t offset) const {
    std::size_t line = opts_.line, col = opts_.column;
    for (std::size_t i = 0; i < offset && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    return {line, col};
  }

  [[noreturn]] void fail(const std::string& why) const {
    auto [line, col] = position(pos_);
    throw ParseError(why, line, col);
  }

  std::string_view text_;
  const ParseOptions& opts_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses a formula of the grammar
///   atom := [a-z_][a-z0-9_]*, constants true/false,
///   operators ~ & | -> <-> with that binding order (tightest first).
inline Formula parse_formula(std::string_view text, const ParseOptions& opts = {}) {
  return detail::FormulaParser(text, opts).parse();
}

}  // namespace posdec
