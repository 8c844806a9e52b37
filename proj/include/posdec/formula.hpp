#pragma once

#include <memory>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace posdec {

enum class Connective { Constant, Atom, Not, And, Or, Implies, Iff };

/// Immutable propositional formula. Copies share structure.
class Formula {
 public:
  /// The constant `true`.
  Formula() : Formula(make(Connective::Constant, true, {}, nullptr, nullptr)) {}

  static Formula constant(bool value) { return Formula(make(Connective::Constant, value, {}, nullptr, nullptr)); }
  static Formula atom(std::string name) {
    return Formula(make(Connective::Atom, false, std::move(name), nullptr, nullptr));
  }
  static Formula unary(Connective op, const Formula& a) { return Formula(make(op, false, {}, a.node_, nullptr)); }
  static Formula binary(Connective op, const Formula& a, const Formula& b) {
    return Formula(make(op, false, {}, a.node_, b.node_));
  }

  Connective op() const { return node_->op; }
  bool value() const { return node_->value; }
  const std::string& name() const { return node_->name; }
  Formula lhs() const { return Formula(node_->lhs); }
  Formula rhs() const { return Formula(node_->rhs); }

  bool is_atom() const { return op() == Connective::Atom; }
  bool is_constant() const { return op() == Connective::Constant; }

  /// A literal is an atom or a negated atom.
  bool is_literal() const { return is_atom() || (op() == Connective::Not && lhs().is_atom()); }

  void collect_atoms(std::set<std::string>& out) const { collect(*node_, out); }
  std::set<std::string> atoms() const {
    std::set<std::string> out;
    collect_atoms(out);
    return out;
  }

  /// Prints with minimal parentheses; parsing the result yields the same tree.
  std::string to_string() const;

  /// Structural total order.
  friend int compare(const Formula& a, const Formula& b) { return compare_nodes(a.node_.get(), b.node_.get()); }
  friend bool operator==(const Formula& a, const Formula& b) { return compare(a, b) == 0; }
  friend bool operator!=(const Formula& a, const Formula& b) { return compare(a, b) != 0; }
  friend bool operator<(const Formula& a, const Formula& b) { return compare(a, b) < 0; }

  friend std::ostream& operator<<(std::ostream& os, const Formula& f) { return os << f.to_string(); }

 private:
  struct Node {
    Connective op;
    bool value;
    std::string name;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
  };

  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static std::shared_ptr<const Node> make(Connective op, bool value, std::string name,
                                          std::shared_ptr<const Node> lhs, std::shared_ptr<const Node> rhs) {
    return std::make_shared<const Node>(Node{op, value, std::move(name), std::move(lhs), std::move(rhs)});
  }

  static void collect(const Node& n, std::set<std::string>& out) {
    if (n.op == Connective::Atom) out.insert(n.name);
    if (n.lhs) collect(*n.lhs, out);
    if (n.rhs) collect(*n.rhs, out);
  }

  static int compare_nodes(const Node* a, const Node* b) {
    if (a == b) return 0;
    if (!a) return -1;
    if (!b) return 1;
    if (a->op != b->op) return a->op < b->op ? -1 : 1;
    if (a->op == Connective::Constant) return a->value == b->value ? 0 : (a->value ? 1 : -1);
    if (a->op == Connective::Atom) return a->name.compare(b->name) < 0 ? -1 : (a->name == b->name ? 0 : 1);
    if (int c = compare_nodes(a->lhs.get(), b->lhs.get())) return c;
    return compare_nodes(a->rhs.get(), b->rhs.get());
  }

  static int precedence(Connective op) {
    switch (op) {
      case Connective::Iff: return 1;
      case Connective::Implies: return 2;
      case Connective::Or: return 3;
      case Connective::And: return 4;
      case Connective::Not: return 5;
      default: return 6;
    }
  }

  static void print(const Node& n, std::string& out);

  std::shared_ptr<const Node> node_;
};

inline void Formula::print(const Node& n, std::string& out) {
  switch (n.op) {
    case Connective::Constant: out += n.value ? "true" : "false"; return;
    case Connective::Atom: out += n.name; return;
    case Connective::Not: {
      out += '~';
      bool paren = precedence(n.lhs->op) < precedence(Connective::Not);
      if (paren) out += '(';
      print(*n.lhs, out);
      if (paren) out += ')';
      return;
    }
    default: break;
  }
  const int p = precedence(n.op);
  // -> is right-associative; the others associate to the left.
  const bool right_assoc = n.op == Connective::Implies;
  const int lp = precedence(n.lhs->op);
  const int rp = precedence(n.rhs->op);
  const bool lparen = lp < p || (lp == p && right_assoc);
  const bool rparen = rp < p || (rp == p && !right_assoc);
  if (lparen) out += '(';
  print(*n.lhs, out);
  if (lparen) out += ')';
  switch (n.op) {
    case Connective::And: out += " & "; break;
    case Connective::Or: out += " | "; break;
    case Connective::Implies: out += " -> "; break;
    default: out += " <-> "; break;
  }
  if (rparen) out += '(';
  print(*n.rhs, out);
  if (rparen) out += ')';
}

inline std::string Formula::to_string() const {
  std::string out;
  print(*node_, out);
  return out;
}

// Builders.
inline Formula atom(std::string name) { return Formula::atom(std::move(name)); }
inline Formula truth() { return Formula::constant(true); }
inline Formula falsity() { return Formula::constant(false); }
inline Formula neg(const Formula& a) { return Formula::unary(Connective::Not, a); }
inline Formula conj(const Formula& a, const Formula& b) { return Formula::binary(Connective::And, a, b); }
inline Formula disj(const Formula& a, const Formula& b) { return Formula::binary(Connective::Or, a, b); }
inline Formula implies(const Formula& a, const Formula& b) { return Formula::binary(Connective::Implies, a, b); }
inline Formula iff(const Formula& a, const Formula& b) { return Formula::binary(Connective::Iff, a, b); }

/// Negation that cancels an outer negation: negate(~x) is x.
inline Formula negate(const Formula& a) { return a.op() == Connective::Not ? a.lhs() : neg(a); }

/// Left-nested conjunction; `true` when empty.
inline Formula conj_all(const std::vector<Formula>& parts) {
  if (parts.empty()) return truth();
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = conj(acc, parts[i]);
  return acc;
}

}  // namespace posdec
