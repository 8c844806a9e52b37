#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "posdec/error.hpp"
#include "posdec/formula.hpp"

namespace posdec {

/// Total truth assignment over a sorted atom list. Bit i holds the value of atoms()[i].
class Interpretation {
 public:
  static constexpr std::size_t kMaxAtoms = 64;

  Interpretation(std::shared_ptr<const std::vector<std::string>> atoms, std::uint64_t bits)
      : atoms_(std::move(atoms)), bits_(bits) {}

  static Interpretation from_map(const std::map<std::string, bool>& values) {
    auto atoms = std::make_shared<std::vector<std::string>>();
    std::uint64_t bits = 0;
    for (const auto& [name, v] : values) {
      if (v) bits |= std::uint64_t{1} << atoms->size();
      atoms->push_back(name);
    }
    return Interpretation(std::move(atoms), bits);
  }

  const std::vector<std::string>& atoms() const { return *atoms_; }
  std::uint64_t bits() const { return bits_; }

  std::ptrdiff_t index_of(std::string_view name) const {
    auto it = std::lower_bound(atoms_->begin(), atoms_->end(), name);
    if (it == atoms_->end() || *it != name) return -1;
    return it - atoms_->begin();
  }

  bool contains(std::string_view name) const { return index_of(name) >= 0; }

  bool value(std::string_view name) const {
    auto i = index_of(name);
    if (i < 0) throw UnknownAtom("atom '" + std::string(name) + "' not assigned by interpretation");
    return (bits_ >> i) & 1U;
  }

  /// "{a:T, b:F}"
  std::string to_string() const {
    std::string out = "{";
    for (std::size_t i = 0; i < atoms_->size(); ++i) {
      if (i) out += ", ";
      out += (*atoms_)[i];
      out += ((bits_ >> i) & 1U) ? ":T" : ":F";
    }
    return out + "}";
  }

  friend bool operator==(const Interpretation& a, const Interpretation& b) {
    return a.bits_ == b.bits_ && *a.atoms_ == *b.atoms_;
  }

 private:
  std::shared_ptr<const std::vector<std::string>> atoms_;
  std::uint64_t bits_;
};

/// Truth-functional evaluation; every atom of `phi` must be assigned.
inline bool evaluate(const Interpretation& omega, const Formula& phi) {
  switch (phi.op()) {
    case Connective::Constant: return phi.value();
    case Connective::Atom: return omega.value(phi.name());
    case Connective::Not: return !evaluate(omega, phi.lhs());
    case Connective::And: return evaluate(omega, phi.lhs()) && evaluate(omega, phi.rhs());
    case Connective::Or: return evaluate(omega, phi.lhs()) || evaluate(omega, phi.rhs());
    case Connective::Implies: return !evaluate(omega, phi.lhs()) || evaluate(omega, phi.rhs());
    case Connective::Iff: return evaluate(omega, phi.lhs()) == evaluate(omega, phi.rhs());
  }
  return false;
}

/// Bits of the k-th interpretation in canonical order: atoms sorted by name,
/// compared lexicographically with false < true (the first atom is most significant).
inline std::uint64_t canonical_bits(std::uint64_t k, std::size_t n) {
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < n; ++i)
    if ((k >> (n - 1 - i)) & 1U) bits |= std::uint64_t{1} << i;
  return bits;
}

/// Formula flattened against a fixed atom order, evaluated on bit masks.
class CompiledFormula {
 public:
  CompiledFormula(const Formula& f, const std::vector<std::string>& sorted_atoms) {
    root_ = add(f, sorted_atoms);
  }

  bool operator()(std::uint64_t bits) const { return eval(root_, bits); }

 private:
  struct Op {
    Connective op;
    std::uint32_t arg;  // atom index, or constant value
    std::int32_t lhs;
    std::int32_t rhs;
  };

  std::int32_t add(const Formula& f, const std::vector<std::string>& atoms) {
    Op op{f.op(), 0, -1, -1};
    switch (f.op()) {
      case Connective::Constant: op.arg = f.value() ? 1 : 0; break;
      case Connective::Atom: {
        auto it = std::lower_bound(atoms.begin(), atoms.end(), f.name());
        if (it == atoms.end() || *it != f.name()) throw UnknownAtom("atom '" + f.name() + "' outside vocabulary");
        op.arg = static_cast<std::uint32_t>(it - atoms.begin());
        break;
      }
      case Connective::Not: op.lhs = add(f.lhs(), atoms); break;
      default:
        op.lhs = add(f.lhs(), atoms);
        op.rhs = add(f.rhs(), atoms);
        break;
    }
    ops_.push_back(op);
    return static_cast<std::int32_t>(ops_.size() - 1);
  }

  bool eval(std::int32_t i, std::uint64_t bits) const {
    const Op& o = ops_[static_cast<std::size_t>(i)];
    switch (o.op) {
      case Connective::Constant: return o.arg != 0;
      case Connective::Atom: return (bits >> o.arg) & 1U;
      case Connective::Not: return !eval(o.lhs, bits);
      case Connective::And: return eval(o.lhs, bits) && eval(o.rhs, bits);
      case Connective::Or: return eval(o.lhs, bits) || eval(o.rhs, bits);
      case Connective::Implies: return !eval(o.lhs, bits) || eval(o.rhs, bits);
      case Connective::Iff: return eval(o.lhs, bits) == eval(o.rhs, bits);
    }
    return false;
  }

  std::vector<Op> ops_;
  std::int32_t root_ = -1;
};

}  // namespace posdec
