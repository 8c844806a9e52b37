#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "posdec/error.hpp"
#include "posdec/formula.hpp"
#include "posdec/scale.hpp"

namespace posdec {

enum class AtomKind { State, Decision };

struct Atom {
  std::string name;
  AtomKind kind = AtomKind::State;

  friend bool operator==(const Atom&, const Atom&) = default;
};

inline bool valid_atom_name(const std::string& s) {
  if (s.empty()) return false;
  if (!((s[0] >= 'a' && s[0] <= 'z') || s[0] == '_')) return false;
  for (char c : s)
    if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_')) return false;
  return s != "true" && s != "false";
}

/// Declared atoms, kept sorted by name. An atom is either a state or a decision atom.
class Vocabulary {
 public:
  Vocabulary() = default;

  void add(const std::string& name, AtomKind kind) {
    if (!valid_atom_name(name)) throw VocabError("invalid atom name '" + name + "'");
    auto it = std::lower_bound(atoms_.begin(), atoms_.end(), name,
                               [](const Atom& a, const std::string& n) { return a.name < n; });
    if (it != atoms_.end() && it->name == name) {
      if (it->kind != kind) throw VocabError("atom '" + name + "' declared both as state and decision atom");
      return;
    }
    atoms_.insert(it, Atom{name, kind});
  }

  const Atom* find(const std::string& name) const {
    auto it = std::lower_bound(atoms_.begin(), atoms_.end(), name,
                               [](const Atom& a, const std::string& n) { return a.name < n; });
    return it != atoms_.end() && it->name == name ? &*it : nullptr;
  }

  bool contains(const std::string& name) const { return find(name) != nullptr; }
  bool is_decision(const std::string& name) const {
    const Atom* a = find(name);
    return a && a->kind == AtomKind::Decision;
  }

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (const auto& a : atoms_) out.push_back(a.name);
    return out;
  }

  std::vector<std::string> names(AtomKind kind) const {
    std::vector<std::string> out;
    for (const auto& a : atoms_)
      if (a.kind == kind) out.push_back(a.name);
    return out;
  }

  std::set<std::string> name_set() const {
    std::set<std::string> out;
    for (const auto& a : atoms_) out.insert(a.name);
    return out;
  }

  friend bool operator==(const Vocabulary&, const Vocabulary&) = default;

 private:
  std::vector<Atom> atoms_;
};

/// (phi, w): phi holds with certainty (or is wanted with priority) at least w.
struct WeightedFormula {
  Formula formula;
  ScaleValue weight;

  friend bool operator==(const WeightedFormula& a, const WeightedFormula& b) {
    return a.formula == b.formula && a.weight == b.weight;
  }
};

struct KnowledgeTag {};
struct GoalTag {};

/// Ordered list of weighted formulas. The tag keeps knowledge and goals apart.
template <typename Tag>
class WeightedBase {
 public:
  WeightedBase() = default;
  explicit WeightedBase(std::vector<WeightedFormula> entries) : entries_(std::move(entries)) {}

  const std::vector<WeightedFormula>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const WeightedFormula& operator[](std::size_t i) const { return entries_[i]; }

  void push_back(WeightedFormula wf) { entries_.push_back(std::move(wf)); }

  /// Classical projection (weights erased).
  std::vector<Formula> classical() const {
    std::vector<Formula> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.formula);
    return out;
  }

  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  friend bool operator==(const WeightedBase&, const WeightedBase&) = default;

 private:
  std::vector<WeightedFormula> entries_;
};

using KnowledgeBase = WeightedBase<KnowledgeTag>;
using GoalBase = WeightedBase<GoalTag>;

/// Level cut: formulas with weight >= alpha, or > alpha when strict.
template <typename Tag>
std::vector<Formula> cut(const WeightedBase<Tag>& base, const ScaleValue& alpha, bool strict) {
  std::vector<Formula> out;
  for (const auto& e : base)
    if (strict ? e.weight > alpha : e.weight >= alpha) out.push_back(e.formula);
  return out;
}

struct Literal {
  std::string atom;
  bool positive = true;

  Formula formula() const { return positive ? posdec::atom(atom) : neg(posdec::atom(atom)); }
  std::string to_string() const { return positive ? atom : "~" + atom; }

  friend bool operator==(const Literal&, const Literal&) = default;
  friend bool operator<(const Literal& a, const Literal& b) {
    return a.atom != b.atom ? a.atom < b.atom : a.positive < b.positive;
  }
};

/// Conjunction of decision literals; the empty conjunction is the do-nothing decision.
class Decision {
 public:
  Decision() = default;

  explicit Decision(std::vector<Literal> lits) : literals_(std::move(lits)) {
    std::sort(literals_.begin(), literals_.end());
    literals_.erase(std::unique(literals_.begin(), literals_.end()), literals_.end());
    for (std::size_t i = 1; i < literals_.size(); ++i)
      if (literals_[i].atom == literals_[i - 1].atom)
        throw VocabError("decision contains both " + literals_[i].atom + " and its negation");
  }

  const std::vector<Literal>& literals() const { return literals_; }
  bool empty() const { return literals_.empty(); }

  std::vector<Formula> formulas() const {
    std::vector<Formula> out;
    for (const auto& l : literals_) out.push_back(l.formula());
    return out;
  }

  Formula formula() const { return conj_all(formulas()); }

  /// "u & ~v", or "true" for do-nothing.
  std::string to_string() const {
    if (literals_.empty()) return "true";
    std::string out;
    for (std::size_t i = 0; i < literals_.size(); ++i) {
      if (i) out += " & ";
      out += literals_[i].to_string();
    }
    return out;
  }

  friend bool operator==(const Decision&, const Decision&) = default;
  friend bool operator<(const Decision& a, const Decision& b) { return a.literals_ < b.literals_; }

 private:
  std::vector<Literal> literals_;
};

/// K_d = K plus each literal of d at certainty 1.
inline KnowledgeBase with_decision(const KnowledgeBase& kb, const Decision& d) {
  KnowledgeBase out = kb;
  for (const auto& l : d.literals()) out.push_back({l.formula(), ScaleValue::one()});
  return out;
}

/// A decision problem: uncertain knowledge, prioritized goals and candidate decisions.
struct Instance {
  Vocabulary vocabulary;
  KnowledgeBase kb;
  GoalBase goals;
  std::vector<Decision> decisions;
  /// Load-time diagnostics (dropped zero weights, merged duplicates). Not part of equality.
  std::vector<std::string> warnings;

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.vocabulary == b.vocabulary && a.kb == b.kb && a.goals == b.goals && a.decisions == b.decisions;
  }
};

/// Checks the structural invariants of an instance; throws VocabError.
inline void validate(const Instance& inst) {
  auto check_atoms = [&](const Formula& f, bool goal) {
    for (const auto& a : f.atoms()) {
      const Atom* atom = inst.vocabulary.find(a);
      if (!atom) throw VocabError("atom '" + a + "' is not declared");
      if (goal && atom->kind == AtomKind::Decision)
        throw VocabError("goal '" + f.to_string() + "' mentions decision atom '" + a + "'");
    }
  };
  for (const auto& e : inst.kb) check_atoms(e.formula, false);
  for (const auto& e : inst.goals) check_atoms(e.formula, true);
  if (inst.decisions.empty()) throw VocabError("no decisions");
  for (const auto& d : inst.decisions)
    for (const auto& l : d.literals())
      if (!inst.vocabulary.is_decision(l.atom))
        throw VocabError("decision literal '" + l.to_string() + "' is not over a decision atom");
}

}  // namespace posdec
