#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "posdec/formula.hpp"

// DPLL with unit propagation over a Tseitin-style clausal form.
//
// Auxiliary variables exist only inside a Cnf; callers never see them.
namespace posdec::dpll {

/// Clauses over variables 1..num_vars; literal v or -v.
struct Cnf {
  int num_vars = 0;
  std::vector<int> lits;
  std::vector<std::uint32_t> starts;  // clause i spans [starts[i], starts[i + 1])
  bool has_empty_clause = false;

  std::size_t num_clauses() const { return starts.empty() ? 0 : starts.size() - 1; }
};

class CnfEncoder {
 public:
  CnfEncoder() { cnf_.starts.push_back(0); }

  /// Adds clauses that are satisfiable exactly when `f` can be made true.
  void assert_formula(const Formula& f) {
    switch (f.op()) {
      case Connective::Constant:
        if (!f.value()) cnf_.has_empty_clause = true;
        return;
      case Connective::And:
        assert_formula(f.lhs());
        assert_formula(f.rhs());
        return;
      case Connective::Not:
        assert_negation(f.lhs());
        return;
      case Connective::Iff: {
        const int a = lit(f.lhs()), b = lit(f.rhs());
        add_clause({-a, b});
        add_clause({a, -b});
        return;
      }
      default: {
        std::vector<int> clause;
        bool taut = false;
        collect(f, true, clause, taut);
        if (!taut) add_clause(std::move(clause));
        return;
      }
    }
  }

  /// Index of a named atom's variable, allocating it on first use.
  int var_of(const std::string& name) {
    for (const auto& [n, v] : atoms_)
      if (n == name) return v;
    atoms_.emplace_back(name, ++cnf_.num_vars);
    return cnf_.num_vars;
  }

  const Cnf& cnf() const { return cnf_; }

 private:
  void assert_negation(const Formula& f) {
    switch (f.op()) {
      case Connective::Constant:
        if (f.value()) cnf_.has_empty_clause = true;
        return;
      case Connective::Not: assert_formula(f.lhs()); return;
      case Connective::Or:
        assert_negation(f.lhs());
        assert_negation(f.rhs());
        return;
      case Connective::Implies:
        assert_formula(f.lhs());
        assert_negation(f.rhs());
        return;
      case Connective::Iff: {
        const int a = lit(f.lhs()), b = lit(f.rhs());
        add_clause({a, b});
        add_clause({-a, -b});
        return;
      }
      default: {
        std::vector<int> clause;
        bool taut = false;
        collect(f, false, clause, taut);
        if (!taut) add_clause(std::move(clause));
        return;
      }
    }
  }

  // Flattens the disjunctive skeleton of f (or of ~f when !positive) into one clause.
  void collect(const Formula& f, bool positive, std::vector<int>& clause, bool& taut) {
    switch (f.op()) {
      case Connective::Constant:
        if (f.value() == positive) taut = true;
        return;
      case Connective::Atom: clause.push_back(positive ? var_of(f.name()) : -var_of(f.name())); return;
      case Connective::Not: collect(f.lhs(), !positive, clause, taut); return;
      case Connective::Or:
        if (positive) {
          collect(f.lhs(), true, clause, taut);
          collect(f.rhs(), true, clause, taut);
          return;
        }
        break;
      case Connective::And:
        if (!positive) {
          collect(f.lhs(), false, clause, taut);
          collect(f.rhs(), false, clause, taut);
          return;
        }
        break;
      case Connective::Implies:
        if (positive) {
          collect(f.lhs(), false, clause, taut);
          collect(f.rhs(), true, clause, taut);
          return;
        }
        break;
      default: break;
    }
    const int l = lit(f);
    clause.push_back(positive ? l : -l);
  }

  // Literal equivalent to f, introducing a defined auxiliary variable when needed.
  int lit(const Formula& f) {
    switch (f.op()) {
      case Connective::Atom: return var_of(f.name());
      case Connective::Not: return -lit(f.lhs());
      case Connective::Constant: {
        if (true_var_ == 0) {
          true_var_ = ++cnf_.num_vars;
          add_clause({true_var_});
        }
        return f.value() ? true_var_ : -true_var_;
      }
      default: break;
    }
    const int a = lit(f.lhs());
    const int b = lit(f.rhs());
    const int v = ++cnf_.num_vars;
    switch (f.op()) {
      case Connective::And:
        add_clause({-v, a});
        add_clause({-v, b});
        add_clause({v, -a, -b});
        break;
      case Connective::Or:
        add_clause({-v, a, b});
        add_clause({v, -a});
        add_clause({v, -b});
        break;
      case Connective::Implies:
        add_clause({-v, -a, b});
        add_clause({v, a});
        add_clause({v, -b});
        break;
      default:  // Iff
        add_clause({-v, -a, b});
        add_clause({-v, a, -b});
        add_clause({v, a, b});
        add_clause({v, -a, -b});
        break;
    }
    return v;
  }

  void add_clause(std::vector<int> clause) {
    if (clause.empty()) {
      cnf_.has_empty_clause = true;
      return;
    }
    cnf_.lits.insert(cnf_.lits.end(), clause.begin(), clause.end());
    cnf_.starts.push_back(static_cast<std::uint32_t>(cnf_.lits.size()));
  }

  Cnf cnf_;
  std::vector<std::pair<std::string, int>> atoms_;
  int true_var_ = 0;
};

class Solver {
 public:
  explicit Solver(const Cnf& cnf) : cnf_(cnf), value_(static_cast<std::size_t>(cnf.num_vars) + 1, 0) {}

  bool solve() {
    if (cnf_.has_empty_clause) return false;
    return search();
  }

 private:
  // 0 unassigned, 1 true, -1 false (of the literal)
  int lit_value(int l) const {
    const int v = value_[static_cast<std::size_t>(l > 0 ? l : -l)];
    return l > 0 ? v : -v;
  }

  void assign(int l) {
    value_[static_cast<std::size_t>(l > 0 ? l : -l)] = static_cast<signed char>(l > 0 ? 1 : -1);
    trail_.push_back(l);
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      const int l = trail_.back();
      trail_.pop_back();
      value_[static_cast<std::size_t>(l > 0 ? l : -l)] = 0;
    }
  }

  bool propagate() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t c = 0; c + 1 < cnf_.starts.size(); ++c) {
        int unassigned = 0, last = 0;
        bool sat = false;
        for (auto i = cnf_.starts[c]; i < cnf_.starts[c + 1]; ++i) {
          const int l = cnf_.lits[i];
          const int v = lit_value(l);
          if (v > 0) {
            sat = true;
            break;
          }
          if (v == 0) {
            ++unassigned;
            last = l;
          }
        }
        if (sat) continue;
        if (unassigned == 0) return false;
        if (unassigned == 1) {
          assign(last);
          changed = true;
        }
      }
    }
    return true;
  }

  int pick_branch() const {
    for (std::size_t c = 0; c + 1 < cnf_.starts.size(); ++c) {
      int candidate = 0;
      bool sat = false;
      for (auto i = cnf_.starts[c]; i < cnf_.starts[c + 1]; ++i) {
        const int v = lit_value(cnf_.lits[i]);
        if (v > 0) {
          sat = true;
          break;
        }
        if (v == 0 && candidate == 0) candidate = cnf_.lits[i];
      }
      if (!sat) return candidate;
    }
    return 0;
  }

  bool search() {
    if (!propagate()) return false;
    const int l = pick_branch();
    if (l == 0) return true;
    const std::size_t mark = trail_.size();
    assign(l);
    if (search()) return true;
    undo(mark);
    assign(-l);
    if (search()) return true;
    undo(mark);
    return false;
  }

  const Cnf& cnf_;
  std::vector<signed char> value_;
  std::vector<int> trail_;
};

inline bool satisfiable(std::span<const Formula> phis) {
  CnfEncoder enc;
  for (const auto& f : phis) enc.assert_formula(f);
  return Solver(enc.cnf()).solve();
}

}  // namespace posdec::dpll
