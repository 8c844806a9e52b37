#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "posdec/dpll.hpp"
#include "posdec/formula.hpp"
#include "posdec/interpretation.hpp"
#include "posdec/truth_table.hpp"

namespace posdec {

enum class Backend {
  Dpll,        ///< main engine
  TruthTable,  ///< exhaustive oracle; selecting it disables DPLL
};

struct SolverOptions {
  Backend backend = Backend::Dpll;
  /// Largest atom count a truth-table consistency query may range over.
  std::size_t truth_table_bound = 20;
  /// Largest vocabulary for model enumeration (models(), semantic evaluation).
  std::size_t enumeration_bound = 24;
  /// Largest knowledge base whose subsets may be enumerated for arguments.
  std::size_t subset_bound = 16;
};

/// Consistency and entailment over classical propositional logic.
/// Stateless apart from its options; safe to share between threads.
class Solver {
 public:
  Solver() = default;
  explicit Solver(SolverOptions opts) : opts_(opts) {}

  const SolverOptions& options() const { return opts_; }

  bool is_consistent(std::span<const Formula> phis) const {
    if (opts_.backend == Backend::TruthTable) return truth_table::satisfiable(phis, opts_.truth_table_bound);
    return dpll::satisfiable(phis);
  }

  /// phis |- goal, i.e. phis together with ~goal is inconsistent.
  bool entails(std::span<const Formula> phis, const Formula& goal) const {
    std::vector<Formula> all(phis.begin(), phis.end());
    all.push_back(neg(goal));
    return !is_consistent(all);
  }

  bool equivalent(const Formula& a, const Formula& b) const {
    if (a == b) return true;
    const Formula diff = neg(iff(a, b));
    return !is_consistent(std::span<const Formula>(&diff, 1));
  }

  std::vector<Interpretation> models(std::span<const Formula> phis, std::vector<std::string> vocab) const {
    return truth_table::models(phis, std::move(vocab), opts_.enumeration_bound);
  }

 private:
  SolverOptions opts_;
};

inline bool is_consistent(std::span<const Formula> phis, const Solver& solver = Solver{}) {
  return solver.is_consistent(phis);
}

inline bool entails(std::span<const Formula> phis, const Formula& goal, const Solver& solver = Solver{}) {
  return solver.entails(phis, goal);
}

inline std::vector<Interpretation> models(std::span<const Formula> phis, std::vector<std::string> vocab,
                                          const Solver& solver = Solver{}) {
  return solver.models(phis, std::move(vocab));
}

}  // namespace posdec
