#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "posdec/error.hpp"
#include "posdec/formula.hpp"
#include "posdec/interpretation.hpp"

// Exhaustive truth-table backend. Serves as the oracle for the DPLL engine
// and as the enumeration substrate of the semantic evaluator.
namespace posdec::truth_table {

inline std::vector<std::string> atoms_of(std::span<const Formula> phis) {
  std::set<std::string> s;
  for (const auto& f : phis) f.collect_atoms(s);
  return {s.begin(), s.end()};
}

inline void check_bound(std::size_t n, std::size_t bound) {
  if (n > bound || n >= Interpretation::kMaxAtoms)
    throw BackendLimit("truth table over " + std::to_string(n) + " atoms exceeds bound " + std::to_string(bound));
}

inline bool satisfiable(std::span<const Formula> phis, std::size_t bound) {
  const auto atoms = atoms_of(phis);
  check_bound(atoms.size(), bound);
  std::vector<CompiledFormula> compiled;
  compiled.reserve(phis.size());
  for (const auto& f : phis) compiled.emplace_back(f, atoms);
  const std::uint64_t rows = std::uint64_t{1} << atoms.size();
  for (std::uint64_t bits = 0; bits < rows; ++bits) {
    bool ok = true;
    for (const auto& c : compiled) {
      if (!c(bits)) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

/// Satisfying interpretations over `vocab`, in canonical order.
inline std::vector<Interpretation> models(std::span<const Formula> phis, std::vector<std::string> vocab,
                                          std::size_t bound) {
  std::sort(vocab.begin(), vocab.end());
  vocab.erase(std::unique(vocab.begin(), vocab.end()), vocab.end());
  check_bound(vocab.size(), bound);
  auto shared = std::make_shared<const std::vector<std::string>>(vocab);
  std::vector<CompiledFormula> compiled;
  for (const auto& f : phis) compiled.emplace_back(f, vocab);
  std::vector<Interpretation> out;
  const std::uint64_t rows = std::uint64_t{1} << vocab.size();
  for (std::uint64_t k = 0; k < rows; ++k) {
    const std::uint64_t bits = canonical_bits(k, vocab.size());
    bool ok = true;
    for (const auto& c : compiled) {
      if (!c(bits)) {
        ok = false;
        break;
      }
    }
    if (ok) out.emplace_back(shared, bits);
  }
  return out;
}

/// Set of rows of a truth table, one bit per interpretation.
class ModelSet {
 public:
  ModelSet() = default;
  ModelSet(std::size_t rows, bool full) : words_((rows + 63) / 64, full ? ~std::uint64_t{0} : 0) {
    if (full && rows % 64) words_.back() = (std::uint64_t{1} << (rows % 64)) - 1;
  }

  void set(std::uint64_t row) { words_[row / 64] |= std::uint64_t{1} << (row % 64); }

  ModelSet& operator&=(const ModelSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  friend ModelSet operator&(ModelSet a, const ModelSet& b) { return a &= b; }

  bool empty() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  bool subset_of(const ModelSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

 private:
  std::vector<std::uint64_t> words_;
};

/// Tabulates formulas over a fixed vocabulary so that conjunction is a bitwise AND.
class ModelTable {
 public:
  ModelTable(std::vector<std::string> vocab, std::size_t bound) : atoms_(std::move(vocab)) {
    std::sort(atoms_.begin(), atoms_.end());
    atoms_.erase(std::unique(atoms_.begin(), atoms_.end()), atoms_.end());
    check_bound(atoms_.size(), bound);
    rows_ = std::uint64_t{1} << atoms_.size();
  }

  ModelSet all() const { return ModelSet(rows_, true); }

  ModelSet models_of(const Formula& f) const {
    CompiledFormula c(f, atoms_);
    ModelSet s(rows_, false);
    for (std::uint64_t bits = 0; bits < rows_; ++bits)
      if (c(bits)) s.set(bits);
    return s;
  }

 private:
  std::vector<std::string> atoms_;
  std::uint64_t rows_ = 1;
};

}  // namespace posdec::truth_table
