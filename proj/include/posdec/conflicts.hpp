#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "posdec/bases.hpp"
#include "posdec/error.hpp"
#include "posdec/solver.hpp"
#include "posdec/truth_table.hpp"

namespace posdec {

/// Largest formula set whose power set the brute-force conflict search will visit.
inline constexpr std::size_t kConflictElementBound = 22;

/// Every inclusion-minimal inconsistent subset of `formulas`, as bit masks
/// (bit i set when formulas[i] belongs to the subset). Brute force over the
/// power set with truth tables; meant for small inputs and as a test oracle.
inline std::vector<std::uint32_t> minimal_conflicts(const std::vector<Formula>& formulas,
                                                    const std::vector<std::string>& vocab,
                                                    const SolverOptions& opts = {}) {
  const std::size_t n = formulas.size();
  if (n > kConflictElementBound)
    throw EnumerationLimit("conflict search over " + std::to_string(n) + " formulas exceeds bound " +
                           std::to_string(kConflictElementBound));
  truth_table::ModelTable table(vocab, opts.enumeration_bound);
  std::vector<truth_table::ModelSet> sets;
  for (const auto& f : formulas) sets.push_back(table.models_of(f));

  std::vector<char> consistent(std::size_t{1} << n, 0);
  consistent[0] = !table.all().empty();

  // Depth-first over subsets built in increasing index order; supersets of an
  // inconsistent set are never visited and keep the default flag 0.
  struct Frame {
    std::size_t next;
    std::uint32_t mask;
    truth_table::ModelSet models;
  };
  std::vector<Frame> stack;
  if (consistent[0]) stack.push_back({0, 0, table.all()});
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    for (std::size_t i = f.next; i < n; ++i) {
      auto m = f.models & sets[i];
      const std::uint32_t mask = f.mask | (std::uint32_t{1} << i);
      if (m.empty()) continue;
      consistent[mask] = 1;
      stack.push_back({i + 1, mask, std::move(m)});
    }
  }

  std::vector<std::uint32_t> out;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
    if (consistent[mask]) continue;
    bool minimal = true;
    for (std::uint32_t rest = mask; rest && minimal; rest &= rest - 1) {
      const std::uint32_t bit = rest & (~rest + 1);
      if (!consistent[mask ^ bit]) minimal = false;
    }
    if (minimal) out.push_back(mask);
  }
  return out;
}

/// True when some minimal conflict of K_d* together with G* does not contain
/// exactly one goal. In that case the argument-based optimistic value is only
/// an upper bound of the cut-based one.
inline bool has_multi_goal_conflict(const Instance& inst, const Decision& d, const SolverOptions& opts = {}) {
  std::vector<Formula> all = with_decision(inst.kb, d).classical();
  const std::size_t knowledge = all.size();
  for (const auto& g : inst.goals) all.push_back(g.formula);
  std::uint32_t goal_mask = 0;
  for (std::size_t i = knowledge; i < all.size(); ++i) goal_mask |= std::uint32_t{1} << i;
  for (auto c : minimal_conflicts(all, inst.vocabulary.names(), opts))
    if (std::popcount(c & goal_mask) != 1) return true;
  return false;
}

}  // namespace posdec
