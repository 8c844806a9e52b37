#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "posdec/acceptability.hpp"
#include "posdec/argumentation.hpp"
#include "posdec/bases.hpp"
#include "posdec/conflicts.hpp"
#include "posdec/cuts.hpp"
#include "posdec/semantic.hpp"
#include "posdec/solver.hpp"

namespace posdec {

enum class Mode { Pessimistic, Optimistic, Both };

inline bool wants_pessimistic(Mode m) { return m != Mode::Optimistic; }
inline bool wants_optimistic(Mode m) { return m != Mode::Pessimistic; }

/// Process exit codes of the command-line tool.
namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kParse = 2;
inline constexpr int kPrecondition = 3;
inline constexpr int kAllInfeasible = 4;
inline constexpr int kDifferential = 5;
}  // namespace exit_code

struct RouteValues {
  std::optional<ScaleValue> semantic;
  std::optional<ScaleValue> cuts;
  std::optional<ScaleValue> args;
};

struct DecisionEntry {
  Decision decision;
  bool feasible = true;
  RouteValues pessimistic;
  RouteValues optimistic;
  std::vector<std::pair<ArgumentPro, StrengthPro>> pro;
  std::vector<std::pair<ArgumentCon, WeaknessCon>> con;
  std::optional<DecisionStatus> status;
  std::optional<ScaleValue> candidate_score;
};

/// Everything a command prints, in declaration order of the decisions.
struct DecisionReport {
  std::string pipeline = "consistent";  // or "acceptability"
  std::vector<DecisionEntry> decisions;
  std::vector<std::vector<Decision>> ranking;
  std::optional<std::vector<std::vector<Decision>>> ranking_optimistic;
  std::vector<std::string> notes;
  /// Filled by the acceptability pipeline: rendered arguments per class.
  std::optional<nlohmann::json> arguments;
  int exit_code = exit_code::kOk;
};

/// Exact "p/q" rendering used in machine-readable output.
inline std::string rational_string(const ScaleValue& v) {
  return std::to_string(v.numerator()) + "/" + std::to_string(v.denominator());
}

namespace detail {

inline nlohmann::json formulas_json(const std::vector<WeightedFormula>& fs) {
  auto arr = nlohmann::json::array();
  for (const auto& f : fs) arr.push_back(f.formula.to_string());
  return arr;
}

inline nlohmann::json routes_json(const RouteValues& r) {
  nlohmann::json j = nlohmann::json::object();
  if (r.semantic) j["semantic"] = rational_string(*r.semantic);
  if (r.cuts) j["cuts"] = rational_string(*r.cuts);
  if (r.args) j["args"] = rational_string(*r.args);
  return j;
}

inline nlohmann::json ranking_json(const std::vector<std::vector<Decision>>& groups) {
  auto arr = nlohmann::json::array();
  for (const auto& g : groups) {
    auto inner = nlohmann::json::array();
    for (const auto& d : g) inner.push_back(d.to_string());
    arr.push_back(inner);
  }
  return arr;
}

inline std::string ranking_text(const std::vector<std::vector<Decision>>& groups) {
  std::string out;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (i) out += " > ";
    out += "[";
    for (std::size_t j = 0; j < groups[i].size(); ++j) out += (j ? ", " : "") + groups[i][j].to_string();
    out += "]";
  }
  return out.empty() ? "(none)" : out;
}

inline std::string set_text(const std::vector<WeightedFormula>& fs) {
  std::string out = "{";
  for (std::size_t i = 0; i < fs.size(); ++i) out += (i ? ", " : "") + fs[i].formula.to_string();
  return out + "}";
}

inline bool feasible(const Instance& inst, const Decision& d, const Solver& solver) {
  auto kd = inst.kb.classical();
  for (auto& f : d.formulas()) kd.push_back(std::move(f));
  return solver.is_consistent(kd);
}

inline std::vector<std::vector<Decision>> groups_by(const std::vector<DecisionEntry>& entries,
                                                    std::optional<ScaleValue> RouteValues::*which,
                                                    RouteValues DecisionEntry::*criterion) {
  std::vector<std::pair<Decision, ScaleValue>> scored;
  for (const auto& e : entries) {
    const auto& v = (e.*criterion).*which;
    if (e.feasible && v) scored.emplace_back(e.decision, *v);
  }
  return rank_by_score(scored).groups;
}

}  // namespace detail

inline nlohmann::json to_json(const DecisionReport& r) {
  nlohmann::json j;
  j["pipeline"] = r.pipeline;
  j["decisions"] = nlohmann::json::array();
  for (const auto& e : r.decisions) {
    nlohmann::json d;
    d["decision"] = e.decision.to_string();
    d["feasible"] = e.feasible;
    d["pessimistic"] = detail::routes_json(e.pessimistic);
    d["optimistic"] = detail::routes_json(e.optimistic);
    d["pro"] = nlohmann::json::array();
    for (const auto& [a, s] : e.pro)
      d["pro"].push_back({{"support", detail::formulas_json(a.support)},
                          {"consequences", detail::formulas_json(a.consequences)},
                          {"level", rational_string(s.level)},
                          {"weight", rational_string(s.weight)}});
    d["con"] = nlohmann::json::array();
    for (const auto& [a, w] : e.con)
      d["con"].push_back({{"support", detail::formulas_json(a.support)},
                          {"consequences", detail::formulas_json(a.consequences)},
                          {"level", rational_string(w.level)},
                          {"weight", rational_string(w.weight)}});
    if (e.status) d["status"] = to_string(*e.status);
    if (e.candidate_score) d["score"] = rational_string(*e.candidate_score);
    j["decisions"].push_back(std::move(d));
  }
  j["ranking"] = detail::ranking_json(r.ranking);
  if (r.ranking_optimistic) j["ranking_optimistic"] = detail::ranking_json(*r.ranking_optimistic);
  j["notes"] = r.notes;
  if (r.arguments) j["arguments"] = *r.arguments;
  return j;
}

inline void print_text(const DecisionReport& r, std::ostream& os) {
  os << "pipeline: " << r.pipeline << "\n";
  auto route = [&](const char* name, const RouteValues& v) {
    if (!v.semantic && !v.cuts && !v.args) return;
    os << "  " << name << ":";
    if (v.semantic) os << " semantic=" << *v.semantic;
    if (v.cuts) os << " cuts=" << *v.cuts;
    if (v.args) os << " args=" << *v.args;
    os << "\n";
  };
  for (const auto& e : r.decisions) {
    os << "decision " << e.decision.to_string();
    if (!e.feasible) os << " (infeasible)";
    if (e.status) os << " [" << to_string(*e.status) << "]";
    if (e.candidate_score) os << " score=" << *e.candidate_score;
    os << "\n";
    route("pessimistic", e.pessimistic);
    route("optimistic", e.optimistic);
    for (const auto& [a, s] : e.pro)
      os << "  PRO <" << detail::set_text(a.support) << ", " << detail::set_text(a.consequences) << ", "
         << a.decision.to_string() << "> level=" << s.level << " weight=" << s.weight << "\n";
    for (const auto& [a, w] : e.con)
      os << "  CON <" << detail::set_text(a.support) << ", " << detail::set_text(a.consequences) << ", "
         << a.decision.to_string() << "> level=" << w.level << " weight=" << w.weight << "\n";
  }
  if (r.arguments) {
    for (const char* cls : {"acceptable", "rejected", "abeyance"}) {
      os << cls << ":\n";
      for (const auto& a : (*r.arguments)[cls]) os << "  " << a.get<std::string>() << "\n";
    }
  }
  if (!r.ranking.empty()) os << "ranking: " << detail::ranking_text(r.ranking) << "\n";
  if (r.ranking_optimistic) os << "ranking (optimistic): " << detail::ranking_text(*r.ranking_optimistic) << "\n";
  for (const auto& n : r.notes) os << "note: " << n << "\n";
}

/// Utilities of every decision by the requested routes, plus rankings and
/// displayed arguments. Routes whose preconditions fail are omitted with a note.
inline DecisionReport evaluate_instance(const Instance& inst, Mode mode, const Solver& solver = Solver{},
                                        bool with_arguments = false) {
  DecisionReport r;
  const bool k_ok = solver.is_consistent(inst.kb.classical());
  const bool g_ok = solver.is_consistent(inst.goals.classical());
  if (!k_ok) {
    r.pipeline = "acceptability";
    r.notes.push_back("knowledge base is inconsistent; utilities are undefined, run 'accept'");
    r.exit_code = exit_code::kPrecondition;
    return r;
  }
  if (!g_ok) {
    r.notes.push_back("goal base is inconsistent; semantic and cut routes omitted");
    r.exit_code = exit_code::kPrecondition;
  }

  bool any_feasible = false;
  for (const auto& d : inst.decisions) {
    DecisionEntry e;
    e.decision = d;
    e.feasible = detail::feasible(inst, d, solver);
    if (!e.feasible) {
      r.notes.push_back("decision '" + d.to_string() + "' contradicts the knowledge base");
      r.decisions.push_back(std::move(e));
      continue;
    }
    any_feasible = true;
    const SupportLattice lattice(inst, d, solver);
    const auto pros = enumerate_pro(lattice);
    const auto cons = enumerate_con(lattice);

    if (wants_pessimistic(mode)) {
      if (g_ok) {
        e.pessimistic.semantic = pessimistic_semantic(inst, d, solver.options());
        e.pessimistic.cuts = pessimistic_cuts(inst, d, solver);
      }
      e.pessimistic.args = pessimistic_value(pros, inst);
      const auto& p = e.pessimistic;
      if (p.semantic && p.cuts && !(*p.semantic == *p.cuts && *p.cuts == *p.args)) {
        r.notes.push_back("decision '" + d.to_string() + "': pessimistic routes disagree");
        r.exit_code = exit_code::kDifferential;
      }
    }
    if (wants_optimistic(mode)) {
      if (g_ok) {
        e.optimistic.semantic = optimistic_semantic(inst, d, solver.options());
        e.optimistic.cuts = optimistic_cuts(inst, d, solver);
      }
      e.optimistic.args = optimistic_value(cons, inst);
      const auto& o = e.optimistic;
      if (o.cuts && *o.args != *o.cuts) {
        if (*o.args > *o.cuts && has_multi_goal_conflict(inst, d, solver.options())) {
          r.notes.push_back("decision '" + d.to_string() +
                            "': argumentative optimistic value is an upper bound (a conflict needs several goals)");
        } else {
          r.notes.push_back("decision '" + d.to_string() + "': optimistic routes disagree");
          r.exit_code = exit_code::kDifferential;
        }
      }
    }
    if (with_arguments) {
      for (auto& a : undominated_pro(pros, inst)) e.pro.emplace_back(a, strength_pro(a, inst));
      for (auto& a : undominated_con(cons, inst)) e.con.emplace_back(a, weakness_con(a, inst));
    }
    r.decisions.push_back(std::move(e));
  }

  if (wants_pessimistic(mode)) {
    r.ranking = detail::groups_by(r.decisions, &RouteValues::args, &DecisionEntry::pessimistic);
    if (mode == Mode::Both)
      r.ranking_optimistic = detail::groups_by(r.decisions, &RouteValues::args, &DecisionEntry::optimistic);
  } else {
    r.ranking = detail::groups_by(r.decisions, &RouteValues::args, &DecisionEntry::optimistic);
  }

  if (wants_optimistic(mode)) {
    // Ranking by the most favourable counterargument instead of the most damaging one.
    std::vector<std::pair<Decision, ScaleValue>> literal;
    for (const auto& d : inst.decisions) {
      if (!detail::feasible(inst, d, solver)) continue;
      ScaleValue best = ScaleValue::one();
      const auto cons = enumerate_con(inst, d, solver);
      if (!cons.empty()) {
        best = ScaleValue::zero();
        for (const auto& c : cons) best = std::max(best, weakness_con(c, inst).value());
      }
      literal.emplace_back(d, best);
    }
    const auto opt = detail::groups_by(r.decisions, &RouteValues::args, &DecisionEntry::optimistic);
    if (rank_by_score(literal).groups != opt)
      r.notes.push_back("optimistic ranking would change if decisions were compared by their weakest "
                        "counterargument instead of their strongest");
  }

  if (!any_feasible && r.exit_code == exit_code::kOk) {
    r.notes.push_back("every decision contradicts the knowledge base");
    r.exit_code = exit_code::kAllInfeasible;
  }
  return r;
}

inline std::string describe(const ArgNode& n) {
  if (n.is_belief()) {
    const auto& b = n.belief();
    return "<" + detail::set_text(b.support) + ", " + b.conclusion.to_string() + "> level=" + b.level().to_string();
  }
  const auto& p = n.pro();
  return "<" + detail::set_text(p.support) + ", " + detail::set_text(p.consequences) + ", " +
         p.decision.to_string() + "> level=" + n.level().to_string();
}

/// The acceptability pipeline rendered as a report.
inline DecisionReport accept_instance(const Instance& inst, const Solver& solver = Solver{}) {
  DecisionReport r;
  const auto run = run_acceptability(inst, solver);
  r.pipeline = run.kb_consistent ? "consistent" : "acceptability";
  if (run.kb_consistent)
    r.notes.push_back("knowledge base is consistent: reduces to the consistent-base pessimistic ranking");

  nlohmann::json classes;
  auto render = [&](const std::vector<std::size_t>& ids) {
    auto arr = nlohmann::json::array();
    for (auto i : ids) arr.push_back(describe(run.graph.nodes[i]));
    return arr;
  };
  classes["acceptable"] = render(run.result.acceptable);
  classes["rejected"] = render(run.result.rejected);
  classes["abeyance"] = render(run.result.abeyance);
  r.arguments = classes;

  for (const auto& [d, status] : run.result.status) {
    DecisionEntry e;
    e.decision = d;
    e.feasible = std::find(run.ranking.infeasible.begin(), run.ranking.infeasible.end(), d) ==
                 run.ranking.infeasible.end();
    e.status = status;
    for (std::size_t gi = 0; gi < run.ranking.ranking.groups.size(); ++gi)
      for (const auto& rd : run.ranking.ranking.groups[gi])
        if (rd == d) e.candidate_score = run.ranking.ranking.scores[gi];
    for (std::size_t i = 0; i < run.graph.size(); ++i) {
      const auto& n = run.graph.nodes[i];
      if (!n.is_belief() && n.pro().decision == d && run.result.is_acceptable(i))
        e.pro.emplace_back(n.pro(), strength_pro(n.pro(), inst));
    }
    r.decisions.push_back(std::move(e));
  }
  r.ranking = run.ranking.ranking.groups;
  for (const auto& [d, s] : run.ranking.alternative_scores)
    r.notes.push_back("decision '" + d.to_string() + "' would score " + s.to_string() +
                      " if rejected arguments counted");
  for (const auto& d : run.ranking.infeasible)
    r.notes.push_back("decision '" + d.to_string() + "' contradicts the knowledge base and is not ranked");
  if (!run.result.matches_least_fixpoint) {
    r.notes.push_back("fixpoint from the initial set differs from the least fixpoint");
    r.exit_code = exit_code::kDifferential;
  }
  return r;
}

}  // namespace posdec
