#pragma once

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "posdec/generator.hpp"
#include "posdec/instance_io.hpp"
#include "posdec/report.hpp"

namespace posdec {

namespace detail {

inline Mode parse_mode(const std::string& s) {
  if (s == "pessimistic") return Mode::Pessimistic;
  if (s == "optimistic") return Mode::Optimistic;
  return Mode::Both;
}

inline Solver make_solver(const std::string& backend) {
  SolverOptions o;
  o.backend = backend == "truth-table" ? Backend::TruthTable : Backend::Dpll;
  return Solver(o);
}

inline int emit(const DecisionReport& r, bool json, std::ostream& out) {
  if (json)
    out << to_json(r).dump(2) << "\n";
  else
    print_text(r, out);
  return r.exit_code;
}

/// Outcome of the differential check on one instance.
struct CheckTally {
  std::size_t instances = 0;
  std::size_t skipped = 0;
  std::size_t decisions = 0;
  std::size_t upper_bounds = 0;
  std::size_t violations = 0;
};

/// Compares the three routes on every feasible decision; returns false on a
/// violated invariant and appends a reason to `why`.
inline bool check_instance(const Instance& inst, const Solver& solver, CheckTally& tally, std::string& why) {
  ++tally.instances;
  if (!solver.is_consistent(inst.kb.classical()) || !solver.is_consistent(inst.goals.classical())) {
    ++tally.skipped;
    return true;
  }
  bool ok = true;
  for (const auto& d : inst.decisions) {
    if (!feasible(inst, d, solver)) continue;
    ++tally.decisions;
    const SupportLattice lattice(inst, d, solver);
    const auto ps = pessimistic_semantic(inst, d, solver.options());
    const auto pc = pessimistic_cuts(inst, d, solver);
    const auto pa = pessimistic_value(enumerate_pro(lattice), inst);
    const auto os = optimistic_semantic(inst, d, solver.options());
    const auto oc = optimistic_cuts(inst, d, solver);
    const auto oa = optimistic_value(enumerate_con(lattice), inst);
    const std::string tag = "decision '" + d.to_string() + "': ";
    if (ps != pc || pc != pa) {
      why += tag + "pessimistic semantic=" + ps.to_string() + " cuts=" + pc.to_string() + " args=" +
             pa.to_string() + "\n";
      ok = false;
    }
    if (os != oc) {
      why += tag + "optimistic semantic=" + os.to_string() + " cuts=" + oc.to_string() + "\n";
      ok = false;
    }
    if (oa < oc) {
      why += tag + "optimistic args=" + oa.to_string() + " below cuts=" + oc.to_string() + "\n";
      ok = false;
    } else if (oa != oc) {
      if (has_multi_goal_conflict(inst, d, solver.options())) {
        ++tally.upper_bounds;
      } else {
        why += tag + "optimistic args=" + oa.to_string() + " differs from cuts=" + oc.to_string() +
               " without a multi-goal conflict\n";
        ok = false;
      }
    }
  }
  if (!ok) ++tally.violations;
  return ok;
}

}  // namespace detail

/// The command-line tool, runnable in-process. `args` excludes the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Qualitative decision making over possibilistic knowledge and goal bases", "posdec"};
  app.require_subcommand(1);

  std::string file, mode = "both", backend = "dpll", decision_text, gen_text, output, dump;
  bool json = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_flag("--json", json, "Machine-readable output");
    sub->add_option("--backend", backend, "Satisfiability backend")
        ->check(CLI::IsMember({"dpll", "truth-table"}));
  };

  auto* eval = app.add_subcommand("eval", "Utilities of every decision by each route");
  eval->add_option("file", file, "Instance file")->required();
  eval->add_option("--mode", mode)->check(CLI::IsMember({"pessimistic", "optimistic", "both"}));
  add_common(eval);

  auto* rank = app.add_subcommand("rank", "Rank decisions by argument-based utility");
  rank->add_option("file", file, "Instance file")->required();
  rank->add_option("--mode", mode)->check(CLI::IsMember({"pessimistic", "optimistic"}));
  add_common(rank);

  auto* explain = app.add_subcommand("explain", "Arguments for and against one decision");
  explain->add_option("file", file, "Instance file")->required();
  explain->add_option("--decision", decision_text, "Decision, e.g. 'u' or '~u & v'")->required();
  add_common(explain);

  auto* accept = app.add_subcommand("accept", "Acceptability pipeline for possibly inconsistent knowledge");
  accept->add_option("file", file, "Instance file")->required();
  add_common(accept);

  auto* check = app.add_subcommand("check", "Differential check of the three evaluation routes");
  check->add_option("file", file, "Instance file");
  check->add_option("--gen", gen_text, "Generator spec, e.g. seed=1,trials=500,consistentK,consistentG");
  check->add_option("--dump", dump, "Write the first offending instance here");
  add_common(check);

  auto* gen = app.add_subcommand("gen", "Write a seeded random instance");
  gen->add_option("spec", gen_text, "Generator spec, e.g. seed=7,stateAtoms=4")->required();
  gen->add_option("-o,--output", output, "Output file (stdout when absent)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_code::kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_code::kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kParse;
  }

  const Solver solver = detail::make_solver(backend);

  auto load = [&](const std::string& path) -> std::optional<Instance> {
    try {
      Instance inst = load_instance_file(path);
      for (const auto& w : inst.warnings) err << "warning: " << w << "\n";
      return inst;
    } catch (const Error& e) {
      err << path << ": " << e.what() << "\n";
      return std::nullopt;
    }
  };

  try {
    if (*gen) {
      const auto spec = parse_gen_spec(gen_text);
      const std::string text = format_instance(generate(spec.config, solver));
      if (output.empty()) {
        out << text;
      } else {
        std::ofstream f(output);
        if (!(f << text)) {
          err << "cannot write " << output << "\n";
          return exit_code::kParse;
        }
      }
      return exit_code::kOk;
    }

    if (*check) {
      if (file.empty() == gen_text.empty()) {
        err << "check needs exactly one of an instance file or --gen\n";
        return exit_code::kParse;
      }
      detail::CheckTally tally;
      auto fail = [&](const Instance& inst, const std::string& label, const std::string& why) {
        err << "differential failure on " << label << ":\n" << why << "# offending instance\n"
            << format_instance(inst);
        if (!dump.empty()) std::ofstream(dump) << format_instance(inst);
        return exit_code::kDifferential;
      };
      if (!file.empty()) {
        auto inst = load(file);
        if (!inst) return exit_code::kParse;
        std::string why;
        if (!detail::check_instance(*inst, solver, tally, why)) return fail(*inst, file, why);
      } else {
        const auto spec = parse_gen_spec(gen_text);
        for (std::size_t t = 0; t < spec.trials; ++t) {
          GenConfig cfg = spec.config;
          cfg.seed = spec.config.seed + t;
          const Instance inst = generate(cfg, solver);
          std::string why;
          if (!detail::check_instance(inst, solver, tally, why))
            return fail(inst, "seed " + std::to_string(cfg.seed), why);
        }
      }
      out << "instances: " << tally.instances << "\nskipped (inconsistent base): " << tally.skipped
          << "\ndecisions checked: " << tally.decisions
          << "\noptimistic upper bounds (multi-goal conflict): " << tally.upper_bounds
          << "\nviolations: " << tally.violations << "\n";
      return exit_code::kOk;
    }

    auto inst = load(file);
    if (!inst) return exit_code::kParse;

    if (*eval) return detail::emit(evaluate_instance(*inst, detail::parse_mode(mode), solver), json, out);

    if (*rank) {
      auto report = evaluate_instance(*inst, detail::parse_mode(mode), solver);
      if (!json) {
        out << detail::ranking_text(report.ranking) << "\n";
        for (const auto& n : report.notes) out << "note: " << n << "\n";
        return report.exit_code;
      }
      return detail::emit(report, true, out);
    }

    if (*explain) {
      Decision d;
      try {
        const auto names = inst->vocabulary.name_set();
        d = decision_from_formula(parse_formula(decision_text, {&names}));
      } catch (const Error& e) {
        err << "decision '" << decision_text << "': " << e.what() << "\n";
        return exit_code::kPrecondition;
      }
      if (std::find(inst->decisions.begin(), inst->decisions.end(), d) == inst->decisions.end()) {
        err << "decision '" << d.to_string() << "' is not among the instance's decisions\n";
        return exit_code::kPrecondition;
      }
      Instance single = *inst;
      single.decisions = {d};
      auto report = evaluate_instance(single, Mode::Both, solver, true);
      report.ranking.clear();
      report.ranking_optimistic.reset();
      if (report.exit_code == exit_code::kAllInfeasible) report.exit_code = exit_code::kPrecondition;
      return detail::emit(report, json, out);
    }

    if (*accept) return detail::emit(accept_instance(*inst, solver), json, out);
  } catch (const ParseError& e) {
    err << e.what() << "\n";
    return exit_code::kParse;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kPrecondition;
  }
  return exit_code::kOk;
}

}  // namespace posdec
