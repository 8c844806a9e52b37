#pragma once

#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "posdec/bases.hpp"
#include "posdec/error.hpp"
#include "posdec/parser.hpp"

namespace posdec {

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

struct SourceLine {
  std::size_t number;
  std::size_t column;  // of the first non-blank character
  std::string text;    // trimmed, comment stripped
};

inline std::vector<std::string> split_names(std::string_view list) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : list) {
    if (c == ',' || c == ' ' || c == '\t') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

inline void flatten_conjunction(const Formula& f, std::vector<Formula>& out) {
  if (f.op() == Connective::And) {
    flatten_conjunction(f.lhs(), out);
    flatten_conjunction(f.rhs(), out);
  } else {
    out.push_back(f);
  }
}

template <typename Tag>
void add_entry(WeightedBase<Tag>& base, WeightedFormula wf, std::vector<std::string>& warnings,
               std::size_t line) {
  if (wf.weight == ScaleValue::zero()) {
    warnings.push_back("line " + std::to_string(line) + ": dropped zero-weight formula '" +
                       wf.formula.to_string() + "'");
    return;
  }
  std::vector<WeightedFormula> entries = base.entries();
  for (auto& e : entries) {
    if (e.formula == wf.formula) {
      warnings.push_back("line " + std::to_string(line) + ": duplicate formula '" + wf.formula.to_string() +
                         "', keeping the maximum weight");
      if (wf.weight > e.weight) e.weight = wf.weight;
      base = WeightedBase<Tag>(std::move(entries));
      return;
    }
  }
  base.push_back(std::move(wf));
}

}  // namespace detail

/// Converts a formula to a decision, or throws if it is not a conjunction of literals.
inline Decision decision_from_formula(const Formula& f) {
  if (f.is_constant() && f.value()) return Decision{};
  std::vector<Formula> parts;
  detail::flatten_conjunction(f, parts);
  std::vector<Literal> lits;
  for (const auto& p : parts) {
    if (!p.is_literal()) throw VocabError("decision '" + f.to_string() + "' is not a conjunction of literals");
    lits.push_back(p.is_atom() ? Literal{p.name(), true} : Literal{p.lhs().name(), false});
  }
  return Decision(std::move(lits));
}

/// Parses the line-oriented instance format:
///
///   state_atoms: a, b        (optional; enables strict atom checking)
///   decision_atoms: u
///   kb:
///   u -> l : 1
///   goals:
///   ~w : 3/5
///   decisions:
///   u
///   true                     (do nothing)
///
/// `#` starts a comment. Weights are decimals or fractions, parsed exactly.
inline Instance load_instance(std::string_view text) {
  enum class Section { None, Kb, Goals, Decisions };

  std::vector<detail::SourceLine> lines;
  {
    std::size_t number = 0, pos = 0;
    while (pos <= text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      std::string_view raw = text.substr(pos, end - pos);
      ++number;
      if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
      std::string_view t = detail::trim(raw);
      if (!t.empty()) lines.push_back({number, static_cast<std::size_t>(t.data() - raw.data()) + 1, std::string(t)});
      pos = end + 1;
    }
  }

  Instance inst;
  std::vector<std::string> decision_atoms;
  std::optional<std::vector<std::string>> state_atoms;

  struct Pending {
    Section section;
    const detail::SourceLine* line;
  };
  std::vector<Pending> body;

  Section section = Section::None;
  for (const auto& l : lines) {
    std::string_view t = l.text;
    auto header = [&](std::string_view key) -> std::optional<std::string_view> {
      if (t.substr(0, key.size()) != key) return std::nullopt;
      std::string_view rest = detail::trim(t.substr(key.size()));
      if (rest.empty() || rest.front() != ':') return std::nullopt;
      return detail::trim(rest.substr(1));
    };
    if (auto v = header("decision_atoms")) {
      for (auto& n : detail::split_names(*v)) decision_atoms.push_back(n);
      continue;
    }
    if (auto v = header("state_atoms")) {
      if (!state_atoms) state_atoms.emplace();
      for (auto& n : detail::split_names(*v)) state_atoms->push_back(n);
      continue;
    }
    if (auto v = header("kb"); v && v->empty()) {
      section = Section::Kb;
      continue;
    }
    if (auto v = header("goals"); v && v->empty()) {
      section = Section::Goals;
      continue;
    }
    if (auto v = header("decisions"); v && v->empty()) {
      section = Section::Decisions;
      continue;
    }
    if (section == Section::None) throw ParseError("expected a section header", l.number, l.column);
    body.push_back({section, &l});
  }

  for (const auto& n : decision_atoms) inst.vocabulary.add(n, AtomKind::Decision);
  if (state_atoms)
    for (const auto& n : *state_atoms) inst.vocabulary.add(n, AtomKind::State);

  const std::set<std::string> declared = inst.vocabulary.name_set();
  ParseOptions popts;
  if (state_atoms) popts.vocabulary = &declared;

  for (const auto& [sec, line] : body) {
    const std::string& t = line->text;
    popts.line = line->number;
    popts.column = line->column;
    if (sec == Section::Decisions) {
      Formula f = parse_formula(t, popts);
      inst.decisions.push_back(decision_from_formula(f));
      continue;
    }
    const auto colon = t.rfind(':');
    if (colon == std::string::npos) throw ParseError("expected 'formula : weight'", line->number, line->column + t.size());
    Formula f = parse_formula(std::string_view(t).substr(0, colon), popts);
    ScaleValue w;
    try {
      w = ScaleValue::parse(detail::trim(std::string_view(t).substr(colon + 1)));
    } catch (const ScaleError& e) {
      throw ScaleError("line " + std::to_string(line->number) + ": " + e.what());
    }
    if (!state_atoms)
      for (const auto& a : f.atoms())
        if (!inst.vocabulary.contains(a)) inst.vocabulary.add(a, AtomKind::State);
    if (sec == Section::Kb)
      detail::add_entry(inst.kb, {f, w}, inst.warnings, line->number);
    else
      detail::add_entry(inst.goals, {f, w}, inst.warnings, line->number);
  }

  std::vector<Decision> unique;
  for (auto& d : inst.decisions) {
    if (std::find(unique.begin(), unique.end(), d) != unique.end()) {
      inst.warnings.push_back("duplicate decision '" + d.to_string() + "' ignored");
      continue;
    }
    unique.push_back(std::move(d));
  }
  inst.decisions = std::move(unique);

  validate(inst);
  return inst;
}

inline Instance load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'", 0, 0);
  std::stringstream ss;
  ss << in.rdbuf();
  return load_instance(ss.str());
}

/// Writes an instance in the format read by load_instance; the output always
/// declares state atoms so that unused atoms survive a round trip.
inline std::string format_instance(const Instance& inst) {
  auto join = [](const std::vector<std::string>& names) {
    std::string out;
    for (std::size_t i = 0; i < names.size(); ++i) out += (i ? ", " : "") + names[i];
    return out;
  };
  std::string out;
  out += "state_atoms: " + join(inst.vocabulary.names(AtomKind::State)) + "\n";
  out += "decision_atoms: " + join(inst.vocabulary.names(AtomKind::Decision)) + "\n";
  out += "kb:\n";
  for (const auto& e : inst.kb) out += e.formula.to_string() + " : " + e.weight.to_string() + "\n";
  out += "goals:\n";
  for (const auto& e : inst.goals) out += e.formula.to_string() + " : " + e.weight.to_string() + "\n";
  out += "decisions:\n";
  for (const auto& d : inst.decisions) out += d.to_string() + "\n";
  return out;
}

}  // namespace posdec
