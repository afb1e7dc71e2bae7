#include "subint/proof.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace subint {
namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

Formula parse_at(std::string_view text, int line) {
  try {
    return parse(text);
  } catch (const std::exception& e) {
    throw ScriptError(std::string("bad formula '") + std::string(text) + "': " + e.what(), line);
  }
}

Assignment parse_bindings(std::string_view body, int line) {
  Assignment a;
  std::string item;
  std::stringstream ss{std::string(body)};
  while (std::getline(ss, item, ',')) {
    std::string t = trim(item);
    if (t.empty()) continue;
    auto eq = t.find('=');
    if (eq == std::string::npos) throw ScriptError("binding without '=': " + t, line);
    std::string key = trim(std::string_view(t).substr(0, eq));
    Formula value = parse_at(trim(std::string_view(t).substr(eq + 1)), line);
    if (key == "..")
      a.telescope_args.push_back(value);
    else if (!a.bindings.emplace(key, value).second)
      throw ScriptError("metavariable " + key + " bound twice", line);
  }
  return a;
}

// Splits "name rest [bindings]" into name, rest and the optional bindings.
void split_justification(const std::string& text, std::string& name, std::string& rest,
                         std::optional<Assignment>& bindings, int line) {
  std::string t = text;
  auto lb = t.find('[');
  if (lb != std::string::npos) {
    auto rb = t.rfind(']');
    if (rb == std::string::npos || rb < lb) throw ScriptError("unterminated binding list", line);
    bindings = parse_bindings(std::string_view(t).substr(lb + 1, rb - lb - 1), line);
    if (!trim(std::string_view(t).substr(rb + 1)).empty())
      throw ScriptError("text after binding list", line);
    t = t.substr(0, lb);
  }
  t = trim(t);
  auto sp = t.find_first_of(" \t");
  name = t.substr(0, sp);
  rest = sp == std::string::npos ? "" : trim(std::string_view(t).substr(sp));
}

std::vector<int> parse_indices(const std::string& s, int line) {
  std::vector<int> out;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) return;
    try {
      out.push_back(std::stoi(cur));
    } catch (...) {
      throw ScriptError("bad premise index '" + cur + "'", line);
    }
    cur.clear();
  };
  for (char c : s) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c)))
      flush();
    else if (std::isdigit(static_cast<unsigned char>(c)))
      cur += c;
    else
      throw ScriptError(std::string("unexpected character '") + c + "' in premise list", line);
  }
  flush();
  return out;
}

std::string format_assignment(const Assignment& a) {
  std::string out;
  for (auto& [k, v] : a.bindings) out += (out.empty() ? "" : ", ") + k + "=" + print(v);
  for (auto& t : a.telescope_args) out += (out.empty() ? "" : ", ") + std::string("..=") + print(t);
  return "[" + out + "]";
}

bool agrees(const MetaTable& table, bool telescoped, const Binding& b, const Assignment& given) {
  for (auto& [name, value] : given.bindings) {
    int i = table.index_of(name);
    if (i < 0 || b.slot[i] != value) return false;
  }
  if (telescoped) return b.tele == given.telescope_args;
  return given.telescope_args.empty();
}

struct RuleMatcher {
  const RuleSpec& rule;
  const std::vector<Formula>& premises;
  Formula conclusion;
  const std::optional<Assignment>& given;
  bool telescoped;
  Binding b;
  std::optional<Binding> result;

  void step(std::size_t k) {
    if (result) return;
    if (k == premises.size()) {
      auto done = [&] {
        if (!result && (!given || agrees(rule.table(), telescoped, b, *given))) result = b;
      };
      schema_ops::match(rule.conclusion.root(), conclusion, b, Continuation(done));
      return;
    }
    auto next = [&, k] { step(k + 1); };
    schema_ops::match(rule.premises[k].root(), premises[k], b, Continuation(next));
  }
};

Verdict reject(int line, std::string reason) {
  Verdict v;
  v.status = Verdict::Status::Rejected;
  v.line = line;
  v.reason = std::move(reason);
  return v;
}

}  // namespace

std::optional<Binding> match_rule(const RuleSpec& rule, const std::vector<Formula>& premises,
                                  Formula conclusion, const std::optional<Assignment>& given) {
  if (premises.size() != rule.premises.size()) return std::nullopt;
  bool tele = rule.conclusion.telescoped();
  for (auto& p : rule.premises) tele = tele || p.telescoped();
  RuleMatcher m{rule, premises, conclusion, given, tele, {}, {}};
  m.step(0);
  return m.result;
}

std::optional<Binding> match_axiom(const AxiomSpec& axiom, Formula f, const std::optional<Assignment>& given) {
  std::optional<Binding> result;
  Binding b;
  auto done = [&] {
    if (!result && (!given || agrees(axiom.schema.table(), axiom.schema.telescoped(), b, *given))) result = b;
  };
  schema_ops::match(axiom.schema.root(), f, b, Continuation(done));
  return result;
}

ProofScript parse_script(std::string_view text) {
  ProofScript s;
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  bool have_logic = false;
  while (std::getline(in, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    auto header = [&](const char* key) -> std::optional<std::string> {
      std::string k = std::string(key) + ":";
      if (line.rfind(k, 0) == 0) return trim(std::string_view(line).substr(k.size()));
      return std::nullopt;
    };
    if (auto v = header("logic")) {
      s.logic = *v;
      have_logic = true;
      continue;
    }
    if (auto v = header("assume")) {
      s.assumptions.push_back(parse_at(*v, lineno));
      continue;
    }
    if (auto v = header("hypothesis")) {
      s.hypotheses.push_back(parse_at(*v, lineno));
      continue;
    }
    if (auto v = header("option")) {
      if (*v == "schematic-P")
        s.options.schematic_p = true;
      else if (*v == "f-mp-unrestricted")
        s.options.f_mp_unrestricted = true;
      else
        throw ScriptError("unknown option '" + *v + "'", lineno);
      continue;
    }
    auto dot = line.find('.');
    auto semi = line.find(';');
    if (dot == std::string::npos || semi == std::string::npos || semi < dot)
      throw ScriptError("expected '<n>. <formula> ; <justification>'", lineno);
    ProofLine pl;
    try {
      std::size_t used = 0;
      pl.index = std::stoi(line.substr(0, dot), &used);
      if (trim(line.substr(0, dot)).size() != used) throw std::invalid_argument("index");
    } catch (...) {
      throw ScriptError("bad step number", lineno);
    }
    pl.formula = parse_at(trim(std::string_view(line).substr(dot + 1, semi - dot - 1)), lineno);
    std::string kind, rest;
    std::optional<Assignment> bindings;
    split_justification(trim(std::string_view(line).substr(semi + 1)), kind, rest, bindings, lineno);
    if (kind == "assume" || kind == "hypothesis") {
      if (!rest.empty() || bindings) throw ScriptError(kind + " takes no arguments", lineno);
      pl.just.kind = kind == "assume" ? Justification::Kind::Assumption : Justification::Kind::Hypothesis;
    } else if (kind == "axiom" || kind == "rule") {
      std::string name, idx;
      std::optional<Assignment> dummy;
      split_justification(rest, name, idx, dummy, lineno);
      if (name.empty()) throw ScriptError(kind + " needs a name", lineno);
      pl.just.name = name;
      pl.just.assignment = bindings;
      if (kind == "axiom") {
        if (!idx.empty()) throw ScriptError("axiom takes no premises", lineno);
        pl.just.kind = Justification::Kind::Axiom;
      } else {
        pl.just.kind = Justification::Kind::Rule;
        pl.just.premises = parse_indices(idx, lineno);
      }
    } else {
      throw ScriptError("unknown justification '" + kind + "'", lineno);
    }
    s.lines.push_back(std::move(pl));
  }
  if (!have_logic) throw ScriptError("missing 'logic:' header", lineno);
  return s;
}

ProofScript load_script(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_script(ss.str());
}

std::string format_script(const ProofScript& s) {
  std::string out = "logic: " + s.logic + "\n";
  if (s.options.schematic_p) out += "option: schematic-P\n";
  if (s.options.f_mp_unrestricted) out += "option: f-mp-unrestricted\n";
  for (Formula a : s.assumptions) out += "assume: " + print(a) + "\n";
  for (Formula h : s.hypotheses) out += "hypothesis: " + print(h) + "\n";
  for (auto& l : s.lines) {
    out += std::to_string(l.index) + ". " + print(l.formula) + " ; ";
    switch (l.just.kind) {
      case Justification::Kind::Assumption:
        out += "assume";
        break;
      case Justification::Kind::Hypothesis:
        out += "hypothesis";
        break;
      case Justification::Kind::Axiom:
        out += "axiom " + l.just.name;
        break;
      case Justification::Kind::Rule: {
        out += "rule " + l.just.name + " ";
        for (std::size_t i = 0; i < l.just.premises.size(); ++i)
          out += (i ? "," : "") + std::to_string(l.just.premises[i]);
        break;
      }
    }
    if (l.just.assignment) out += " " + format_assignment(*l.just.assignment);
    out += "\n";
  }
  return out;
}

Verdict check_proof(const ProofScript& script) {
  return check_proof(script, get_logic(script.logic, script.options));
}

Verdict check_proof(const ProofScript& script, const LogicSpec& logic) {
  if (script.lines.empty()) return reject(0, "empty proof");
  std::map<int, std::size_t> position;  // step number -> line position
  std::vector<bool> free_of_assumptions;
  for (std::size_t pos = 0; pos < script.lines.size(); ++pos) {
    const ProofLine& l = script.lines[pos];
    if (!position.empty() && l.index <= position.rbegin()->first)
      return reject(l.index, "step numbers must increase");
    if (!in_fragment(l.formula, logic.fragment))
      return reject(l.index, "formula lies outside the " + std::string(fragment_name(logic.fragment)) +
                                 " fragment of " + logic.name);
    bool af = true;
    switch (l.just.kind) {
      case Justification::Kind::Assumption: {
        bool listed = false;
        for (Formula a : script.assumptions) listed = listed || a == l.formula;
        if (!listed) return reject(l.index, "not a listed assumption");
        af = false;
        break;
      }
      case Justification::Kind::Hypothesis: {
        bool listed = false;
        for (Formula h : script.hypotheses) listed = listed || h == l.formula;
        if (!listed) return reject(l.index, "not a listed hypothesis");
        break;
      }
      case Justification::Kind::Axiom: {
        const AxiomSpec* ax = logic.find_axiom(l.just.name);
        if (!ax) return reject(l.index, "unknown axiom '" + l.just.name + "' in " + logic.name);
        if (!match_axiom(*ax, l.formula, l.just.assignment))
          return reject(l.index, "not an instance of axiom " + l.just.name +
                                     (l.just.assignment ? " under the given bindings" : ""));
        break;
      }
      case Justification::Kind::Rule: {
        const RuleSpec* rule = logic.find_rule(l.just.name);
        if (!rule) return reject(l.index, "unknown rule '" + l.just.name + "' in " + logic.name);
        if (l.just.premises.size() != rule->premises.size())
          return reject(l.index, "rule " + rule->name + " takes " + std::to_string(rule->premises.size()) +
                                     " premises");
        std::vector<Formula> prem;
        std::vector<bool> prem_af;
        for (int n : l.just.premises) {
          auto it = position.find(n);
          if (it == position.end()) return reject(l.index, "premise " + std::to_string(n) + " is not an earlier step");
          prem.push_back(script.lines[it->second].formula);
          prem_af.push_back(free_of_assumptions[it->second]);
        }
        if (!match_rule(*rule, prem, l.formula, l.just.assignment))
          return reject(l.index, "premises and conclusion do not fit rule " + rule->name +
                                     (l.just.assignment ? " under the given bindings" : ""));
        for (std::size_t i = 0; i < prem.size(); ++i) {
          bool needs_af = rule->mode == RuleMode::TheoremOnly ||
                          (rule->mode == RuleMode::WeakMajor && static_cast<int>(i) == rule->major);
          if (needs_af && !prem_af[i])
            return reject(l.index, std::string(mode_name(rule->mode)) + " violation: rule " + rule->name +
                                       " needs premise line " + std::to_string(l.just.premises[i]) +
                                       " to be free of assumptions");
          af = af && prem_af[i];
        }
        break;
      }
    }
    position.emplace(l.index, pos);
    free_of_assumptions.push_back(af);
  }
  Verdict v;
  v.status = Verdict::Status::Accepted;
  v.conclusion = script.conclusion();
  return v;
}

}  // namespace subint
