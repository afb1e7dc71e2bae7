#include "subint/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "subint/kripke.hpp"
#include "subint/nbhd.hpp"
#include "subint/proof.hpp"
#include "subint/registry.hpp"
#include "subint/saturate.hpp"
#include "subint/search.hpp"

#ifndef SUBINT_FIXTURES_DIR
#define SUBINT_FIXTURES_DIR "fixtures/v1"
#endif

namespace subint {

using nlohmann::json;
namespace fs = std::filesystem;

std::string fixtures_dir() { return SUBINT_FIXTURES_DIR; }

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// A path as given, else relative to the fixture directory or its proofs/ and
// models/ subdirectories.
std::string resolve(const std::string& path) {
  if (fs::exists(path)) return path;
  for (const char* sub : {"", "proofs", "models"}) {
    fs::path p = fs::path(fixtures_dir()) / sub / path;
    if (fs::exists(p)) return p.string();
  }
  return path;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

struct AnyModel {
  std::optional<KripkeModel> kripke;
  std::optional<NbhdModel> nbhd;
};

AnyModel load_model(const std::string& path) {
  std::string text = read_file(resolve(path));
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ModelError(path + ": invalid JSON: " + e.what());
  }
  std::string sem = j.is_object() ? j.value("semantics", "") : "";
  AnyModel m;
  if (sem == "kripke")
    m.kripke = parse_kripke_model(text);
  else if (sem == "nbhd")
    m.nbhd = parse_nbhd_model(text);
  else
    throw ModelError(path + ": \"semantics\" must be \"kripke\" or \"nbhd\"");
  return m;
}

json budget_json(const Budget& b) {
  return {{"max_size", b.max_size}, {"max_rounds", b.max_rounds}, {"term_size", b.term_size}, {"atoms", b.atoms}};
}

struct Options {
  bool as_json = false;
  bool schematic_p = false;
  bool f_mp_unrestricted = false;
  RegistryOptions registry() const { return {schematic_p, f_mp_unrestricted}; }
};

class Cli {
 public:
  Cli(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}
  int main(const std::vector<std::string>& args);

 private:
  std::ostream& out_;
  std::ostream& err_;
  Options opt_;
  int code_ = 0;

  void emit(const json& j) { out_ << j.dump(2) << "\n"; }
  static json tagged(const char* command, const std::string& report) {
    json j = json::parse(report);
    j["command"] = command;
    return j;
  }

  // command state
  std::string formula_, logic_, file_, world_, model_, semantics_, props_, atoms_, axiom_, property_, weaker_,
      stronger_, fragment_, preset_;
  std::vector<std::string> assume_;
  int size_ = 5, rounds_ = 6, term_size_ = 2, max_worlds_ = 3, min_worlds_ = 1, samples_ = 200, max_atoms_ = 3;
  std::uint64_t seed_ = 1;

  void cmd_parse();
  void cmd_logics();
  void cmd_prove();
  void cmd_check();
  void cmd_eval();
  void cmd_valid();
  void cmd_frame_props();
  void cmd_countermodel();
  void cmd_correspond();
  void cmd_separate();
  void cmd_fixtures();
};

void Cli::cmd_parse() {
  Fragment fr = fragment_.empty() ? Fragment::Full : parse_fragment(fragment_);
  Formula f = parse(formula_, fr);
  if (opt_.as_json) {
    emit({{"command", "parse"},
          {"formula", print(f)},
          {"size", f.size()},
          {"fragment", fragment_name(fragment_of(f))},
          {"atoms", atoms_of(f)}});
  } else {
    out_ << print(f) << "\n";
  }
}

void Cli::cmd_logics() {
  auto all = list_logics();
  if (opt_.as_json) {
    json arr = json::array();
    for (auto& l : all)
      arr.push_back({{"name", l.name},
                     {"fragment", fragment_name(l.fragment)},
                     {"semantics", l.semantics.describe()},
                     {"aliases", l.aliases},
                     {"description", l.description}});
    emit({{"command", "logics"}, {"logics", arr}});
    return;
  }
  for (auto& l : all) {
    out_ << l.name << "  [" << fragment_name(l.fragment) << "]  " << l.semantics.describe();
    if (!l.aliases.empty()) {
      out_ << "  aliases:";
      for (auto& a : l.aliases) out_ << " " << a;
    }
    out_ << "\n";
  }
}

void Cli::cmd_prove() {
  LogicSpec logic = get_logic(logic_, opt_.registry());
  Formula goal = parse(formula_, logic.fragment);
  std::vector<Formula> gamma;
  for (auto& a : assume_) gamma.push_back(parse(a, logic.fragment));
  Budget b;
  b.max_size = size_;
  b.max_rounds = rounds_;
  b.term_size = term_size_;
  b.atoms = split_list(atoms_);
  DeriveResult r = derives(logic, gamma, goal, b);
  code_ = r.proved() ? 0 : 1;
  if (opt_.as_json) {
    emit({{"command", "prove"},
          {"logic", logic.name},
          {"formula", print(goal)},
          {"assumptions", assume_},
          {"status", r.proved() ? "proved" : "not_within_budget"},
          {"budget", budget_json(b)},
          {"script", r.proved() ? json(format_script(*r.script)) : json(nullptr)}});
    return;
  }
  if (r.proved())
    out_ << format_script(*r.script);
  else
    out_ << "not derivable within budget (" << b.describe() << ")\n";
}

void Cli::cmd_check() {
  std::string path = resolve(file_);
  ProofScript s;
  try {
    s = parse_script(read_file(path));
  } catch (const ScriptError& e) {
    throw UsageError(path + ":" + std::to_string(e.line()) + ": " + e.what());
  }
  if (!logic_.empty()) s.logic = logic_;
  if (opt_.schematic_p) s.options.schematic_p = true;
  if (opt_.f_mp_unrestricted) s.options.f_mp_unrestricted = true;
  Verdict v = check_proof(s);
  code_ = v.accepted() ? 0 : 1;
  if (opt_.as_json) {
    emit({{"command", "check-proof"},
          {"file", path},
          {"logic", s.logic},
          {"status", v.accepted() ? "accepted" : "rejected"},
          {"line", v.line},
          {"reason", v.reason},
          {"conclusion", v.conclusion ? json(print(v.conclusion)) : json(nullptr)}});
    return;
  }
  if (v.accepted())
    out_ << "Accepted\n";
  else
    out_ << "Rejected at step " << v.line << ": " << v.reason << "\n";
}

void Cli::cmd_eval() {
  AnyModel m = load_model(model_);
  Formula f = parse(formula_);
  bool value = m.kripke ? forces(*m.kripke, world_, f) : truth(*m.nbhd, world_, f);
  code_ = value ? 0 : 1;
  if (opt_.as_json)
    emit({{"command", "eval"}, {"world", world_}, {"formula", print(f)}, {"value", value}});
  else
    out_ << (value ? "true" : "false") << "\n";
}

void Cli::cmd_valid() {
  AnyModel m = load_model(model_);
  Formula f = parse(formula_);
  std::vector<Formula> gamma;
  for (auto& a : assume_) gamma.push_back(parse(a));
  std::vector<std::string> failing;
  const std::vector<std::string>& names = m.kripke ? m.kripke->frame.worlds : m.nbhd->frame.worlds;
  for (int w = 0; w < static_cast<int>(names.size()); ++w) {
    bool premises = true;
    for (Formula g : gamma) premises = premises && (m.kripke ? forces(*m.kripke, w, g) : truth(*m.nbhd, w, g));
    bool holds = m.kripke ? forces(*m.kripke, w, f) : truth(*m.nbhd, w, f);
    if (premises && !holds) failing.push_back(names[w]);
  }
  code_ = failing.empty() ? 0 : 1;
  if (opt_.as_json) {
    emit({{"command", "valid"},
          {"formula", print(f)},
          {"assumptions", assume_},
          {"valid", failing.empty()},
          {"failing_worlds", failing}});
    return;
  }
  if (failing.empty()) {
    out_ << "valid\n";
  } else {
    out_ << "not valid; fails at";
    for (auto& w : failing) out_ << " " << w;
    out_ << "\n";
  }
}

void Cli::cmd_frame_props() {
  AnyModel m = load_model(model_);
  json props = json::object();
  std::vector<std::pair<std::string, bool>> rows;
  if (m.kripke)
    for (auto p : kAllKripkeProperties) rows.emplace_back(property_name(p), has_property(*m.kripke, p));
  else
    for (auto p : kAllNbhdProperties) rows.emplace_back(property_name(p), has_property(m.nbhd->frame, p));
  if (opt_.as_json) {
    for (auto& [k, v] : rows) props[k] = v;
    emit({{"command", "frame-props"}, {"semantics", m.kripke ? "kripke" : "nbhd"}, {"properties", props}});
    return;
  }
  for (auto& [k, v] : rows) out_ << k << ": " << (v ? "yes" : "no") << "\n";
}

SemanticsClass parse_class(const std::string& sem, const std::string& props) {
  SemanticsClass cls;
  if (sem == "k" || sem == "kripke")
    cls.kind = SemanticsKind::Kripke;
  else if (sem == "n" || sem == "nbhd")
    cls.kind = SemanticsKind::Nbhd;
  else
    throw UsageError("--semantics must be k or n");
  for (auto& p : split_list(props)) {
    if (cls.kind == SemanticsKind::Kripke)
      cls.kripke.insert(parse_kripke_property(p));
    else
      cls.nbhd.insert(parse_nbhd_property(p));
  }
  return cls;
}

void Cli::cmd_countermodel() {
  SemanticsClass cls = parse_class(semantics_, props_);
  Formula f = parse(formula_);
  SearchBudget b;
  b.max_worlds = max_worlds_;
  b.sample_count = samples_;
  b.seed = seed_;
  CountermodelSearch r = search_countermodel(cls, f, b);
  code_ = r.found ? 1 : 0;
  if (opt_.as_json) {
    emit({{"command", "countermodel"},
          {"formula", print(f)},
          {"class", cls.describe()},
          {"seed", seed_},
          {"found", bool(r.found)},
          {"world", r.found ? json(r.found->world_name()) : json(nullptr)},
          {"model", r.found ? json::parse(r.found->to_json()) : json(nullptr)},
          {"exhaustive_up_to", r.exhaustive_up_to},
          {"sampled_up_to", r.sampled_up_to},
          {"models_checked", r.models_checked}});
    return;
  }
  out_ << r.describe() << "\n";
  if (r.found) out_ << r.found->to_json() << "\n";
}

void Cli::cmd_correspond() {
  SemanticsKind kind = SemanticsKind::None;
  if (!semantics_.empty()) kind = parse_class(semantics_, "").kind;
  CorrespondenceReport r = correspondence_sweep(axiom_, property_, max_worlds_, min_worlds_, kind);
  code_ = r.mismatches.empty() ? 0 : 1;
  if (opt_.as_json)
    emit(tagged("correspond", r.to_json()));
  else
    out_ << r.table();
}

void Cli::cmd_separate() {
  std::optional<Fragment> frag;
  if (!preset_.empty()) {
    bool found = false;
    for (auto& p : conjecture_presets())
      if (p.name == preset_) {
        weaker_ = p.weaker;
        stronger_ = p.stronger;
        frag = p.fragment;
        found = true;
      }
    if (!found) throw UsageError("unknown preset '" + preset_ + "'");
  }
  if (weaker_.empty() || stronger_.empty()) throw UsageError("separate needs --weaker and --stronger, or --preset");
  if (!fragment_.empty()) frag = parse_fragment(fragment_);
  SearchBudget b;
  b.max_formula_size = size_;
  b.max_rounds = rounds_;
  b.max_worlds = max_worlds_;
  b.sample_count = samples_;
  b.seed = seed_;
  b.max_atoms = max_atoms_;
  b.term_size = term_size_;
  SeparationReport r =
      separate(get_logic(weaker_, opt_.registry()), get_logic(stronger_, opt_.registry()), b, frag);
  code_ = r.witness ? 0 : 1;
  if (opt_.as_json)
    emit(tagged("separate", r.to_json()));
  else
    out_ << r.table();
}

void Cli::cmd_fixtures() {
  std::vector<std::string> files;
  if (fs::exists(fixtures_dir()))
    for (auto& e : fs::recursive_directory_iterator(fixtures_dir()))
      if (e.is_regular_file()) files.push_back(fs::relative(e.path(), fixtures_dir()).string());
  std::sort(files.begin(), files.end());
  if (opt_.as_json) {
    emit({{"command", "fixtures"}, {"directory", fixtures_dir()}, {"files", files}});
    return;
  }
  out_ << fixtures_dir() << "\n";
  for (auto& f : files) out_ << "  " << f << "\n";
}

int Cli::main(const std::vector<std::string>& args) {
  CLI::App app{"Workbench for subintuitionistic logics"};
  app.fallthrough();
  app.require_subcommand(0, 1);
  bool show_fixtures = false;
  app.add_flag("--json", opt_.as_json, "JSON output");
  app.add_flag("--schematic-P", opt_.schematic_p, "let axiom P take any formula, not only letters");
  app.add_flag("--f-mp-unrestricted", opt_.f_mp_unrestricted, "read modus ponens of full F as unrestricted");
  app.add_flag("--fixtures", show_fixtures, "list the shipped proof and model fixtures");

  auto* parse_cmd = app.add_subcommand("parse", "parse and print a formula");
  parse_cmd->add_option("formula", formula_)->required();
  parse_cmd->add_option("--fragment", fragment_, "ImpOnly, ImpAnd or Full");

  auto* logics_cmd = app.add_subcommand("logics", "list the catalog");

  auto* prove_cmd = app.add_subcommand("prove", "bounded proof search");
  prove_cmd->add_option("--logic", logic_)->required();
  prove_cmd->add_option("--size", size_, "maximum connectives per formula");
  prove_cmd->add_option("--rounds", rounds_, "maximum rule rounds");
  prove_cmd->add_option("--term-size", term_size_, "connectives per term-universe formula");
  prove_cmd->add_option("--atoms", atoms_, "comma-separated atoms of the term universe");
  prove_cmd->add_option("--assume", assume_, "an assumption (repeatable)");
  prove_cmd->add_option("formula", formula_)->required();

  auto* check_cmd = app.add_subcommand("check-proof", "check a proof script");
  check_cmd->add_option("file", file_)->required();
  check_cmd->add_option("--logic", logic_, "override the script's logic");

  auto* eval_cmd = app.add_subcommand("eval", "truth at a world");
  eval_cmd->add_option("--model", model_)->required();
  eval_cmd->add_option("--world", world_)->required();
  eval_cmd->add_option("formula", formula_)->required();

  auto* valid_cmd = app.add_subcommand("valid", "validity on a model");
  valid_cmd->add_option("--model", model_)->required();
  valid_cmd->add_option("--assume", assume_, "a premise (repeatable)");
  valid_cmd->add_option("formula", formula_)->required();

  auto* props_cmd = app.add_subcommand("frame-props", "frame properties of a model");
  props_cmd->add_option("--model", model_)->required();

  auto* cm_cmd = app.add_subcommand("countermodel", "search for a falsifying model");
  cm_cmd->add_option("--semantics", semantics_, "k or n")->required();
  cm_cmd->add_option("--props", props_, "comma-separated required properties");
  cm_cmd->add_option("--max-worlds", max_worlds_);
  cm_cmd->add_option("--samples", samples_);
  cm_cmd->add_option("--seed", seed_);
  cm_cmd->add_option("formula", formula_)->required();

  auto* corr_cmd = app.add_subcommand("correspond", "frame correspondence sweep");
  corr_cmd->add_option("--axiom,--rule", axiom_)->required();
  corr_cmd->add_option("--property", property_)->required();
  corr_cmd->add_option("--worlds", max_worlds_, "largest frame size");
  corr_cmd->add_option("--min-worlds", min_worlds_, "smallest frame size");
  corr_cmd->add_option("--semantics", semantics_, "k or n (default from the scheme)");

  auto* sep_cmd = app.add_subcommand("separate", "search for a separating formula");
  sep_cmd->add_option("--weaker", weaker_);
  sep_cmd->add_option("--stronger", stronger_);
  sep_cmd->add_option("--preset", preset_, "a conjecture preset");
  sep_cmd->add_option("--max-size", size_);
  sep_cmd->add_option("--rounds", rounds_);
  sep_cmd->add_option("--atoms", max_atoms_, "number of atoms");
  sep_cmd->add_option("--term-size", term_size_);
  sep_cmd->add_option("--max-worlds", max_worlds_);
  sep_cmd->add_option("--samples", samples_);
  sep_cmd->add_option("--seed", seed_);
  sep_cmd->add_option("--fragment", fragment_);

  std::vector<std::string> argv_store{"subint"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out_ << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err_ << "error: " << e.what() << "\n";
    return 2;
  }
  // separate's default budget is smaller than prove's.
  if (sep_cmd->parsed()) {
    if (sep_cmd->count("--rounds") == 0) rounds_ = 4;
    if (sep_cmd->count("--term-size") == 0) term_size_ = 1;
  }

  try {
    if (parse_cmd->parsed()) cmd_parse();
    else if (logics_cmd->parsed()) cmd_logics();
    else if (prove_cmd->parsed()) cmd_prove();
    else if (check_cmd->parsed()) cmd_check();
    else if (eval_cmd->parsed()) cmd_eval();
    else if (valid_cmd->parsed()) cmd_valid();
    else if (props_cmd->parsed()) cmd_frame_props();
    else if (cm_cmd->parsed()) cmd_countermodel();
    else if (corr_cmd->parsed()) cmd_correspond();
    else if (sep_cmd->parsed()) cmd_separate();
    else if (show_fixtures) cmd_fixtures();
    else {
      out_ << app.help();
      return 2;
    }
  } catch (const ParseError& e) {
    err_ << "error: " << e.what() << "\n";
    return 2;
  } catch (const FragmentError& e) {
    err_ << "error: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    err_ << "error: " << e.what() << "\n";
    return 2;
  } catch (const ModelError& e) {
    err_ << "error: " << e.what() << "\n";
    return 2;
  } catch (const RegistryError& e) {
    err_ << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err_ << "error: " << e.what() << "\n";
    return 2;
  }
  return code_;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  return Cli(out, err).main(args);
}

}  // namespace subint
