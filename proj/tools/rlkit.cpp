// Command-line front end: proof checking, bounded proving, evaluation,
// countermodel search, rendering, saturation, and the embedded selftest.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "rl2/rl2.hpp"
#include "rl2/selftest.hpp"

namespace {

using namespace rl2;

struct CliError : std::runtime_error {
  std::string kind;
  CliError(std::string k, const std::string& detail)
      : std::runtime_error(detail), kind(std::move(k)) {}
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError("io", "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Arguments may be literal text or @path file references; bare paths that
// exist are read as files too.
std::string resolve_input(const std::string& arg) {
  if (!arg.empty() && arg[0] == '@') return read_file(arg.substr(1));
  std::error_code ec;
  if (std::filesystem::exists(arg, ec) && std::filesystem::is_regular_file(arg, ec))
    return read_file(arg);
  return arg;
}

template <class T>
T parse_or_throw(ParseResult<T> r, const std::string& what) {
  if (auto* e = std::get_if<ParseError>(&r)) throw CliError("parse", what + ": " + e->message());
  return std::get<T>(std::move(r));
}

System system_of(const std::string& name) {
  if (name == "rl") return System::RL;
  if (name == "rl2") return System::RL2;
  throw CliError("usage", "unknown system '" + name + "' (use rl or rl2)");
}

std::vector<Sequent> load_assumptions(const std::string& path) {
  std::vector<Sequent> out;
  std::istringstream in(read_file(path));
  std::string line;
  while (std::getline(in, line)) {
    size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    out.push_back(parse_or_throw(parse_sequent(line), "assumption"));
  }
  return out;
}

SearchConfig load_config(const std::string& path) {
  SearchConfig cfg;
  if (path.empty()) return cfg;
  std::istringstream in(read_file(path));
  std::string line;
  while (std::getline(in, line)) {
    size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw CliError("config", "expected key = value: " + line);
    auto trim = [](std::string s) {
      size_t b = s.find_first_not_of(" \t\r");
      size_t e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    try {
      if (key == "max_depth") cfg.max_depth = std::stoi(value);
      else if (key == "max_contractions_per_formula")
        cfg.max_contractions_per_formula = std::stoi(value);
      else if (key == "instantiation_pool_extra") cfg.instantiation_pool_extra = std::stoi(value);
      else if (key == "time_budget_ms") cfg.time_budget_ms = std::stol(value);
      else throw CliError("config", "unknown key " + key);
    } catch (const std::invalid_argument&) {
      throw CliError("config", "bad value for " + key);
    }
  }
  return cfg;
}

FamilyMode family_mode_of(const std::string& name, unsigned& seed, int& count) {
  if (name == "default") return FamilyMode::Default;
  if (name == "full-powerset") return FamilyMode::FullPowerset;
  if (name == "all-subfamilies") return FamilyMode::AllSubfamilies;
  if (name.rfind("sampled", 0) == 0) {
    // sampled or sampled:SEED:COUNT
    if (name.size() > 7) {
      auto rest = name.substr(8);
      auto colon = rest.find(':');
      try {
        seed = (unsigned)std::stoul(rest.substr(0, colon));
        if (colon != std::string::npos) count = std::stoi(rest.substr(colon + 1));
      } catch (const std::exception&) {
        throw CliError("usage", "expected sampled:SEED[:COUNT]");
      }
    }
    return FamilyMode::Sampled;
  }
  throw CliError("usage", "unknown families mode '" + name + "'");
}

bool want_color() {
  return std::getenv("NO_COLOR") == nullptr && isatty(fileno(stdout));
}

int cmd_check(const std::string& proof_arg, const std::string& system, bool no_cut,
              bool cut_from_assumptions, bool strict_eigen, const std::string& assumptions_path,
              bool json) {
  auto d = parse_or_throw(parse_derivation(resolve_input(proof_arg)), "proof");
  CheckOptions opts;
  opts.system = system_of(system);
  opts.cut_mode = no_cut               ? CutMode::Forbid
                  : cut_from_assumptions ? CutMode::AssumptionsOnly
                                         : CutMode::Allow;
  opts.strict_eigen = strict_eigen;
  if (!assumptions_path.empty()) opts.assumptions = load_assumptions(assumptions_path);
  CheckReport report = check(d, opts);
  if (json) std::cout << report_to_json(report).dump(2) << "\n";
  else std::cout << report_to_text(report);
  return report.accepted ? 0 : 1;
}

int cmd_prove(const std::string& goal_arg, const std::string& system, SearchConfig cfg,
              bool json) {
  Sequent goal = parse_or_throw(parse_sequent(resolve_input(goal_arg)), "sequent");
  auto result = prove(goal, system_of(system), cfg);
  if (auto* d = std::get_if<DerivationPtr>(&result)) {
    if (json) {
      nlohmann::json j = nlohmann::json::parse(print_derivation(*d));
      j["result"] = "proved";
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << print_derivation(*d);
    }
    return 0;
  }
  if (auto* e = std::get_if<Exhausted>(&result)) {
    if (json) {
      nlohmann::json frontier = nlohmann::json::array();
      for (auto& s : e->frontier) frontier.push_back(print_sequent(s));
      std::cout << nlohmann::json{{"result", "exhausted"}, {"frontier", frontier}}.dump(2)
                << "\n";
    } else {
      std::cout << "exhausted\n";
      for (auto& s : e->frontier) std::cout << "open: " << print_sequent(s) << "\n";
    }
    return 1;
  }
  throw CliError("resource-limit", std::get<SearchLimit>(result).detail);
}

int cmd_eval(const std::string& formula_arg, const std::string& model_path, bool full,
             bool json) {
  auto doc = parse_or_throw(parse_model(read_file(model_path)), "model");
  FormulaPtr f = parse_or_throw(parse_formula(resolve_input(formula_arg)), "formula");
  bool value;
  try {
    value = full ? eval_full(doc.gm, doc.v, f) : eval(doc.gm, doc.v, f);
  } catch (const EvalError& e) {
    const char* kind = e.kind == EvalError::Kind::UninterpretedSymbol ? "uninterpreted-symbol"
                       : e.kind == EvalError::Kind::ArityMismatch    ? "arity-mismatch"
                                                                     : "resource-limit";
    throw CliError(kind, e.what());
  }
  if (json) std::cout << nlohmann::json{{"value", value}}.dump() << "\n";
  else std::cout << (value ? "true" : "false") << "\n";
  return value ? 0 : 1;
}

int cmd_countermodel(const std::string& goal_arg, SearchBounds bounds, bool json) {
  Sequent goal = parse_or_throw(parse_sequent(resolve_input(goal_arg)), "sequent");
  CountermodelResult result = [&] {
    try {
      return find_countermodel(goal, bounds);
    } catch (const EvalError& e) {
      throw CliError("resource-limit", e.what());
    }
  }();
  if (auto* doc = std::get_if<ModelDocument>(&result)) {
    if (json)
      std::cout << nlohmann::json{{"result", "countermodel"}, {"model", print_model(*doc)}}.dump(2)
                << "\n";
    else std::cout << print_model(*doc);
    return 0;
  }
  if (json) std::cout << nlohmann::json{{"result", "none"}}.dump() << "\n";
  else std::cout << "none within bounds\n";
  return 1;
}

int cmd_render(const std::string& proof_arg, const std::string& format, bool json) {
  auto d = parse_or_throw(parse_derivation(resolve_input(proof_arg)), "proof");
  std::string out;
  if (format == "ascii") out = render_ascii(d);
  else if (format == "latex") out = render_latex(d);
  else throw CliError("usage", "unknown format '" + format + "'");
  if (json) std::cout << nlohmann::json{{"format", format}, {"output", out}}.dump(2) << "\n";
  else std::cout << out;
  return 0;
}

int cmd_saturate(const std::string& arg, int budget, bool consistency_guided, bool json) {
  auto es = parse_or_throw(parse_extended_sequent(resolve_input(arg)), "extended sequent");
  auto result = saturate(es, budget,
                         consistency_guided ? SaturatePolicy::ConsistencyGuided
                                            : SaturatePolicy::FirstDisjunct);
  if (json) {
    nlohmann::json remaining = nlohmann::json::array();
    for (auto& v : result.remaining)
      remaining.push_back({{"clause", v.clause}, {"detail", v.detail}});
    std::cout << nlohmann::json{{"result", print_extended(result.result)},
                                {"budget_exhausted", result.budget_exhausted},
                                {"remaining", remaining}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << print_extended(result.result) << "\n";
    if (result.budget_exhausted) std::cout << "budget exhausted\n";
    for (auto& v : result.remaining)
      std::cout << "violation: clause " << v.clause << ": " << v.detail << "\n";
  }
  return result.remaining.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Proof toolkit for Russellian definite descriptions in first- and "
               "second-order (Henkin) logic"};
  app.require_subcommand(1);

  std::string system = "rl2", proof_arg, goal_arg, formula_arg, model_path, assumptions_path;
  std::string format = "ascii", families = "default", config_path, extseq_arg;
  bool no_cut = false, cut_from_assumptions = false, strict_eigen = false, full = false;
  bool json = false, consistency_guided = false;
  int depth = 0, pool = -1, contractions = -1, budget = 16;
  long time_ms = -1;
  SearchBounds bounds;

  auto* check_cmd = app.add_subcommand("check", "check a proof document");
  check_cmd->add_option("proof", proof_arg, "proof file (or @file, or inline)")->required();
  check_cmd->add_option("--system", system, "rl or rl2");
  check_cmd->add_flag("--no-cut", no_cut, "reject every cut");
  check_cmd->add_flag("--cut-from-assumptions", cut_from_assumptions,
                      "allow cuts only on assumption formulas");
  check_cmd->add_flag("--strict-eigen", strict_eigen, "eigen symbols fresh across the whole tree");
  check_cmd->add_option("--assumptions", assumptions_path, "file of assumption sequents");
  check_cmd->add_flag("--json", json);

  auto* prove_cmd = app.add_subcommand("prove", "bounded cut-free proof search");
  prove_cmd->add_option("sequent", goal_arg, "goal sequent (or @file)")->required();
  prove_cmd->add_option("--system", system, "rl or rl2");
  prove_cmd->add_option("--depth", depth, "iterative deepening bound");
  prove_cmd->add_option("--pool", pool, "extra fresh witness symbols");
  prove_cmd->add_option("--contractions", contractions, "per-formula contraction budget");
  prove_cmd->add_option("--time-ms", time_ms, "time budget in milliseconds");
  prove_cmd->add_option("--config", config_path, "key = value defaults file");
  prove_cmd->add_flag("--json", json);

  auto* eval_cmd = app.add_subcommand("eval", "evaluate a formula in a model");
  eval_cmd->add_option("formula", formula_arg, "formula (or @file)")->required();
  eval_cmd->add_option("--model", model_path, "model description file")->required();
  eval_cmd->add_flag("--full", full, "full powerset semantics");
  eval_cmd->add_flag("--json", json);

  auto* counter_cmd = app.add_subcommand("countermodel", "search finite general models");
  counter_cmd->add_option("sequent", goal_arg, "goal sequent (or @file)")->required();
  counter_cmd->add_option("--max-domain", bounds.max_domain, "largest domain size");
  counter_cmd->add_option("--max-arity", bounds.max_arity, "largest relation arity");
  counter_cmd->add_option("--families", families,
                          "default | full-powerset | all-subfamilies | sampled:SEED[:COUNT]");
  counter_cmd->add_option("--max-candidates", bounds.max_candidates, "candidate ceiling");
  counter_cmd->add_flag("--json", json);

  auto* render_cmd = app.add_subcommand("render", "render a proof tree");
  render_cmd->add_option("proof", proof_arg, "proof file (or @file, or inline)")->required();
  render_cmd->add_option("--format", format, "ascii or latex");
  render_cmd->add_flag("--json", json);

  auto* saturate_cmd = app.add_subcommand("saturate", "extend a sequent to witness saturation");
  saturate_cmd->add_option("extseq", extseq_arg, "extended sequent file (or @file, or inline)")
      ->required();
  saturate_cmd->add_option("--budget", budget, "fresh constant budget");
  saturate_cmd->add_flag("--consistency-guided", consistency_guided,
                         "screen disjunct choices with a bounded prover");
  saturate_cmd->add_flag("--json", json);

  auto* selftest_cmd = app.add_subcommand("selftest", "run the embedded fixture corpus");
  selftest_cmd->add_flag("--json", json);

  CLI11_PARSE(app, argc, argv);

  try {
    if (check_cmd->parsed())
      return cmd_check(proof_arg, system, no_cut, cut_from_assumptions, strict_eigen,
                       assumptions_path, json);
    if (prove_cmd->parsed()) {
      SearchConfig cfg = load_config(config_path);
      if (depth > 0) cfg.max_depth = depth;
      if (pool >= 0) cfg.instantiation_pool_extra = pool;
      if (contractions >= 0) cfg.max_contractions_per_formula = contractions;
      if (time_ms >= 0) cfg.time_budget_ms = time_ms;
      return cmd_prove(goal_arg, system, cfg, json);
    }
    if (eval_cmd->parsed()) return cmd_eval(formula_arg, model_path, full, json);
    if (counter_cmd->parsed()) {
      bounds.mode = family_mode_of(families, bounds.sample_seed, bounds.sample_count);
      return cmd_countermodel(goal_arg, bounds, json);
    }
    if (render_cmd->parsed()) return cmd_render(proof_arg, format, json);
    if (saturate_cmd->parsed()) return cmd_saturate(extseq_arg, budget, consistency_guided, json);
    if (selftest_cmd->parsed()) {
      auto result = rl2::run_selftest(std::cout, want_color());
      return result.failed == 0 ? 0 : 1;
    }
  } catch (const CliError& e) {
    std::cerr << "error: " << e.kind << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
