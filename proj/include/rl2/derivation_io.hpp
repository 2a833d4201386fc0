#pragma once

#include <sstream>

#include "json.hpp"
#include "rl2/derivation.hpp"
#include "rl2/parser.hpp"

namespace rl2 {

// A proof document is a sequence of node records; premises refer to earlier
// ids, the last record is the root. Shared premise ids give DAG-shaped
// proofs; parsing shares the subtrees.
//
// JSON form:
//   {"format": "rlkit-proof", "version": 1,
//    "nodes": [{"id": "n1", "rule": "AX", "conclusion": "P(a) => P(a)",
//               "premises": [], "inst": {...}}, ...]}
//
// Text form:
//   node n1
//     rule AX
//     conclusion P(a) => P(a)
//   node n2
//     rule Cut
//     conclusion ...
//     premises n1 n1
//     cut X = X

namespace detail {

inline std::optional<SymbolName> symbol_from_spelling(const std::string& text) {
  auto split = Parser::split_ident(text);
  if (!split) return std::nullopt;
  auto kind = classify_base(split->first);
  if (!kind) return std::nullopt;
  return SymbolName{*kind, split->first, split->second, 0};
}

struct RawNode {
  std::string id;
  std::string rule;
  std::string conclusion;
  std::vector<std::string> premises;
  std::map<std::string, std::vector<std::string>> inst;  // key -> values
  std::optional<std::pair<std::string, std::string>> schema;  // formula text, var
  std::string cut_text;
};

inline ParseError doc_error(std::string what, std::string hint = "") {
  return ParseError{{0, 0, 1, 1}, {std::move(what)}, "document", std::move(hint)};
}

inline ParseResult<std::vector<RawNode>> read_json_nodes(const std::string& src) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(src);
  } catch (const nlohmann::json::parse_error& e) {
    return doc_error("valid JSON", e.what());
  }
  if (!doc.is_object() || !doc.contains("nodes") || !doc["nodes"].is_array())
    return doc_error("a proof document with a 'nodes' array");
  std::vector<RawNode> out;
  for (auto& n : doc["nodes"]) {
    RawNode raw;
    if (!n.contains("id") || !n.contains("rule") || !n.contains("conclusion"))
      return doc_error("node records with id, rule, and conclusion");
    raw.id = n["id"].get<std::string>();
    raw.rule = n["rule"].get<std::string>();
    raw.conclusion = n["conclusion"].get<std::string>();
    if (n.contains("premises"))
      for (auto& p : n["premises"]) raw.premises.push_back(p.get<std::string>());
    if (n.contains("inst")) {
      auto& inst = n["inst"];
      auto strings = [&](const char* key) {
        std::vector<std::string> vals;
        if (!inst.contains(key)) return vals;
        if (inst[key].is_string())
          vals.push_back(inst[key].get<std::string>());
        else
          for (auto& v : inst[key])
            vals.push_back(v.is_string() ? v.get<std::string>()
                                         : std::to_string(v.get<long>()));
        return vals;
      };
      for (const char* key : {"principal", "eigen", "witnesses", "cut-left-ant", "cut-left-suc"}) {
        auto vals = strings(key);
        if (!vals.empty()) raw.inst[key] = vals;
      }
      if (inst.contains("cut")) raw.cut_text = inst["cut"].get<std::string>();
      if (inst.contains("schema")) {
        auto& sc = inst["schema"];
        if (!sc.contains("formula") || !sc.contains("var"))
          return doc_error("schema entries with formula and var");
        raw.schema = {sc["formula"].get<std::string>(), sc["var"].get<std::string>()};
      }
    }
    out.push_back(std::move(raw));
  }
  return out;
}

inline ParseResult<std::vector<RawNode>> read_text_nodes(const std::string& src) {
  std::vector<RawNode> out;
  std::istringstream in(src);
  std::string line;
  RawNode* cur = nullptr;
  std::string schema_formula, schema_var;
  size_t lineno = 0;
  auto tokens_of = [](const std::string& s) {
    std::vector<std::string> toks;
    std::istringstream ts(s);
    std::string t;
    while (ts >> t) toks.push_back(t);
    return toks;
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string trimmed = line;
    size_t first = trimmed.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    trimmed = trimmed.substr(first);
    if (trimmed[0] == '#') continue;
    auto key_end = trimmed.find_first_of(" \t");
    std::string key = trimmed.substr(0, key_end);
    std::string rest = key_end == std::string::npos ? "" : trimmed.substr(key_end + 1);
    size_t rf = rest.find_first_not_of(" \t");
    rest = rf == std::string::npos ? "" : rest.substr(rf);
    if (key == "proof") continue;  // optional header line
    if (key == "node") {
      if (cur && !schema_formula.empty()) cur->schema = {schema_formula, schema_var};
      schema_formula.clear();
      schema_var.clear();
      out.emplace_back();
      cur = &out.back();
      cur->id = rest;
      if (cur->id.empty())
        return ParseError{{0, 0, lineno, 1}, {"a node id"}, "end of line", ""};
      continue;
    }
    if (!cur) return ParseError{{0, 0, lineno, 1}, {"'node <id>'"}, "'" + key + "'", ""};
    if (key == "rule") cur->rule = rest;
    else if (key == "conclusion") cur->conclusion = rest;
    else if (key == "premises") cur->premises = tokens_of(rest);
    else if (key == "principal") cur->inst["principal"] = {rest};
    else if (key == "eigen") cur->inst["eigen"] = tokens_of(rest);
    else if (key == "witnesses") cur->inst["witnesses"] = tokens_of(rest);
    else if (key == "cut") cur->cut_text = rest;
    else if (key == "cut-left-ant") cur->inst["cut-left-ant"] = tokens_of(rest);
    else if (key == "cut-left-suc") cur->inst["cut-left-suc"] = tokens_of(rest);
    else if (key == "schema-formula") schema_formula = rest;
    else if (key == "schema-var") schema_var = rest;
    else
      return ParseError{{0, 0, lineno, 1}, {"a node field"}, "'" + key + "'", ""};
  }
  if (cur && !schema_formula.empty()) cur->schema = {schema_formula, schema_var};
  return out;
}

}  // namespace detail

inline ParseResult<DerivationPtr> parse_derivation(const std::string& src) {
  size_t first = src.find_first_not_of(" \t\r\n");
  if (first == std::string::npos)
    return detail::doc_error("a proof document", "input is empty");
  auto raw_result = src[first] == '{' ? detail::read_json_nodes(src)
                                      : detail::read_text_nodes(src);
  if (auto* err = std::get_if<ParseError>(&raw_result)) return *err;
  auto& raws = std::get<std::vector<detail::RawNode>>(raw_result);
  if (raws.empty()) return detail::doc_error("at least one node record");

  ParserContext ctx;
  std::map<std::string, DerivationPtr> nodes;
  DerivationPtr last;
  for (auto& raw : raws) {
    if (nodes.count(raw.id)) return detail::doc_error("unique node ids", raw.id + " reused");
    auto rule = rule_from_name(raw.rule);
    if (!rule)
      return ParseError{{0, 0, 1, 1}, {"a rule name"}, "'" + raw.rule + "'",
                        "unknown rule name"};
    auto conc = ctx.parse_sequent(raw.conclusion);
    if (auto* err = std::get_if<ParseError>(&conc)) {
      ParseError e = *err;
      e.hint = "in conclusion of node " + raw.id +
               (e.hint.empty() ? "" : "; " + e.hint);
      return e;
    }
    auto node = std::make_shared<Derivation>();
    node->conclusion = std::get<Sequent>(conc);
    node->rule = *rule;
    for (auto& pid : raw.premises) {
      auto it = nodes.find(pid);
      if (it == nodes.end())
        return detail::doc_error("premises defined before use",
                                 "node " + raw.id + " references " + pid);
      node->premises.push_back(it->second);
    }
    Instantiation& inst = node->inst;
    if (auto it = raw.inst.find("principal"); it != raw.inst.end()) {
      const std::string& p = it->second[0];
      auto colon = p.find(':');
      std::string side = p.substr(0, colon);
      if (colon == std::string::npos || (side != "ant" && side != "suc"))
        return detail::doc_error("principal of the form ant:N or suc:N", p);
      try {
        inst.principal = OccRef{side == "ant" ? Side::Ant : Side::Suc,
                                std::stoi(p.substr(colon + 1))};
      } catch (const std::exception&) {
        return detail::doc_error("principal of the form ant:N or suc:N", p);
      }
    }
    auto read_symbols = [&](const char* key, std::vector<SymbolName>& out) -> bool {
      auto it = raw.inst.find(key);
      if (it == raw.inst.end()) return true;
      for (auto& text : it->second) {
        auto s = detail::symbol_from_spelling(text);
        if (!s) return false;
        out.push_back(*s);
      }
      return true;
    };
    if (!read_symbols("eigen", inst.eigens))
      return detail::doc_error("eigen symbols", "in node " + raw.id);
    if (!read_symbols("witnesses", inst.witnesses))
      return detail::doc_error("witness symbols", "in node " + raw.id);
    if (!raw.cut_text.empty()) {
      auto cf = ctx.parse_formula(raw.cut_text);
      if (auto* err = std::get_if<ParseError>(&cf)) {
        ParseError e = *err;
        e.hint = "in cut formula of node " + raw.id;
        return e;
      }
      inst.cut_formula = std::get<FormulaPtr>(cf);
    }
    if (raw.schema) {
      auto sf = ctx.parse_formula(raw.schema->first);
      if (auto* err = std::get_if<ParseError>(&sf)) {
        ParseError e = *err;
        e.hint = "in schema formula of node " + raw.id;
        return e;
      }
      auto var = detail::symbol_from_spelling(raw.schema->second);
      if (!var || (var->kind != SymbolKind::IndVar && var->kind != SymbolKind::RelVar))
        return detail::doc_error("a schema variable", "in node " + raw.id);
      // relational schema variables pick up their arity from the document
      if (var->kind == SymbolKind::RelVar) {
        for (auto& s : free_symbols(std::get<FormulaPtr>(sf)))
          if (s.spelling() == var->spelling()) *var = s;
      }
      inst.atomic_schema = {std::get<FormulaPtr>(sf), *var};
    }
    auto read_indices = [&](const char* key, std::vector<int>& out) -> bool {
      auto it = raw.inst.find(key);
      if (it == raw.inst.end()) return true;
      inst.has_cut_split = true;
      for (auto& text : it->second) {
        try {
          out.push_back(std::stoi(text));
        } catch (const std::exception&) {
          return false;
        }
      }
      return true;
    };
    if (!read_indices("cut-left-ant", inst.cut_left_ant) ||
        !read_indices("cut-left-suc", inst.cut_left_suc))
      return detail::doc_error("cut split indices", "in node " + raw.id);
    nodes.emplace(raw.id, node);
    last = node;
  }
  return last;
}

namespace detail {

inline nlohmann::json inst_to_json(const Instantiation& inst) {
  nlohmann::json j = nlohmann::json::object();
  if (inst.principal)
    j["principal"] = std::string(inst.principal->side == Side::Ant ? "ant:" : "suc:") +
                     std::to_string(inst.principal->index);
  if (!inst.eigens.empty()) {
    nlohmann::json arr = nlohmann::json::array();
    for (auto& e : inst.eigens) arr.push_back(e.spelling());
    j["eigen"] = arr;
  }
  if (!inst.witnesses.empty()) {
    nlohmann::json arr = nlohmann::json::array();
    for (auto& w : inst.witnesses) arr.push_back(w.spelling());
    j["witnesses"] = arr;
  }
  if (inst.cut_formula) j["cut"] = print_formula(inst.cut_formula);
  if (inst.atomic_schema)
    j["schema"] = {{"formula", print_formula(inst.atomic_schema->first)},
                   {"var", inst.atomic_schema->second.spelling()}};
  if (inst.has_cut_split) {
    j["cut-left-ant"] = inst.cut_left_ant;
    j["cut-left-suc"] = inst.cut_left_suc;
  }
  return j;
}

}  // namespace detail

// Canonical interchange writer. Shared subtrees are emitted once.
inline std::string print_derivation(const DerivationPtr& d) {
  nlohmann::json nodes = nlohmann::json::array();
  std::map<const Derivation*, std::string> ids;
  std::function<std::string(const DerivationPtr&)> emit = [&](const DerivationPtr& n) {
    auto it = ids.find(n.get());
    if (it != ids.end()) return it->second;
    std::vector<std::string> premise_ids;
    for (auto& p : n->premises) premise_ids.push_back(emit(p));
    std::string id = "n" + std::to_string(ids.size() + 1);
    ids.emplace(n.get(), id);
    nlohmann::json node = {{"id", id},
                           {"rule", rule_name(n->rule)},
                           {"conclusion", print_sequent(n->conclusion)}};
    if (!premise_ids.empty()) node["premises"] = premise_ids;
    auto inst = detail::inst_to_json(n->inst);
    if (!inst.empty()) node["inst"] = inst;
    nodes.push_back(std::move(node));
    return id;
  };
  emit(d);
  nlohmann::json doc = {{"format", "rlkit-proof"}, {"version", 1}, {"nodes", nodes}};
  return doc.dump(2) + "\n";
}

// Indented text form of the same document.
inline std::string print_derivation_text(const DerivationPtr& d) {
  std::ostringstream os;
  std::map<const Derivation*, std::string> ids;
  std::function<std::string(const DerivationPtr&)> emit = [&](const DerivationPtr& n) {
    auto it = ids.find(n.get());
    if (it != ids.end()) return it->second;
    std::vector<std::string> premise_ids;
    for (auto& p : n->premises) premise_ids.push_back(emit(p));
    std::string id = "n" + std::to_string(ids.size() + 1);
    ids.emplace(n.get(), id);
    os << "node " << id << "\n";
    os << "  rule " << rule_name(n->rule) << "\n";
    os << "  conclusion " << print_sequent(n->conclusion) << "\n";
    if (!premise_ids.empty()) {
      os << "  premises";
      for (auto& p : premise_ids) os << ' ' << p;
      os << "\n";
    }
    const Instantiation& inst = n->inst;
    if (inst.principal)
      os << "  principal " << (inst.principal->side == Side::Ant ? "ant:" : "suc:")
         << inst.principal->index << "\n";
    if (!inst.eigens.empty()) {
      os << "  eigen";
      for (auto& e : inst.eigens) os << ' ' << e.spelling();
      os << "\n";
    }
    if (!inst.witnesses.empty()) {
      os << "  witnesses";
      for (auto& w : inst.witnesses) os << ' ' << w.spelling();
      os << "\n";
    }
    if (inst.cut_formula) os << "  cut " << print_formula(inst.cut_formula) << "\n";
    if (inst.atomic_schema) {
      os << "  schema-formula " << print_formula(inst.atomic_schema->first) << "\n";
      os << "  schema-var " << inst.atomic_schema->second.spelling() << "\n";
    }
    if (inst.has_cut_split) {
      os << "  cut-left-ant";
      for (int i : inst.cut_left_ant) os << ' ' << i;
      os << "\n  cut-left-suc";
      for (int i : inst.cut_left_suc) os << ' ' << i;
      os << "\n";
    }
    return id;
  };
  emit(d);
  return os.str();
}

inline int node_count(const DerivationPtr& d) {
  std::set<const Derivation*> seen;
  std::function<void(const DerivationPtr&)> go = [&](const DerivationPtr& n) {
    if (!seen.insert(n.get()).second) return;
    for (auto& p : n->premises) go(p);
  };
  go(d);
  return (int)seen.size();
}

// ---- check report serialization -------------------------------------------

inline nlohmann::json report_to_json(const CheckReport& r) {
  nlohmann::json violations = nlohmann::json::array();
  for (auto& v : r.violations)
    violations.push_back({{"path", v.path},
                          {"rule", rule_name(v.rule)},
                          {"reason", violation_name(v.reason)},
                          {"detail", v.detail}});
  return {{"verdict", r.accepted ? "accepted" : "rejected"},
          {"height", r.height},
          {"uses_cut", r.uses_cut},
          {"violations", violations}};
}

inline std::string report_to_text(const CheckReport& r) {
  std::ostringstream os;
  os << "verdict: " << (r.accepted ? "accepted" : "rejected") << "\n";
  os << "height: " << r.height << "\n";
  os << "uses_cut: " << (r.uses_cut ? "true" : "false") << "\n";
  for (auto& v : r.violations) {
    os << "violation: ";
    if (v.path.empty())
      os << "root";
    else {
      for (size_t i = 0; i < v.path.size(); ++i) os << (i ? "." : "") << v.path[i];
    }
    os << " " << rule_name(v.rule) << " " << violation_name(v.reason);
    if (!v.detail.empty()) os << ": " << v.detail;
    os << "\n";
  }
  return os.str();
}

}  // namespace rl2
