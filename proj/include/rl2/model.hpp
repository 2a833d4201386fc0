#pragma once

#include <functional>
#include <map>
#include <set>

#include "rl2/parser.hpp"

namespace rl2 {

// Relations are sets of tuples over the domain {0, ..., domain_size-1}.
using Tuple = std::vector<int>;
using Relation = std::set<Tuple>;

struct ModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// First-order structure M = <D, I>. Interpretations are keyed by spelling;
// the lexical namespaces keep spellings unambiguous.
struct Model {
  int domain_size = 1;
  std::map<std::string, Relation> pred_interp;   // predicate symbols
  std::map<std::string, int> const_interp;       // individual constants
};

// Per-arity relation families G, plus interpretations for relational
// constants. families.at(n) lists the admissible n-ary relations; an arity
// missing from the map has not been declared at all.
struct GeneralModel {
  Model base;
  std::map<int, std::vector<Relation>> families;
  std::map<std::string, Relation> relconst_interp;

  bool family_contains(int arity, const Relation& r) const {
    auto it = families.find(arity);
    if (it == families.end()) return false;
    return std::find(it->second.begin(), it->second.end(), r) != it->second.end();
  }
};

struct Assignment {
  std::map<std::string, int> ind;       // individual variables and parameters
  std::map<std::string, Relation> rel;  // relational variables and parameters

  Assignment with_ind(const SymbolName& s, int o) const {
    Assignment a = *this;
    a.ind[s.spelling()] = o;
    return a;
  }
  Assignment with_rel(const SymbolName& s, const Relation& r) const {
    Assignment a = *this;
    a.rel[s.spelling()] = r;
    return a;
  }
};

// Everything a model description file can hold.
struct ModelDocument {
  GeneralModel gm;
  Assignment v;
};

inline int relation_arity(const Relation& r) {
  return r.empty() ? 0 : (int)r.begin()->size();  // 0 = undetermined
}

namespace detail {

inline void check_tuples(const Relation& r, int domain_size, const std::string& what) {
  int arity = 0;
  for (auto& t : r) {
    if (arity == 0) arity = (int)t.size();
    if ((int)t.size() != arity) throw ModelError(what + ": mixed tuple lengths");
    if (t.empty()) throw ModelError(what + ": empty tuple");
    for (int e : t)
      if (e < 0 || e >= domain_size) throw ModelError(what + ": element out of domain");
  }
}

}  // namespace detail

// Validates the general-model invariants: tuples in range, relational
// constants drawn from their arity's declared family.
inline void validate_general(const ModelDocument& doc) {
  const auto& gm = doc.gm;
  for (auto& [name, r] : gm.base.pred_interp) detail::check_tuples(r, gm.base.domain_size, name);
  for (auto& [name, o] : gm.base.const_interp)
    if (o < 0 || o >= gm.base.domain_size) throw ModelError(name + ": value out of domain");
  for (auto& [arity, fam] : gm.families) {
    for (auto& r : fam) {
      detail::check_tuples(r, gm.base.domain_size, "G" + std::to_string(arity));
      if (!r.empty() && (int)r.begin()->size() != arity)
        throw ModelError("G" + std::to_string(arity) + ": relation of wrong arity");
    }
  }
  for (auto& [name, r] : gm.relconst_interp) {
    detail::check_tuples(r, gm.base.domain_size, name);
    int arity = relation_arity(r);
    if (arity != 0 && !gm.family_contains(arity, r))
      throw ModelError(name + ": relation not a member of G" + std::to_string(arity));
    if (arity == 0) {
      // empty relation: must belong to some declared family
      bool found = false;
      for (auto& [a, fam] : gm.families)
        if (std::find(fam.begin(), fam.end(), r) != fam.end()) found = true;
      if (!found) throw ModelError(name + ": empty relation not in any declared family");
    }
  }
  for (auto& [name, o] : doc.v.ind)
    if (o < 0 || o >= gm.base.domain_size) throw ModelError(name + ": value out of domain");
  for (auto& [name, r] : doc.v.rel) detail::check_tuples(r, gm.base.domain_size, name);
}

// ---- model description text ------------------------------------------------
//
//   domain = 2;
//   P = {(0,1),(1,1)};
//   k = 0;
//   G1 = {{}, {(0)}};
//   K = {(0)};
//   v: a = 0; X = {(0)};

inline ParseResult<ModelDocument> parse_model(std::string_view src) {
  detail::Lexer lex(src);
  detail::Token cur = lex.next();
  auto bump = [&] { cur = lex.next(); };
  auto err = [&](std::vector<std::string> expected, std::string hint = "") {
    return ParseError{cur.span, std::move(expected),
                      cur.tok == detail::Tok::End ? "end of input" : "'" + cur.text + "'",
                      std::move(hint)};
  };

  ModelDocument doc;
  bool in_assignment = false;
  bool saw_domain = false;

  auto parse_nat = [&](int& out) -> bool {
    if (cur.tok != detail::Tok::Number) return false;
    out = std::stoi(cur.text);
    bump();
    return true;
  };

  // "(0,1)" -> tuple
  std::function<bool(Tuple&)> parse_tuple = [&](Tuple& t) -> bool {
    if (cur.tok != detail::Tok::LParen) return false;
    bump();
    for (;;) {
      int n;
      if (!parse_nat(n)) return false;
      t.push_back(n);
      if (cur.tok == detail::Tok::Comma) {
        bump();
        continue;
      }
      break;
    }
    if (cur.tok != detail::Tok::RParen) return false;
    bump();
    return true;
  };

  // "{ (0), (1,0) }" or "{}"
  std::function<bool(Relation&)> parse_relation = [&](Relation& r) -> bool {
    if (cur.tok != detail::Tok::LBrace) return false;
    bump();
    if (cur.tok == detail::Tok::RBrace) {
      bump();
      return true;
    }
    for (;;) {
      Tuple t;
      if (!parse_tuple(t)) return false;
      r.insert(std::move(t));
      if (cur.tok == detail::Tok::Comma) {
        bump();
        continue;
      }
      break;
    }
    if (cur.tok != detail::Tok::RBrace) return false;
    bump();
    return true;
  };

  while (cur.tok != detail::Tok::End) {
    if (cur.tok == detail::Tok::Ident && cur.text == "v" && !in_assignment) {
      bump();
      if (cur.tok != detail::Tok::Colon) return err({"':'"});
      bump();
      in_assignment = true;
      continue;
    }
    if (cur.tok != detail::Tok::Ident) return err({"an interpretation entry"});
    std::string name = cur.text;
    bump();
    if (cur.tok != detail::Tok::Eq) return err({"'='"});
    bump();

    if (name == "domain") {
      int n;
      if (!parse_nat(n)) return err({"a number"});
      if (n < 1) return err({"domain size >= 1"});
      doc.gm.base.domain_size = n;
      saw_domain = true;
    } else if (name.size() >= 2 && name[0] == 'G' &&
               std::all_of(name.begin() + 1, name.end(),
                           [](char c) { return std::isdigit((unsigned char)c); })) {
      // family of relations for one arity
      int arity = std::stoi(name.substr(1));
      if (arity < 1) return err({"arity >= 1"});
      if (cur.tok != detail::Tok::LBrace) return err({"'{'"});
      bump();
      std::vector<Relation> fam;
      if (cur.tok != detail::Tok::RBrace) {
        for (;;) {
          Relation r;
          if (!parse_relation(r)) return err({"a relation"});
          fam.push_back(std::move(r));
          if (cur.tok == detail::Tok::Comma) {
            bump();
            continue;
          }
          break;
        }
      }
      if (cur.tok != detail::Tok::RBrace) return err({"'}'"});
      bump();
      doc.gm.families[arity] = std::move(fam);
    } else {
      auto split = detail::Parser::split_ident(name);
      auto kind = split ? classify_base(split->first) : std::nullopt;
      if (!kind) return err({"a symbol name"}, "unknown namespace for '" + name + "'");
      switch (*kind) {
        case SymbolKind::IndConst: {
          int n;
          if (!parse_nat(n)) return err({"a domain element"});
          doc.gm.base.const_interp[name] = n;
          break;
        }
        case SymbolKind::PredSym: {
          Relation r;
          if (!parse_relation(r)) return err({"a relation"});
          doc.gm.base.pred_interp[name] = std::move(r);
          break;
        }
        case SymbolKind::RelConst: {
          Relation r;
          if (!parse_relation(r)) return err({"a relation"});
          doc.gm.relconst_interp[name] = std::move(r);
          break;
        }
        case SymbolKind::IndVar:
        case SymbolKind::IndPar: {
          if (!in_assignment)
            return err({"an interpretation entry"},
                       "assignment entries belong after 'v:'");
          int n;
          if (!parse_nat(n)) return err({"a domain element"});
          doc.v.ind[name] = n;
          break;
        }
        case SymbolKind::RelVar:
        case SymbolKind::RelPar: {
          if (!in_assignment)
            return err({"an interpretation entry"},
                       "assignment entries belong after 'v:'");
          Relation r;
          if (!parse_relation(r)) return err({"a relation"});
          doc.v.rel[name] = std::move(r);
          break;
        }
      }
    }
    if (cur.tok != detail::Tok::Semi) return err({"';'"});
    bump();
  }
  if (!saw_domain) return err({"a 'domain = N;' entry"});
  try {
    validate_general(doc);
  } catch (const ModelError& e) {
    return ParseError{{0, src.size(), 1, 1}, {"a valid model"}, "input", e.what()};
  }
  return doc;
}

inline std::string print_relation(const Relation& r) {
  std::string out = "{";
  bool first = true;
  for (auto& t : r) {
    if (!first) out += ",";
    first = false;
    out += "(";
    for (size_t i = 0; i < t.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(t[i]);
    }
    out += ")";
  }
  out += "}";
  return out;
}

inline std::string print_model(const ModelDocument& doc) {
  std::string out = "domain = " + std::to_string(doc.gm.base.domain_size) + ";\n";
  for (auto& [name, r] : doc.gm.base.pred_interp) out += name + " = " + print_relation(r) + ";\n";
  for (auto& [name, o] : doc.gm.base.const_interp)
    out += name + " = " + std::to_string(o) + ";\n";
  for (auto& [arity, fam] : doc.gm.families) {
    out += "G" + std::to_string(arity) + " = {";
    for (size_t i = 0; i < fam.size(); ++i) {
      if (i) out += ", ";
      out += print_relation(fam[i]);
    }
    out += "};\n";
  }
  for (auto& [name, r] : doc.gm.relconst_interp) out += name + " = " + print_relation(r) + ";\n";
  if (!doc.v.ind.empty() || !doc.v.rel.empty()) {
    out += "v:";
    for (auto& [name, o] : doc.v.ind) out += " " + name + " = " + std::to_string(o) + ";";
    for (auto& [name, r] : doc.v.rel) out += " " + name + " = " + print_relation(r) + ";";
    out += "\n";
  }
  return out;
}

}  // namespace rl2
