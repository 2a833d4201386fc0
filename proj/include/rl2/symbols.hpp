#pragma once

#include <compare>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>

namespace rl2 {

// Symbol namespaces of the two-sorted language: individual variables,
// parameters, and constants are term-level; relational variables,
// parameters, constants, and predicate symbols carry an arity >= 1.
enum class SymbolKind {
  IndVar,
  IndPar,
  IndConst,
  RelVar,
  RelPar,
  RelConst,
  PredSym,
};

inline bool is_individual(SymbolKind k) {
  return k == SymbolKind::IndVar || k == SymbolKind::IndPar || k == SymbolKind::IndConst;
}

inline bool is_relational(SymbolKind k) {
  return k == SymbolKind::RelVar || k == SymbolKind::RelPar || k == SymbolKind::RelConst;
}

inline const char* kind_name(SymbolKind k) {
  switch (k) {
    case SymbolKind::IndVar: return "individual variable";
    case SymbolKind::IndPar: return "individual parameter";
    case SymbolKind::IndConst: return "individual constant";
    case SymbolKind::RelVar: return "relational variable";
    case SymbolKind::RelPar: return "relational parameter";
    case SymbolKind::RelConst: return "relational constant";
    case SymbolKind::PredSym: return "predicate symbol";
  }
  return "?";
}

struct SymbolName {
  SymbolKind kind = SymbolKind::IndVar;
  std::string base;              // single-letter namespace tag, e.g. "a", "X", "P"
  std::optional<int> index;      // "a1" -> base "a", index 1; "a" -> no index
  int arity = 0;                 // >= 1 for relational kinds and predicate symbols

  friend auto operator<=>(const SymbolName& l, const SymbolName& r) {
    if (auto c = l.kind <=> r.kind; c != 0) return c;
    if (auto c = l.base <=> r.base; c != 0) return c;
    int li = l.index ? *l.index : -1;
    int ri = r.index ? *r.index : -1;
    if (auto c = li <=> ri; c != 0) return c;
    return l.arity <=> r.arity;
  }
  friend bool operator==(const SymbolName& l, const SymbolName& r) = default;

  std::string spelling() const {
    return index ? base + std::to_string(*index) : base;
  }
};

inline SymbolName ind_var(std::string base, std::optional<int> index = std::nullopt) {
  return {SymbolKind::IndVar, std::move(base), index, 0};
}
inline SymbolName ind_par(std::string base, std::optional<int> index = std::nullopt) {
  return {SymbolKind::IndPar, std::move(base), index, 0};
}
inline SymbolName ind_const(std::optional<int> index = std::nullopt) {
  return {SymbolKind::IndConst, "k", index, 0};
}
inline SymbolName rel_var(std::string base, int arity, std::optional<int> index = std::nullopt) {
  if (arity < 1) throw std::invalid_argument("relational arity must be >= 1");
  return {SymbolKind::RelVar, std::move(base), index, arity};
}
inline SymbolName rel_par(std::string base, int arity, std::optional<int> index = std::nullopt) {
  if (arity < 1) throw std::invalid_argument("relational arity must be >= 1");
  return {SymbolKind::RelPar, std::move(base), index, arity};
}
inline SymbolName rel_const(int arity, std::optional<int> index = std::nullopt) {
  if (arity < 1) throw std::invalid_argument("relational arity must be >= 1");
  return {SymbolKind::RelConst, "K", index, arity};
}
inline SymbolName pred_sym(std::string base, int arity, std::optional<int> index = std::nullopt) {
  if (arity < 1) throw std::invalid_argument("predicate arity must be >= 1");
  return {SymbolKind::PredSym, std::move(base), index, arity};
}

// Basic terms: individual variables, parameters, and constants.
// Relational symbols are never terms.
struct Term {
  SymbolName sym;

  Term() = default;
  explicit Term(SymbolName s) : sym(std::move(s)) {
    if (!is_individual(sym.kind))
      throw std::invalid_argument("term must be an individual symbol: " + sym.spelling());
  }

  friend auto operator<=>(const Term&, const Term&) = default;
  std::string spelling() const { return sym.spelling(); }
};

using SymbolSet = std::set<SymbolName>;

// Classifies a raw identifier per the lexical namespaces:
//   x|y|z|u|w[0-9]*  individual variables      a|b|c|d[0-9]*  individual parameters
//   k[0-9]*          individual constants      X|Y|Z[0-9]*    relational variables
//   A|B|C[0-9]*      relational parameters     K[0-9]*        relational constants
//   P|Q|R|S[0-9]*    predicate symbols
// Arity of relational/predicate symbols is supplied by the caller (parser inference).
inline std::optional<SymbolKind> classify_base(const std::string& base) {
  if (base.size() != 1) return std::nullopt;
  switch (base[0]) {
    case 'x': case 'y': case 'z': case 'u': case 'w': return SymbolKind::IndVar;
    case 'a': case 'b': case 'c': case 'd': return SymbolKind::IndPar;
    case 'k': return SymbolKind::IndConst;
    case 'X': case 'Y': case 'Z': return SymbolKind::RelVar;
    case 'A': case 'B': case 'C': return SymbolKind::RelPar;
    case 'K': return SymbolKind::RelConst;
    case 'P': case 'Q': case 'R': case 'S': return SymbolKind::PredSym;
    default: return std::nullopt;
  }
}

}  // namespace rl2
