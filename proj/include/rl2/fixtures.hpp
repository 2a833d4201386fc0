#pragma once

#include "rl2/rl2.hpp"

namespace rl2::fixtures {

// Both derivable-rule proof trees, transcribed at X/B/C unary with
// context Gamma = {Q(a)}, Delta = {Q(b)}. The rule premise enters as an
// Assume leaf; checking needs the matching assumption sequent.

inline constexpr const char* kProp1Tree1 = R"json({
  "format": "rlkit-proof",
  "version": 1,
  "nodes": [
    {"id": "ax", "rule": "AX", "conclusion": "X(a1) => X(a1)"},
    {"id": "eq2r", "rule": "Eq2R", "conclusion": "=> X = X",
     "premises": ["ax", "ax"],
     "inst": {"principal": "suc:0", "eigen": ["a1"]}},
    {"id": "hyp", "rule": "Assume", "conclusion": "X = X, Q(a) => Q(b)"},
    {"id": "cut", "rule": "Cut", "conclusion": "Q(a) => Q(b)",
     "premises": ["eq2r", "hyp"],
     "inst": {"cut": "X = X", "cut-left-ant": [], "cut-left-suc": []}}
  ]
})json";

inline constexpr const char* kProp1Tree1Assumption = "X = X, Q(a) => Q(b)";

inline constexpr const char* kProp1Tree2 = R"json({
  "format": "rlkit-proof",
  "version": 1,
  "nodes": [
    {"id": "axb", "rule": "AX", "conclusion": "B(a) => B(a)"},
    {"id": "wr", "rule": "WR", "conclusion": "B(a) => B(a), C(a)",
     "premises": ["axb"], "inst": {"principal": "suc:1"}},
    {"id": "axc", "rule": "AX", "conclusion": "C(a) => C(a)"},
    {"id": "wl", "rule": "WL", "conclusion": "C(a), B(a) => C(a)",
     "premises": ["axc"], "inst": {"principal": "ant:0"}},
    {"id": "eq2l", "rule": "Eq2L", "conclusion": "B = C, B(a) => C(a)",
     "premises": ["wr", "wl"],
     "inst": {"principal": "ant:0", "witnesses": ["a"]}},
    {"id": "hyp", "rule": "Assume", "conclusion": "C(a), Q(a) => Q(b)"},
    {"id": "cut", "rule": "Cut", "conclusion": "B = C, B(a), Q(a) => Q(b)",
     "premises": ["eq2l", "hyp"],
     "inst": {"cut": "C(a)", "cut-left-ant": [0, 1], "cut-left-suc": []}}
  ]
})json";

inline constexpr const char* kProp1Tree2Assumption = "C(a), Q(a) => Q(b)";

// The same two trees at instantiations whose rule premise closes as an
// axiom, so they check with no assumptions; both use Cut and both
// end-sequents are cut-free provable.
inline DerivationPtr prop1_tree1_closed() {
  Instantiation inst;
  inst.witnesses = {rel_var("X", 1)};
  auto r = expand_derived(DerivedRule::Eq2Plus, seq("Q(a) => Q(b), X = X"), inst);
  return std::get<DerivationPtr>(r);
}

inline DerivationPtr prop1_tree2_closed() {
  Instantiation inst;
  inst.atomic_schema = {fml("X(a)"), rel_var("X", 1)};
  inst.witnesses = {rel_par("B", 1), rel_par("C", 1)};
  auto r = expand_derived(DerivedRule::Eq2Minus, seq("B = C, B(a), Q(a) => Q(b), C(a)"), inst);
  return std::get<DerivationPtr>(r);
}

// Minimal closed instantiations (the six- and four-record documents).
inline DerivationPtr prop1_tree1_min() {
  Instantiation inst;
  inst.witnesses = {rel_var("X", 1)};
  return std::get<DerivationPtr>(expand_derived(DerivedRule::Eq2Plus, seq("=> X = X"), inst));
}

inline DerivationPtr prop1_tree2_min() {
  Instantiation inst;
  inst.atomic_schema = {fml("X(a)"), rel_var("X", 1)};
  inst.witnesses = {rel_par("B", 1), rel_par("C", 1)};
  return std::get<DerivationPtr>(
      expand_derived(DerivedRule::Eq2Minus, seq("B = C, B(a) => C(a)"), inst));
}

// Sequents valid over general models (all are provable by the bounded
// search at depth <= 12).
inline std::vector<std::string> valid_sequents() {
  return {
      "P(a) => P(a)",
      "=> P(a) | !P(a)",
      "=> !(P(a) & !P(a))",
      "P(a) & Q(a) => P(a)",
      "P(a) => P(a) | Q(a)",
      "P(a) -> Q(a), P(a) => Q(a)",
      "=> P(a) -> (Q(a) -> P(a))",
      "P(a) <-> Q(a), P(a) => Q(a)",
      "P(a) <-> Q(a), Q(a) => P(a)",
      "=> (P(a) & Q(a)) -> (P(a) | Q(b))",
      "A x. P(x) => P(a)",
      "A x. P(x) => E x. P(x)",
      "P(a) => E x. P(x)",
      "A x. (P(x) -> Q(x)), A x. P(x) => A x. Q(x)",
      "E x. A y. R(x,y) => A y. E x. R(x,y)",
      "A x. A y. R(x,y) => R(a,b)",
      "=> b = b",
      "=> A x. x = x",
      "b = c, P(b) => P(c)",
      "b = c => c = b",
      "b = c, c = d => b = d",
      "(\\x P(x)) b => P(b)",
      "P(b) => (\\x P(x)) b",
      "=> (\\x P(x)) a <-> P(a)",
      "(\\x P(x)) (iota y. Q(y)) => E x. Q(x)",
      "(\\x P(x)) (iota y. Q(y)) => E x. P(x)",
      "B = C, B(a) => C(a)",
      "=> X = X",
      "A2 X. X(a) => K(a)",
      "A2 X. X(a) => B(a)",
      "(E2 X. X(a)) & P(b) => E2 X. X(a)",
      "A2 X. (X(a) -> X(b)), B(a) => B(b)",
      "X = Y, X(a) => Y(a)",
      "(\\X X(k)) (iota Y. Y(k)) => E2 Z. Z(k)",
  };
}

// Sequents refuted by exhaustive full-powerset enumeration at |D| <= 2.
inline std::vector<std::string> invalid_sequents() {
  return {
      "=> P(a)",
      "P(a) => Q(a)",
      "P(a) | Q(a) => P(a)",
      "=> P(a) & !P(a)",
      "P(a) -> Q(a) => Q(a)",
      "P(a) -> Q(a) => P(a) & Q(a)",
      "E x. P(x) => A x. P(x)",
      "=> a = b",
      "P(a) => P(b)",
      "A y. E x. R(x,y) => E x. A y. R(x,y)",
      "R(a,b) => R(b,a)",
      "=> E x. P(x)",
      "E x. P(x), E x. Q(x) => E x. (P(x) & Q(x))",
      "P(a) | Q(a) => P(a) & Q(a)",
      "!P(a) => P(a)",
      "=> P(a) <-> Q(a)",
      "a = b => b = c",
      "P(k) => P(a)",
      "K(a) => P(a)",
      "X(a) => X(b)",
      "X = Y => X(a)",
      "X(a), Y(a) => X = Y",
      "(\\x P(x)) b => P(c)",
      "(\\x P(x)) (iota y. Q(y)) => A x. P(x)",
      "E2 X. X(a) => K(a)",
      "B(a) => A2 X. X(a)",
      "=> (\\x P(x)) (iota y. Q(y))",
      "Q(a) => (\\x P(x)) (iota y. Q(y))",
      "=> X = Y",
      "A2 X. (X(a) -> X(b)) => B(b)",
  };
}

// Neither obviously valid nor refutable at small bounds; exercise both
// engines on the exclusivity check.
inline std::vector<std::string> edge_sequents() {
  return {
      "=> E2 X. A x. (X(x) <-> P(x))",
      "=> E2 X. X(a)",
      "A2 X. X(a) => E2 X. X(a)",
      "=> (\\X X(k)) (iota Y. A x. Y(x))",
      "E x. (P(x) & Q(x)) => E x. P(x)",
  };
}

}  // namespace rl2::fixtures
