#pragma once

#include <functional>

#include "rl2/rules.hpp"
#include "rl2/sequent.hpp"

namespace rl2 {

enum class Side { Ant, Suc };

struct OccRef {
  Side side = Side::Ant;
  int index = 0;
};

// Everything a rule application needs to be checked deterministically.
// Eigens and witnesses arrive possibly without arity (interchange documents
// carry bare spellings); the schema fixes their arity from the principal.
struct Instantiation {
  std::optional<OccRef> principal;
  std::vector<SymbolName> eigens;
  std::vector<SymbolName> witnesses;
  FormulaPtr cut_formula;  // Cut only
  std::optional<std::pair<FormulaPtr, SymbolName>> atomic_schema;  // EqMinus and derived forms
  // Cut context routing: occurrence indices of the conclusion that go to the
  // left premise. Meaningful only when has_cut_split is set; otherwise the
  // whole context goes right.
  bool has_cut_split = false;
  std::vector<int> cut_left_ant, cut_left_suc;
};

struct Derivation;
using DerivationPtr = std::shared_ptr<const Derivation>;

struct Derivation {
  Sequent conclusion;
  RuleId rule = RuleId::AX;
  Instantiation inst;
  std::vector<DerivationPtr> premises;
};

inline DerivationPtr mk_node(Sequent conclusion, RuleId rule, Instantiation inst = {},
                             std::vector<DerivationPtr> premises = {}) {
  auto d = std::make_shared<Derivation>();
  d->conclusion = std::move(conclusion);
  d->rule = rule;
  d->inst = std::move(inst);
  d->premises = std::move(premises);
  return d;
}

inline int height(const DerivationPtr& d) {
  int h = 0;
  for (auto& p : d->premises) h = std::max(h, height(p));
  return h + 1;
}

inline bool uses_cut(const DerivationPtr& d) {
  if (d->rule == RuleId::Cut) return true;
  for (auto& p : d->premises)
    if (uses_cut(p)) return true;
  return false;
}

inline void walk(const DerivationPtr& d, const std::function<void(const DerivationPtr&)>& fn) {
  fn(d);
  for (auto& p : d->premises) walk(p, fn);
}

struct Violation {
  std::vector<int> path;  // premise indices from the root
  RuleId rule = RuleId::AX;
  ViolationKind reason = ViolationKind::BadInstantiation;
  std::string detail;
};

struct CheckReport {
  bool accepted = false;
  std::vector<Violation> violations;
  int height = 0;
  bool uses_cut = false;
};

struct RuleError {
  ViolationKind kind = ViolationKind::BadInstantiation;
  std::string detail;
};

template <class T>
using RuleResult = std::variant<T, RuleError>;

}  // namespace rl2
