#pragma once

#include <iostream>

#include "rl2/fixtures.hpp"

namespace rl2 {

// True iff no countermodel exists within the bounds (the sweep used by the
// embedded corpus: full powerset families, and every subfamily where the
// space is small enough).
inline bool holds_everywhere(const Sequent& s, int max_domain = 2, int max_arity = 2) {
  SearchBounds full;
  full.max_domain = max_domain;
  full.max_arity = max_arity;
  full.mode = FamilyMode::FullPowerset;
  if (!std::holds_alternative<NotFoundWithinBounds>(find_countermodel(s, full))) return false;
  // additionally sweep every subfamily where that stays small: arity-1
  // sequents at |D| <= 2 (larger arities make the subfamily space blow up
  // doubly exponentially)
  auto arities = needed_arities(s);
  bool unary_only = !arities.empty() && *arities.rbegin() == 1;
  if (unary_only && max_domain <= 2) {
    SearchBounds sub = full;
    sub.mode = FamilyMode::AllSubfamilies;
    if (!std::holds_alternative<NotFoundWithinBounds>(find_countermodel(s, sub))) return false;
  }
  return true;
}

struct SelftestResult {
  int passed = 0;
  int failed = 0;
};

// Hermetic fixture run: the two transcribed proof trees, their cut-free
// re-proofs, a soundness sweep of the embedded corpus at |D| <= 2, and the
// prover/countermodel exclusivity check.
inline SelftestResult run_selftest(std::ostream& os, bool color = false) {
  SelftestResult res;
  auto report = [&](const std::string& name, bool ok) {
    const char* mark = ok ? "ok" : "FAIL";
    if (color) os << (ok ? "\x1b[32m" : "\x1b[31m") << mark << "\x1b[0m";
    else os << mark;
    os << "  " << name << "\n";
    (ok ? res.passed : res.failed)++;
  };

  auto tree1 = parse_derivation(fixtures::kProp1Tree1);
  auto tree2 = parse_derivation(fixtures::kProp1Tree2);
  bool parse_ok_both = std::holds_alternative<DerivationPtr>(tree1) &&
                       std::holds_alternative<DerivationPtr>(tree2);
  report("fixture trees parse", parse_ok_both);
  if (parse_ok_both) {
    auto d1 = std::get<DerivationPtr>(tree1);
    auto d2 = std::get<DerivationPtr>(tree2);
    std::vector<Sequent> as1 = {seq(fixtures::kProp1Tree1Assumption)};
    std::vector<Sequent> as2 = {seq(fixtures::kProp1Tree2Assumption)};
    report("tree 1 accepted with cut", check(d1, System::RL2, true, as1).accepted);
    report("tree 2 accepted with cut", check(d2, System::RL2, true, as2).accepted);
    auto nc1 = check(d1, System::RL2, false, as1);
    auto nc2 = check(d2, System::RL2, false, as2);
    auto only_cut_violation = [](const CheckReport& r) {
      return !r.accepted && r.violations.size() == 1 &&
             r.violations[0].reason == ViolationKind::CutForbidden;
    };
    report("tree 1 rejected exactly at its cut", only_cut_violation(nc1));
    report("tree 2 rejected exactly at its cut", only_cut_violation(nc2));
  }

  {
    auto d1 = fixtures::prop1_tree1_min();
    auto d2 = fixtures::prop1_tree2_min();
    report("closed expansions check without assumptions",
           check(d1, System::RL2, true, {}).accepted && check(d2, System::RL2, true, {}).accepted);
    SearchConfig cfg;
    cfg.max_depth = 12;
    bool refound = true;
    for (auto& d : {d1, d2}) {
      auto r = prove(d->conclusion, System::RL2, cfg);
      refound = refound && std::holds_alternative<DerivationPtr>(r);
    }
    report("cut-using expansions re-proved cut-free", refound);
  }

  {
    int sound = 0, total = 0;
    SearchConfig cfg;
    cfg.max_depth = 12;
    for (auto& text : fixtures::valid_sequents()) {
      Sequent s = seq(text);
      ++total;
      auto r = prove(s, System::RL2, cfg);
      if (auto* d = std::get_if<DerivationPtr>(&r)) {
        if (check(*d, System::RL2, false, {}).accepted && holds_everywhere(s)) ++sound;
      }
    }
    report("soundness sweep over the embedded corpus (" + std::to_string(sound) + "/" +
               std::to_string(total) + ")",
           sound == total);
  }

  {
    bool exclusive = true;
    SearchConfig cfg;
    cfg.max_depth = 7;
    SearchBounds bounds;
    bounds.mode = FamilyMode::FullPowerset;
    auto all = fixtures::valid_sequents();
    for (auto& text : fixtures::invalid_sequents()) all.push_back(text);
    for (auto& text : all) {
      Sequent s = seq(text);
      bool proved = std::holds_alternative<DerivationPtr>(prove(s, System::RL2, cfg));
      bool refuted = std::holds_alternative<ModelDocument>(find_countermodel(s, bounds));
      if (proved && refuted) exclusive = false;
    }
    report("prover and countermodel search never both succeed", exclusive);
  }

  {
    auto sat = saturate(ExtendedSequent({fml("E x. P(x)")}, {fml("A x. Q(x)")}), 8);
    bool ok = sat.remaining.empty() && !sat.budget_exhausted;
    auto again = saturate(sat.result, 8);
    ok = ok && again.result.subset_of(sat.result) && sat.result.subset_of(again.result);
    report("saturation reaches a fixpoint", ok);
  }

  os << res.passed << " passed, " << res.failed << " failed\n";
  return res;
}

}  // namespace rl2
