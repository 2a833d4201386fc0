#include "doctest.h"
#include "rl2/fixtures.hpp"
#include "support/gen.hpp"

using namespace rl2;

TEST_CASE("identity-introduction expansion") {
  Instantiation inst;
  inst.witnesses = {rel_var("X", 1)};
  auto r = expand_derived(DerivedRule::Eq2Plus, seq("=> P(a)"), inst);
  auto d = std::get<DerivationPtr>(r);
  CHECK(node_count(d) == 4);
  CHECK(d->rule == RuleId::Cut);
  CHECK(alpha_eq(d->inst.cut_formula, fml("X = X")));
  CHECK(check(d, System::RL2, true, {seq("X = X => P(a)")}).accepted);
  // the hypothesis leaf stays open without the assumption
  CHECK_FALSE(check(d, System::RL2, true, {}).accepted);
  // at a context whose hypothesis is an axiom the whole tree closes
  auto closed = fixtures::prop1_tree1_min();
  CHECK(node_count(closed) == 4);
  CHECK(check(closed, System::RL2, true, {}).accepted);
  CHECK(uses_cut(closed));
}

TEST_CASE("identity-elimination expansion") {
  auto d = fixtures::prop1_tree2_min();
  CHECK(node_count(d) == 6);
  auto rep = check(d, System::RL2, true, {});
  CHECK(rep.accepted);
  CHECK(rep.uses_cut);
  // without cut it fails exactly at the cut node
  auto nc = check(d, System::RL2, false, {});
  REQUIRE(nc.violations.size() == 1);
  CHECK(nc.violations[0].reason == ViolationKind::CutForbidden);

  // non-atomic schema is refused
  Instantiation bad;
  bad.atomic_schema = {fml("X(a) & X(b)"), rel_var("X", 1)};
  bad.witnesses = {rel_par("B", 1), rel_par("C", 1)};
  auto res = expand_derived(DerivedRule::Eq2Minus, seq("B = C => "), bad);
  auto* e = std::get_if<RuleError>(&res);
  REQUIRE(e);
  CHECK(e->kind == ViolationKind::NotAtomic);
}

TEST_CASE("expansions at wider contexts keep their hypotheses explicit") {
  auto d = fixtures::prop1_tree2_closed();
  CHECK(check(d, System::RL2, true, {}).accepted);
  CHECK(sequent_equal_alpha(d->conclusion, seq("B = C, B(a), Q(a) => Q(b), C(a)")));
  auto d1 = fixtures::prop1_tree1_closed();
  CHECK(check(d1, System::RL2, true, {}).accepted);
  CHECK(sequent_equal_alpha(d1->conclusion, seq("Q(a) => Q(b), X = X")));
}

TEST_CASE("parameter renaming preserves height and acceptance") {
  // axiom case
  auto ax = mk_node(seq("P(b) => P(b)"), RuleId::AX);
  auto r = rename_parameter(ax, ind_par("b"), ind_par("c"));
  auto d = std::get<DerivationPtr>(r);
  CHECK(print_sequent(d->conclusion) == "P(c) => P(c)");
  CHECK(height(d) == 1);

  // renaming into an occupied name is refused
  auto bad = rename_parameter(mk_node(seq("P(b), Q(a) => P(b)"), RuleId::AX), ind_par("b"),
                              ind_par("a"));
  REQUIRE(std::holds_alternative<RuleError>(bad));

  // relational rename across the identity-elimination expansion
  auto tree = fixtures::prop1_tree2_min();
  auto renamed = rename_parameter(tree, rel_par("B", 1), rel_par("C", 1, 1));
  auto dr = std::get<DerivationPtr>(renamed);
  CHECK(sequent_equal_alpha(dr->conclusion, seq("C1 = C, C1(a) => C(a)")));
  CHECK(height(dr) == height(tree));
  CHECK(check(dr, System::RL2, true, {}).accepted);
}

TEST_CASE("renaming generated accepted derivations") {
  gen::Rng rng(79);
  gen::Pools pools;
  SearchConfig cfg;
  cfg.max_depth = 7;
  int renamed_count = 0;
  for (int i = 0; i < 30 && renamed_count < 20; ++i) {
    auto goal = gen::random_valid_goal(rng, pools);
    auto res = prove(goal, System::RL2, cfg);
    auto* dp = std::get_if<DerivationPtr>(&res);
    if (!dp) continue;
    REQUIRE(check(*dp, System::RL2, false, {}).accepted);
    // pick a parameter occurring in the tree
    std::set<std::string> pars;
    walk(*dp, [&](const DerivationPtr& n) {
      for (auto& s : free_symbols(n->conclusion))
        if (s.kind == SymbolKind::IndPar) pars.insert(s.spelling());
    });
    if (pars.empty()) continue;
    SymbolName from = ind_par(std::string(1, (*pars.begin())[0]),
                              pars.begin()->size() > 1
                                  ? std::optional<int>(std::stoi(pars.begin()->substr(1)))
                                  : std::nullopt);
    SymbolName to = ind_par("d", 77);
    auto r = rename_parameter(*dp, from, to);
    auto* out = std::get_if<DerivationPtr>(&r);
    REQUIRE(out);
    CHECK(height(*out) == height(*dp));
    CHECK(check(*out, System::RL2, false, {}).accepted);
    ++renamed_count;
  }
  CHECK(renamed_count >= 10);
}
