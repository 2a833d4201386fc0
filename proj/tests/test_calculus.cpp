#include "doctest.h"
#include "rl2/fixtures.hpp"
#include "support/gen.hpp"

using namespace rl2;

namespace {

std::vector<Sequent> premises_of(const Sequent& c, RuleId r, const Instantiation& inst) {
  auto res = apply_rule(c, r, inst);
  if (auto* e = std::get_if<RuleError>(&res))
    throw std::runtime_error(std::string("apply_rule: ") + e->detail);
  return std::get<std::vector<Sequent>>(res);
}

Instantiation principal_at(Side side, int index) {
  Instantiation inst;
  inst.principal = OccRef{side, index};
  return inst;
}

}  // namespace

TEST_CASE("backward application of the description rules") {
  // left description rule: both instances join the antecedent
  {
    Instantiation inst = principal_at(Side::Ant, 0);
    inst.eigens = {ind_par("a")};
    auto ps = premises_of(seq("(\\x P(x)) (iota y. Q(y)), S(b) => S(c)"), RuleId::Iota1L, inst);
    REQUIRE(ps.size() == 1);
    CHECK(sequent_equal_alpha(ps[0], seq("Q(a), P(a), S(b) => S(c)")));
  }
  // right description rule, second order: three premises in figure order
  {
    auto conc = seq("S(c) => (\\X P(a)) (iota Y. Y(a))");
    Instantiation inst = principal_at(Side::Suc, 0);
    inst.witnesses = {rel_par("B", 1)};
    inst.eigens = {rel_par("A", 1)};
    auto ps = premises_of(conc, RuleId::IotaR2, inst);
    REQUIRE(ps.size() == 3);
    CHECK(sequent_equal_alpha(ps[0], seq("S(c) => B(a)")));
    CHECK(sequent_equal_alpha(ps[1], seq("S(c) => P(a)")));
    CHECK(sequent_equal_alpha(ps[2], seq("A(a), S(c) => A = B")));
  }
  // no principal present
  {
    auto res = apply_rule(seq("=> P(a)"), RuleId::AndL, principal_at(Side::Ant, 0));
    auto* e = std::get_if<RuleError>(&res);
    REQUIRE(e);
    CHECK(e->kind == ViolationKind::BadInstantiation);
  }
}

TEST_CASE("eigenvariable side conditions are enforced on the conclusion") {
  // a occurs in Gamma
  auto d = mk_node(seq("Q(a) => A x. P(x)"), RuleId::AllR,
                   [] {
                     Instantiation i;
                     i.principal = OccRef{Side::Suc, 0};
                     i.eigens = {ind_par("a")};
                     return i;
                   }(),
                   {mk_node(seq("Q(a) => P(a)"), RuleId::AX)});
  auto rep = check(d, System::RL2, true, {});
  REQUIRE_FALSE(rep.accepted);
  CHECK(rep.violations[0].reason == ViolationKind::EigenvariableViolation);
  // AX leaf is fine on its own
  CHECK(check(mk_node(seq("Q(a) => Q(a)"), RuleId::AX), System::RL2, true, {}).accepted);
}

TEST_CASE("identity elimination requires an atomic schema") {
  // canonical antecedent order sorts the identity after the other atoms
  Instantiation inst = principal_at(Side::Ant, 1);
  inst.atomic_schema = {fml("P(x) & Q(x)"), ind_var("x")};
  auto res = apply_rule(seq("b = c, P(b) & Q(b) => P(c)"), RuleId::EqMinus, inst);
  auto* e = std::get_if<RuleError>(&res);
  REQUIRE(e);
  CHECK(e->kind == ViolationKind::NotAtomic);

  // the happy path replaces exactly the schema positions
  Instantiation ok = principal_at(Side::Ant, 1);
  ok.atomic_schema = {fml("P(x)"), ind_var("x")};
  auto conc = seq("b = c, P(b) => P(c)");
  auto ps = premises_of(conc, RuleId::EqMinus, ok);
  REQUIRE(ps.size() == 1);
  CHECK(sequent_equal_alpha(ps[0], seq("P(c) => P(c)")));
}

TEST_CASE("axioms accept any formula shape") {
  CHECK(check(mk_node(seq("A x. P(x) => A y. P(y)"), RuleId::AX), System::RL2, true, {})
            .accepted);
  CHECK_FALSE(check(mk_node(seq("P(a), Q(a) => P(a)"), RuleId::AX), System::RL2, true, {})
                  .accepted);
}

TEST_CASE("transcribed tree 1 checks and fails exactly at its cut without cut") {
  auto r = parse_derivation(fixtures::kProp1Tree1);
  REQUIRE(std::holds_alternative<DerivationPtr>(r));
  auto d = std::get<DerivationPtr>(r);
  std::vector<Sequent> assumptions = {seq(fixtures::kProp1Tree1Assumption)};
  auto rep = check(d, System::RL2, true, assumptions);
  CHECK(rep.accepted);
  CHECK(rep.uses_cut);
  CHECK(node_count(d) == 4);
  auto nc = check(d, System::RL2, false, assumptions);
  REQUIRE(nc.violations.size() == 1);
  CHECK(nc.violations[0].reason == ViolationKind::CutForbidden);
  CHECK(nc.violations[0].rule == RuleId::Cut);
  // without the assumption the leaf is rejected as well
  CHECK_FALSE(check(d, System::RL2, true, {}).accepted);
}

TEST_CASE("transcribed tree 2 checks, height matches the displayed tree") {
  auto r = parse_derivation(fixtures::kProp1Tree2);
  REQUIRE(std::holds_alternative<DerivationPtr>(r));
  auto d = std::get<DerivationPtr>(r);
  std::vector<Sequent> assumptions = {seq(fixtures::kProp1Tree2Assumption)};
  auto rep = check(d, System::RL2, true, assumptions);
  CHECK(rep.accepted);
  CHECK(rep.uses_cut);
  CHECK(rep.height == 4);
  CHECK(node_count(d) == 7);
  auto nc = check(d, System::RL2, false, assumptions);
  REQUIRE(nc.violations.size() == 1);
  CHECK(nc.violations[0].reason == ViolationKind::CutForbidden);
}

TEST_CASE("assumption-restricted cuts implement provability from premises") {
  auto r = parse_derivation(fixtures::kProp1Tree1);
  auto d = std::get<DerivationPtr>(r);
  CheckOptions opts;
  opts.system = System::RL2;
  opts.cut_mode = CutMode::AssumptionsOnly;
  opts.assumptions = {seq(fixtures::kProp1Tree1Assumption)};
  CHECK(check(d, opts).accepted);  // the cut formula X = X occurs in the assumption
  // a cut on a formula outside the assumptions is rejected
  auto ax = mk_node(seq("P(a) => P(a)"), RuleId::AX);
  Instantiation cut;
  cut.cut_formula = fml("P(a)");
  auto d2 = mk_node(seq("P(a) => P(a)"), RuleId::Cut, cut,
                    {mk_node(seq("P(a) => P(a)"), RuleId::AX), ax});
  CheckOptions opts2 = opts;
  opts2.assumptions = {seq("Q(a) => Q(a)")};
  auto rep = check(d2, opts2);
  REQUIRE_FALSE(rep.accepted);
  CHECK(rep.violations[0].reason == ViolationKind::CutForbidden);
}

TEST_CASE("height is one plus the tallest premise") {
  auto leaf = mk_node(seq("P(a) => P(a)"), RuleId::AX);
  CHECK(height(leaf) == 1);
  Instantiation inst = principal_at(Side::Suc, 0);
  auto both = mk_node(seq("P(a) => P(a) & P(a)"), RuleId::AndR, inst, {leaf, leaf});
  CHECK(height(both) == 2);
}

TEST_CASE("the checker rejects second-order content in RL mode") {
  auto d = mk_node(seq("X(a) => X(a)"), RuleId::AX);
  auto rep = check(d, System::RL, true, {});
  REQUIRE_FALSE(rep.accepted);
  CHECK(rep.violations[0].reason == ViolationKind::BadInstantiation);
  // and second-order rules regardless of content
  auto eq = mk_node(seq("P(a) => P(a)"), RuleId::Eq2R, {}, {d, d});
  bool flagged = false;
  for (auto& v : check(eq, System::RL, true, {}).violations)
    if (v.detail.find("second-order rule") != std::string::npos) flagged = true;
  CHECK(flagged);
}

TEST_CASE("checker and applier agree on accepted prover output") {
  gen::Rng rng(71);
  gen::Pools pools;
  SearchConfig cfg;
  cfg.max_depth = 7;
  int agreed = 0;
  for (int i = 0; i < 40; ++i) {
    auto goal = gen::random_valid_goal(rng, pools);
    auto res = prove(goal, System::RL2, cfg);
    auto* dp = std::get_if<DerivationPtr>(&res);
    if (!dp) continue;
    walk(*dp, [&](const DerivationPtr& n) {
      if (n->rule == RuleId::AX || n->rule == RuleId::Assume) return;
      auto r = apply_rule(n->conclusion, n->rule, n->inst);
      REQUIRE(std::holds_alternative<std::vector<Sequent>>(r));
      auto& expected = std::get<std::vector<Sequent>>(r);
      REQUIRE(expected.size() == n->premises.size());
      for (size_t k = 0; k < expected.size(); ++k)
        CHECK(sequent_equal_alpha(expected[k], n->premises[k]->conclusion));
      ++agreed;
    });
  }
  CHECK(agreed > 50);
}

TEST_CASE("local soundness of every applied rule on prover output") {
  gen::Rng rng(73);
  gen::Pools pools;
  SearchConfig cfg;
  cfg.max_depth = 7;
  SearchBounds bounds;
  bounds.mode = FamilyMode::FullPowerset;
  int nodes_checked = 0;
  for (int i = 0; i < 25; ++i) {
    auto goal = gen::random_valid_goal(rng, pools);
    auto res = prove(goal, System::RL2, cfg);
    auto* dp = std::get_if<DerivationPtr>(&res);
    if (!dp) continue;
    walk(*dp, [&](const DerivationPtr& n) {
      // if all premises hold in a model, the conclusion holds there too:
      // equivalently, premises-valid and conclusion-refutable never co-occur
      if (n->premises.empty()) return;
      auto counter = find_countermodel(n->conclusion, bounds);
      if (auto* doc = std::get_if<ModelDocument>(&counter)) {
        bool some_premise_fails = false;
        for (auto& p : n->premises)
          if (!holds_sequent(doc->gm, doc->v, p->conclusion)) some_premise_fails = true;
        CHECK(some_premise_fails);
      }
      ++nodes_checked;
    });
  }
  CHECK(nodes_checked > 30);
}
