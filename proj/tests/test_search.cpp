#include "doctest.h"
#include "rl2/fixtures.hpp"
#include "support/gen.hpp"

using namespace rl2;

namespace {

DerivationPtr proved(const char* text, System sys = System::RL2, int depth = 8) {
  SearchConfig cfg;
  cfg.max_depth = depth;
  auto r = prove(seq(text), sys, cfg);
  auto* d = std::get_if<DerivationPtr>(&r);
  REQUIRE_MESSAGE(d, text);
  return *d;
}

}  // namespace

TEST_CASE("search finds the textbook derivations") {
  auto d = proved("=> P(a) | !P(a)");
  CHECK(height(d) <= 4);
  CHECK(check(d, System::RL2, false, {}).accepted);

  d = proved("b = c, P(b) => P(c)");
  CHECK(height(d) == 2);  // identity elimination straight into an axiom
  CHECK(d->rule == RuleId::EqMinus);

  d = proved("B = C, B(a) => C(a)");
  CHECK(d->rule == RuleId::Eq2L);
  CHECK(check(d, System::RL2, false, {}).accepted);
}

TEST_CASE("underivable goals exhaust") {
  SearchConfig cfg;
  cfg.max_depth = 6;
  auto r = prove(seq("=> P(a)"), System::RL2, cfg);
  CHECK(std::holds_alternative<Exhausted>(r));
  r = prove(seq("P(a) => Q(a)"), System::RL2, cfg);
  CHECK(std::holds_alternative<Exhausted>(r));
  // Henkin semantics: comprehension is not derivable
  r = prove(seq("=> E2 X. A x. (X(x) <-> P(x))"), System::RL2, cfg);
  CHECK(std::holds_alternative<Exhausted>(r));
}

TEST_CASE("every returned derivation is cut-free and checks") {
  SearchConfig cfg;
  cfg.max_depth = 12;
  for (auto& text : fixtures::valid_sequents()) {
    auto r = prove(seq(text), System::RL2, cfg);
    auto* d = std::get_if<DerivationPtr>(&r);
    REQUIRE_MESSAGE(d, text);
    CHECK_FALSE(uses_cut(*d));
    auto rep = check(*d, System::RL2, false, {});
    CHECK_MESSAGE(rep.accepted, text);
    CHECK(sequent_equal_alpha((*d)->conclusion, seq(text)));
  }
}

TEST_CASE("search is deterministic") {
  SearchConfig cfg;
  cfg.max_depth = 9;
  for (const char* text : {"=> P(a) | !P(a)", "b = c => c = b", "A2 X. X(a) => B(a)"}) {
    auto r1 = prove(seq(text), System::RL2, cfg);
    auto r2 = prove(seq(text), System::RL2, cfg);
    CHECK(print_derivation(std::get<DerivationPtr>(r1)) ==
          print_derivation(std::get<DerivationPtr>(r2)));
  }
}

TEST_CASE("RL mode refuses second-order goals and never uses second-order rules") {
  CHECK_THROWS_AS(prove(seq("=> X = X"), System::RL, {}), std::invalid_argument);
  auto d = proved("A x. P(x) => P(a)", System::RL);
  walk(d, [](const DerivationPtr& n) { CHECK_FALSE(is_second_order_rule(n->rule)); });
}

TEST_CASE("cut-using fixtures are re-proved cut-free") {
  SearchConfig cfg;
  cfg.max_depth = 12;
  for (auto d : {fixtures::prop1_tree1_min(), fixtures::prop1_tree2_min(),
                 fixtures::prop1_tree1_closed(), fixtures::prop1_tree2_closed()}) {
    REQUIRE(uses_cut(d));
    auto r = prove(d->conclusion, System::RL2, cfg);
    auto* found = std::get_if<DerivationPtr>(&r);
    REQUIRE_MESSAGE(found, print_sequent(d->conclusion));
    CHECK_FALSE(uses_cut(*found));
    CHECK(check(*found, System::RL2, false, {}).accepted);
  }
}

TEST_CASE("exhaustion reports the deepest frontier") {
  SearchConfig cfg;
  cfg.max_depth = 2;
  auto r = prove(seq("P(a) => P(a) & (P(a) & P(a))"), System::RL2, cfg);
  auto* e = std::get_if<Exhausted>(&r);
  REQUIRE(e);
  CHECK_FALSE(e->frontier.empty());
}

TEST_CASE("time budget surfaces as a resource limit") {
  SearchConfig cfg;
  cfg.max_depth = 30;
  cfg.time_budget_ms = 1;
  auto r = prove(seq("A x. E y. R(x,y), A x. A y. (R(x,y) -> R(y,x)) => E x. R(x,x)"),
                 System::RL2, cfg);
  // either it exhausts quickly or the clock fires; both are bounded outcomes
  CHECK_FALSE(std::holds_alternative<DerivationPtr>(r));
}

TEST_CASE("prover and countermodel search never both succeed") {
  gen::Rng rng(83);
  gen::Pools pools;
  pools.descriptions = false;
  SearchConfig cfg;
  cfg.max_depth = 6;
  SearchBounds bounds;
  bounds.mode = FamilyMode::FullPowerset;
  int refuted = 0, provedn = 0;
  for (int i = 0; i < 60; ++i) {
    auto s = gen::random_sequent(rng, pools, 2);
    bool has_proof = false, has_counter = false;
    auto pr = prove(s, System::RL2, cfg);
    has_proof = std::holds_alternative<DerivationPtr>(pr);
    try {
      has_counter = std::holds_alternative<ModelDocument>(find_countermodel(s, bounds));
    } catch (const EvalError&) {
      continue;
    }
    CHECK_FALSE((has_proof && has_counter));
    refuted += has_counter;
    provedn += has_proof;
  }
  CHECK(refuted > 5);
  CHECK(provedn > 0);
}
