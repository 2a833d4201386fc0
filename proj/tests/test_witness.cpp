#include "doctest.h"
#include "support/gen.hpp"

using namespace rl2;

namespace {

ExtendedSequent es(const char* text) {
  auto r = parse_extended_sequent(text);
  REQUIRE(std::holds_alternative<ExtendedSequent>(r));
  return std::get<ExtendedSequent>(r);
}

}  // namespace

TEST_CASE("witness property clauses") {
  // clause 2 satisfied by the constant instance
  CHECK(check_witness_property(es("E x. P(x), P(k) =>")).empty());
  // clause 2 unsatisfied without it
  {
    auto v = check_witness_property(es("E x. P(x) =>"));
    REQUIRE(v.size() == 1);
    CHECK(v[0].clause == 2);
  }
  // clause 1: right-side universal needs a constant instance on the right
  {
    auto v = check_witness_property(es("=> A x. P(x)"));
    REQUIRE(v.size() == 1);
    CHECK(v[0].clause == 1);
    CHECK(check_witness_property(es("=> A x. P(x), P(k)")).empty());
  }
  // clause 3: second-order universal on the right
  {
    auto v = check_witness_property(es("=> A2 X. Q(a)"));
    REQUIRE(v.size() == 1);
    CHECK(v[0].clause == 3);
    // vacuous instance: the bound variable does not occur
    CHECK(check_witness_property(es("=> A2 X. Q(a), Q(a)")).empty());
  }
  // clause 5: left description needs one shared constant for both parts
  {
    auto v = check_witness_property(es("(\\x P(x)) (iota y. Q(y)) =>"));
    REQUIRE(v.size() == 1);
    CHECK(v[0].clause == 5);
    CHECK(check_witness_property(es("(\\x P(x)) (iota y. Q(y)), Q(k), P(k) =>")).empty());
    // different constants do not witness the shared clause
    auto split = check_witness_property(es("(\\x P(x)) (iota y. Q(y)), Q(k), P(k1) =>"));
    CHECK(split.size() == 1);
  }
  // clause 6: per parameter occurring in the sequent
  {
    auto v = check_witness_property(es("S(b) => (\\x P(x)) (iota y. Q(y))"));
    REQUIRE(v.size() == 1);
    CHECK(v[0].clause == 6);
    REQUIRE(v[0].parameter);
    CHECK(v[0].parameter->spelling() == "b");
    CHECK(check_witness_property(es("S(b) => (\\x P(x)) (iota y. Q(y)), Q(b)")).empty());
    // third disjunct form
    CHECK(check_witness_property(es("Q(k), S(b) => (\\x P(x)) (iota y. Q(y)), k = b")).empty());
  }
  // clause 7 and 8, relational descriptions
  {
    auto v = check_witness_property(es("(\\X X(a)) (iota Y. Y(a)) =>"));
    REQUIRE(v.size() == 1);
    CHECK(v[0].clause == 7);
    CHECK(check_witness_property(es("(\\X X(a)) (iota Y. Y(a)), K(a) =>")).empty());
    v = check_witness_property(es("B(a) => (\\X X(a)) (iota Y. Y(a))"));
    REQUIRE(v.size() == 1);
    CHECK(v[0].clause == 8);
  }
  // clause 9: relational identity on the right needs a separating tuple
  {
    auto v = check_witness_property(es("=> X = Y"));
    REQUIRE(v.size() == 1);
    CHECK(v[0].clause == 9);
    CHECK(check_witness_property(es("X(k) => X = Y, Y(k)")).empty());
    CHECK(check_witness_property(es("Y(k) => X = Y, X(k)")).empty());
    // parameters do not count as separating witnesses
    CHECK_FALSE(check_witness_property(es("X(b) => X = Y, Y(b)")).empty());
  }
}

TEST_CASE("saturation adds exactly the lemma's witnesses") {
  auto sat = saturate(es("E x. P(x) =>"), 8);
  CHECK(print_extended(sat.result) == "E x. P(x), P(k1) =>");
  sat = saturate(es("=> A x. P(x)"), 8);
  CHECK(print_extended(sat.result) == "=> A x. P(x), P(k1)");
  // already saturated input is a fixpoint
  auto done = es("E x. P(x), P(k) =>");
  sat = saturate(done, 8);
  CHECK(sat.result.subset_of(done));
  CHECK(done.subset_of(sat.result));
}

TEST_CASE("saturation is monotone and idempotent") {
  gen::Rng rng(89);
  gen::Pools pools;
  for (int i = 0; i < 40; ++i) {
    FormulaMultiset ant, suc;
    for (int k = rng.below(2); k >= 0; --k) ant.push_back(gen::random_formula(rng, pools, 2));
    for (int k = rng.below(2); k >= 0; --k) suc.push_back(gen::random_formula(rng, pools, 2));
    ExtendedSequent start(ant, suc);
    auto sat = saturate(start, 40);
    CHECK(start.subset_of(sat.result));
    if (!sat.budget_exhausted) {
      CHECK(sat.remaining.empty());
      auto again = saturate(sat.result, 40);
      CHECK(sat.result.subset_of(again.result));
      CHECK(again.result.subset_of(sat.result));
    }
  }
}

TEST_CASE("budget exhaustion reports a partial result") {
  auto sat = saturate(es("E x. P(x), E x. Q(x) =>"), 1);
  CHECK(sat.budget_exhausted);
  CHECK_FALSE(sat.remaining.empty());
  // the partial result still extends the input
  CHECK(es("E x. P(x), E x. Q(x) =>").subset_of(sat.result));
}

TEST_CASE("relational identity saturation separates the sides") {
  auto sat = saturate(es("=> X = Y"), 8);
  CHECK(sat.remaining.empty());
  CHECK(sat.result.contains(Side::Ant, fml("X(k1)")));
  CHECK(sat.result.contains(Side::Suc, fml("Y(k1)")));
}

TEST_CASE("second-order saturation introduces relational constants") {
  auto sat = saturate(es("E2 X. X(a) =>"), 8);
  CHECK(sat.remaining.empty());
  CHECK(sat.result.contains(Side::Ant, fml("K1(a)")));
  sat = saturate(es("(\\X X(a)) (iota Y. Y(a)) =>"), 8);
  CHECK(sat.remaining.empty());
  CHECK(sat.result.contains(Side::Ant, fml("K1(a)")));
}

TEST_CASE("consistency-guided policy avoids closing additions when it can") {
  // with P(b) already on the left, the first disjunct Q(b)... stays usable;
  // but an addition that closes the sequent is screened out
  auto start = es("Q(b) => (\\x P(x)) (iota y. Q(y))");
  auto first = saturate(start, 8, SaturatePolicy::FirstDisjunct);
  // first-disjunct policy bluntly adds Q(b) to the right, closing the pair
  CHECK(first.result.contains(Side::Suc, fml("Q(b)")));
  auto guided = saturate(start, 8, SaturatePolicy::ConsistencyGuided);
  CHECK_FALSE(guided.result.contains(Side::Suc, fml("Q(b)")));
}
