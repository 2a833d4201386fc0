#include "doctest.h"
#include "support/gen.hpp"

using namespace rl2;

TEST_CASE("symbol equality covers kind, base, index, and arity") {
  CHECK(rel_var("X", 1) == rel_var("X", 1));
  CHECK(rel_var("X", 1) != rel_var("X", 2));
  CHECK(ind_par("a") != ind_par("a", 1));
  CHECK(ind_par("a").spelling() == "a");
  CHECK(ind_par("a", 12).spelling() == "a12");
  CHECK_THROWS_AS(rel_var("X", 0), std::invalid_argument);
  CHECK_THROWS_AS(Term(rel_var("X", 1)), std::invalid_argument);
}

TEST_CASE("free symbols exclude bound occurrences") {
  auto fs = free_symbols(fml("A x. P(x,a)"));
  CHECK(fs.count(pred_sym("P", 2)) == 1);
  CHECK(fs.count(ind_par("a")) == 1);
  CHECK(fs.size() == 2);

  fs = free_symbols(fml("(\\x P(x)) (iota y. Q(y))"));
  CHECK(fs.count(pred_sym("P", 1)) == 1);
  CHECK(fs.count(pred_sym("Q", 1)) == 1);
  CHECK(fs.size() == 2);

  // first occurrence of X free, the quantified one bound
  fs = free_symbols(fml("X(a) & E2 X. X(b)"));
  CHECK(fs.count(rel_var("X", 1)) == 1);
  CHECK(fs.count(ind_par("a")) == 1);
  CHECK(fs.count(ind_par("b")) == 1);
  CHECK(fs.size() == 3);
}

TEST_CASE("alpha equivalence") {
  CHECK(alpha_eq(fml("A x. P(x)"), fml("A y. P(y)")));
  CHECK(alpha_eq(fml("(\\x P(x)) (iota y. Q(y))"), fml("(\\z P(z)) (iota w. Q(w))")));
  CHECK_FALSE(alpha_eq(fml("A x. P(x)"), fml("A x. Q(x)")));
  CHECK_FALSE(alpha_eq(fml("A x. P(x)"), fml("E x. P(x)")));
  CHECK(alpha_eq(fml("A2 X. X(a)"), fml("A2 Y. Y(a)")));
  CHECK_FALSE(alpha_eq(fml("X(a)"), fml("Y(a)")));  // free variables stay rigid
}

TEST_CASE("alpha equivalence is an equivalence relation on generated formulas") {
  gen::Rng rng(7);
  gen::Pools pools;
  for (int i = 0; i < 200; ++i) {
    auto f = gen::random_formula(rng, pools, 3);
    auto g = gen::random_formula(rng, pools, 3);
    auto h = gen::random_formula(rng, pools, 3);
    CHECK(alpha_eq(f, f));
    CHECK(alpha_eq(f, g) == alpha_eq(g, f));
    if (alpha_eq(f, g) && alpha_eq(g, h)) CHECK(alpha_eq(f, h));
    // the alpha key agrees with alpha_eq
    CHECK((alpha_key(f) == alpha_key(g)) == alpha_eq(f, g));
  }
}

TEST_CASE("arity consistency check") {
  CHECK(arity_consistent(fml("P(a) & A x. P(x)")));
  // programmatic clash: same spelling at two arities
  auto bad = mk_and(mk_pred_atom(pred_sym("P", 1), {Term(ind_par("a"))}),
                    mk_pred_atom(pred_sym("P", 2), {Term(ind_par("a")), Term(ind_par("b"))}));
  CHECK_FALSE(arity_consistent(bad));
}

TEST_CASE("second-order syntax detection") {
  CHECK_FALSE(uses_second_order(fml("A x. (P(x) -> Q(x))")));
  CHECK(uses_second_order(fml("X(a)")));
  CHECK(uses_second_order(fml("A2 X. P(a)")));
  CHECK(uses_second_order(fml("(\\X X(k)) (iota Y. Y(k))")));
  CHECK_FALSE(uses_second_order(fml("(\\x P(x)) (iota y. Q(y))")));
}

TEST_CASE("sequent multisets are order-insensitive but duplicate-sensitive") {
  Sequent a = seq("P(a), Q(a) => P(b)");
  Sequent b = seq("Q(a), P(a) => P(b)");
  CHECK(sequent_equal_alpha(a, b));
  Sequent c = seq("P(a), P(a) => P(b)");
  Sequent d = seq("P(a) => P(b)");
  CHECK_FALSE(sequent_equal_alpha(c, d));
  // alpha-variant members align even when print order differs
  Sequent e({fml("A x. P(x)"), fml("A y. Q(y)")}, {});
  Sequent f({fml("A z. Q(z)"), fml("A w. P(w)")}, {});
  CHECK(sequent_equal_alpha(e, f));
}

TEST_CASE("absorbing union keeps the larger multiplicity") {
  auto p = fml("P(a)"), q = fml("Q(a)");
  auto r = mset_absorb({p}, {p, q});
  CHECK(r.size() == 2);
  r = mset_absorb({p, p}, {p});
  CHECK(r.size() == 2);
  r = mset_absorb({p}, {p, p});
  CHECK(r.size() == 2);
  r = mset_sum({p}, {p});
  CHECK(r.size() == 2);
}
