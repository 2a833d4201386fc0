#include <regex>

#include "doctest.h"
#include "rl2/fixtures.hpp"
#include "rl2/render.hpp"
#include "support/gen.hpp"

using namespace rl2;

TEST_CASE("ascii tree lists every node") {
  auto d = fixtures::prop1_tree2_min();
  auto out = render_ascii(d);
  CHECK(out.find("[Cut]") != std::string::npos);
  CHECK(out.find("[Eq2L]") != std::string::npos);
  CHECK(out.find("B = C, B(a) => C(a)") != std::string::npos);
}

TEST_CASE("latex output is a standalone bussproofs document") {
  auto d = fixtures::prop1_tree1_min();
  auto out = render_latex(d);
  CHECK(out.find("\\documentclass") != std::string::npos);
  CHECK(out.find("\\begin{prooftree}") != std::string::npos);
  CHECK(out.find("\\BinaryInfC") != std::string::npos);
  CHECK(out.find("\\end{document}") != std::string::npos);
}

TEST_CASE("sequents printed in the latex tree reparse to the node conclusions") {
  std::vector<DerivationPtr> trees = {fixtures::prop1_tree1_min(), fixtures::prop1_tree2_min()};
  SearchConfig cfg;
  cfg.max_depth = 10;
  for (const char* text : {"=> P(a) | !P(a)", "(\\x P(x)) (iota y. Q(y)) => E x. Q(x)",
                           "A2 X. X(a) => B(a)"}) {
    auto r = prove(seq(text), System::RL2, cfg);
    trees.push_back(std::get<DerivationPtr>(r));
  }
  std::regex arg(R"(\\(?:AxiomC|UnaryInfC|BinaryInfC|TrinaryInfC)\{\$(.*)\$\})");
  for (auto& d : trees) {
    auto out = render_latex(d);
    std::vector<Sequent> rendered;
    for (std::sregex_iterator it(out.begin(), out.end(), arg), end; it != end; ++it) {
      auto parsed = parse_sequent((*it)[1].str());
      REQUIRE_MESSAGE(std::holds_alternative<Sequent>(parsed), (*it)[1].str());
      rendered.push_back(std::get<Sequent>(parsed));
    }
    // every node conclusion appears among the rendered sequents
    std::vector<Sequent> conclusions;
    walk(d, [&](const DerivationPtr& n) { conclusions.push_back(n->conclusion); });
    CHECK(rendered.size() == conclusions.size());
    for (auto& c : conclusions) {
      bool found = false;
      for (auto& r : rendered)
        if (sequent_equal_alpha(r, c)) found = true;
      CHECK_MESSAGE(found, print_sequent(c));
    }
  }
}

TEST_CASE("latex formulas reparse through the tolerant lexer") {
  gen::Rng rng(97);
  gen::Pools pools;
  for (int i = 0; i < 200; ++i) {
    auto f = gen::random_formula(rng, pools, 3);
    auto tex = latex_formula(f);
    auto r = parse_formula(tex);
    REQUIRE_MESSAGE(parse_ok(r), tex);
    CHECK_MESSAGE(alpha_eq(std::get<FormulaPtr>(r), f), tex);
  }
}
