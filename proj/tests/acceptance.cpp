// Acceptance suite: runs every shipping criterion end to end and prints one
// pass/fail line each. Takes the CLI binary and the fixtures directory as
// arguments so the command-level contracts are exercised for real.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

#include "json.hpp"
#include "rl2/fixtures.hpp"
#include "rl2/selftest.hpp"
#include "support/gen.hpp"

using namespace rl2;

namespace {

std::string g_cli;
std::string g_fixtures;
int g_failures = 0;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void line(int criterion, const std::string& name, bool ok, const std::string& note = "") {
  std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << criterion << ": " << name;
  if (!note.empty()) std::cout << "  [" << note << "]";
  std::cout << "\n";
  if (!ok) ++g_failures;
}

struct CliResult {
  int exit_code = -1;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  std::string out_path = "/tmp/rlkit_acceptance_out.txt";
  std::string cmd = g_cli + " " + args + " > " + out_path + " 2>&1";
  int status = std::system(cmd.c_str());
  CliResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out_path);
  std::stringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  return r;
}

std::string fixture(const std::string& name) { return g_fixtures + "/" + name; }

// ---- corpus of accepted derivations shared by criteria 3 and 7 -------------

std::vector<DerivationPtr> build_accepted_corpus(int want) {
  std::vector<DerivationPtr> corpus;
  corpus.push_back(fixtures::prop1_tree1_min());
  corpus.push_back(fixtures::prop1_tree2_min());
  corpus.push_back(fixtures::prop1_tree1_closed());
  corpus.push_back(fixtures::prop1_tree2_closed());
  SearchConfig cfg;
  cfg.max_depth = 8;
  for (auto& text : fixtures::valid_sequents()) {
    auto r = prove(seq(text), System::RL2, cfg);
    if (auto* d = std::get_if<DerivationPtr>(&r)) corpus.push_back(*d);
  }
  gen::Rng rng(101);
  gen::Pools pools = gen::lean_pools();
  SearchConfig quick;
  quick.max_depth = 7;
  while ((int)corpus.size() < want) {
    auto goal = gen::random_valid_goal(rng, pools);
    auto r = prove(goal, System::RL2, quick);
    if (auto* d = std::get_if<DerivationPtr>(&r)) corpus.push_back(*d);
  }
  return corpus;
}

// ---- criteria ---------------------------------------------------------------

void criterion1() {
  auto start = Clock::now();
  bool ok = true;
  std::string note;

  auto accepted = [&](const std::string& proof, const std::string& assumptions) {
    auto r = run_cli("check --system rl2 --assumptions " + fixture(assumptions) + " " +
                     fixture(proof) + " --json");
    return r.exit_code == 0;
  };
  auto rejected_at_cut = [&](const std::string& proof, const std::string& assumptions) {
    auto r = run_cli("check --system rl2 --no-cut --assumptions " + fixture(assumptions) + " " +
                     fixture(proof) + " --json");
    if (r.exit_code != 1) return false;
    auto j = nlohmann::json::parse(r.out);
    return j["violations"].size() == 1 && j["violations"][0]["reason"] == "CutForbidden" &&
           j["violations"][0]["rule"] == "Cut";
  };

  ok = ok && accepted("prop1_tree1.proof.json", "prop1_tree1.assumptions");
  ok = ok && accepted("prop1_tree2.proof.json", "prop1_tree2.assumptions");
  ok = ok && rejected_at_cut("prop1_tree1.proof.json", "prop1_tree1.assumptions");
  ok = ok && rejected_at_cut("prop1_tree2.proof.json", "prop1_tree2.assumptions");

  double t = seconds_since(start);
  if (t >= 1.0) {
    ok = false;
    note = "over the 1 s budget";
  }
  line(1, "transcribed rule derivations check, and fail exactly at their cuts", ok,
       "4 CLI runs, " + std::to_string(t).substr(0, 5) + " s");
}

void criterion2() {
  int total = 0, right = 0;
  auto expect = [&](const DerivationPtr& d, ViolationKind want, const CheckOptions& opts = [] {
    CheckOptions o;
    o.system = System::RL2;
    return o;
  }()) {
    ++total;
    auto rep = check(d, opts);
    if (rep.accepted) return;
    for (auto& v : rep.violations)
      if (v.reason == want) {
        ++right;
        return;
      }
  };
  auto inst_p = [](Side side, int index) {
    Instantiation i;
    i.principal = OccRef{side, index};
    return i;
  };

  // eigen symbol occurring in Gamma, Delta, or the principal formula, for
  // every eigen rule
  {
    auto i = inst_p(Side::Suc, 0);
    i.eigens = {ind_par("a")};
    expect(mk_node(seq("Q(a) => A x. P(x)"), RuleId::AllR, i,
                   {mk_node(seq("Q(a) => P(a)"), RuleId::AX)}),
           ViolationKind::EigenvariableViolation);
    expect(mk_node(seq("=> A x. P(x), Q(a)"), RuleId::AllR, i,
                   {mk_node(seq("=> P(a), Q(a)"), RuleId::AX)}),
           ViolationKind::EigenvariableViolation);
    expect(mk_node(seq("=> A x. R(x,a)"), RuleId::AllR, i,
                   {mk_node(seq("=> R(a,a)"), RuleId::AX)}),
           ViolationKind::EigenvariableViolation);
  }
  {
    auto i = inst_p(Side::Ant, 0);
    i.eigens = {ind_par("a")};
    expect(mk_node(seq("E x. P(x), Q(a) => "), RuleId::ExL, i,
                   {mk_node(seq("P(a), Q(a) => "), RuleId::AX)}),
           ViolationKind::EigenvariableViolation);
  }
  {
    auto i = inst_p(Side::Suc, 0);
    i.witnesses = {ind_par("b")};
    i.eigens = {ind_par("a")};
    expect(mk_node(seq("Q(a) => (\\x P(x)) (iota y. S(y))"), RuleId::IotaR, i,
                   {mk_node(seq("Q(a) => S(b)"), RuleId::AX),
                    mk_node(seq("Q(a) => P(b)"), RuleId::AX),
                    mk_node(seq("S(a), Q(a) => a = b"), RuleId::AX)}),
           ViolationKind::EigenvariableViolation);
    // eigen equal to the witness
    Instantiation j = inst_p(Side::Suc, 0);
    j.witnesses = {ind_par("a")};
    j.eigens = {ind_par("a")};
    expect(mk_node(seq("=> (\\x P(x)) (iota y. S(y))"), RuleId::IotaR, j,
                   {mk_node(seq("=> S(a)"), RuleId::AX), mk_node(seq("=> P(a)"), RuleId::AX),
                    mk_node(seq("S(a) => a = a"), RuleId::AX)}),
           ViolationKind::EigenvariableViolation);
  }
  {
    auto i = inst_p(Side::Suc, 0);
    i.eigens = {rel_par("A", 1)};
    expect(mk_node(seq("A(b) => A2 X. X(b)"), RuleId::All2R, i,
                   {mk_node(seq("A(b) => A(b)"), RuleId::AX)}),
           ViolationKind::EigenvariableViolation);
  }
  {
    auto i = inst_p(Side::Ant, 0);
    i.eigens = {rel_par("A", 1)};
    expect(mk_node(seq("E2 X. X(b) => A(b)"), RuleId::Ex2L, i,
                   {mk_node(seq("A(b) => A(b)"), RuleId::AX)}),
           ViolationKind::EigenvariableViolation);
  }
  {
    auto i = inst_p(Side::Ant, 0);
    i.eigens = {rel_par("A", 1)};
    expect(mk_node(seq("(\\X X(b)) (iota Y. A(b)) => "), RuleId::Iota1L2, i,
                   {mk_node(seq("A(b), A(b) => "), RuleId::AX)}),
           ViolationKind::EigenvariableViolation);
  }
  {
    auto i = inst_p(Side::Suc, 0);
    i.witnesses = {rel_par("B", 1)};
    i.eigens = {rel_par("A", 1)};
    expect(mk_node(seq("A(b) => (\\X X(b)) (iota Y. Y(b))"), RuleId::IotaR2, i,
                   {mk_node(seq("A(b) => B(b)"), RuleId::AX),
                    mk_node(seq("A(b) => B(b)"), RuleId::AX),
                    mk_node(seq("A(b), A(b) => A = B"), RuleId::AX)}),
           ViolationKind::EigenvariableViolation);
  }
  {
    // shared eigen tuple must be pairwise distinct and fresh
    auto i = inst_p(Side::Suc, 0);
    i.eigens = {ind_par("c"), ind_par("c")};
    expect(mk_node(seq("Z(a,b) => Z = Z"), RuleId::Eq2R, i,
                   {mk_node(seq("Z(c,c), Z(a,b) => Z(c,c)"), RuleId::AX),
                    mk_node(seq("Z(c,c), Z(a,b) => Z(c,c)"), RuleId::AX)}),
           ViolationKind::EigenvariableViolation);
  }

  // non-atomic schema in identity elimination (the identity sorts last in
  // the canonical antecedent order)
  {
    auto i = inst_p(Side::Ant, 1);
    i.atomic_schema = {fml("P(x) & Q(x)"), ind_var("x")};
    expect(mk_node(seq("b = c, P(b) & Q(b) => "), RuleId::EqMinus, i,
                   {mk_node(seq("P(c) & Q(c) => "), RuleId::AX)}),
           ViolationKind::NotAtomic);
    Instantiation j = inst_p(Side::Ant, 1);
    j.atomic_schema = {fml("A x. P(x)"), ind_var("x")};
    expect(mk_node(seq("b = c, A x. P(x) => "), RuleId::EqMinus, j,
                   {mk_node(seq("A x. P(x) => "), RuleId::AX)}),
           ViolationKind::NotAtomic);
  }

  // wrong premise counts
  {
    auto ax = mk_node(seq("P(a) => P(a)"), RuleId::AX);
    expect(mk_node(seq("P(a) & Q(a) => P(a)"), RuleId::AndL, inst_p(Side::Ant, 0), {ax, ax}),
           ViolationKind::WrongPremiseCount);
    expect(mk_node(seq("=> P(a) & P(a)"), RuleId::AndR, inst_p(Side::Suc, 0), {ax}),
           ViolationKind::WrongPremiseCount);
    Instantiation cut;
    cut.cut_formula = fml("P(a)");
    expect(mk_node(seq("=> P(a)"), RuleId::Cut, cut, {ax}), ViolationKind::WrongPremiseCount);
    auto i = inst_p(Side::Suc, 0);
    i.witnesses = {ind_par("b")};
    i.eigens = {ind_par("c")};
    expect(mk_node(seq("=> (\\x P(x)) (iota y. S(y))"), RuleId::IotaR, i,
                   {mk_node(seq("=> S(b)"), RuleId::AX), mk_node(seq("=> P(b)"), RuleId::AX)}),
           ViolationKind::WrongPremiseCount);
  }

  // mismatched principal or premise shapes
  {
    auto i = inst_p(Side::Ant, 0);
    expect(mk_node(seq("P(a) & Q(a) => "), RuleId::AndL, i,
                   {mk_node(seq("P(a), P(b) => "), RuleId::AX)}),
           ViolationKind::PremiseMismatch);
    expect(mk_node(seq("P(a) | Q(a) => "), RuleId::AndL, i,
                   {mk_node(seq("P(a), Q(a) => "), RuleId::AX)}),
           ViolationKind::BadInstantiation);
    auto j = inst_p(Side::Suc, 0);
    j.witnesses = {ind_par("b")};
    expect(mk_node(seq("=> E x. P(x)"), RuleId::ExR, j,
                   {mk_node(seq("=> Q(b)"), RuleId::AX)}),
           ViolationKind::PremiseMismatch);
    // premise grows beyond the schema
    expect(mk_node(seq("P(a) => Q(a)"), RuleId::WL, inst_p(Side::Ant, 0),
                   {mk_node(seq("S(c) => Q(a)"), RuleId::AX)}),
           ViolationKind::PremiseMismatch);
    // identity elimination pointed at a missing instance
    auto k = inst_p(Side::Ant, 1);
    k.atomic_schema = {fml("P(x)"), ind_var("x")};
    expect(mk_node(seq("b = c, Q(b) => "), RuleId::EqMinus, k,
                   {mk_node(seq("P(c), Q(b) => "), RuleId::AX)}),
           ViolationKind::BadInstantiation);
    // relational witness of the wrong arity
    auto m = inst_p(Side::Ant, 0);
    m.witnesses = {rel_par("B", 2)};
    expect(mk_node(seq("A2 X. X(a) => "), RuleId::All2L, m,
                   {mk_node(seq("B(a,a) => "), RuleId::AX)}),
           ViolationKind::ArityMismatch);
  }

  line(2, "mutation suite rejected with the named violation kinds",
       right == total && total >= 20,
       std::to_string(right) + "/" + std::to_string(total) + " mutations");
}

void criterion3() {
  auto start = Clock::now();
  auto corpus = build_accepted_corpus(200);
  int sound = 0, accepted = 0;
  for (auto& d : corpus) {
    if (!check(d, System::RL2, true, {}).accepted) continue;
    ++accepted;
    if (holds_everywhere(d->conclusion, 2, 2)) ++sound;
  }
  double t = seconds_since(start);
  bool ok = accepted >= 200 && sound == accepted && t < 60.0;
  line(3, "soundness sweep over accepted derivations", ok,
       std::to_string(sound) + "/" + std::to_string(accepted) + " end-sequents hold, " +
           std::to_string(t).substr(0, 5) + " s");
}

void criterion4() {
  auto start = Clock::now();
  SearchConfig cfg;
  cfg.max_depth = 12;

  // every assumption-free fixture derivation that uses a cut
  std::vector<DerivationPtr> cut_fixtures = {
      fixtures::prop1_tree1_min(),
      fixtures::prop1_tree2_min(),
      fixtures::prop1_tree1_closed(),
      fixtures::prop1_tree2_closed(),
  };
  {
    // a propositional detour through a cut lemma
    Instantiation cut;
    cut.cut_formula = fml("P(a)");
    cut.has_cut_split = true;
    auto left = prove(seq("P(a), Q(a) => P(a)"), System::RL2, cfg);
    auto right = prove(seq("P(a) => P(a) | Q(b)"), System::RL2, cfg);
    cut_fixtures.push_back(mk_node(seq("P(a), Q(a) => P(a) | Q(b)"), RuleId::Cut, cut,
                                   {std::get<DerivationPtr>(left),
                                    std::get<DerivationPtr>(right)}));
  }
  bool ok = true;
  int refound = 0;
  for (auto& d : cut_fixtures) {
    if (!uses_cut(d) || !check(d, System::RL2, true, {}).accepted) {
      ok = false;
      continue;
    }
    auto r = prove(d->conclusion, System::RL2, cfg);
    auto* found = std::get_if<DerivationPtr>(&r);
    if (found && !uses_cut(*found) && check(*found, System::RL2, false, {}).accepted &&
        height(*found) <= 12)
      ++refound;
    else
      ok = false;
  }

  // the transcribed trees at the fixed instantiation prove their end-sequents
  // from the assumption set with every cut on an assumption formula
  bool cf_ok = true;
  for (auto& [file, assumption] :
       {std::pair{fixtures::kProp1Tree1, fixtures::kProp1Tree1Assumption},
        std::pair{fixtures::kProp1Tree2, fixtures::kProp1Tree2Assumption}}) {
    auto d = std::get<DerivationPtr>(parse_derivation(file));
    CheckOptions opts;
    opts.system = System::RL2;
    opts.cut_mode = CutMode::AssumptionsOnly;
    opts.assumptions = {seq(assumption)};
    cf_ok = cf_ok && check(d, opts).accepted;
  }

  double t = seconds_since(start);
  ok = ok && cf_ok && t < 30.0;
  line(4, "cut-using fixtures re-proved cut-free at depth 12", ok,
       std::to_string(refound) + "/" + std::to_string(cut_fixtures.size()) +
           " re-proved; assumption-relative cuts verified; " + std::to_string(t).substr(0, 5) +
           " s");
}

void criterion5() {
  std::vector<std::string> corpus = fixtures::valid_sequents();
  auto invalid = fixtures::invalid_sequents();
  corpus.insert(corpus.end(), invalid.begin(), invalid.end());
  for (auto& text : fixtures::edge_sequents()) corpus.push_back(text);
  gen::Rng rng(103);
  gen::Pools pools = gen::lean_pools();
  pools.descriptions = false;
  while (corpus.size() < 110) corpus.push_back(print_sequent(gen::random_sequent(rng, pools, 2)));

  // deep enough for every provable member (the corpus needs at most 6);
  // exhaustion must still terminate quickly on the refutable ones
  SearchConfig cfg;
  cfg.max_depth = 7;
  SearchBounds bounds;
  bounds.mode = FamilyMode::FullPowerset;
  bounds.max_domain = 2;

  int proved_n = 0, refuted_n = 0, both = 0, refuted_but_proved = 0;
  for (auto& text : corpus) {
    Sequent s = seq(text);
    bool has_proof = std::holds_alternative<DerivationPtr>(prove(s, System::RL2, cfg));
    bool has_counter = false;
    try {
      has_counter = std::holds_alternative<ModelDocument>(find_countermodel(s, bounds));
    } catch (const EvalError&) {
      continue;  // outside the enumeration bounds; exclusivity is not at issue
    }
    proved_n += has_proof;
    refuted_n += has_counter;
    if (has_proof && has_counter) ++both;
    if (has_counter && has_proof) ++refuted_but_proved;
  }
  bool ok = both == 0 && refuted_but_proved == 0 && proved_n >= 30 && refuted_n >= 30 &&
            (int)corpus.size() >= 100;
  line(5, "prover/countermodel exclusivity over the corpus", ok,
       std::to_string(corpus.size()) + " sequents, " + std::to_string(proved_n) + " proved, " +
           std::to_string(refuted_n) + " refuted, " + std::to_string(both) + " overlaps");
}

void criterion6() {
  // the CLI refutes the comprehension instance over restricted families
  auto counter = run_cli(
      "countermodel --max-domain 1 --families all-subfamilies "
      "\"=> E2 X. (A x. (X(x) <-> P(x)))\"");
  bool found = counter.exit_code == 0 && counter.out.find("G1 = {{}}") != std::string::npos &&
               counter.out.find("P = {(0)}") != std::string::npos;

  // while the formula is true in every full model with |D| <= 2
  bool full_ok = true;
  auto f = fml("E2 X. (A x. (X(x) <-> P(x)))");
  for (int d = 1; d <= 2; ++d)
    for (auto& p : powerset_relations(d, 1)) {
      Model m;
      m.domain_size = d;
      m.pred_interp["P"] = p;
      if (!eval_full(m, {}, f)) full_ok = false;
    }
  auto eval_cli = run_cli("eval --model " + fixture("henkin_gap.model") +
                          " --full \"E2 X. (A x. (X(x) <-> P(x)))\"");
  bool cli_full = eval_cli.exit_code == 0 && eval_cli.out.find("true") != std::string::npos;
  auto eval_henkin = run_cli("eval --model " + fixture("henkin_gap.model") +
                             " \"E2 X. (A x. (X(x) <-> P(x)))\"");
  bool cli_henkin = eval_henkin.exit_code == 1 && eval_henkin.out.find("false") != std::string::npos;

  line(6, "restricted families refute what full models satisfy",
       found && full_ok && cli_full && cli_henkin);
}

void criterion7() {
  auto corpus = build_accepted_corpus(120);
  int tried = 0, good = 0;
  for (auto& d : corpus) {
    if (tried >= 100) break;
    std::set<std::string> pars;
    walk(d, [&](const DerivationPtr& n) {
      for (auto& s : free_symbols(n->conclusion))
        if (s.kind == SymbolKind::IndPar || s.kind == SymbolKind::RelPar)
          pars.insert(s.spelling());
    });
    if (pars.empty()) continue;
    ++tried;
    std::string spelling = *pars.begin();
    bool relational = std::isupper((unsigned char)spelling[0]);
    SymbolName from, to;
    if (relational) {
      // recover the arity from any occurrence
      int arity = 1;
      walk(d, [&](const DerivationPtr& n) {
        for (auto& s : free_symbols(n->conclusion))
          if (s.spelling() == spelling) arity = s.arity;
      });
      from = rel_par(spelling.substr(0, 1), arity,
                     spelling.size() > 1 ? std::optional<int>(std::stoi(spelling.substr(1)))
                                         : std::nullopt);
      to = rel_par("C", arity, 77);
    } else {
      from = ind_par(spelling.substr(0, 1),
                     spelling.size() > 1 ? std::optional<int>(std::stoi(spelling.substr(1)))
                                         : std::nullopt);
      to = ind_par("d", 77);
    }
    auto r = rename_parameter(d, from, to);
    auto* out = std::get_if<DerivationPtr>(&r);
    if (!out) continue;
    bool height_same = height(*out) == height(d);
    bool renamed_goal = sequent_equal_alpha(
        (*out)->conclusion,
        [&] {
          FormulaMultiset ant, suc;
          for (auto& g : d->conclusion.ant) ant.push_back(replace_free_symbol(g, from, to));
          for (auto& g : d->conclusion.suc) suc.push_back(replace_free_symbol(g, from, to));
          return Sequent(ant, suc);
        }());
    bool accepted = check(*out, System::RL2, true, {}).accepted;
    if (height_same && renamed_goal && accepted) ++good;
  }
  line(7, "height-preserving renaming on generated derivations", tried >= 100 && good == tried,
       std::to_string(good) + "/" + std::to_string(tried));
}

void criterion8() {
  gen::Rng rng(107);
  gen::Pools pools;
  const int N = 1000;
  int subst_ok = 0, lambda_ok = 0, releq_ok = 0, irrelevance_ok = 0, agreement_ok = 0;
  SymbolName x = ind_var("x");
  auto identity = fml("X = Y");
  auto expansion = fml("A x1. (X(x1) <-> Y(x1))");
  for (int i = 0; i < N; ++i) {
    auto doc = gen::random_model(rng, pools, 3);
    auto f = gen::random_formula(rng, pools, 2);

    Term b(rng.flip() ? ind_par("b") : SymbolName(ind_const(1)));
    int value = b.sym.kind == SymbolKind::IndConst ? doc.gm.base.const_interp.at(b.spelling())
                                                   : doc.v.ind.at(b.spelling());
    if (eval(doc.gm, doc.v, subst_ind(f, x, b)) == eval(doc.gm, doc.v.with_ind(x, value), f))
      ++subst_ok;

    auto atom = mk_lam1(x, f, b);
    if (eval(doc.gm, doc.v, atom) == eval(doc.gm, doc.v, subst_ind(f, x, b))) ++lambda_ok;

    if (eval(doc.gm, doc.v, identity) == eval(doc.gm, doc.v, expansion)) ++releq_ok;

    Assignment v2 = doc.v;
    auto fs = free_symbols(f);
    auto is_free = [&](const std::string& name) {
      for (auto& s : fs)
        if (s.spelling() == name) return true;
      return false;
    };
    for (auto& [name, val] : v2.ind)
      if (!is_free(name)) val = (val + 1) % doc.gm.base.domain_size;
    if (eval(doc.gm, v2, f) == eval(doc.gm, doc.v, f)) ++irrelevance_ok;

    GeneralModel full = full_general_model(doc.gm.base, {1, 2});
    full.relconst_interp = doc.gm.relconst_interp;
    if (eval(full, doc.v, f) == eval_full(doc.gm, doc.v, f)) ++agreement_ok;
  }
  bool ok = subst_ok == N && lambda_ok == N && releq_ok == N && irrelevance_ok == N &&
            agreement_ok == N;
  line(8, "semantic invariants on generated triples", ok,
       "substitution " + std::to_string(subst_ok) + ", lambda " + std::to_string(lambda_ok) +
           ", identity " + std::to_string(releq_ok) + ", irrelevance " +
           std::to_string(irrelevance_ok) + ", agreement " + std::to_string(agreement_ok) + "/" +
           std::to_string(N));
}

void criterion9() {
  gen::Rng rng(109);
  gen::Pools pools;
  const int N = 1000;
  int round = 0;
  for (int i = 0; i < N; ++i) {
    auto f = gen::random_formula(rng, pools, 3);
    auto r = parse_formula(print_formula(f));
    if (parse_ok(r) && alpha_eq(std::get<FormulaPtr>(r), f)) ++round;
  }
  // fixture files reparse too
  bool fixtures_ok = true;
  for (auto& name : {"prop1_tree1.proof.json", "prop1_tree2.proof.json",
                     "prop1_tree2_min.proof.txt"}) {
    std::ifstream in(fixture(name));
    std::stringstream ss;
    ss << in.rdbuf();
    auto r = parse_derivation(ss.str());
    if (!std::holds_alternative<DerivationPtr>(r)) {
      fixtures_ok = false;
      continue;
    }
    auto d = std::get<DerivationPtr>(r);
    bool node_ok = true;
    walk(d, [&](const DerivationPtr& n) {
      auto back = parse_sequent(print_sequent(n->conclusion));
      if (!std::holds_alternative<Sequent>(back) ||
          !sequent_equal_alpha(std::get<Sequent>(back), n->conclusion))
        node_ok = false;
    });
    fixtures_ok = fixtures_ok && node_ok;
  }

  // fuzz smoke: grammar-alphabet noise, structured mutations, and raw bytes
  long fuzzed = 0;
  bool no_crash = true;
  const std::string alphabet = "PQRSxyzuwabcdkXYZABCK0123456789(),.!&|<->=> \\2iota";
  for (int i = 0; i < 60000; ++i) {
    std::string input;
    int len = rng.below(40);
    for (int j = 0; j < len; ++j) input += alphabet[rng.below((int)alphabet.size())];
    auto r = parse_formula(input);
    if (auto* e = std::get_if<ParseError>(&r))
      if (e->expected.empty() || e->span.byte_start > e->span.byte_end) no_crash = false;
    ++fuzzed;
  }
  for (int i = 0; i < 30000; ++i) {
    // mutate a well-formed print
    std::string input = print_formula(gen::random_formula(rng, pools, 2));
    int cuts = 1 + rng.below(3);
    for (int c = 0; c < cuts && !input.empty(); ++c) {
      int pos = rng.below((int)input.size());
      switch (rng.below(3)) {
        case 0: input.erase(pos, 1); break;
        case 1: input[pos] = alphabet[rng.below((int)alphabet.size())]; break;
        default: input.insert(pos, 1, alphabet[rng.below((int)alphabet.size())]); break;
      }
    }
    (void)parse_formula(input);
    ++fuzzed;
  }
  for (int i = 0; i < 10000; ++i) {
    std::string input;
    int len = rng.below(24);
    for (int j = 0; j < len; ++j) input += (char)(rng.below(256));
    (void)parse_formula(input);
    ++fuzzed;
  }
  bool ok = round == N && fixtures_ok && no_crash && fuzzed >= 100000;
  line(9, "parser round-trip and fuzz smoke", ok,
       std::to_string(round) + "/" + std::to_string(N) + " round-trips, " +
           std::to_string(fuzzed) + " fuzz inputs");
}

void cli_exit_codes() {
  bool ok = true;
  auto expect_exit = [&](const std::string& args, int want) {
    auto r = run_cli(args);
    if (r.exit_code != want) {
      ok = false;
      std::cout << "  exit " << r.exit_code << " (wanted " << want << "): " << args << "\n";
    }
  };
  expect_exit("prove --system rl2 --depth 8 \"B = C, B(a) => C(a)\"", 0);
  expect_exit("prove --system rl2 --depth 6 \"=> P(a)\"", 1);
  expect_exit("prove --system rl2 --depth 6 \"=> P(a\"", 2);
  expect_exit("eval --model " + fixture("two_element.model") + " \"P(b)\"", 0);
  expect_exit("eval --model " + fixture("two_element.model") +
                  " \"(\\x P(x)) (iota y. Q(y))\"",
              1);
  expect_exit("eval --model " + fixture("two_element.model") + " \"S(a)\"", 2);
  expect_exit("countermodel --max-domain 2 \"=> P(a)\"", 0);
  expect_exit("countermodel --max-domain 2 --families full-powerset \"=> b = b\"", 1);
  expect_exit("check --system rl2 " + fixture("prop1_tree2_min.proof.txt"), 0);
  expect_exit("check --system rl2 --no-cut " + fixture("prop1_tree2_min.proof.txt"), 1);
  expect_exit("render --format latex " + fixture("prop1_tree2_min.proof.txt"), 0);
  expect_exit("render --format ascii " + fixture("prop1_tree1.proof.json"), 0);
  expect_exit("saturate " + fixture("extseq_example.txt"), 0);
  expect_exit("selftest", 0);
  line(0, "CLI exit codes across the fixture corpus (supporting check)", ok);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: acceptance <rlkit-binary> <fixtures-dir>\n";
    return 2;
  }
  g_cli = argv[1];
  g_fixtures = argv[2];

  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  cli_exit_codes();

  if (g_failures == 0) {
    std::cout << "all criteria passed\n";
    return 0;
  }
  std::cout << g_failures << " criteria failed\n";
  return 1;
}
