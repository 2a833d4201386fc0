#pragma once

#include "rl2/check.hpp"

namespace rl2 {

enum class DerivedRule { Eq2Plus, Eq2Minus };

namespace detail {

inline int occurrence_index(const FormulaMultiset& side, const FormulaPtr& f) {
  for (int i = 0; i < (int)side.size(); ++i)
    if (alpha_eq(side[i], f)) return i;
  return -1;
}

// Fresh individual parameter spellings: a, b, c, d, a1, b1, ...
inline SymbolName fresh_ind_par(const std::set<std::string>& used, int skip = 0) {
  static const char* bases[] = {"a", "b", "c", "d"};
  for (int round = 0;; ++round) {
    for (const char* b : bases) {
      SymbolName s =
          round == 0 ? ind_par(b) : ind_par(b, round);
      if (!used.count(s.spelling())) {
        if (skip-- == 0) return s;
      }
    }
  }
}

inline SymbolName fresh_rel_par(const std::set<std::string>& used, int arity, int skip = 0) {
  static const char* bases[] = {"A", "B", "C"};
  for (int round = 0;; ++round) {
    for (const char* b : bases) {
      SymbolName s = round == 0 ? rel_par(b, arity) : rel_par(b, arity, round);
      if (!used.count(s.spelling())) {
        if (skip-- == 0) return s;
      }
    }
  }
}

inline SymbolName fresh_ind_const(const std::set<std::string>& used, int skip = 0) {
  for (int i = 1;; ++i) {
    SymbolName s = ind_const(i);
    if (!used.count(s.spelling())) {
      if (skip-- == 0) return s;
    }
  }
}

inline SymbolName fresh_rel_const(const std::set<std::string>& used, int arity, int skip = 0) {
  for (int i = 1;; ++i) {
    SymbolName s = rel_const(arity, i);
    if (!used.count(s.spelling())) {
      if (skip-- == 0) return s;
    }
  }
}

inline std::set<std::string> spellings(const SymbolSet& syms) {
  std::set<std::string> out;
  for (auto& s : syms) out.insert(s.spelling());
  return out;
}

// Closes a hypothesis sequent if it is an axiom up to weakening: AX on the
// first matching pair, then weakening steps down to the full sequent.
// Returns null when no matching pair exists.
inline DerivationPtr close_by_axiom(const Sequent& s) {
  for (size_t i = 0; i < s.ant.size(); ++i) {
    for (size_t j = 0; j < s.suc.size(); ++j) {
      if (!alpha_eq(s.ant[i], s.suc[j])) continue;
      Sequent core({s.ant[i]}, {s.suc[j]});
      DerivationPtr d = mk_node(core, RuleId::AX);
      // weaken the remaining antecedent members in, then the succedent
      FormulaMultiset ant = {s.ant[i]}, suc = {s.suc[j]};
      for (size_t k = 0; k < s.ant.size(); ++k) {
        if (k == i) continue;
        ant.push_back(s.ant[k]);
        Sequent next(ant, suc);
        Instantiation inst;
        inst.principal = OccRef{Side::Ant, occurrence_index(next.ant, s.ant[k])};
        d = mk_node(next, RuleId::WL, inst, {d});
      }
      for (size_t k = 0; k < s.suc.size(); ++k) {
        if (k == j) continue;
        suc.push_back(s.suc[k]);
        Sequent next(ant, suc);
        Instantiation inst;
        inst.principal = OccRef{Side::Suc, occurrence_index(next.suc, s.suc[k])};
        d = mk_node(next, RuleId::WR, inst, {d});
      }
      return d;
    }
  }
  return nullptr;
}

inline DerivationPtr close_or_assume(const Sequent& s) {
  if (auto d = close_by_axiom(s)) return d;
  return mk_node(s, RuleId::Assume);
}

}  // namespace detail

// Instantiates one of the two derivable identity rules as a proof tree.
//
// Eq2Plus concludes Gamma => Delta via a cut on X = X, where X is
// inst.witnesses[0]; the rule premise X = X, Gamma => Delta enters as a leaf
// (closed when it happens to be an axiom up to weakening, an Assume leaf
// otherwise).
//
// Eq2Minus concludes B = C, A[X:=B], Gamma => Delta from inst.atomic_schema
// (A, X) with witnesses [B, C]; its premise leaf is A[X:=C], Gamma => Delta.
inline RuleResult<DerivationPtr> expand_derived(DerivedRule rule, const Sequent& context,
                                                Instantiation inst) {
  using namespace detail;
  if (rule == DerivedRule::Eq2Plus) {
    if (inst.witnesses.size() != 1) return bad("Eq2Plus needs the identity's relational symbol");
    SymbolName x = inst.witnesses[0];
    if (!is_relational(x.kind)) return bad("Eq2Plus symbol must be relational");
    if (x.arity < 1) return bad("Eq2Plus symbol needs an arity");
    FormulaPtr id = mk_rel_eq(x, x);
    // fresh tuple for the right identity rule
    Sequent id_goal({}, {id});
    auto used = spellings(free_symbols(id_goal));
    std::vector<SymbolName> eigens;
    for (int i = 0; i < x.arity; ++i) {
      eigens.push_back(fresh_ind_par(used, i));
    }
    std::vector<Term> as;
    for (auto& e : eigens) as.emplace_back(e);
    FormulaPtr xa = mk_rel_app(x, as);
    DerivationPtr ax = mk_node(Sequent({xa}, {xa}), RuleId::AX);
    Instantiation eq2r_inst;
    eq2r_inst.principal = OccRef{Side::Suc, 0};
    eq2r_inst.eigens = eigens;
    DerivationPtr eq2r = mk_node(id_goal, RuleId::Eq2R, eq2r_inst, {ax, ax});
    Sequent hyp(mset_sum({id}, context.ant), context.suc);
    DerivationPtr hyp_node = close_or_assume(hyp);
    Instantiation cut_inst;
    cut_inst.cut_formula = id;
    cut_inst.has_cut_split = true;  // all context right
    return mk_node(context, RuleId::Cut, cut_inst, {eq2r, hyp_node});
  }

  // Eq2Minus
  if (!inst.atomic_schema) return bad("Eq2Minus needs an atomic schema");
  const auto& [schema, var] = *inst.atomic_schema;
  if (!is_atomic(schema))
    return RuleError{ViolationKind::NotAtomic, "schema formula must be atomic"};
  if (var.kind != SymbolKind::RelVar) return bad("Eq2Minus schema variable must be relational");
  auto* app = std::get_if<RelApp>(&schema->node);
  if (!app || !(app->rel == var))
    return bad("Eq2Minus schema must be an application of the schema variable");
  for (auto& t : app->args)
    if (t.sym.kind == SymbolKind::IndVar)
      return bad("Eq2Minus schema arguments must be parameters or constants");
  if (inst.witnesses.size() != 2) return bad("Eq2Minus needs two relational witnesses");
  auto br = witness_rel(inst.witnesses[0], var.arity);
  auto cr = witness_rel(inst.witnesses[1], var.arity);
  if (auto* err = std::get_if<RuleError>(&br)) return *err;
  if (auto* err = std::get_if<RuleError>(&cr)) return *err;
  const SymbolName b = std::get<SymbolName>(br);
  const SymbolName c = std::get<SymbolName>(cr);

  FormulaPtr ab = subst_rel(schema, var, b);
  FormulaPtr ac = subst_rel(schema, var, c);
  FormulaPtr id = mk_rel_eq(b, c);
  // context must contain the identity and the B-instance
  Sequent rest = context;
  if (!remove_one_alpha(rest.ant, id)) return bad("context lacks " + print_formula(id));
  if (!remove_one_alpha(rest.ant, ab)) return bad("context lacks " + print_formula(ab));

  DerivationPtr ax_b = mk_node(Sequent({ab}, {ab}), RuleId::AX);
  Instantiation wr_inst;
  Sequent wr_seq({ab}, {ab, ac});
  wr_inst.principal = OccRef{Side::Suc, occurrence_index(wr_seq.suc, ac)};
  DerivationPtr wr = mk_node(wr_seq, RuleId::WR, wr_inst, {ax_b});

  DerivationPtr ax_c = mk_node(Sequent({ac}, {ac}), RuleId::AX);
  Instantiation wl_inst;
  Sequent wl_seq({ac, ab}, {ac});
  wl_inst.principal = OccRef{Side::Ant, occurrence_index(wl_seq.ant, ab)};
  DerivationPtr wl = mk_node(wl_seq, RuleId::WL, wl_inst, {ax_c});

  Sequent eq2l_seq({id, ab}, {ac});
  Instantiation eq2l_inst;
  eq2l_inst.principal = OccRef{Side::Ant, occurrence_index(eq2l_seq.ant, id)};
  for (auto& t : app->args) eq2l_inst.witnesses.push_back(t.sym);
  DerivationPtr eq2l = mk_node(eq2l_seq, RuleId::Eq2L, eq2l_inst, {wr, wl});

  Sequent hyp(mset_sum({ac}, rest.ant), rest.suc);
  DerivationPtr hyp_node;
  if (sequent_equal_alpha(hyp, ax_c->conclusion))
    hyp_node = ax_c;  // share the axiom node
  else
    hyp_node = close_or_assume(hyp);

  Instantiation cut_inst;
  cut_inst.cut_formula = ac;
  cut_inst.has_cut_split = true;
  Sequent root_seq(mset_sum({id, ab}, rest.ant), rest.suc);
  // the identity and the B-instance travel to the left premise
  for (auto& f : {id, ab}) {
    for (int i = 0; i < (int)root_seq.ant.size(); ++i) {
      if (std::find(cut_inst.cut_left_ant.begin(), cut_inst.cut_left_ant.end(), i) !=
          cut_inst.cut_left_ant.end())
        continue;
      if (alpha_eq(root_seq.ant[i], f)) {
        cut_inst.cut_left_ant.push_back(i);
        break;
      }
    }
  }
  return mk_node(root_seq, RuleId::Cut, cut_inst, {eq2l, hyp_node});
}

// Height-preserving renaming of a parameter throughout a derivation. The
// target must be fresh for the whole tree; kinds and arities must agree.
inline RuleResult<DerivationPtr> rename_parameter(const DerivationPtr& d, const SymbolName& from,
                                                  const SymbolName& to) {
  if (from.kind != SymbolKind::IndPar && from.kind != SymbolKind::RelPar)
    return detail::bad("rename source must be a parameter");
  if (to.kind != from.kind) return detail::bad("rename target must have the same kind");
  if (to.arity != from.arity)
    return RuleError{ViolationKind::ArityMismatch, "rename target has a different arity"};
  bool clash = false;
  walk(d, [&](const DerivationPtr& n) {
    for (auto& s : free_symbols(n->conclusion))
      if (s.spelling() == to.spelling()) clash = true;
    for (auto& e : n->inst.eigens)
      if (e.spelling() == to.spelling()) clash = true;
    for (auto& w : n->inst.witnesses)
      if (w.spelling() == to.spelling()) clash = true;
  });
  if (clash) return detail::bad("rename target " + to.spelling() + " occurs in the derivation");

  std::map<const Derivation*, DerivationPtr> memo;
  std::function<DerivationPtr(const DerivationPtr&)> go =
      [&](const DerivationPtr& n) -> DerivationPtr {
    auto it = memo.find(n.get());
    if (it != memo.end()) return it->second;
    auto sub_formula = [&](const FormulaPtr& f) { return replace_free_symbol(f, from, to); };
    auto sub_symbol = [&](const SymbolName& s) {
      return s.spelling() == from.spelling() && s.kind == from.kind ? to : s;
    };
    // renamed formulas, one per old position; the Sequent constructor will
    // re-sort these exact pointers, so occurrence indices can be remapped by
    // pointer identity
    FormulaMultiset ant, suc;
    for (auto& f : n->conclusion.ant) ant.push_back(sub_formula(f));
    for (auto& f : n->conclusion.suc) suc.push_back(sub_formula(f));
    FormulaMultiset ant_by_old = ant, suc_by_old = suc;
    Sequent renamed(std::move(ant), std::move(suc));
    auto new_index = [&](Side side, int old_index, std::vector<int>& used) -> int {
      const FormulaMultiset& by_old = side == Side::Ant ? ant_by_old : suc_by_old;
      const FormulaMultiset& sorted = side == Side::Ant ? renamed.ant : renamed.suc;
      if (old_index < 0 || old_index >= (int)by_old.size()) return old_index;
      const Formula* target = by_old[old_index].get();
      for (int j = 0; j < (int)sorted.size(); ++j) {
        if (sorted[j].get() != target) continue;
        if (std::find(used.begin(), used.end(), j) != used.end()) continue;
        used.push_back(j);
        return j;
      }
      return old_index;
    };
    Instantiation inst = n->inst;
    for (auto& e : inst.eigens) e = sub_symbol(e);
    for (auto& w : inst.witnesses) w = sub_symbol(w);
    if (inst.cut_formula) inst.cut_formula = sub_formula(inst.cut_formula);
    if (inst.atomic_schema)
      inst.atomic_schema = {sub_formula(inst.atomic_schema->first), inst.atomic_schema->second};
    if (inst.principal) {
      std::vector<int> used;
      inst.principal->index = new_index(inst.principal->side, inst.principal->index, used);
    }
    if (inst.has_cut_split) {
      std::vector<int> used_ant, used_suc;
      for (auto& i : inst.cut_left_ant) i = new_index(Side::Ant, i, used_ant);
      for (auto& i : inst.cut_left_suc) i = new_index(Side::Suc, i, used_suc);
    }
    std::vector<DerivationPtr> premises;
    for (auto& p : n->premises) premises.push_back(go(p));
    auto out = mk_node(std::move(renamed), n->rule, std::move(inst), std::move(premises));
    memo.emplace(n.get(), out);
    return out;
  };
  return go(d);
}

}  // namespace rl2
