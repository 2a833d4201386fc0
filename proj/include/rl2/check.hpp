#pragma once

#include "rl2/derivation.hpp"
#include "rl2/subst.hpp"

namespace rl2 {

namespace detail {

// One premise of a rule schema: the active formulas it adds on each side.
// The context is shared across premises.
struct PremiseSpec {
  FormulaMultiset ant_active, suc_active;
  bool structural_sum = false;  // contraction/identity-plus add by sum, not absorption
};

struct Schema {
  Sequent ctx;  // conclusion minus the principal occurrence(s)
  std::vector<PremiseSpec> premises;
};

inline bool spelling_free_in(const SymbolSet& syms, const SymbolName& s) {
  for (auto& x : syms)
    if (x.spelling() == s.spelling()) return true;
  return false;
}

inline RuleError bad(std::string detail) {
  return RuleError{ViolationKind::BadInstantiation, std::move(detail)};
}
inline RuleError arity_err(std::string detail) {
  return RuleError{ViolationKind::ArityMismatch, std::move(detail)};
}
inline RuleError eigen_err(std::string detail) {
  return RuleError{ViolationKind::EigenvariableViolation, std::move(detail)};
}

// Checks the eigen symbols of one rule application: right kind and arity,
// pairwise distinct, fresh for the whole conclusion, distinct from the
// witnesses.
inline std::optional<RuleError> check_eigens(const std::vector<SymbolName>& eigens,
                                             SymbolKind kind, int arity, size_t count,
                                             const Sequent& conclusion,
                                             const std::vector<SymbolName>& witnesses) {
  if (eigens.size() != count)
    return bad("rule needs " + std::to_string(count) + " eigen symbol(s)");
  SymbolSet fs = free_symbols(conclusion);
  for (size_t i = 0; i < eigens.size(); ++i) {
    const SymbolName& e = eigens[i];
    if (e.kind != kind)
      return eigen_err("eigen symbol " + e.spelling() + " must be a " +
                       std::string(kind_name(kind)));
    if (kind == SymbolKind::RelPar && e.arity != 0 && e.arity != arity)
      return arity_err("eigen symbol " + e.spelling() + " has the wrong arity");
    for (size_t j = 0; j < i; ++j)
      if (eigens[j].spelling() == e.spelling())
        return eigen_err("eigen symbols must be pairwise distinct");
    if (spelling_free_in(fs, e))
      return eigen_err("eigen symbol " + e.spelling() +
                       " occurs in the conclusion");
    for (auto& w : witnesses)
      if (w.spelling() == e.spelling())
        return eigen_err("eigen symbol " + e.spelling() + " coincides with a witness");
  }
  return std::nullopt;
}

inline SymbolName with_arity(SymbolName s, int arity) {
  s.arity = arity;
  return s;
}

inline std::optional<Term> witness_term(const SymbolName& s) {
  if (s.kind == SymbolKind::IndPar || s.kind == SymbolKind::IndConst) return Term(s);
  return std::nullopt;
}

// Relational witnesses must be parameters or constants: their values are
// guaranteed members of the family G, which keeps instantiation sound.
// Witnesses from interchange documents arrive with arity 0 and adopt the
// principal's arity; an explicit arity must agree.
inline RuleResult<SymbolName> witness_rel(const SymbolName& s, int arity) {
  if (s.kind != SymbolKind::RelPar && s.kind != SymbolKind::RelConst)
    return bad("witness must be a relational parameter or constant");
  if (s.arity != 0 && s.arity != arity)
    return arity_err("witness " + s.spelling() + " has the wrong arity");
  return with_arity(s, arity);
}

struct PrincipalView {
  FormulaPtr formula;
  Sequent ctx;
};

inline std::optional<PrincipalView> take_occurrence(const Sequent& s, const OccRef& occ) {
  const FormulaMultiset& side = occ.side == Side::Ant ? s.ant : s.suc;
  if (occ.index < 0 || occ.index >= (int)side.size()) return std::nullopt;
  PrincipalView v;
  v.formula = side[occ.index];
  v.ctx = s;
  auto& mside = occ.side == Side::Ant ? v.ctx.ant : v.ctx.suc;
  mside.erase(mside.begin() + occ.index);
  return v;
}

// Builds the schema for one rule application. `principal` has already been
// removed from ctx. Substitution failures surface as rule errors.
inline RuleResult<Schema> rule_schema(RuleId rule, const Sequent& conclusion,
                                      const FormulaPtr& principal, Sequent ctx,
                                      const Instantiation& inst) {
  Schema out;
  out.ctx = std::move(ctx);
  auto sub1 = [&](const FormulaPtr& f, const SymbolName& x,
                  const Term& t) -> std::optional<FormulaPtr> {
    try {
      return subst_ind(f, x, t);
    } catch (const CaptureError&) {
      return std::nullopt;
    }
  };

  switch (rule) {
    case RuleId::WL:
    case RuleId::WR: {
      out.premises.push_back({});
      return out;
    }
    case RuleId::CL: {
      out.premises.push_back({{principal, principal}, {}, true});
      return out;
    }
    case RuleId::CR: {
      out.premises.push_back({{}, {principal, principal}, true});
      return out;
    }
    case RuleId::AndL: {
      auto* b = std::get_if<BinConn>(&principal->node);
      if (!b || b->op != BinOp::And) return bad("principal formula is not a conjunction");
      out.premises.push_back({{b->lhs, b->rhs}, {}});
      return out;
    }
    case RuleId::AndR: {
      auto* b = std::get_if<BinConn>(&principal->node);
      if (!b || b->op != BinOp::And) return bad("principal formula is not a conjunction");
      out.premises.push_back({{}, {b->lhs}});
      out.premises.push_back({{}, {b->rhs}});
      return out;
    }
    case RuleId::OrL: {
      auto* b = std::get_if<BinConn>(&principal->node);
      if (!b || b->op != BinOp::Or) return bad("principal formula is not a disjunction");
      out.premises.push_back({{b->lhs}, {}});
      out.premises.push_back({{b->rhs}, {}});
      return out;
    }
    case RuleId::OrR: {
      auto* b = std::get_if<BinConn>(&principal->node);
      if (!b || b->op != BinOp::Or) return bad("principal formula is not a disjunction");
      out.premises.push_back({{}, {b->lhs, b->rhs}});
      return out;
    }
    case RuleId::NegL: {
      auto* n = std::get_if<Neg>(&principal->node);
      if (!n) return bad("principal formula is not a negation");
      out.premises.push_back({{}, {n->body}});
      return out;
    }
    case RuleId::NegR: {
      auto* n = std::get_if<Neg>(&principal->node);
      if (!n) return bad("principal formula is not a negation");
      out.premises.push_back({{n->body}, {}});
      return out;
    }
    case RuleId::ImpL: {
      auto* b = std::get_if<BinConn>(&principal->node);
      if (!b || b->op != BinOp::Imp) return bad("principal formula is not an implication");
      out.premises.push_back({{}, {b->lhs}});
      out.premises.push_back({{b->rhs}, {}});
      return out;
    }
    case RuleId::ImpR: {
      auto* b = std::get_if<BinConn>(&principal->node);
      if (!b || b->op != BinOp::Imp) return bad("principal formula is not an implication");
      out.premises.push_back({{b->lhs}, {b->rhs}});
      return out;
    }
    case RuleId::IffL: {
      auto* b = std::get_if<BinConn>(&principal->node);
      if (!b || b->op != BinOp::Iff) return bad("principal formula is not a biconditional");
      out.premises.push_back({{}, {b->lhs, b->rhs}});
      out.premises.push_back({{b->lhs, b->rhs}, {}});
      return out;
    }
    case RuleId::IffR: {
      auto* b = std::get_if<BinConn>(&principal->node);
      if (!b || b->op != BinOp::Iff) return bad("principal formula is not a biconditional");
      out.premises.push_back({{b->lhs}, {b->rhs}});
      out.premises.push_back({{b->rhs}, {b->lhs}});
      return out;
    }
    case RuleId::AllL:
    case RuleId::ExR: {
      auto* q = std::get_if<Quant>(&principal->node);
      QuantKind want = rule == RuleId::AllL ? QuantKind::ForallInd : QuantKind::ExistsInd;
      if (!q || q->kind != want) return bad("principal formula is not the right quantifier");
      if (inst.witnesses.size() != 1) return bad("rule needs one witness term");
      auto t = witness_term(inst.witnesses[0]);
      if (!t) return bad("witness must be an individual parameter or constant");
      auto instf = sub1(q->body, q->var, *t);
      if (!instf) return bad("witness capture in instantiation");
      if (rule == RuleId::AllL)
        out.premises.push_back({{*instf}, {}});
      else
        out.premises.push_back({{}, {*instf}});
      return out;
    }
    case RuleId::AllR:
    case RuleId::ExL: {
      auto* q = std::get_if<Quant>(&principal->node);
      QuantKind want = rule == RuleId::AllR ? QuantKind::ForallInd : QuantKind::ExistsInd;
      if (!q || q->kind != want) return bad("principal formula is not the right quantifier");
      if (auto err = check_eigens(inst.eigens, SymbolKind::IndPar, 0, 1, conclusion, {}))
        return *err;
      auto instf = sub1(q->body, q->var, Term(inst.eigens[0]));
      if (!instf) return bad("eigen capture in instantiation");
      if (rule == RuleId::AllR)
        out.premises.push_back({{}, {*instf}});
      else
        out.premises.push_back({{*instf}, {}});
      return out;
    }
    case RuleId::EqPlus: {
      if (inst.witnesses.size() != 1) return bad("rule needs one witness term");
      auto t = witness_term(inst.witnesses[0]);
      if (!t) return bad("witness must be an individual parameter or constant");
      out.premises.push_back({{mk_ind_eq(*t, *t)}, {}, true});
      return out;
    }
    case RuleId::EqMinus: {
      auto* e = std::get_if<IndEq>(&principal->node);
      if (!e) return bad("principal formula is not an identity");
      if (e->lhs.sym.kind == SymbolKind::IndVar || e->rhs.sym.kind == SymbolKind::IndVar)
        return bad("identity sides must be parameters or constants");
      if (!inst.atomic_schema) return bad("rule needs an atomic schema");
      const auto& [schema, var] = *inst.atomic_schema;
      if (!is_atomic(schema))
        return RuleError{ViolationKind::NotAtomic, "schema formula must be atomic"};
      if (var.kind != SymbolKind::IndVar) return bad("schema variable must be individual");
      auto ab = sub1(schema, var, e->lhs);
      auto ac = sub1(schema, var, e->rhs);
      if (!ab || !ac) return bad("schema instantiation capture");
      if (!remove_one_alpha(out.ctx.ant, *ab))
        return bad("instantiated schema " + print_formula(*ab) + " not in the antecedent");
      out.premises.push_back({{*ac}, {}});
      return out;
    }
    case RuleId::LamL:
    case RuleId::LamR: {
      auto* l = std::get_if<LamAtom1>(&principal->node);
      if (!l) return bad("principal formula is not a lambda atom");
      auto* t = std::get_if<Term>(&l->arg);
      if (!t) return bad("lambda atom argument must be a plain term here");
      auto instf = sub1(l->body, l->var, *t);
      if (!instf) return bad("argument capture in beta step");
      if (rule == RuleId::LamL)
        out.premises.push_back({{*instf}, {}});
      else
        out.premises.push_back({{}, {*instf}});
      return out;
    }
    case RuleId::Iota1L: {
      auto* l = std::get_if<LamAtom1>(&principal->node);
      if (!l) return bad("principal formula is not a lambda atom");
      auto* io = std::get_if<Iota1>(&l->arg);
      if (!io) return bad("lambda atom argument must be a description");
      if (auto err = check_eigens(inst.eigens, SymbolKind::IndPar, 0, 1, conclusion, {}))
        return *err;
      Term a(inst.eigens[0]);
      auto fa = sub1(io->cond, io->var, a);
      auto pa = sub1(l->body, l->var, a);
      if (!fa || !pa) return bad("eigen capture in instantiation");
      out.premises.push_back({{*fa, *pa}, {}});
      return out;
    }
    case RuleId::Iota2L: {
      auto* l = std::get_if<LamAtom1>(&principal->node);
      if (!l) return bad("principal formula is not a lambda atom");
      auto* io = std::get_if<Iota1>(&l->arg);
      if (!io) return bad("lambda atom argument must be a description");
      if (inst.witnesses.size() != 2) return bad("rule needs two witness terms");
      auto b = witness_term(inst.witnesses[0]);
      auto c = witness_term(inst.witnesses[1]);
      if (!b || !c) return bad("witnesses must be individual parameters or constants");
      auto fb = sub1(io->cond, io->var, *b);
      auto fc = sub1(io->cond, io->var, *c);
      if (!fb || !fc) return bad("witness capture in instantiation");
      out.premises.push_back({{}, {*fb}});
      out.premises.push_back({{}, {*fc}});
      out.premises.push_back({{mk_ind_eq(*b, *c)}, {}});
      return out;
    }
    case RuleId::IotaR: {
      auto* l = std::get_if<LamAtom1>(&principal->node);
      if (!l) return bad("principal formula is not a lambda atom");
      auto* io = std::get_if<Iota1>(&l->arg);
      if (!io) return bad("lambda atom argument must be a description");
      if (inst.witnesses.size() != 1) return bad("rule needs one witness term");
      auto b = witness_term(inst.witnesses[0]);
      if (!b) return bad("witness must be an individual parameter or constant");
      if (auto err =
              check_eigens(inst.eigens, SymbolKind::IndPar, 0, 1, conclusion, inst.witnesses))
        return *err;
      Term a(inst.eigens[0]);
      auto fb = sub1(io->cond, io->var, *b);
      auto pb = sub1(l->body, l->var, *b);
      auto fa = sub1(io->cond, io->var, a);
      if (!fb || !pb || !fa) return bad("capture in instantiation");
      out.premises.push_back({{}, {*fb}});
      out.premises.push_back({{}, {*pb}});
      out.premises.push_back({{*fa}, {mk_ind_eq(a, *b)}});
      return out;
    }
    case RuleId::Eq2L: {
      auto* e = std::get_if<RelEq>(&principal->node);
      if (!e) return bad("principal formula is not a relational identity");
      int n = e->lhs.arity;
      if ((int)inst.witnesses.size() != n)
        return arity_err("rule needs " + std::to_string(n) + " witness terms");
      std::vector<Term> bs;
      for (auto& w : inst.witnesses) {
        auto t = witness_term(w);
        if (!t) return bad("witnesses must be individual parameters or constants");
        bs.push_back(*t);
      }
      FormulaPtr xb = mk_rel_app(e->lhs, bs);
      FormulaPtr yb = mk_rel_app(e->rhs, bs);
      out.premises.push_back({{}, {xb, yb}});
      out.premises.push_back({{xb, yb}, {}});
      return out;
    }
    case RuleId::Eq2R: {
      auto* e = std::get_if<RelEq>(&principal->node);
      if (!e) return bad("principal formula is not a relational identity");
      int n = e->lhs.arity;
      if (auto err = check_eigens(inst.eigens, SymbolKind::IndPar, 0, (size_t)n, conclusion, {}))
        return *err;
      std::vector<Term> as;
      for (auto& a : inst.eigens) as.emplace_back(a);
      FormulaPtr xa = mk_rel_app(e->lhs, as);
      FormulaPtr ya = mk_rel_app(e->rhs, as);
      out.premises.push_back({{xa}, {ya}});
      out.premises.push_back({{ya}, {xa}});
      return out;
    }
    case RuleId::All2L:
    case RuleId::Ex2R: {
      auto* q = std::get_if<Quant>(&principal->node);
      QuantKind want = rule == RuleId::All2L ? QuantKind::ForallRel : QuantKind::ExistsRel;
      if (!q || q->kind != want) return bad("principal formula is not the right quantifier");
      if (inst.witnesses.size() != 1) return bad("rule needs one relational witness");
      auto r = witness_rel(inst.witnesses[0], q->var.arity);
      if (auto* err = std::get_if<RuleError>(&r)) return *err;
      FormulaPtr instf = subst_rel(q->body, q->var, std::get<SymbolName>(r));
      if (rule == RuleId::All2L)
        out.premises.push_back({{instf}, {}});
      else
        out.premises.push_back({{}, {instf}});
      return out;
    }
    case RuleId::All2R:
    case RuleId::Ex2L: {
      auto* q = std::get_if<Quant>(&principal->node);
      QuantKind want = rule == RuleId::All2R ? QuantKind::ForallRel : QuantKind::ExistsRel;
      if (!q || q->kind != want) return bad("principal formula is not the right quantifier");
      if (auto err = check_eigens(inst.eigens, SymbolKind::RelPar, q->var.arity, 1, conclusion, {}))
        return *err;
      FormulaPtr instf = subst_rel(q->body, q->var, with_arity(inst.eigens[0], q->var.arity));
      if (rule == RuleId::All2R)
        out.premises.push_back({{}, {instf}});
      else
        out.premises.push_back({{instf}, {}});
      return out;
    }
    case RuleId::Iota1L2: {
      auto* l = std::get_if<LamAtom2>(&principal->node);
      if (!l) return bad("principal formula is not a relational lambda atom");
      if (auto err =
              check_eigens(inst.eigens, SymbolKind::RelPar, l->var.arity, 1, conclusion, {}))
        return *err;
      SymbolName a = with_arity(inst.eigens[0], l->var.arity);
      FormulaPtr fa = subst_rel(l->arg.cond, l->arg.var, a);
      FormulaPtr pa = subst_rel(l->body, l->var, a);
      out.premises.push_back({{fa, pa}, {}});
      return out;
    }
    case RuleId::Iota2L2: {
      auto* l = std::get_if<LamAtom2>(&principal->node);
      if (!l) return bad("principal formula is not a relational lambda atom");
      if (inst.witnesses.size() != 2) return bad("rule needs two relational witnesses");
      auto br = witness_rel(inst.witnesses[0], l->var.arity);
      auto cr = witness_rel(inst.witnesses[1], l->var.arity);
      if (auto* err = std::get_if<RuleError>(&br)) return *err;
      if (auto* err = std::get_if<RuleError>(&cr)) return *err;
      const SymbolName& b = std::get<SymbolName>(br);
      const SymbolName& c = std::get<SymbolName>(cr);
      FormulaPtr fb = subst_rel(l->arg.cond, l->arg.var, b);
      FormulaPtr fc = subst_rel(l->arg.cond, l->arg.var, c);
      out.premises.push_back({{}, {fb}});
      out.premises.push_back({{}, {fc}});
      out.premises.push_back({{mk_rel_eq(b, c)}, {}});
      return out;
    }
    case RuleId::IotaR2: {
      auto* l = std::get_if<LamAtom2>(&principal->node);
      if (!l) return bad("principal formula is not a relational lambda atom");
      if (inst.witnesses.size() != 1) return bad("rule needs one relational witness");
      auto br = witness_rel(inst.witnesses[0], l->var.arity);
      if (auto* err = std::get_if<RuleError>(&br)) return *err;
      const SymbolName& b = std::get<SymbolName>(br);
      if (auto err = check_eigens(inst.eigens, SymbolKind::RelPar, l->var.arity, 1, conclusion,
                                  inst.witnesses))
        return *err;
      SymbolName a = with_arity(inst.eigens[0], l->var.arity);
      FormulaPtr fb = subst_rel(l->arg.cond, l->arg.var, b);
      FormulaPtr pb = subst_rel(l->body, l->var, b);
      FormulaPtr fa = subst_rel(l->arg.cond, l->arg.var, a);
      out.premises.push_back({{}, {fb}});
      out.premises.push_back({{}, {pb}});
      out.premises.push_back({{fa}, {mk_rel_eq(a, b)}});
      return out;
    }
    default: return bad("rule has no schema");
  }
}

inline bool rule_has_principal(RuleId r) {
  switch (r) {
    case RuleId::AX:
    case RuleId::Assume:
    case RuleId::Cut:
    case RuleId::EqPlus: return false;
    default: return true;
  }
}

inline Side principal_side(RuleId r) {
  switch (r) {
    case RuleId::WR:
    case RuleId::CR:
    case RuleId::AndR:
    case RuleId::OrR:
    case RuleId::NegR:
    case RuleId::ImpR:
    case RuleId::IffR:
    case RuleId::AllR:
    case RuleId::ExR:
    case RuleId::LamR:
    case RuleId::IotaR:
    case RuleId::Eq2R:
    case RuleId::All2R:
    case RuleId::Ex2R:
    case RuleId::IotaR2: return Side::Suc;
    default: return Side::Ant;
  }
}

}  // namespace detail

// Premise sequents the rule demands, computed backward from the conclusion.
// Active formulas are absorbed into the context (a formula already present
// is reused rather than duplicated); contraction and identity-introduction
// add by multiset sum.
inline RuleResult<std::vector<Sequent>> apply_rule(const Sequent& conclusion, RuleId rule,
                                                   const Instantiation& inst) {
  using namespace detail;
  if (rule == RuleId::AX) {
    if (conclusion.ant.size() == 1 && conclusion.suc.size() == 1 &&
        alpha_eq(conclusion.ant[0], conclusion.suc[0]))
      return std::vector<Sequent>{};
    return bad("axiom conclusion must be of the form phi => phi");
  }
  if (rule == RuleId::Assume) return std::vector<Sequent>{};
  if (rule == RuleId::Cut) {
    if (!inst.cut_formula) return bad("cut needs its cut formula");
    FormulaMultiset lant, lsuc, rant = conclusion.ant, rsuc = conclusion.suc;
    auto route = [&](const std::vector<int>& idxs, const FormulaMultiset& src,
                     FormulaMultiset& left) -> bool {
      std::vector<FormulaPtr> picked;
      std::vector<int> sorted = idxs;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
      for (int i : sorted) {
        if (i < 0 || i >= (int)src.size()) return false;
        picked.push_back(src[i]);
      }
      for (auto& f : picked) left.push_back(f);
      return true;
    };
    if (inst.has_cut_split) {
      if (!route(inst.cut_left_ant, conclusion.ant, lant) ||
          !route(inst.cut_left_suc, conclusion.suc, lsuc))
        return bad("cut split indices out of range");
      // remove routed occurrences from the right context
      auto remove_idx = [](FormulaMultiset& v, std::vector<int> idxs) {
        std::sort(idxs.rbegin(), idxs.rend());
        for (int i : idxs) v.erase(v.begin() + i);
      };
      remove_idx(rant, inst.cut_left_ant);
      remove_idx(rsuc, inst.cut_left_suc);
    }
    Sequent left(std::move(lant), mset_absorb(lsuc, {inst.cut_formula}));
    Sequent right(mset_absorb(rant, {inst.cut_formula}), std::move(rsuc));
    return std::vector<Sequent>{left, right};
  }

  std::optional<detail::PrincipalView> pv;
  FormulaPtr principal;
  Sequent ctx = conclusion;
  if (rule_has_principal(rule)) {
    if (!inst.principal) return bad("rule needs a principal occurrence");
    pv = take_occurrence(conclusion, *inst.principal);
    if (!pv) return bad("principal index out of range");
    principal = pv->formula;
    ctx = pv->ctx;
  }
  auto schema = rule_schema(rule, conclusion, principal, ctx, inst);
  if (auto* err = std::get_if<RuleError>(&schema)) return *err;
  auto& sc = std::get<Schema>(schema);
  std::vector<Sequent> premises;
  for (auto& p : sc.premises) {
    FormulaMultiset a = p.structural_sum ? mset_sum(sc.ctx.ant, p.ant_active)
                                         : mset_absorb(sc.ctx.ant, p.ant_active);
    FormulaMultiset s = p.structural_sum ? mset_sum(sc.ctx.suc, p.suc_active)
                                         : mset_absorb(sc.ctx.suc, p.suc_active);
    premises.emplace_back(std::move(a), std::move(s));
  }
  return premises;
}

enum class CutMode { Allow, Forbid, AssumptionsOnly };

struct CheckOptions {
  System system = System::RL2;
  CutMode cut_mode = CutMode::Allow;
  std::vector<Sequent> assumptions;
  bool strict_eigen = false;
};

namespace detail {

// actual premise must contain all active formulas and stay within the
// strict schema premise (context weakening absorbed, as in hand-written
// proof trees).
inline bool premise_matches(const Sequent& actual, const Sequent& ctx, const PremiseSpec& spec) {
  if (!subset_alpha(spec.ant_active, actual.ant)) return false;
  if (!subset_alpha(spec.suc_active, actual.suc)) return false;
  if (spec.structural_sum) {
    return equal_alpha(actual.ant, mset_sum(ctx.ant, spec.ant_active)) &&
           equal_alpha(actual.suc, mset_sum(ctx.suc, spec.suc_active));
  }
  return subset_alpha(actual.ant, mset_sum(ctx.ant, spec.ant_active)) &&
         subset_alpha(actual.suc, mset_sum(ctx.suc, spec.suc_active));
}

struct Checker {
  const CheckOptions& opts;
  std::vector<Violation> violations;
  const Derivation* root = nullptr;

  void flag(const std::vector<int>& path, RuleId rule, ViolationKind kind, std::string detail) {
    violations.push_back({path, rule, kind, std::move(detail)});
  }

  bool is_assumption(const Sequent& s) const {
    for (auto& a : opts.assumptions)
      if (sequent_equal_alpha(a, s)) return true;
    return false;
  }

  bool formula_in_assumptions(const FormulaPtr& f) const {
    for (auto& a : opts.assumptions) {
      for (auto& g : a.ant)
        if (alpha_eq(f, g)) return true;
      for (auto& g : a.suc)
        if (alpha_eq(f, g)) return true;
    }
    return false;
  }

  void check_node(const DerivationPtr& d, std::vector<int>& path) {
    const Sequent& c = d->conclusion;
    RuleId r = d->rule;

    if (opts.system == System::RL) {
      if (is_second_order_rule(r)) {
        flag(path, r, ViolationKind::BadInstantiation, "second-order rule in an RL proof");
      } else {
        bool second = false;
        for (auto& f : c.ant) second = second || uses_second_order(f);
        for (auto& f : c.suc) second = second || uses_second_order(f);
        if (second)
          flag(path, r, ViolationKind::BadInstantiation, "second-order syntax in an RL proof");
      }
    }

    if ((int)d->premises.size() != premise_count(r)) {
      flag(path, r, ViolationKind::WrongPremiseCount,
           "rule takes " + std::to_string(premise_count(r)) + " premise(s), found " +
               std::to_string(d->premises.size()));
    } else {
      switch (r) {
        case RuleId::AX: {
          if (!(c.ant.size() == 1 && c.suc.size() == 1 && alpha_eq(c.ant[0], c.suc[0])))
            flag(path, r, ViolationKind::BadInstantiation,
                 "axiom conclusion must be of the form phi => phi");
          break;
        }
        case RuleId::Assume: {
          if (!is_assumption(c))
            flag(path, r, ViolationKind::BadInstantiation,
                 "leaf sequent is not among the assumptions");
          break;
        }
        case RuleId::Cut: {
          if (opts.cut_mode == CutMode::Forbid) {
            flag(path, r, ViolationKind::CutForbidden, "cut is not allowed here");
            break;
          }
          if (!d->inst.cut_formula) {
            flag(path, r, ViolationKind::BadInstantiation, "cut needs its cut formula");
            break;
          }
          const FormulaPtr& phi = d->inst.cut_formula;
          if (opts.cut_mode == CutMode::AssumptionsOnly && !formula_in_assumptions(phi)) {
            flag(path, r, ViolationKind::CutForbidden,
                 "cut formula does not belong to the assumptions");
            break;
          }
          Sequent lp = d->premises[0]->conclusion;
          Sequent rp = d->premises[1]->conclusion;
          if (!remove_one_alpha(lp.suc, phi)) {
            flag(path, r, ViolationKind::PremiseMismatch,
                 "left premise lacks the cut formula on the right");
            break;
          }
          if (!remove_one_alpha(rp.ant, phi)) {
            flag(path, r, ViolationKind::PremiseMismatch,
                 "right premise lacks the cut formula on the left");
            break;
          }
          Sequent merged(mset_sum(lp.ant, rp.ant), mset_sum(lp.suc, rp.suc));
          if (!sequent_equal_alpha(merged, c))
            flag(path, r, ViolationKind::PremiseMismatch,
                 "conclusion is not the merge of the cut premise contexts");
          break;
        }
        case RuleId::EqPlus: {
          auto schema = rule_schema(r, c, nullptr, c, d->inst);
          if (auto* err = std::get_if<RuleError>(&schema)) {
            flag(path, r, err->kind, err->detail);
            break;
          }
          auto& sc = std::get<Schema>(schema);
          if (!premise_matches(d->premises[0]->conclusion, sc.ctx, sc.premises[0]))
            flag(path, r, ViolationKind::PremiseMismatch, "premise does not match the schema");
          break;
        }
        default: {
          check_schema_rule(d, path);
          break;
        }
      }
    }

    for (size_t i = 0; i < d->premises.size(); ++i) {
      path.push_back((int)i);
      check_node(d->premises[i], path);
      path.pop_back();
    }
  }

  void check_schema_rule(const DerivationPtr& d, std::vector<int>& path) {
    const Sequent& c = d->conclusion;
    RuleId r = d->rule;
    std::vector<OccRef> candidates;
    if (d->inst.principal) {
      candidates.push_back(*d->inst.principal);
    } else {
      Side side = principal_side(r);
      const FormulaMultiset& m = side == Side::Ant ? c.ant : c.suc;
      for (int i = 0; i < (int)m.size(); ++i) candidates.push_back({side, i});
    }
    std::optional<Violation> first_failure;
    for (auto& occ : candidates) {
      auto pv = take_occurrence(c, occ);
      if (!pv) {
        if (!first_failure)
          first_failure = Violation{path, r, ViolationKind::BadInstantiation,
                                    "principal index out of range"};
        continue;
      }
      auto schema = rule_schema(r, c, pv->formula, pv->ctx, d->inst);
      if (auto* err = std::get_if<RuleError>(&schema)) {
        if (!first_failure) first_failure = Violation{path, r, err->kind, err->detail};
        continue;
      }
      auto& sc = std::get<Schema>(schema);
      bool ok = true;
      for (size_t i = 0; i < sc.premises.size() && ok; ++i)
        ok = premise_matches(d->premises[i]->conclusion, sc.ctx, sc.premises[i]);
      if (ok) return;  // accepted
      if (!first_failure)
        first_failure = Violation{path, r, ViolationKind::PremiseMismatch,
                                  "premises do not match the rule schema"};
    }
    if (first_failure)
      violations.push_back(*first_failure);
    else
      flag(path, r, ViolationKind::BadInstantiation, "no principal occurrence available");
  }

  // Strict mode: an eigen symbol may occur only inside the subtree above the
  // node that introduced it.
  void check_strict_eigen(const DerivationPtr& d) {
    struct Entry {
      const Derivation* node;
      std::string eigen;
    };
    std::vector<Entry> eigens;
    walk(d, [&](const DerivationPtr& n) {
      for (auto& e : n->inst.eigens) eigens.push_back({n.get(), e.spelling()});
    });
    for (auto& [node, eigen] : eigens) {
      std::set<const Derivation*> inside;
      std::vector<const Derivation*> stack{node};
      while (!stack.empty()) {
        const Derivation* cur = stack.back();
        stack.pop_back();
        inside.insert(cur);
        for (auto& p : cur->premises) stack.push_back(p.get());
      }
      walk(d, [&, eigen = eigen, node = node](const DerivationPtr& n) {
        if (inside.count(n.get()) && n.get() != node) return;
        SymbolSet fs = free_symbols(n->conclusion);
        for (auto& s : fs)
          if (s.spelling() == eigen)
            flag({}, node->rule, ViolationKind::EigenvariableViolation,
                 "strict mode: eigen symbol " + eigen + " occurs outside its subtree");
      });
    }
  }
};

}  // namespace detail

inline CheckReport check(const DerivationPtr& d, const CheckOptions& opts) {
  detail::Checker checker{opts, {}, nullptr};
  std::vector<int> path;
  checker.check_node(d, path);
  if (opts.strict_eigen) checker.check_strict_eigen(d);
  CheckReport report;
  report.violations = std::move(checker.violations);
  report.accepted = report.violations.empty();
  report.height = height(d);
  report.uses_cut = uses_cut(d);
  return report;
}

inline CheckReport check(const DerivationPtr& d, System system, bool allow_cut,
                         const std::vector<Sequent>& assumptions = {}) {
  CheckOptions opts;
  opts.system = system;
  opts.cut_mode = allow_cut ? CutMode::Allow : CutMode::Forbid;
  opts.assumptions = assumptions;
  return check(d, opts);
}

}  // namespace rl2
