#pragma once

#include "rl2/search.hpp"

namespace rl2 {

// Extended sequents: pairs of formula sets (syntactic membership, no
// multiplicities), kept sorted for deterministic iteration.
struct ExtendedSequent {
  std::vector<FormulaPtr> ant, suc;

  static void normalize(std::vector<FormulaPtr>& v) {
    std::sort(v.begin(), v.end(), [](const FormulaPtr& l, const FormulaPtr& r) {
      return print_formula(l) < print_formula(r);
    });
    v.erase(std::unique(v.begin(), v.end(),
                        [](const FormulaPtr& l, const FormulaPtr& r) { return syn_eq(l, r); }),
            v.end());
  }

  ExtendedSequent() = default;
  ExtendedSequent(std::vector<FormulaPtr> a, std::vector<FormulaPtr> s)
      : ant(std::move(a)), suc(std::move(s)) {
    normalize(ant);
    normalize(suc);
  }

  bool contains(Side side, const FormulaPtr& f) const {
    const auto& v = side == Side::Ant ? ant : suc;
    for (auto& g : v)
      if (syn_eq(f, g)) return true;
    return false;
  }

  // returns true if newly added
  bool add(Side side, const FormulaPtr& f) {
    if (contains(side, f)) return false;
    auto& v = side == Side::Ant ? ant : suc;
    v.push_back(f);
    normalize(v);
    return true;
  }

  bool subset_of(const ExtendedSequent& other) const {
    for (auto& f : ant)
      if (!other.contains(Side::Ant, f)) return false;
    for (auto& f : suc)
      if (!other.contains(Side::Suc, f)) return false;
    return true;
  }
};

inline std::string print_extended(const ExtendedSequent& es) {
  Sequent s(es.ant, es.suc);
  return print_sequent(s);
}

struct WitnessViolation {
  int clause = 0;  // 1..9
  Side side = Side::Ant;
  FormulaPtr trigger;
  std::optional<SymbolName> parameter;  // clauses 6 and 8
  std::string detail;
};

namespace detail {

struct EsSymbols {
  std::vector<SymbolName> ind_consts;
  std::vector<SymbolName> rel_consts;  // all arities
  std::vector<SymbolName> ind_pars;
  std::vector<SymbolName> rel_pars;
};

inline EsSymbols es_symbols(const ExtendedSequent& es) {
  SymbolSet all;
  for (auto& f : es.ant) {
    auto fs = free_symbols(f);
    all.insert(fs.begin(), fs.end());
  }
  for (auto& f : es.suc) {
    auto fs = free_symbols(f);
    all.insert(fs.begin(), fs.end());
  }
  EsSymbols out;
  for (auto& s : all) {
    switch (s.kind) {
      case SymbolKind::IndConst: out.ind_consts.push_back(s); break;
      case SymbolKind::RelConst: out.rel_consts.push_back(s); break;
      case SymbolKind::IndPar: out.ind_pars.push_back(s); break;
      case SymbolKind::RelPar: out.rel_pars.push_back(s); break;
      default: break;
    }
  }
  return out;
}

// exists an individual constant k with phi[x:=k] in the given side
inline bool some_const_instance(const ExtendedSequent& es, Side side, const FormulaPtr& phi,
                                const SymbolName& x, const EsSymbols& syms) {
  if (!occurs_free(phi, x)) return es.contains(side, phi);
  for (auto& k : syms.ind_consts)
    if (es.contains(side, subst_ind(phi, x, Term(k)))) return true;
  return false;
}

inline bool some_relconst_instance(const ExtendedSequent& es, Side side, const FormulaPtr& phi,
                                   const SymbolName& X, const EsSymbols& syms) {
  if (!occurs_free(phi, X)) return es.contains(side, phi);
  for (auto& k : syms.rel_consts) {
    if (k.arity != X.arity) continue;
    if (es.contains(side, subst_rel(phi, X, k))) return true;
  }
  return false;
}

}  // namespace detail

// The saturation conditions on an extended sequent: every quantifier,
// description, and relational identity has its constant witnesses.
inline std::vector<WitnessViolation> check_witness_property(const ExtendedSequent& es) {
  using namespace detail;
  std::vector<WitnessViolation> out;
  EsSymbols syms = es_symbols(es);

  auto scan = [&](Side side, const FormulaPtr& f) {
    // clauses 1-4: quantified formulas
    if (auto* q = std::get_if<Quant>(&f->node)) {
      bool forall = q->kind == QuantKind::ForallInd || q->kind == QuantKind::ForallRel;
      bool second = q->kind == QuantKind::ForallRel || q->kind == QuantKind::ExistsRel;
      Side want = forall ? Side::Suc : Side::Ant;
      if (side != want) return;
      if (!second) {
        if (!some_const_instance(es, side, q->body, q->var, syms))
          out.push_back({forall ? 1 : 2, side, f, std::nullopt,
                         "no constant instance of " + print_formula(f)});
      } else {
        if (!some_relconst_instance(es, side, q->body, q->var, syms))
          out.push_back({forall ? 3 : 4, side, f, std::nullopt,
                         "no relational constant instance of " + print_formula(f)});
      }
      return;
    }
    // clauses 5-8: descriptions under lambda atoms
    if (auto* l = std::get_if<LamAtom1>(&f->node)) {
      auto* io = std::get_if<Iota1>(&l->arg);
      if (!io) return;
      if (side == Side::Ant) {
        bool ok = false;
        if (!occurs_free(io->cond, io->var) && !occurs_free(l->body, l->var))
          ok = es.contains(Side::Ant, io->cond) && es.contains(Side::Ant, l->body);
        for (auto& k : syms.ind_consts) {
          if (ok) break;
          ok = es.contains(Side::Ant, subst_ind(io->cond, io->var, Term(k))) &&
               es.contains(Side::Ant, subst_ind(l->body, l->var, Term(k)));
        }
        if (!ok)
          out.push_back({5, side, f, std::nullopt,
                         "no shared constant witness for " + print_formula(f)});
      } else {
        for (auto& b : syms.ind_pars) {
          Term tb(b);
          bool ok = es.contains(Side::Suc, subst_ind(io->cond, io->var, tb)) ||
                    es.contains(Side::Suc, subst_ind(l->body, l->var, tb));
          for (auto& k : syms.ind_consts) {
            if (ok) break;
            ok = es.contains(Side::Suc, mk_ind_eq(Term(k), tb)) &&
                 es.contains(Side::Ant, subst_ind(io->cond, io->var, Term(k)));
          }
          if (!ok)
            out.push_back({6, side, f, b,
                           "parameter " + b.spelling() + " lacks its disjunct for " +
                               print_formula(f)});
        }
      }
      return;
    }
    if (auto* l = std::get_if<LamAtom2>(&f->node)) {
      if (side == Side::Ant) {
        bool ok = false;
        if (!occurs_free(l->arg.cond, l->arg.var) && !occurs_free(l->body, l->var))
          ok = es.contains(Side::Ant, l->arg.cond) && es.contains(Side::Ant, l->body);
        for (auto& k : syms.rel_consts) {
          if (ok) break;
          if (k.arity != l->var.arity) continue;
          ok = es.contains(Side::Ant, subst_rel(l->arg.cond, l->arg.var, k)) &&
               es.contains(Side::Ant, subst_rel(l->body, l->var, k));
        }
        if (!ok)
          out.push_back({7, side, f, std::nullopt,
                         "no shared relational constant witness for " + print_formula(f)});
      } else {
        for (auto& b : syms.rel_pars) {
          if (b.arity != l->var.arity) continue;
          bool ok = es.contains(Side::Suc, subst_rel(l->arg.cond, l->arg.var, b)) ||
                    es.contains(Side::Suc, subst_rel(l->body, l->var, b));
          for (auto& k : syms.rel_consts) {
            if (ok) break;
            if (k.arity != b.arity) continue;
            ok = es.contains(Side::Suc, mk_rel_eq(k, b)) &&
                 es.contains(Side::Ant, subst_rel(l->arg.cond, l->arg.var, k));
          }
          if (!ok)
            out.push_back({8, side, f, b,
                           "relational parameter " + b.spelling() + " lacks its disjunct for " +
                               print_formula(f)});
        }
      }
      return;
    }
    // clause 9: relational identities on the right
    if (auto* e = std::get_if<RelEq>(&f->node)) {
      if (side != Side::Suc) return;
      bool ok = false;
      auto separated = [&](const SymbolName& in_gamma, const SymbolName& in_delta) {
        for (auto& g : es.ant) {
          auto* app = std::get_if<RelApp>(&g->node);
          if (!app || !(app->rel == in_gamma)) continue;
          bool all_const = std::all_of(app->args.begin(), app->args.end(), [](const Term& t) {
            return t.sym.kind == SymbolKind::IndConst;
          });
          if (!all_const) continue;
          if (es.contains(Side::Suc, mk_rel_app(in_delta, app->args))) return true;
        }
        return false;
      };
      ok = separated(e->lhs, e->rhs) || separated(e->rhs, e->lhs);
      if (!ok)
        out.push_back({9, side, f, std::nullopt,
                       "no separating constant tuple for " + print_formula(f)});
    }
  };

  for (auto& f : es.ant) scan(Side::Ant, f);
  for (auto& f : es.suc) scan(Side::Suc, f);
  return out;
}

enum class SaturatePolicy { FirstDisjunct, ConsistencyGuided };

struct SaturateResult {
  ExtendedSequent result;
  bool budget_exhausted = false;
  std::vector<WitnessViolation> remaining;
};

// Extends es until it admits the witness property or the fresh-constant
// budget runs out. Each clause fires at most once per triggering instance;
// the disjunctive clauses 6 and 8 take their first disjunct unless the
// consistency-guided policy is selected (a bounded prove call screens
// choices; incomplete by nature).
inline SaturateResult saturate(ExtendedSequent es, int fresh_const_budget,
                               SaturatePolicy policy = SaturatePolicy::FirstDisjunct,
                               std::vector<int> clause_order = {1, 2, 3, 4, 5, 6, 7, 8, 9}) {
  using namespace detail;
  std::set<std::string> fired;
  int budget = fresh_const_budget;
  bool exhausted = false;

  auto all_used = [&] {
    std::set<std::string> used;
    for (auto& f : es.ant)
      for (auto& s : free_symbols(f)) used.insert(s.spelling());
    for (auto& f : es.suc)
      for (auto& s : free_symbols(f)) used.insert(s.spelling());
    return used;
  };

  // with the consistency-guided policy, skip additions that make a bounded
  // prover close the extended sequent
  auto consistent_with = [&](const std::vector<std::pair<Side, FormulaPtr>>& additions) {
    if (policy != SaturatePolicy::ConsistencyGuided) return true;
    ExtendedSequent trial = es;
    for (auto& [side, f] : additions) trial.add(side, f);
    SearchConfig cfg;
    cfg.max_depth = 4;
    cfg.time_budget_ms = 200;
    auto r = prove(Sequent(trial.ant, trial.suc), System::RL2, cfg);
    return !std::holds_alternative<DerivationPtr>(r);
  };

  bool changed = true;
  while (changed && !exhausted) {
    changed = false;
    auto violations = check_witness_property(es);
    std::stable_sort(violations.begin(), violations.end(),
                     [&](const WitnessViolation& l, const WitnessViolation& r) {
                       auto pos = [&](int c) {
                         return std::find(clause_order.begin(), clause_order.end(), c) -
                                clause_order.begin();
                       };
                       return pos(l.clause) < pos(r.clause);
                     });
    for (auto& v : violations) {
      std::string key = std::to_string(v.clause) + "|" + (v.side == Side::Ant ? "a" : "s") + "|" +
                        print_formula(v.trigger) +
                        (v.parameter ? "|" + v.parameter->spelling() : "");
      if (fired.count(key)) continue;
      auto used = all_used();
      auto charge = [&](int n) {
        if (budget >= n) {
          budget -= n;
          return true;
        }
        exhausted = true;
        return false;
      };
      bool did = false;
      switch (v.clause) {
        case 1:
        case 2: {
          auto* q = std::get_if<Quant>(&v.trigger->node);
          if (!charge(1)) break;
          SymbolName k = fresh_ind_const(used);
          did = es.add(v.side, subst_ind(q->body, q->var, Term(k)));
          break;
        }
        case 3:
        case 4: {
          auto* q = std::get_if<Quant>(&v.trigger->node);
          if (!charge(1)) break;
          SymbolName k = fresh_rel_const(used, q->var.arity);
          did = es.add(v.side, subst_rel(q->body, q->var, k));
          break;
        }
        case 5: {
          auto* l = std::get_if<LamAtom1>(&v.trigger->node);
          auto& io = std::get<Iota1>(l->arg);
          if (!charge(1)) break;
          SymbolName k = fresh_ind_const(used);
          did = es.add(Side::Ant, subst_ind(io.cond, io.var, Term(k)));
          did = es.add(Side::Ant, subst_ind(l->body, l->var, Term(k))) || did;
          break;
        }
        case 6: {
          auto* l = std::get_if<LamAtom1>(&v.trigger->node);
          auto& io = std::get<Iota1>(l->arg);
          Term b(*v.parameter);
          FormulaPtr first = subst_ind(io.cond, io.var, b);
          if (consistent_with({{Side::Suc, first}})) {
            did = es.add(Side::Suc, first);
          } else {
            FormulaPtr second = subst_ind(l->body, l->var, b);
            if (consistent_with({{Side::Suc, second}})) {
              did = es.add(Side::Suc, second);
            } else {
              if (!charge(1)) break;
              SymbolName k = fresh_ind_const(used);
              did = es.add(Side::Suc, mk_ind_eq(Term(k), b));
              did = es.add(Side::Ant, subst_ind(io.cond, io.var, Term(k))) || did;
            }
          }
          break;
        }
        case 7: {
          auto* l = std::get_if<LamAtom2>(&v.trigger->node);
          if (!charge(1)) break;
          SymbolName k = fresh_rel_const(used, l->var.arity);
          did = es.add(Side::Ant, subst_rel(l->arg.cond, l->arg.var, k));
          did = es.add(Side::Ant, subst_rel(l->body, l->var, k)) || did;
          break;
        }
        case 8: {
          auto* l = std::get_if<LamAtom2>(&v.trigger->node);
          SymbolName b = *v.parameter;
          FormulaPtr first = subst_rel(l->arg.cond, l->arg.var, b);
          if (consistent_with({{Side::Suc, first}})) {
            did = es.add(Side::Suc, first);
          } else {
            FormulaPtr second = subst_rel(l->body, l->var, b);
            if (consistent_with({{Side::Suc, second}})) {
              did = es.add(Side::Suc, second);
            } else {
              if (!charge(1)) break;
              SymbolName k = fresh_rel_const(used, b.arity);
              did = es.add(Side::Suc, mk_rel_eq(k, b));
              did = es.add(Side::Ant, subst_rel(l->arg.cond, l->arg.var, k)) || did;
            }
          }
          break;
        }
        case 9: {
          auto* e = std::get_if<RelEq>(&v.trigger->node);
          int n = e->lhs.arity;
          if (!charge(n)) break;
          std::vector<Term> ks;
          for (int i = 0; i < n; ++i) ks.emplace_back(fresh_ind_const(used, i));
          did = es.add(Side::Ant, mk_rel_app(e->lhs, ks));
          did = es.add(Side::Suc, mk_rel_app(e->rhs, ks)) || did;
          break;
        }
        default: break;
      }
      if (exhausted) break;
      fired.insert(key);
      if (did) {
        changed = true;
        break;  // rescan from the start of the clause order
      }
    }
  }

  SaturateResult out;
  out.result = std::move(es);
  out.budget_exhausted = exhausted;
  out.remaining = check_witness_property(out.result);
  return out;
}

// ---- extended sequent text form --------------------------------------------

inline ParseResult<ExtendedSequent> parse_extended_sequent(std::string_view src) {
  auto r = parse_sequent(src);
  if (auto* e = std::get_if<ParseError>(&r)) return *e;
  auto& s = std::get<Sequent>(r);
  return ExtendedSequent(s.ant, s.suc);
}

}  // namespace rl2
