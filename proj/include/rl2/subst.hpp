#pragma once

#include <map>

#include "rl2/formula.hpp"

namespace rl2 {

struct CaptureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ArityMismatchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

// A substitution target is capturable only when it is a variable; parameters
// and constants are never bound.
inline bool capturable(const Term& t) { return t.sym.kind == SymbolKind::IndVar; }

struct IndSubst {
  std::map<SymbolName, Term> map;  // IndVar -> replacement term
};

inline FormulaPtr apply_ind(const FormulaPtr& f, const IndSubst& s,
                            std::vector<SymbolName>& bound);

inline Term apply_term(const Term& t, const IndSubst& s, const std::vector<SymbolName>& bound) {
  if (t.sym.kind != SymbolKind::IndVar) return t;
  if (std::find(bound.rbegin(), bound.rend(), t.sym) != bound.rend()) return t;
  auto it = s.map.find(t.sym);
  if (it == s.map.end()) return t;
  // free occurrence being replaced: the replacement must not be captured here
  if (capturable(it->second) &&
      std::find(bound.rbegin(), bound.rend(), it->second.sym) != bound.rend())
    throw CaptureError("replacement " + it->second.spelling() + " is not free for " +
                       t.spelling());
  return it->second;
}

template <class F>
FormulaPtr under_ind_binder(const SymbolName& v, std::vector<SymbolName>& bound, F body) {
  bound.push_back(v);
  FormulaPtr r = body();
  bound.pop_back();
  return r;
}

inline FormulaPtr apply_ind(const FormulaPtr& f, const IndSubst& s,
                            std::vector<SymbolName>& bound) {
  return std::visit(
      overloaded{
          [&](const PredAtom& a) {
            std::vector<Term> args;
            for (auto& t : a.args) args.push_back(apply_term(t, s, bound));
            return mk({PredAtom{a.pred, std::move(args)}});
          },
          [&](const IndEq& e) {
            return mk({IndEq{apply_term(e.lhs, s, bound), apply_term(e.rhs, s, bound)}});
          },
          [&](const RelApp& a) {
            std::vector<Term> args;
            for (auto& t : a.args) args.push_back(apply_term(t, s, bound));
            return mk({RelApp{a.rel, std::move(args)}});
          },
          [&](const RelEq& e) { return mk({e}); },
          [&](const Neg& n) { return mk_neg(apply_ind(n.body, s, bound)); },
          [&](const BinConn& b) {
            return mk_bin(b.op, apply_ind(b.lhs, s, bound), apply_ind(b.rhs, s, bound));
          },
          [&](const Quant& q) {
            FormulaPtr body = under_ind_binder(q.var, bound,
                                               [&] { return apply_ind(q.body, s, bound); });
            return mk({Quant{q.kind, q.var, std::move(body)}});
          },
          [&](const LamAtom1& l) {
            Lam1Arg arg = l.arg;
            if (auto* t = std::get_if<Term>(&arg)) {
              arg = apply_term(*t, s, bound);
            } else {
              auto& io = std::get<Iota1>(arg);
              FormulaPtr cond = under_ind_binder(io.var, bound,
                                                 [&] { return apply_ind(io.cond, s, bound); });
              arg = Iota1{io.var, std::move(cond)};
            }
            FormulaPtr body = under_ind_binder(l.var, bound,
                                               [&] { return apply_ind(l.body, s, bound); });
            return mk({LamAtom1{l.var, std::move(body), std::move(arg)}});
          },
          [&](const LamAtom2& l) {
            FormulaPtr cond = under_ind_binder(l.arg.var, bound,
                                               [&] { return apply_ind(l.arg.cond, s, bound); });
            FormulaPtr body = under_ind_binder(l.var, bound,
                                               [&] { return apply_ind(l.body, s, bound); });
            return mk({LamAtom2{l.var, std::move(body), Iota2{l.arg.var, std::move(cond)}}});
          },
      },
      f->node);
}

}  // namespace detail

// phi[x := t] on free occurrences; throws CaptureError when t is a variable
// that would become bound.
inline FormulaPtr subst_ind(const FormulaPtr& f, const SymbolName& x, const Term& t) {
  if (x.kind != SymbolKind::IndVar)
    throw std::invalid_argument("subst_ind replaces an individual variable");
  detail::IndSubst s;
  s.map.emplace(x, t);
  std::vector<SymbolName> bound;
  return detail::apply_ind(f, s, bound);
}

// Simultaneous phi[x1 := t1, ..., xn := tn]; the xs must be pairwise distinct.
inline FormulaPtr subst_ind_multi(const FormulaPtr& f, const std::vector<SymbolName>& xs,
                                  const std::vector<Term>& ts) {
  if (xs.size() != ts.size())
    throw ArityMismatchError("simultaneous substitution needs equally long lists");
  detail::IndSubst s;
  for (size_t i = 0; i < xs.size(); ++i) {
    if (xs[i].kind != SymbolKind::IndVar)
      throw std::invalid_argument("subst_ind_multi replaces individual variables");
    if (!s.map.emplace(xs[i], ts[i]).second)
      throw std::invalid_argument("duplicate variable in simultaneous substitution");
  }
  std::vector<SymbolName> bound;
  return detail::apply_ind(f, s, bound);
}

namespace detail {

inline FormulaPtr expand_rel_identity(const SymbolName& lhs, const SymbolName& rhs);

// Builds an atomic application of a relational symbol or predicate symbol.
inline FormulaPtr apply_head(const SymbolName& head, std::vector<Term> args) {
  if (head.kind == SymbolKind::PredSym) return mk_pred_atom(head, std::move(args));
  return mk_rel_app(head, std::move(args));
}

// X=Y rewritten per its defining biconditional: Ax1...Axn (X(x...) <-> Y(x...)).
inline FormulaPtr expand_rel_identity(const SymbolName& lhs, const SymbolName& rhs) {
  int n = lhs.arity;
  std::vector<Term> args;
  std::vector<SymbolName> vars;
  for (int i = 1; i <= n; ++i) {
    vars.push_back(ind_var("x", i));
    args.emplace_back(vars.back());
  }
  FormulaPtr body = mk_iff(apply_head(lhs, args), apply_head(rhs, args));
  for (int i = n - 1; i >= 0; --i) body = mk_forall(vars[i], std::move(body));
  return body;
}

inline FormulaPtr apply_rel(const FormulaPtr& f, const SymbolName& X, const SymbolName& R,
                            std::vector<SymbolName>& bound) {
  auto is_target = [&](const SymbolName& s) {
    return s == X && std::find(bound.rbegin(), bound.rend(), s) == bound.rend();
  };
  // A RelEq side replaced by a relational parameter stays an identity; a
  // predicate symbol or relational constant forces the biconditional expansion.
  auto subst_side = [&](const SymbolName& s) { return is_target(s) ? R : s; };
  auto keeps_releq = [&](const SymbolName& r) { return is_relational(r.kind) && r.kind != SymbolKind::RelConst; };
  return std::visit(
      overloaded{
          [&](const PredAtom& a) { return mk(Formula{a}); },
          [&](const IndEq& e) { return mk(Formula{e}); },
          [&](const RelApp& a) {
            if (!is_target(a.rel)) return mk(Formula{a});
            return apply_head(R, a.args);
          },
          [&](const RelEq& e) {
            if (!is_target(e.lhs) && !is_target(e.rhs)) return mk(Formula{e});
            SymbolName l = subst_side(e.lhs), r = subst_side(e.rhs);
            if (keeps_releq(R)) return mk_rel_eq(l, r);
            return expand_rel_identity(l, r);
          },
          [&](const Neg& n) { return mk_neg(apply_rel(n.body, X, R, bound)); },
          [&](const BinConn& b) {
            return mk_bin(b.op, apply_rel(b.lhs, X, R, bound), apply_rel(b.rhs, X, R, bound));
          },
          [&](const Quant& q) {
            bound.push_back(q.var);
            FormulaPtr body = apply_rel(q.body, X, R, bound);
            bound.pop_back();
            return mk({Quant{q.kind, q.var, std::move(body)}});
          },
          [&](const LamAtom1& l) {
            Lam1Arg arg = l.arg;
            if (auto* io = std::get_if<Iota1>(&arg)) {
              bound.push_back(io->var);
              FormulaPtr cond = apply_rel(io->cond, X, R, bound);
              bound.pop_back();
              arg = Iota1{io->var, std::move(cond)};
            }
            bound.push_back(l.var);
            FormulaPtr body = apply_rel(l.body, X, R, bound);
            bound.pop_back();
            return mk({LamAtom1{l.var, std::move(body), std::move(arg)}});
          },
          [&](const LamAtom2& l) {
            bound.push_back(l.arg.var);
            FormulaPtr cond = apply_rel(l.arg.cond, X, R, bound);
            bound.pop_back();
            bound.push_back(l.var);
            FormulaPtr body = apply_rel(l.body, X, R, bound);
            bound.pop_back();
            return mk({LamAtom2{l.var, std::move(body), Iota2{l.arg.var, std::move(cond)}}});
          },
      },
      f->node);
}

}  // namespace detail

// phi[X := R] where R is a relational parameter, relational constant, or
// predicate symbol of the same arity.
inline FormulaPtr subst_rel(const FormulaPtr& f, const SymbolName& X, const SymbolName& R) {
  if (X.kind != SymbolKind::RelVar)
    throw std::invalid_argument("subst_rel replaces a relational variable");
  if (R.kind != SymbolKind::RelPar && R.kind != SymbolKind::RelConst &&
      R.kind != SymbolKind::PredSym)
    throw std::invalid_argument("subst_rel target must be a relational parameter/constant or predicate symbol");
  if (X.arity != R.arity)
    throw ArityMismatchError("subst_rel arity mismatch: " + X.spelling() + "/" + R.spelling());
  std::vector<SymbolName> bound;
  return detail::apply_rel(f, X, R, bound);
}

// Substitution of a relational symbol for a relational symbol of the same
// non-variable kind-class; used by rule schemas that instantiate a bound
// relational variable with a parameter or a parameter with a parameter.
// Relational parameters and constants are never bound, so occurrences are
// replaced unconditionally and no capture can occur.
namespace detail {

inline FormulaPtr replace_symbol_walk(const FormulaPtr& f, const SymbolName& from,
                                      const SymbolName& to) {
  auto sub_term = [&](const Term& t) { return t.sym == from ? Term(to) : t; };
  auto sub_sym = [&](const SymbolName& s) { return s == from ? to : s; };
  return std::visit(
      overloaded{
          [&](const PredAtom& a) {
            std::vector<Term> args;
            for (auto& t : a.args) args.push_back(sub_term(t));
            return mk({PredAtom{sub_sym(a.pred), std::move(args)}});
          },
          [&](const IndEq& e) { return mk({IndEq{sub_term(e.lhs), sub_term(e.rhs)}}); },
          [&](const RelApp& a) {
            std::vector<Term> args;
            for (auto& t : a.args) args.push_back(sub_term(t));
            SymbolName head = sub_sym(a.rel);
            if (head.kind == SymbolKind::PredSym) return mk_pred_atom(head, std::move(args));
            return mk({RelApp{std::move(head), std::move(args)}});
          },
          [&](const RelEq& e) {
            SymbolName l = sub_sym(e.lhs), r = sub_sym(e.rhs);
            if (l.kind == SymbolKind::PredSym || r.kind == SymbolKind::PredSym)
              return expand_rel_identity(l, r);
            return mk({RelEq{std::move(l), std::move(r)}});
          },
          [&](const Neg& n) { return mk_neg(replace_symbol_walk(n.body, from, to)); },
          [&](const BinConn& b) {
            return mk_bin(b.op, replace_symbol_walk(b.lhs, from, to),
                          replace_symbol_walk(b.rhs, from, to));
          },
          [&](const Quant& q) {
            return mk({Quant{q.kind, q.var, replace_symbol_walk(q.body, from, to)}});
          },
          [&](const LamAtom1& l) {
            Lam1Arg arg = l.arg;
            if (auto* t = std::get_if<Term>(&arg))
              arg = sub_term(*t);
            else {
              auto& io = std::get<Iota1>(arg);
              arg = Iota1{io.var, replace_symbol_walk(io.cond, from, to)};
            }
            return mk({LamAtom1{l.var, replace_symbol_walk(l.body, from, to), std::move(arg)}});
          },
          [&](const LamAtom2& l) {
            return mk({LamAtom2{l.var, replace_symbol_walk(l.body, from, to),
                                Iota2{l.arg.var, replace_symbol_walk(l.arg.cond, from, to)}}});
          },
      },
      f->node);
}

}  // namespace detail

// Renames a parameter or constant (never bindable, so plain replacement).
inline FormulaPtr replace_free_symbol(const FormulaPtr& f, const SymbolName& from,
                                      const SymbolName& to) {
  if (from.kind == SymbolKind::IndVar || from.kind == SymbolKind::RelVar)
    throw std::invalid_argument("replace_free_symbol renames non-variable symbols");
  if (from.arity != to.arity) throw ArityMismatchError("rename arity mismatch");
  return detail::replace_symbol_walk(f, from, to);
}

}  // namespace rl2
