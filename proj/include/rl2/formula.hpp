#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <variant>
#include <vector>

#include "rl2/symbols.hpp"

namespace rl2 {

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

enum class BinOp { And, Or, Imp, Iff };
enum class QuantKind { ForallInd, ExistsInd, ForallRel, ExistsRel };

// iota x. phi / iota X. phi — quasi-/pseudo-terms; they exist only as the
// argument slot of a matching lambda abstract, never as basic terms.
struct Iota1 {
  SymbolName var;  // IndVar
  FormulaPtr cond;
};
struct Iota2 {
  SymbolName var;  // RelVar
  FormulaPtr cond;
};

using Lam1Arg = std::variant<Term, Iota1>;

struct PredAtom {
  SymbolName pred;
  std::vector<Term> args;
};
struct IndEq {
  Term lhs, rhs;
};
struct RelApp {
  SymbolName rel;  // RelVar | RelPar | RelConst
  std::vector<Term> args;
};
struct RelEq {
  SymbolName lhs, rhs;  // relational symbols of equal arity
};
struct Neg {
  FormulaPtr body;
};
struct BinConn {
  BinOp op;
  FormulaPtr lhs, rhs;
};
struct Quant {
  QuantKind kind;
  SymbolName var;  // IndVar for first-order, RelVar for second-order
  FormulaPtr body;
};
// (\x body) arg — lambda atom over an individual abstract; the argument is a
// plain term or a first-order description.
struct LamAtom1 {
  SymbolName var;  // IndVar
  FormulaPtr body;
  Lam1Arg arg;
};
// (\X body) (iota Y. cond) — a relational abstract applies only to a
// second-order description.
struct LamAtom2 {
  SymbolName var;  // RelVar
  FormulaPtr body;
  Iota2 arg;
};

struct Formula {
  std::variant<PredAtom, IndEq, RelApp, RelEq, Neg, BinConn, Quant, LamAtom1, LamAtom2> node;
};

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

// ---- constructors -------------------------------------------------------

inline FormulaPtr mk(Formula f) { return std::make_shared<const Formula>(std::move(f)); }

inline FormulaPtr mk_pred_atom(SymbolName pred, std::vector<Term> args) {
  if (pred.kind != SymbolKind::PredSym)
    throw std::invalid_argument("predicate atom head must be a predicate symbol");
  if ((int)args.size() != pred.arity)
    throw std::invalid_argument("arity mismatch in atom " + pred.spelling());
  return mk({PredAtom{std::move(pred), std::move(args)}});
}
inline FormulaPtr mk_ind_eq(Term lhs, Term rhs) { return mk({IndEq{std::move(lhs), std::move(rhs)}}); }
inline FormulaPtr mk_rel_app(SymbolName rel, std::vector<Term> args) {
  if (!is_relational(rel.kind))
    throw std::invalid_argument("relational application head must be relational");
  if ((int)args.size() != rel.arity)
    throw std::invalid_argument("arity mismatch in application of " + rel.spelling());
  return mk({RelApp{std::move(rel), std::move(args)}});
}
inline FormulaPtr mk_rel_eq(SymbolName lhs, SymbolName rhs) {
  if (!is_relational(lhs.kind) || !is_relational(rhs.kind))
    throw std::invalid_argument("relational identity needs relational symbols");
  if (lhs.arity != rhs.arity)
    throw std::invalid_argument("relational identity needs equal arities");
  return mk({RelEq{std::move(lhs), std::move(rhs)}});
}
inline FormulaPtr mk_neg(FormulaPtr f) { return mk({Neg{std::move(f)}}); }
inline FormulaPtr mk_bin(BinOp op, FormulaPtr l, FormulaPtr r) {
  return mk({BinConn{op, std::move(l), std::move(r)}});
}
inline FormulaPtr mk_and(FormulaPtr l, FormulaPtr r) { return mk_bin(BinOp::And, std::move(l), std::move(r)); }
inline FormulaPtr mk_or(FormulaPtr l, FormulaPtr r) { return mk_bin(BinOp::Or, std::move(l), std::move(r)); }
inline FormulaPtr mk_imp(FormulaPtr l, FormulaPtr r) { return mk_bin(BinOp::Imp, std::move(l), std::move(r)); }
inline FormulaPtr mk_iff(FormulaPtr l, FormulaPtr r) { return mk_bin(BinOp::Iff, std::move(l), std::move(r)); }

inline FormulaPtr mk_quant(QuantKind k, SymbolName var, FormulaPtr body) {
  bool second = (k == QuantKind::ForallRel || k == QuantKind::ExistsRel);
  if (second && var.kind != SymbolKind::RelVar)
    throw std::invalid_argument("second-order quantifier binds a relational variable");
  if (!second && var.kind != SymbolKind::IndVar)
    throw std::invalid_argument("first-order quantifier binds an individual variable");
  return mk({Quant{k, std::move(var), std::move(body)}});
}
inline FormulaPtr mk_forall(SymbolName x, FormulaPtr body) { return mk_quant(QuantKind::ForallInd, std::move(x), std::move(body)); }
inline FormulaPtr mk_exists(SymbolName x, FormulaPtr body) { return mk_quant(QuantKind::ExistsInd, std::move(x), std::move(body)); }
inline FormulaPtr mk_forall2(SymbolName X, FormulaPtr body) { return mk_quant(QuantKind::ForallRel, std::move(X), std::move(body)); }
inline FormulaPtr mk_exists2(SymbolName X, FormulaPtr body) { return mk_quant(QuantKind::ExistsRel, std::move(X), std::move(body)); }

inline FormulaPtr mk_lam1(SymbolName x, FormulaPtr body, Lam1Arg arg) {
  if (x.kind != SymbolKind::IndVar)
    throw std::invalid_argument("predicate abstract binds an individual variable");
  if (auto* io = std::get_if<Iota1>(&arg); io && io->var.kind != SymbolKind::IndVar)
    throw std::invalid_argument("first-order description binds an individual variable");
  return mk({LamAtom1{std::move(x), std::move(body), std::move(arg)}});
}
inline FormulaPtr mk_lam2(SymbolName X, FormulaPtr body, Iota2 arg) {
  if (X.kind != SymbolKind::RelVar || arg.var.kind != SymbolKind::RelVar)
    throw std::invalid_argument("relational abstract and description bind relational variables");
  if (X.arity != arg.var.arity)
    throw std::invalid_argument("abstract/description arity mismatch");
  return mk({LamAtom2{std::move(X), std::move(body), std::move(arg)}});
}

inline bool is_atomic(const Formula& f) {
  return std::holds_alternative<PredAtom>(f.node) || std::holds_alternative<IndEq>(f.node) ||
         std::holds_alternative<RelApp>(f.node) || std::holds_alternative<RelEq>(f.node);
}
inline bool is_atomic(const FormulaPtr& f) { return is_atomic(*f); }

// ---- free symbols -------------------------------------------------------

namespace detail {

inline void collect_free(const FormulaPtr& f, std::vector<SymbolName>& bound, SymbolSet& out);

inline void collect_term(const Term& t, const std::vector<SymbolName>& bound, SymbolSet& out) {
  if (t.sym.kind == SymbolKind::IndVar &&
      std::find(bound.rbegin(), bound.rend(), t.sym) != bound.rend())
    return;
  out.insert(t.sym);
}

inline void collect_rel(const SymbolName& s, const std::vector<SymbolName>& bound, SymbolSet& out) {
  if (s.kind == SymbolKind::RelVar &&
      std::find(bound.rbegin(), bound.rend(), s) != bound.rend())
    return;
  out.insert(s);
}

inline void collect_free(const FormulaPtr& f, std::vector<SymbolName>& bound, SymbolSet& out) {
  std::visit(overloaded{
                 [&](const PredAtom& a) {
                   out.insert(a.pred);
                   for (auto& t : a.args) collect_term(t, bound, out);
                 },
                 [&](const IndEq& e) {
                   collect_term(e.lhs, bound, out);
                   collect_term(e.rhs, bound, out);
                 },
                 [&](const RelApp& a) {
                   collect_rel(a.rel, bound, out);
                   for (auto& t : a.args) collect_term(t, bound, out);
                 },
                 [&](const RelEq& e) {
                   collect_rel(e.lhs, bound, out);
                   collect_rel(e.rhs, bound, out);
                 },
                 [&](const Neg& n) { collect_free(n.body, bound, out); },
                 [&](const BinConn& b) {
                   collect_free(b.lhs, bound, out);
                   collect_free(b.rhs, bound, out);
                 },
                 [&](const Quant& q) {
                   bound.push_back(q.var);
                   collect_free(q.body, bound, out);
                   bound.pop_back();
                 },
                 [&](const LamAtom1& l) {
                   if (auto* t = std::get_if<Term>(&l.arg)) {
                     collect_term(*t, bound, out);
                   } else {
                     auto& io = std::get<Iota1>(l.arg);
                     bound.push_back(io.var);
                     collect_free(io.cond, bound, out);
                     bound.pop_back();
                   }
                   bound.push_back(l.var);
                   collect_free(l.body, bound, out);
                   bound.pop_back();
                 },
                 [&](const LamAtom2& l) {
                   bound.push_back(l.arg.var);
                   collect_free(l.arg.cond, bound, out);
                   bound.pop_back();
                   bound.push_back(l.var);
                   collect_free(l.body, bound, out);
                   bound.pop_back();
                 },
             },
             f->node);
}

}  // namespace detail

// Every parameter, constant, and predicate symbol occurring in f, plus the
// variables occurring free at their occurrence point.
inline SymbolSet free_symbols(const FormulaPtr& f) {
  SymbolSet out;
  std::vector<SymbolName> bound;
  detail::collect_free(f, bound, out);
  return out;
}

inline bool occurs_free(const FormulaPtr& f, const SymbolName& s) {
  return free_symbols(f).count(s) > 0;
}

// ---- alpha-aware total order -------------------------------------------

namespace detail {

// Bound occurrences compare by binder level, free symbols by name, so the
// order is invariant under renaming of bound variables.
struct AlphaEnv {
  std::vector<SymbolName> binders;
  int level_of(const SymbolName& s) const {
    for (int i = (int)binders.size() - 1; i >= 0; --i)
      if (binders[i] == s) return i;
    return -1;
  }
};

inline int cmp_int(long l, long r) { return l < r ? -1 : (l > r ? 1 : 0); }

inline int cmp_symbol(const SymbolName& l, const SymbolName& r) {
  auto c = l <=> r;
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

inline int cmp_occurrence(const SymbolName& l, const SymbolName& r, const AlphaEnv& le,
                          const AlphaEnv& re) {
  int ll = le.level_of(l), rl = re.level_of(r);
  bool lb = ll >= 0, rb = rl >= 0;
  if (lb != rb) return lb ? -1 : 1;
  if (lb) return cmp_int(ll, rl);
  return cmp_symbol(l, r);
}

inline int cmp_alpha(const FormulaPtr& l, const FormulaPtr& r, AlphaEnv& le, AlphaEnv& re);

inline int cmp_term(const Term& l, const Term& r, const AlphaEnv& le, const AlphaEnv& re) {
  return cmp_occurrence(l.sym, r.sym, le, re);
}

template <class F>
int under_binders(AlphaEnv& le, AlphaEnv& re, const SymbolName& lv, const SymbolName& rv, F body) {
  if (int c = cmp_int(lv.arity, rv.arity)) return c;
  if (int c = cmp_int((int)lv.kind, (int)rv.kind)) return c;
  le.binders.push_back(lv);
  re.binders.push_back(rv);
  int c = body();
  le.binders.pop_back();
  re.binders.pop_back();
  return c;
}

inline int cmp_alpha(const FormulaPtr& l, const FormulaPtr& r, AlphaEnv& le, AlphaEnv& re) {
  if (int c = cmp_int((long)l->node.index(), (long)r->node.index())) return c;
  return std::visit(
      overloaded{
          [&](const PredAtom& a) {
            auto& b = std::get<PredAtom>(r->node);
            if (int c = cmp_symbol(a.pred, b.pred)) return c;
            if (int c = cmp_int((long)a.args.size(), (long)b.args.size())) return c;
            for (size_t i = 0; i < a.args.size(); ++i)
              if (int c = cmp_term(a.args[i], b.args[i], le, re)) return c;
            return 0;
          },
          [&](const IndEq& a) {
            auto& b = std::get<IndEq>(r->node);
            if (int c = cmp_term(a.lhs, b.lhs, le, re)) return c;
            return cmp_term(a.rhs, b.rhs, le, re);
          },
          [&](const RelApp& a) {
            auto& b = std::get<RelApp>(r->node);
            if (int c = cmp_occurrence(a.rel, b.rel, le, re)) return c;
            if (int c = cmp_int((long)a.args.size(), (long)b.args.size())) return c;
            for (size_t i = 0; i < a.args.size(); ++i)
              if (int c = cmp_term(a.args[i], b.args[i], le, re)) return c;
            return 0;
          },
          [&](const RelEq& a) {
            auto& b = std::get<RelEq>(r->node);
            if (int c = cmp_occurrence(a.lhs, b.lhs, le, re)) return c;
            return cmp_occurrence(a.rhs, b.rhs, le, re);
          },
          [&](const Neg& a) { return cmp_alpha(a.body, std::get<Neg>(r->node).body, le, re); },
          [&](const BinConn& a) {
            auto& b = std::get<BinConn>(r->node);
            if (int c = cmp_int((int)a.op, (int)b.op)) return c;
            if (int c = cmp_alpha(a.lhs, b.lhs, le, re)) return c;
            return cmp_alpha(a.rhs, b.rhs, le, re);
          },
          [&](const Quant& a) {
            auto& b = std::get<Quant>(r->node);
            if (int c = cmp_int((int)a.kind, (int)b.kind)) return c;
            return under_binders(le, re, a.var, b.var,
                                 [&] { return cmp_alpha(a.body, b.body, le, re); });
          },
          [&](const LamAtom1& a) {
            auto& b = std::get<LamAtom1>(r->node);
            if (int c = cmp_int((long)a.arg.index(), (long)b.arg.index())) return c;
            if (auto* t = std::get_if<Term>(&a.arg)) {
              if (int c = cmp_term(*t, std::get<Term>(b.arg), le, re)) return c;
            } else {
              auto& ia = std::get<Iota1>(a.arg);
              auto& ib = std::get<Iota1>(b.arg);
              if (int c = under_binders(le, re, ia.var, ib.var,
                                        [&] { return cmp_alpha(ia.cond, ib.cond, le, re); }))
                return c;
            }
            return under_binders(le, re, a.var, b.var,
                                 [&] { return cmp_alpha(a.body, b.body, le, re); });
          },
          [&](const LamAtom2& a) {
            auto& b = std::get<LamAtom2>(r->node);
            if (int c = under_binders(le, re, a.arg.var, b.arg.var,
                                      [&] { return cmp_alpha(a.arg.cond, b.arg.cond, le, re); }))
              return c;
            return under_binders(le, re, a.var, b.var,
                                 [&] { return cmp_alpha(a.body, b.body, le, re); });
          },
      },
      l->node);
}

}  // namespace detail

// Total order on alpha-equivalence classes.
inline int compare_alpha(const FormulaPtr& l, const FormulaPtr& r) {
  detail::AlphaEnv le, re;
  return detail::cmp_alpha(l, r, le, re);
}

// True iff the formulas are identical up to consistent renaming of bound
// individual and relational variables.
inline bool alpha_eq(const FormulaPtr& l, const FormulaPtr& r) {
  return compare_alpha(l, r) == 0;
}

// Syntactic equality, bound-variable names included.
inline bool syn_eq(const FormulaPtr& l, const FormulaPtr& r);

namespace detail {
inline int cmp_syn(const FormulaPtr& l, const FormulaPtr& r);
}

inline bool syn_eq(const FormulaPtr& l, const FormulaPtr& r) { return detail::cmp_syn(l, r) == 0; }

namespace detail {

inline int cmp_syn(const FormulaPtr& l, const FormulaPtr& r) {
  if (int c = cmp_int((long)l->node.index(), (long)r->node.index())) return c;
  return std::visit(
      overloaded{
          [&](const PredAtom& a) {
            auto& b = std::get<PredAtom>(r->node);
            if (int c = cmp_symbol(a.pred, b.pred)) return c;
            if (int c = cmp_int((long)a.args.size(), (long)b.args.size())) return c;
            for (size_t i = 0; i < a.args.size(); ++i)
              if (int c = cmp_symbol(a.args[i].sym, b.args[i].sym)) return c;
            return 0;
          },
          [&](const IndEq& a) {
            auto& b = std::get<IndEq>(r->node);
            if (int c = cmp_symbol(a.lhs.sym, b.lhs.sym)) return c;
            return cmp_symbol(a.rhs.sym, b.rhs.sym);
          },
          [&](const RelApp& a) {
            auto& b = std::get<RelApp>(r->node);
            if (int c = cmp_symbol(a.rel, b.rel)) return c;
            if (int c = cmp_int((long)a.args.size(), (long)b.args.size())) return c;
            for (size_t i = 0; i < a.args.size(); ++i)
              if (int c = cmp_symbol(a.args[i].sym, b.args[i].sym)) return c;
            return 0;
          },
          [&](const RelEq& a) {
            auto& b = std::get<RelEq>(r->node);
            if (int c = cmp_symbol(a.lhs, b.lhs)) return c;
            return cmp_symbol(a.rhs, b.rhs);
          },
          [&](const Neg& a) { return cmp_syn(a.body, std::get<Neg>(r->node).body); },
          [&](const BinConn& a) {
            auto& b = std::get<BinConn>(r->node);
            if (int c = cmp_int((int)a.op, (int)b.op)) return c;
            if (int c = cmp_syn(a.lhs, b.lhs)) return c;
            return cmp_syn(a.rhs, b.rhs);
          },
          [&](const Quant& a) {
            auto& b = std::get<Quant>(r->node);
            if (int c = cmp_int((int)a.kind, (int)b.kind)) return c;
            if (int c = cmp_symbol(a.var, b.var)) return c;
            return cmp_syn(a.body, b.body);
          },
          [&](const LamAtom1& a) {
            auto& b = std::get<LamAtom1>(r->node);
            if (int c = cmp_int((long)a.arg.index(), (long)b.arg.index())) return c;
            if (auto* t = std::get_if<Term>(&a.arg)) {
              if (int c = cmp_symbol(t->sym, std::get<Term>(b.arg).sym)) return c;
            } else {
              auto& ia = std::get<Iota1>(a.arg);
              auto& ib = std::get<Iota1>(b.arg);
              if (int c = cmp_symbol(ia.var, ib.var)) return c;
              if (int c = cmp_syn(ia.cond, ib.cond)) return c;
            }
            if (int c = cmp_symbol(a.var, b.var)) return c;
            return cmp_syn(a.body, b.body);
          },
          [&](const LamAtom2& a) {
            auto& b = std::get<LamAtom2>(r->node);
            if (int c = cmp_symbol(a.arg.var, b.arg.var)) return c;
            if (int c = cmp_syn(a.arg.cond, b.arg.cond)) return c;
            if (int c = cmp_symbol(a.var, b.var)) return c;
            return cmp_syn(a.body, b.body);
          },
      },
      l->node);
}

}  // namespace detail

// Arity-consistency across occurrences: no two relational or predicate
// symbols in f may share kind/base/index at different arities.
inline bool arity_consistent(const FormulaPtr& f, std::string* clash = nullptr) {
  std::map<std::tuple<SymbolKind, std::string, int>, int> seen;
  bool ok = true;
  auto visit_sym = [&](const SymbolName& s) {
    if (s.arity == 0) return;
    auto key = std::make_tuple(s.kind, s.base, s.index ? *s.index : -1);
    auto [it, inserted] = seen.emplace(key, s.arity);
    if (!inserted && it->second != s.arity) {
      ok = false;
      if (clash) *clash = s.spelling();
    }
  };
  // walk every symbol occurrence, bound or free
  std::vector<FormulaPtr> stack{f};
  while (!stack.empty()) {
    FormulaPtr cur = stack.back();
    stack.pop_back();
    std::visit(overloaded{
                   [&](const PredAtom& a) { visit_sym(a.pred); },
                   [&](const IndEq&) {},
                   [&](const RelApp& a) { visit_sym(a.rel); },
                   [&](const RelEq& e) {
                     visit_sym(e.lhs);
                     visit_sym(e.rhs);
                   },
                   [&](const Neg& n) { stack.push_back(n.body); },
                   [&](const BinConn& b) {
                     stack.push_back(b.lhs);
                     stack.push_back(b.rhs);
                   },
                   [&](const Quant& q) {
                     visit_sym(q.var);
                     stack.push_back(q.body);
                   },
                   [&](const LamAtom1& l) {
                     visit_sym(l.var);
                     if (auto* io = std::get_if<Iota1>(&l.arg)) stack.push_back(io->cond);
                     stack.push_back(l.body);
                   },
                   [&](const LamAtom2& l) {
                     visit_sym(l.var);
                     visit_sym(l.arg.var);
                     stack.push_back(l.arg.cond);
                     stack.push_back(l.body);
                   },
               },
               cur->node);
  }
  return ok;
}

// True iff f uses any second-order syntax (relational symbols, second-order
// quantifiers, relational abstracts or descriptions).
inline bool uses_second_order(const FormulaPtr& f) {
  bool found = false;
  std::vector<FormulaPtr> stack{f};
  while (!stack.empty() && !found) {
    FormulaPtr cur = stack.back();
    stack.pop_back();
    std::visit(overloaded{
                   [&](const PredAtom&) {},
                   [&](const IndEq&) {},
                   [&](const RelApp&) { found = true; },
                   [&](const RelEq&) { found = true; },
                   [&](const Neg& n) { stack.push_back(n.body); },
                   [&](const BinConn& b) {
                     stack.push_back(b.lhs);
                     stack.push_back(b.rhs);
                   },
                   [&](const Quant& q) {
                     if (q.kind == QuantKind::ForallRel || q.kind == QuantKind::ExistsRel)
                       found = true;
                     else
                       stack.push_back(q.body);
                   },
                   [&](const LamAtom1& l) {
                     if (auto* io = std::get_if<Iota1>(&l.arg)) stack.push_back(io->cond);
                     stack.push_back(l.body);
                   },
                   [&](const LamAtom2&) { found = true; },
               },
               cur->node);
  }
  return found;
}

}  // namespace rl2
