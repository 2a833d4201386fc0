#pragma once

#include "rl2/model.hpp"
#include "rl2/sequent.hpp"

namespace rl2 {

struct EvalError : std::runtime_error {
  enum class Kind { UninterpretedSymbol, ArityMismatch, ResourceLimit };
  Kind kind;
  EvalError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

namespace detail {

inline int term_value(const GeneralModel& gm, const Assignment& v, const Term& t) {
  const std::string name = t.spelling();
  if (t.sym.kind == SymbolKind::IndConst) {
    auto it = gm.base.const_interp.find(name);
    if (it == gm.base.const_interp.end())
      throw EvalError(EvalError::Kind::UninterpretedSymbol, "constant " + name);
    return it->second;
  }
  auto it = v.ind.find(name);
  if (it == v.ind.end())
    throw EvalError(EvalError::Kind::UninterpretedSymbol, kind_name(t.sym.kind) + (" " + name));
  return it->second;
}

inline const Relation& rel_value(const GeneralModel& gm, const Assignment& v,
                                 const SymbolName& s) {
  const std::string name = s.spelling();
  if (s.kind == SymbolKind::RelConst) {
    auto it = gm.relconst_interp.find(name);
    if (it == gm.relconst_interp.end())
      throw EvalError(EvalError::Kind::UninterpretedSymbol, "relational constant " + name);
    return it->second;
  }
  auto it = v.rel.find(name);
  if (it == v.rel.end())
    throw EvalError(EvalError::Kind::UninterpretedSymbol, kind_name(s.kind) + (" " + name));
  return it->second;
}

inline void check_rel_arity(const Relation& r, int arity, const std::string& name) {
  int ra = relation_arity(r);
  if (ra != 0 && ra != arity)
    throw EvalError(EvalError::Kind::ArityMismatch, name + " interpreted at wrong arity");
}

inline const std::vector<Relation>& family_of(const GeneralModel& gm, int arity) {
  auto it = gm.families.find(arity);
  if (it == gm.families.end())
    throw EvalError(EvalError::Kind::UninterpretedSymbol,
                    "no relation family of arity " + std::to_string(arity) + " declared");
  return it->second;
}

inline Tuple tuple_of(const GeneralModel& gm, const Assignment& v, const std::vector<Term>& ts) {
  Tuple t;
  t.reserve(ts.size());
  for (auto& x : ts) t.push_back(term_value(gm, v, x));
  return t;
}

inline bool eval_fm(const GeneralModel& gm, const Assignment& v, const FormulaPtr& f);

// Shared body of the two description clauses: existence of a witness value,
// its condition, and uniqueness among variants.
template <class Values, class WithVar>
bool eval_description(const Values& values, WithVar with, const FormulaPtr& body,
                      const FormulaPtr& cond, const GeneralModel& gm) {
  for (auto& o : values) {
    Assignment va = with(o);
    if (!eval_fm(gm, va, body)) continue;
    if (!eval_fm(gm, va, cond)) continue;
    bool unique = true;
    for (auto& o2 : values) {
      if (o2 == o) continue;
      if (eval_fm(gm, with(o, &o2), cond)) {
        unique = false;
        break;
      }
    }
    if (unique) return true;
  }
  return false;
}

inline bool eval_fm(const GeneralModel& gm, const Assignment& v, const FormulaPtr& f) {
  return std::visit(
      overloaded{
          [&](const PredAtom& a) {
            auto it = gm.base.pred_interp.find(a.pred.spelling());
            if (it == gm.base.pred_interp.end())
              throw EvalError(EvalError::Kind::UninterpretedSymbol,
                              "predicate " + a.pred.spelling());
            check_rel_arity(it->second, a.pred.arity, a.pred.spelling());
            return it->second.count(tuple_of(gm, v, a.args)) > 0;
          },
          [&](const IndEq& e) { return term_value(gm, v, e.lhs) == term_value(gm, v, e.rhs); },
          [&](const RelApp& a) {
            const Relation& r = rel_value(gm, v, a.rel);
            check_rel_arity(r, a.rel.arity, a.rel.spelling());
            return r.count(tuple_of(gm, v, a.args)) > 0;
          },
          [&](const RelEq& e) {
            return rel_value(gm, v, e.lhs) == rel_value(gm, v, e.rhs);
          },
          [&](const Neg& n) { return !eval_fm(gm, v, n.body); },
          [&](const BinConn& b) {
            switch (b.op) {
              case BinOp::And: return eval_fm(gm, v, b.lhs) && eval_fm(gm, v, b.rhs);
              case BinOp::Or: return eval_fm(gm, v, b.lhs) || eval_fm(gm, v, b.rhs);
              case BinOp::Imp: return !eval_fm(gm, v, b.lhs) || eval_fm(gm, v, b.rhs);
              case BinOp::Iff: return eval_fm(gm, v, b.lhs) == eval_fm(gm, v, b.rhs);
            }
            return false;
          },
          [&](const Quant& q) {
            switch (q.kind) {
              case QuantKind::ForallInd:
                for (int o = 0; o < gm.base.domain_size; ++o)
                  if (!eval_fm(gm, v.with_ind(q.var, o), q.body)) return false;
                return true;
              case QuantKind::ExistsInd:
                for (int o = 0; o < gm.base.domain_size; ++o)
                  if (eval_fm(gm, v.with_ind(q.var, o), q.body)) return true;
                return false;
              case QuantKind::ForallRel:
                for (auto& r : family_of(gm, q.var.arity))
                  if (!eval_fm(gm, v.with_rel(q.var, r), q.body)) return false;
                return true;
              case QuantKind::ExistsRel:
                for (auto& r : family_of(gm, q.var.arity))
                  if (eval_fm(gm, v.with_rel(q.var, r), q.body)) return true;
                return false;
            }
            return false;
          },
          [&](const LamAtom1& l) {
            if (auto* t = std::get_if<Term>(&l.arg)) {
              // (\x psi) t holds iff psi holds with x at the value of t
              return eval_fm(gm, v.with_ind(l.var, term_value(gm, v, *t)), l.body);
            }
            auto& io = std::get<Iota1>(l.arg);
            // (\x psi) iota y. phi: some o satisfies psi[x:=o] and phi[x:=o][y:=o],
            // and every y-variant satisfying phi maps y back to o.
            std::vector<int> values;
            for (int o = 0; o < gm.base.domain_size; ++o) values.push_back(o);
            auto with = [&](int o, const int* o2 = nullptr) {
              Assignment a = v.with_ind(l.var, o);
              return a.with_ind(io.var, o2 ? *o2 : o);
            };
            return eval_description(values, with, l.body, io.cond, gm);
          },
          [&](const LamAtom2& l) {
            const auto& fam = family_of(gm, l.var.arity);
            auto with = [&](const Relation& r, const Relation* r2 = nullptr) {
              Assignment a = v.with_rel(l.var, r);
              return a.with_rel(l.arg.var, r2 ? *r2 : r);
            };
            return eval_description(fam, with, l.body, l.arg.cond, gm);
          },
      },
      f->node);
}

}  // namespace detail

// Satisfaction over a general model: second-order quantifiers and
// descriptions range over the declared families.
inline bool eval(const GeneralModel& gm, const Assignment& v, const FormulaPtr& f) {
  return detail::eval_fm(gm, v, f);
}

// Set of arities at which f needs relation families (relational symbols,
// second-order binders).
inline std::set<int> needed_arities(const FormulaPtr& f) {
  std::set<int> out;
  std::vector<FormulaPtr> stack{f};
  while (!stack.empty()) {
    FormulaPtr cur = stack.back();
    stack.pop_back();
    std::visit(overloaded{
                   [&](const PredAtom&) {},
                   [&](const IndEq&) {},
                   [&](const RelApp& a) { out.insert(a.rel.arity); },
                   [&](const RelEq& e) { out.insert(e.lhs.arity); },
                   [&](const Neg& n) { stack.push_back(n.body); },
                   [&](const BinConn& b) {
                     stack.push_back(b.lhs);
                     stack.push_back(b.rhs);
                   },
                   [&](const Quant& q) {
                     if (q.var.arity) out.insert(q.var.arity);
                     stack.push_back(q.body);
                   },
                   [&](const LamAtom1& l) {
                     if (auto* io = std::get_if<Iota1>(&l.arg)) stack.push_back(io->cond);
                     stack.push_back(l.body);
                   },
                   [&](const LamAtom2& l) {
                     out.insert(l.var.arity);
                     stack.push_back(l.arg.cond);
                     stack.push_back(l.body);
                   },
               },
               cur->node);
  }
  return out;
}

inline std::vector<Relation> powerset_relations(int domain_size, int arity,
                                                long max_tuples = 16) {
  long tuples = 1;
  for (int i = 0; i < arity; ++i) {
    tuples *= domain_size;
    if (tuples > max_tuples)
      throw EvalError(EvalError::Kind::ResourceLimit,
                      "powerset of D^" + std::to_string(arity) + " exceeds the enumeration cap");
  }
  std::vector<Tuple> all;
  Tuple t(arity, 0);
  for (long i = 0; i < tuples; ++i) {
    long x = i;
    for (int j = arity - 1; j >= 0; --j) {
      t[j] = (int)(x % domain_size);
      x /= domain_size;
    }
    all.push_back(t);
  }
  std::vector<Relation> out;
  out.reserve(1l << tuples);
  for (long mask = 0; mask < (1l << tuples); ++mask) {
    Relation r;
    for (long b = 0; b < tuples; ++b)
      if (mask & (1l << b)) r.insert(all[b]);
    out.push_back(std::move(r));
  }
  return out;
}

inline GeneralModel full_general_model(const Model& m, const std::set<int>& arities,
                                       long max_tuples = 16) {
  GeneralModel gm;
  gm.base = m;
  for (int a : arities) gm.families[a] = powerset_relations(m.domain_size, a, max_tuples);
  return gm;
}

// Full second-order satisfaction: families are the entire powerset at each
// arity f mentions.
inline bool eval_full(const Model& m, const Assignment& v, const FormulaPtr& f,
                      long max_tuples = 16) {
  GeneralModel gm = full_general_model(m, needed_arities(f), max_tuples);
  return detail::eval_fm(gm, v, f);
}

// Same, but keeping the relational-constant interpretations of an existing
// general model (every relation is admissible under the full powerset).
inline bool eval_full(const GeneralModel& base, const Assignment& v, const FormulaPtr& f,
                      long max_tuples = 16) {
  GeneralModel gm = full_general_model(base.base, needed_arities(f), max_tuples);
  gm.relconst_interp = base.relconst_interp;
  return detail::eval_fm(gm, v, f);
}

// Pointwise reading of Gamma => Delta at one model/assignment.
inline bool holds_sequent(const GeneralModel& gm, const Assignment& v, const Sequent& s) {
  for (auto& f : s.ant)
    if (!eval(gm, v, f)) return true;
  for (auto& f : s.suc)
    if (eval(gm, v, f)) return true;
  return false;
}

inline std::set<int> needed_arities(const Sequent& s) {
  std::set<int> out;
  for (auto& f : s.ant) {
    auto a = needed_arities(f);
    out.insert(a.begin(), a.end());
  }
  for (auto& f : s.suc) {
    auto a = needed_arities(f);
    out.insert(a.begin(), a.end());
  }
  return out;
}

}  // namespace rl2
