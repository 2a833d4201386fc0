#pragma once

#include <sstream>
#include <string>

#include "rl2/formula.hpp"

namespace rl2 {

// Canonical ASCII surface syntax. Binary connectives always print
// parenthesized, binders extend maximally to the right, so the output
// reparses to an alpha-equal formula.

namespace detail {

inline const char* binop_text(BinOp op) {
  switch (op) {
    case BinOp::And: return "&";
    case BinOp::Or: return "|";
    case BinOp::Imp: return "->";
    case BinOp::Iff: return "<->";
  }
  return "?";
}

inline void print_args(std::ostream& os, const std::vector<Term>& args) {
  os << '(';
  for (size_t i = 0; i < args.size(); ++i) {
    if (i) os << ',';
    os << args[i].spelling();
  }
  os << ')';
}

// A binder's body extends maximally rightward, so a quantified formula (or a
// negation chain ending in one) must be parenthesized when something follows
// it on the same level.
inline bool open_ended(const FormulaPtr& f) {
  if (std::holds_alternative<Quant>(f->node)) return true;
  if (auto* n = std::get_if<Neg>(&f->node)) return open_ended(n->body);
  return false;
}

inline void print_fm(std::ostream& os, const FormulaPtr& f) {
  std::visit(overloaded{
                 [&](const PredAtom& a) {
                   os << a.pred.spelling();
                   print_args(os, a.args);
                 },
                 [&](const IndEq& e) { os << e.lhs.spelling() << " = " << e.rhs.spelling(); },
                 [&](const RelApp& a) {
                   os << a.rel.spelling();
                   print_args(os, a.args);
                 },
                 [&](const RelEq& e) { os << e.lhs.spelling() << " = " << e.rhs.spelling(); },
                 [&](const Neg& n) {
                   os << '!';
                   print_fm(os, n.body);
                 },
                 [&](const BinConn& b) {
                   os << '(';
                   if (open_ended(b.lhs)) {
                     os << '(';
                     print_fm(os, b.lhs);
                     os << ')';
                   } else {
                     print_fm(os, b.lhs);
                   }
                   os << ' ' << binop_text(b.op) << ' ';
                   print_fm(os, b.rhs);
                   os << ')';
                 },
                 [&](const Quant& q) {
                   switch (q.kind) {
                     case QuantKind::ForallInd: os << "A "; break;
                     case QuantKind::ExistsInd: os << "E "; break;
                     case QuantKind::ForallRel: os << "A2 "; break;
                     case QuantKind::ExistsRel: os << "E2 "; break;
                   }
                   os << q.var.spelling() << ". ";
                   print_fm(os, q.body);
                 },
                 [&](const LamAtom1& l) {
                   os << "(\\" << l.var.spelling() << ' ';
                   print_fm(os, l.body);
                   os << ") ";
                   if (auto* t = std::get_if<Term>(&l.arg)) {
                     os << t->spelling();
                   } else {
                     auto& io = std::get<Iota1>(l.arg);
                     os << "(iota " << io.var.spelling() << ". ";
                     print_fm(os, io.cond);
                     os << ')';
                   }
                 },
                 [&](const LamAtom2& l) {
                   os << "(\\" << l.var.spelling() << ' ';
                   print_fm(os, l.body);
                   os << ") (iota " << l.arg.var.spelling() << ". ";
                   print_fm(os, l.arg.cond);
                   os << ')';
                 },
             },
             f->node);
}

}  // namespace detail

inline std::string print_formula(const FormulaPtr& f) {
  std::ostringstream os;
  detail::print_fm(os, f);
  return os.str();
}

// ---- alpha-normal key -----------------------------------------------------

namespace detail {

// Prints with bound occurrences replaced by their binder level, so two
// alpha-equal formulas produce identical strings.
inline void alpha_key_fm(std::ostream& os, const FormulaPtr& f, std::vector<SymbolName>& env) {
  auto occ = [&](const SymbolName& s) {
    for (int i = (int)env.size() - 1; i >= 0; --i)
      if (env[i] == s) {
        os << '#' << i;
        return;
      }
    os << s.spelling() << '/' << s.arity << '/' << (int)s.kind;
  };
  auto args = [&](const std::vector<Term>& as) {
    os << '(';
    for (size_t i = 0; i < as.size(); ++i) {
      if (i) os << ',';
      occ(as[i].sym);
    }
    os << ')';
  };
  std::visit(overloaded{
                 [&](const PredAtom& a) {
                   occ(a.pred);
                   args(a.args);
                 },
                 [&](const IndEq& e) {
                   occ(e.lhs.sym);
                   os << '=';
                   occ(e.rhs.sym);
                 },
                 [&](const RelApp& a) {
                   occ(a.rel);
                   args(a.args);
                 },
                 [&](const RelEq& e) {
                   occ(e.lhs);
                   os << "=r";
                   occ(e.rhs);
                 },
                 [&](const Neg& n) {
                   os << '!';
                   alpha_key_fm(os, n.body, env);
                 },
                 [&](const BinConn& b) {
                   os << '(' << (int)b.op << ';';
                   alpha_key_fm(os, b.lhs, env);
                   os << ';';
                   alpha_key_fm(os, b.rhs, env);
                   os << ')';
                 },
                 [&](const Quant& q) {
                   os << 'Q' << (int)q.kind << '/' << q.var.arity << '.';
                   env.push_back(q.var);
                   alpha_key_fm(os, q.body, env);
                   env.pop_back();
                 },
                 [&](const LamAtom1& l) {
                   os << "L1[";
                   if (auto* t = std::get_if<Term>(&l.arg)) {
                     occ(t->sym);
                   } else {
                     auto& io = std::get<Iota1>(l.arg);
                     os << "i.";
                     env.push_back(io.var);
                     alpha_key_fm(os, io.cond, env);
                     env.pop_back();
                   }
                   os << "].";
                   env.push_back(l.var);
                   alpha_key_fm(os, l.body, env);
                   env.pop_back();
                 },
                 [&](const LamAtom2& l) {
                   os << "L2/" << l.var.arity << "[i.";
                   env.push_back(l.arg.var);
                   alpha_key_fm(os, l.arg.cond, env);
                   env.pop_back();
                   os << "].";
                   env.push_back(l.var);
                   alpha_key_fm(os, l.body, env);
                   env.pop_back();
                 },
             },
             f->node);
}

}  // namespace detail

inline std::string alpha_key(const FormulaPtr& f) {
  std::ostringstream os;
  std::vector<SymbolName> env;
  detail::alpha_key_fm(os, f, env);
  return os.str();
}

// ---- LaTeX rendering ----------------------------------------------------

namespace detail {

inline std::string latex_sym(const SymbolName& s) {
  if (s.index) return s.base + "_{" + std::to_string(*s.index) + "}";
  return s.base;
}

inline const char* latex_binop(BinOp op) {
  switch (op) {
    case BinOp::And: return "\\land";
    case BinOp::Or: return "\\lor";
    case BinOp::Imp: return "\\to";
    case BinOp::Iff: return "\\leftrightarrow";
  }
  return "?";
}

inline void latex_args(std::ostream& os, const std::vector<Term>& args) {
  os << '(';
  for (size_t i = 0; i < args.size(); ++i) {
    if (i) os << ',';
    os << latex_sym(args[i].sym);
  }
  os << ')';
}

inline void latex_fm(std::ostream& os, const FormulaPtr& f) {
  std::visit(overloaded{
                 [&](const PredAtom& a) {
                   os << latex_sym(a.pred);
                   latex_args(os, a.args);
                 },
                 [&](const IndEq& e) { os << latex_sym(e.lhs.sym) << " = " << latex_sym(e.rhs.sym); },
                 [&](const RelApp& a) {
                   os << latex_sym(a.rel);
                   latex_args(os, a.args);
                 },
                 [&](const RelEq& e) { os << latex_sym(e.lhs) << " = " << latex_sym(e.rhs); },
                 [&](const Neg& n) {
                   os << "\\neg ";
                   latex_fm(os, n.body);
                 },
                 [&](const BinConn& b) {
                   os << '(';
                   if (open_ended(b.lhs)) {
                     os << '(';
                     latex_fm(os, b.lhs);
                     os << ')';
                   } else {
                     latex_fm(os, b.lhs);
                   }
                   os << ' ' << latex_binop(b.op) << ' ';
                   latex_fm(os, b.rhs);
                   os << ')';
                 },
                 [&](const Quant& q) {
                   os << ((q.kind == QuantKind::ForallInd || q.kind == QuantKind::ForallRel)
                              ? "\\forall "
                              : "\\exists ");
                   os << latex_sym(q.var) << ".\\, ";
                   latex_fm(os, q.body);
                 },
                 [&](const LamAtom1& l) {
                   os << "(\\lambda " << latex_sym(l.var) << "\\, ";
                   latex_fm(os, l.body);
                   os << ")\\, ";
                   if (auto* t = std::get_if<Term>(&l.arg)) {
                     os << latex_sym(t->sym);
                   } else {
                     auto& io = std::get<Iota1>(l.arg);
                     os << "(\\iota " << latex_sym(io.var) << ".\\, ";
                     latex_fm(os, io.cond);
                     os << ')';
                   }
                 },
                 [&](const LamAtom2& l) {
                   os << "(\\lambda " << latex_sym(l.var) << "\\, ";
                   latex_fm(os, l.body);
                   os << ")\\, (\\iota " << latex_sym(l.arg.var) << ".\\, ";
                   latex_fm(os, l.arg.cond);
                   os << ')';
                 },
             },
             f->node);
}

}  // namespace detail

inline std::string latex_formula(const FormulaPtr& f) {
  std::ostringstream os;
  detail::latex_fm(os, f);
  return os.str();
}

}  // namespace rl2
