#pragma once

#include <chrono>

#include "rl2/check.hpp"
#include "rl2/derived.hpp"

namespace rl2 {

struct SearchConfig {
  int max_depth = 8;
  int max_contractions_per_formula = 1;
  int instantiation_pool_extra = 1;
  std::vector<RuleId> rule_order;  // empty = default order for the system
  long time_budget_ms = 0;         // 0 = no limit
};

struct Exhausted {
  std::vector<Sequent> frontier;  // deepest open subgoals, deduplicated
};
struct SearchLimit {
  std::string detail;
};

using ProveResult = std::variant<DerivationPtr, Exhausted, SearchLimit>;

// Invertible propositional rules first, then eigen rules, then witness
// rules; structural rules close the list (closure and contraction are
// handled by dedicated moves).
inline std::vector<RuleId> default_rule_order(System system) {
  std::vector<RuleId> order = {
      RuleId::AndL,  RuleId::OrR,    RuleId::ImpR,  RuleId::NegL,  RuleId::NegR,
      RuleId::AndR,  RuleId::OrL,    RuleId::ImpL,  RuleId::IffL,  RuleId::IffR,
      RuleId::AllR,  RuleId::ExL,    RuleId::Iota1L,
      RuleId::LamL,  RuleId::LamR,   RuleId::AllL,  RuleId::ExR,   RuleId::EqMinus,
      RuleId::EqPlus, RuleId::Iota2L, RuleId::IotaR,
      RuleId::WL,    RuleId::WR,     RuleId::CL,    RuleId::CR,    RuleId::AX,
  };
  if (system == System::RL2) {
    std::vector<RuleId> second = {RuleId::Eq2R,  RuleId::All2R,   RuleId::Ex2L,
                                  RuleId::Iota1L2, RuleId::Eq2L,  RuleId::All2L,
                                  RuleId::Ex2R,  RuleId::Iota2L2, RuleId::IotaR2};
    // eigen rules join the eigen block, witness rules the witness block
    auto at = [&](RuleId r) {
      return std::find(order.begin(), order.end(), r);
    };
    order.insert(at(RuleId::LamL), {RuleId::Eq2R, RuleId::All2R, RuleId::Ex2L, RuleId::Iota1L2});
    order.insert(at(RuleId::WL), {RuleId::Eq2L, RuleId::All2L, RuleId::Ex2R, RuleId::Iota2L2,
                                  RuleId::IotaR2});
    (void)second;
  }
  return order;
}

namespace detail {

struct SearchTimeout {};

struct Prover {
  System system;
  SearchConfig cfg;
  std::vector<RuleId> order;
  std::chrono::steady_clock::time_point deadline;
  bool has_deadline = false;
  long ticks = 0;

  std::vector<std::string> path_keys;
  std::vector<Sequent> frontier;
  std::set<std::string> frontier_keys;

  void tick() {
    if (has_deadline && (++ticks & 0x3ff) == 0 &&
        std::chrono::steady_clock::now() > deadline)
      throw SearchTimeout{};
  }

  void note_frontier(const Sequent& s) {
    if (frontier.size() >= 64) return;
    if (frontier_keys.insert(sequent_loop_key(s)).second) frontier.push_back(s);
  }

  // ---- instantiation candidates -----------------------------------------

  std::vector<SymbolName> ind_candidates(const Sequent& s) const {
    std::vector<SymbolName> out;
    std::set<std::string> used;
    for (auto& sym : rl2::free_symbols(s)) {
      used.insert(sym.spelling());
      if (sym.kind == SymbolKind::IndPar || sym.kind == SymbolKind::IndConst)
        out.push_back(sym);
    }
    std::sort(out.begin(), out.end());
    for (int i = 0; i < cfg.instantiation_pool_extra || (out.empty() && i < 1); ++i)
      out.push_back(fresh_ind_par(used, i));
    return out;
  }

  std::vector<SymbolName> rel_candidates(const Sequent& s, int arity) const {
    std::vector<SymbolName> out;
    std::set<std::string> used;
    for (auto& sym : rl2::free_symbols(s)) {
      used.insert(sym.spelling());
      if ((sym.kind == SymbolKind::RelPar || sym.kind == SymbolKind::RelConst) &&
          sym.arity == arity)
        out.push_back(sym);
    }
    std::sort(out.begin(), out.end());
    for (int i = 0; i < cfg.instantiation_pool_extra || (out.empty() && i < 1); ++i)
      out.push_back(fresh_rel_par(used, arity, i));
    return out;
  }

  SymbolName fresh_eigen_ind(const Sequent& s, const std::vector<SymbolName>& avoid) const {
    auto used = spellings(rl2::free_symbols(s));
    for (auto& a : avoid) used.insert(a.spelling());
    return fresh_ind_par(used);
  }

  SymbolName fresh_eigen_rel(const Sequent& s, int arity,
                             const std::vector<SymbolName>& avoid) const {
    auto used = spellings(rl2::free_symbols(s));
    for (auto& a : avoid) used.insert(a.spelling());
    return fresh_rel_par(used, arity);
  }

  std::vector<SymbolName> fresh_eigen_tuple(const Sequent& s, int n) const {
    auto used = spellings(rl2::free_symbols(s));
    std::vector<SymbolName> out;
    for (int i = 0; i < n; ++i) out.push_back(fresh_ind_par(used, i));
    return out;
  }

  // ---- moves -------------------------------------------------------------

  struct Move {
    RuleId rule;
    Instantiation inst;
    std::vector<Sequent> premises;
    bool contract_first = false;  // CL/CR on the principal, then the rule
    Sequent contracted;           // the sequent the rule is applied to
  };

  // Applies rule backward at (s, inst); null on any rule error.
  std::optional<Move> make_move(const Sequent& s, RuleId rule, Instantiation inst) const {
    auto r = apply_rule(s, rule, inst);
    if (std::holds_alternative<RuleError>(r)) return std::nullopt;
    Move m;
    m.rule = rule;
    m.inst = std::move(inst);
    m.premises = std::get<std::vector<Sequent>>(std::move(r));
    return m;
  }

  // Same move but keeping a copy of the principal via contraction.
  std::optional<Move> make_keep_move(const Sequent& s, RuleId rule, Instantiation inst) const {
    if (!inst.principal) return std::nullopt;
    Side side = inst.principal->side;
    const FormulaMultiset& m = side == Side::Ant ? s.ant : s.suc;
    if (inst.principal->index >= (int)m.size()) return std::nullopt;
    FormulaPtr principal = m[inst.principal->index];
    FormulaMultiset ant = s.ant, suc = s.suc;
    (side == Side::Ant ? ant : suc).push_back(principal);
    Sequent contracted(std::move(ant), std::move(suc));
    // recompute the principal index in the contracted sequent
    const FormulaMultiset& cm = side == Side::Ant ? contracted.ant : contracted.suc;
    Instantiation inner = inst;
    for (int i = 0; i < (int)cm.size(); ++i)
      if (alpha_eq(cm[i], principal)) {
        inner.principal = OccRef{side, i};
        break;
      }
    auto r = apply_rule(contracted, rule, inner);
    if (std::holds_alternative<RuleError>(r)) return std::nullopt;
    Move mv;
    mv.rule = rule;
    mv.inst = std::move(inner);
    mv.premises = std::get<std::vector<Sequent>>(std::move(r));
    mv.contract_first = true;
    mv.contracted = std::move(contracted);
    return mv;
  }

  template <class F>
  void each_occurrence(const Sequent& s, Side side, F want) const {
    const FormulaMultiset& m = side == Side::Ant ? s.ant : s.suc;
    for (int i = 0; i < (int)m.size(); ++i) want(i, m[i]);
  }

  std::vector<Move> moves_for(const Sequent& s, RuleId rule,
                              const std::map<std::string, int>& contractions) const {
    std::vector<Move> out;
    auto push = [&](std::optional<Move> m) {
      if (m) out.push_back(std::move(*m));
    };
    auto can_contract = [&](const FormulaPtr& f) {
      auto it = contractions.find(alpha_key(f));
      int used = it == contractions.end() ? 0 : it->second;
      return used < cfg.max_contractions_per_formula;
    };
    Side side = principal_side(rule);

    auto plain_with_each_occurrence = [&](auto shape_ok) {
      each_occurrence(s, side, [&](int i, const FormulaPtr& f) {
        if (!shape_ok(f)) return;
        Instantiation inst;
        inst.principal = OccRef{side, i};
        push(make_move(s, rule, inst));
      });
    };

    switch (rule) {
      case RuleId::AndL:
      case RuleId::AndR:
      case RuleId::OrL:
      case RuleId::OrR:
      case RuleId::ImpL:
      case RuleId::ImpR:
      case RuleId::IffL:
      case RuleId::IffR: {
        BinOp want = rule == RuleId::AndL || rule == RuleId::AndR ? BinOp::And
                     : rule == RuleId::OrL || rule == RuleId::OrR ? BinOp::Or
                     : rule == RuleId::ImpL || rule == RuleId::ImpR ? BinOp::Imp
                                                                    : BinOp::Iff;
        plain_with_each_occurrence([&](const FormulaPtr& f) {
          auto* b = std::get_if<BinConn>(&f->node);
          return b && b->op == want;
        });
        break;
      }
      case RuleId::NegL:
      case RuleId::NegR: {
        plain_with_each_occurrence(
            [&](const FormulaPtr& f) { return std::holds_alternative<Neg>(f->node); });
        break;
      }
      case RuleId::LamL:
      case RuleId::LamR: {
        plain_with_each_occurrence([&](const FormulaPtr& f) {
          auto* l = std::get_if<LamAtom1>(&f->node);
          return l && std::holds_alternative<Term>(l->arg);
        });
        break;
      }
      case RuleId::AllR:
      case RuleId::ExL: {
        QuantKind want = rule == RuleId::AllR ? QuantKind::ForallInd : QuantKind::ExistsInd;
        each_occurrence(s, side, [&](int i, const FormulaPtr& f) {
          auto* q = std::get_if<Quant>(&f->node);
          if (!q || q->kind != want) return;
          Instantiation inst;
          inst.principal = OccRef{side, i};
          inst.eigens = {fresh_eigen_ind(s, {})};
          push(make_move(s, rule, inst));
        });
        break;
      }
      case RuleId::All2R:
      case RuleId::Ex2L: {
        QuantKind want = rule == RuleId::All2R ? QuantKind::ForallRel : QuantKind::ExistsRel;
        each_occurrence(s, side, [&](int i, const FormulaPtr& f) {
          auto* q = std::get_if<Quant>(&f->node);
          if (!q || q->kind != want) return;
          Instantiation inst;
          inst.principal = OccRef{side, i};
          inst.eigens = {fresh_eigen_rel(s, q->var.arity, {})};
          push(make_move(s, rule, inst));
        });
        break;
      }
      case RuleId::Iota1L: {
        each_occurrence(s, Side::Ant, [&](int i, const FormulaPtr& f) {
          auto* l = std::get_if<LamAtom1>(&f->node);
          if (!l || !std::holds_alternative<Iota1>(l->arg)) return;
          Instantiation inst;
          inst.principal = OccRef{Side::Ant, i};
          inst.eigens = {fresh_eigen_ind(s, {})};
          push(make_move(s, rule, inst));
        });
        break;
      }
      case RuleId::Iota1L2: {
        each_occurrence(s, Side::Ant, [&](int i, const FormulaPtr& f) {
          auto* l = std::get_if<LamAtom2>(&f->node);
          if (!l) return;
          Instantiation inst;
          inst.principal = OccRef{Side::Ant, i};
          inst.eigens = {fresh_eigen_rel(s, l->var.arity, {})};
          push(make_move(s, rule, inst));
        });
        break;
      }
      case RuleId::Eq2R: {
        each_occurrence(s, Side::Suc, [&](int i, const FormulaPtr& f) {
          auto* e = std::get_if<RelEq>(&f->node);
          if (!e) return;
          Instantiation inst;
          inst.principal = OccRef{Side::Suc, i};
          inst.eigens = fresh_eigen_tuple(s, e->lhs.arity);
          push(make_move(s, rule, inst));
        });
        break;
      }
      case RuleId::AllL:
      case RuleId::ExR: {
        QuantKind want = rule == RuleId::AllL ? QuantKind::ForallInd : QuantKind::ExistsInd;
        auto cands = ind_candidates(s);
        std::vector<std::pair<int, FormulaPtr>> occs;
        each_occurrence(s, side, [&](int i, const FormulaPtr& f) {
          auto* q = std::get_if<Quant>(&f->node);
          if (q && q->kind == want) occs.push_back({i, f});
        });
        for (auto& [i, f] : occs)
          for (auto& t : cands) {
            Instantiation inst;
            inst.principal = OccRef{side, i};
            inst.witnesses = {t};
            push(make_move(s, rule, inst));
          }
        for (auto& [i, f] : occs) {
          if (!can_contract(f)) continue;
          for (auto& t : cands) {
            Instantiation inst;
            inst.principal = OccRef{side, i};
            inst.witnesses = {t};
            push(make_keep_move(s, rule, inst));
          }
        }
        break;
      }
      case RuleId::All2L:
      case RuleId::Ex2R: {
        QuantKind want = rule == RuleId::All2L ? QuantKind::ForallRel : QuantKind::ExistsRel;
        std::vector<std::pair<int, FormulaPtr>> occs;
        each_occurrence(s, side, [&](int i, const FormulaPtr& f) {
          auto* q = std::get_if<Quant>(&f->node);
          if (q && q->kind == want) occs.push_back({i, f});
        });
        for (int keep = 0; keep <= 1; ++keep) {
          for (auto& [i, f] : occs) {
            if (keep && !can_contract(f)) continue;
            auto* q = std::get_if<Quant>(&f->node);
            for (auto& r : rel_candidates(s, q->var.arity)) {
              Instantiation inst;
              inst.principal = OccRef{side, i};
              inst.witnesses = {r};
              push(keep ? make_keep_move(s, rule, inst) : make_move(s, rule, inst));
            }
          }
        }
        break;
      }
      case RuleId::EqPlus: {
        // only worth trying when an identity is somewhere in sight
        bool relevant = false;
        for (auto& f : s.ant)
          if (std::holds_alternative<IndEq>(f->node)) relevant = true;
        for (auto& f : s.suc)
          if (std::holds_alternative<IndEq>(f->node)) relevant = true;
        if (!relevant) break;
        for (auto& t : ind_candidates(s)) {
          Instantiation inst;
          inst.witnesses = {t};
          push(make_move(s, rule, inst));
        }
        break;
      }
      case RuleId::EqMinus: {
        std::vector<std::pair<int, const IndEq*>> eqs;
        each_occurrence(s, Side::Ant, [&](int i, const FormulaPtr& f) {
          auto* e = std::get_if<IndEq>(&f->node);
          if (e && e->lhs.sym.kind != SymbolKind::IndVar &&
              e->rhs.sym.kind != SymbolKind::IndVar)
            eqs.push_back({i, e});
        });
        for (auto& [i, e] : eqs) {
          for (int j = 0; j < (int)s.ant.size(); ++j) {
            if (j == i) continue;
            if (!is_atomic(s.ant[j])) continue;
            for (auto& schema : schemas_for(s.ant[j], e->lhs)) {
              Instantiation inst;
              inst.principal = OccRef{Side::Ant, i};
              inst.atomic_schema = schema;
              push(make_move(s, rule, inst));
            }
          }
        }
        break;
      }
      case RuleId::Eq2L: {
        each_occurrence(s, Side::Ant, [&](int i, const FormulaPtr& f) {
          auto* e = std::get_if<RelEq>(&f->node);
          if (!e) return;
          int n = e->lhs.arity;
          auto cands = ind_candidates(s);
          std::vector<std::vector<SymbolName>> tuples{{}};
          for (int k = 0; k < n && tuples.size() <= 64; ++k) {
            std::vector<std::vector<SymbolName>> next;
            for (auto& t : tuples)
              for (auto& c : cands) {
                auto t2 = t;
                t2.push_back(c);
                next.push_back(std::move(t2));
                if (next.size() > 64) break;
              }
            tuples = std::move(next);
          }
          for (auto& t : tuples) {
            if ((int)t.size() != n) continue;
            Instantiation inst;
            inst.principal = OccRef{Side::Ant, i};
            inst.witnesses = t;
            push(make_move(s, rule, inst));
            if (can_contract(f)) push(make_keep_move(s, rule, inst));
          }
        });
        break;
      }
      case RuleId::Iota2L: {
        each_occurrence(s, Side::Ant, [&](int i, const FormulaPtr& f) {
          auto* l = std::get_if<LamAtom1>(&f->node);
          if (!l || !std::holds_alternative<Iota1>(l->arg)) return;
          auto cands = ind_candidates(s);
          for (auto& b : cands)
            for (auto& c : cands) {
              if (b == c) continue;
              Instantiation inst;
              inst.principal = OccRef{Side::Ant, i};
              inst.witnesses = {b, c};
              push(make_move(s, rule, inst));
            }
        });
        break;
      }
      case RuleId::IotaR: {
        each_occurrence(s, Side::Suc, [&](int i, const FormulaPtr& f) {
          auto* l = std::get_if<LamAtom1>(&f->node);
          if (!l || !std::holds_alternative<Iota1>(l->arg)) return;
          for (auto& b : ind_candidates(s)) {
            Instantiation inst;
            inst.principal = OccRef{Side::Suc, i};
            inst.witnesses = {b};
            inst.eigens = {fresh_eigen_ind(s, {b})};
            push(make_move(s, rule, inst));
          }
        });
        break;
      }
      case RuleId::Iota2L2: {
        each_occurrence(s, Side::Ant, [&](int i, const FormulaPtr& f) {
          auto* l = std::get_if<LamAtom2>(&f->node);
          if (!l) return;
          auto cands = rel_candidates(s, l->var.arity);
          for (auto& b : cands)
            for (auto& c : cands) {
              if (b == c) continue;
              Instantiation inst;
              inst.principal = OccRef{Side::Ant, i};
              inst.witnesses = {b, c};
              push(make_move(s, rule, inst));
            }
        });
        break;
      }
      case RuleId::IotaR2: {
        each_occurrence(s, Side::Suc, [&](int i, const FormulaPtr& f) {
          auto* l = std::get_if<LamAtom2>(&f->node);
          if (!l) return;
          for (auto& b : rel_candidates(s, l->var.arity)) {
            Instantiation inst;
            inst.principal = OccRef{Side::Suc, i};
            inst.witnesses = {b};
            inst.eigens = {fresh_eigen_rel(s, l->var.arity, {b})};
            push(make_move(s, rule, inst));
          }
        });
        break;
      }
      default: break;
    }
    return out;
  }

  // Atomic schema templates: the atom with each nonempty subset of the
  // occurrences of `b` replaced by a fresh variable, full replacement first.
  std::vector<std::pair<FormulaPtr, SymbolName>> schemas_for(const FormulaPtr& atom,
                                                             const Term& b) const {
    std::vector<Term> args;
    if (auto* p = std::get_if<PredAtom>(&atom->node)) args = p->args;
    else if (auto* r = std::get_if<RelApp>(&atom->node)) args = r->args;
    else if (auto* e = std::get_if<IndEq>(&atom->node)) args = {e->lhs, e->rhs};
    else return {};
    std::vector<int> positions;
    for (int i = 0; i < (int)args.size(); ++i)
      if (args[i] == b) positions.push_back(i);
    if (positions.empty() || positions.size() > 4) return {};
    auto used = spellings(free_symbols(atom));
    SymbolName x = [&] {
      for (int i = 0;; ++i) {
        SymbolName cand = i == 0 ? ind_var("x") : ind_var("x", i);
        if (!used.count(cand.spelling())) return cand;
      }
    }();
    auto rebuild = [&](unsigned mask) -> FormulaPtr {
      std::vector<Term> new_args = args;
      for (size_t k = 0; k < positions.size(); ++k)
        if (mask & (1u << k)) new_args[positions[k]] = Term(x);
      if (auto* p = std::get_if<PredAtom>(&atom->node))
        return mk_pred_atom(p->pred, new_args);
      if (auto* r = std::get_if<RelApp>(&atom->node)) return mk_rel_app(r->rel, new_args);
      return mk_ind_eq(new_args[0], new_args[1]);
    };
    std::vector<std::pair<FormulaPtr, SymbolName>> out;
    unsigned full = (1u << positions.size()) - 1;
    out.push_back({rebuild(full), x});
    for (unsigned mask = 1; mask < full; ++mask) out.push_back({rebuild(mask), x});
    return out;
  }

  // ---- closure -----------------------------------------------------------

  std::optional<DerivationPtr> try_close(const Sequent& s, int budget) const {
    for (size_t i = 0; i < s.ant.size(); ++i)
      for (size_t j = 0; j < s.suc.size(); ++j) {
        if (!alpha_eq(s.ant[i], s.suc[j])) continue;
        int cost = 1 + (int)(s.ant.size() - 1) + (int)(s.suc.size() - 1);
        if (cost > budget) return std::nullopt;
        auto d = close_by_axiom(s);
        return d;
      }
    return std::nullopt;
  }

  // ---- depth-first search with an explicit height budget ------------------

  std::optional<DerivationPtr> dfs(const Sequent& s, int budget,
                                   std::map<std::string, int> contractions) {
    tick();
    if (budget < 1) return std::nullopt;
    if (auto closed = try_close(s, budget)) return closed;

    std::string key = sequent_loop_key(s);
    if (std::find(path_keys.begin(), path_keys.end(), key) != path_keys.end())
      return std::nullopt;
    path_keys.push_back(key);
    std::optional<DerivationPtr> result;

    for (RuleId rule : order) {
      if (result) break;
      if (system == System::RL && is_second_order_rule(rule)) continue;
      for (auto& move : moves_for(s, rule, contractions)) {
        int cost = move.contract_first ? 2 : 1;
        if (budget - cost < 0) {
          continue;
        }
        bool viable = true;
        std::vector<DerivationPtr> children;
        for (auto& premise : move.premises) {
          if (budget - cost < 1) {
            note_frontier(premise);
            viable = false;
            break;
          }
          auto next_contractions = contractions;
          if (move.contract_first) {
            const FormulaMultiset& m =
                move.inst.principal->side == Side::Ant ? move.contracted.ant
                                                       : move.contracted.suc;
            next_contractions[alpha_key(m[move.inst.principal->index])] += 1;
          }
          auto child = dfs(premise, budget - cost, next_contractions);
          if (!child) {
            viable = false;
            break;
          }
          children.push_back(*child);
        }
        if (!viable) continue;
        DerivationPtr node;
        if (move.contract_first) {
          DerivationPtr inner =
              mk_node(move.contracted, move.rule, move.inst, std::move(children));
          Instantiation c_inst;
          Side side = move.inst.principal->side;
          // contract the formula the rule kept
          const FormulaMultiset& orig = side == Side::Ant ? s.ant : s.suc;
          const FormulaMultiset& grown =
              side == Side::Ant ? move.contracted.ant : move.contracted.suc;
          FormulaPtr principal = grown[move.inst.principal->index];
          for (int i = 0; i < (int)orig.size(); ++i)
            if (alpha_eq(orig[i], principal)) {
              c_inst.principal = OccRef{side, i};
              break;
            }
          node = mk_node(s, side == Side::Ant ? RuleId::CL : RuleId::CR, c_inst, {inner});
        } else {
          node = mk_node(s, move.rule, move.inst, std::move(children));
        }
        result = node;
        break;
      }
    }
    path_keys.pop_back();
    return result;
  }

  ProveResult run(const Sequent& goal) {
    if (cfg.time_budget_ms > 0) {
      has_deadline = true;
      deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(cfg.time_budget_ms);
    }
    try {
      for (int depth = 1; depth <= cfg.max_depth; ++depth) {
        frontier.clear();
        frontier_keys.clear();
        path_keys.clear();
        if (auto d = dfs(goal, depth, {})) return *d;
      }
    } catch (SearchTimeout&) {
      return SearchLimit{"time budget exhausted"};
    }
    Exhausted e;
    e.frontier = frontier;
    return e;
  }
};

}  // namespace detail

// Bounded backward cut-free proof search: iterative deepening on derivation
// height, deterministic given the configuration.
inline ProveResult prove(const Sequent& goal, System system, const SearchConfig& cfg = {}) {
  if (system == System::RL) {
    for (auto& f : goal.ant)
      if (uses_second_order(f)) throw std::invalid_argument("second-order goal in RL mode");
    for (auto& f : goal.suc)
      if (uses_second_order(f)) throw std::invalid_argument("second-order goal in RL mode");
  }
  detail::Prover p;
  p.system = system;
  p.cfg = cfg;
  p.order = cfg.rule_order.empty() ? default_rule_order(system) : cfg.rule_order;
  return p.run(goal);
}

}  // namespace rl2
