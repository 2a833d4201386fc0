#pragma once

#include <random>

#include "rl2/eval.hpp"

namespace rl2 {

enum class FamilyMode { Default, FullPowerset, AllSubfamilies, Sampled };

struct SearchBounds {
  int max_domain = 2;
  int max_arity = 2;
  FamilyMode mode = FamilyMode::Default;
  unsigned sample_seed = 1;
  int sample_count = 16;
  long max_candidates = 5'000'000;
};

struct NotFoundWithinBounds {};

using CountermodelResult = std::variant<ModelDocument, NotFoundWithinBounds>;

namespace detail {

inline long ipow(long b, int e) {
  long r = 1;
  while (e--) r *= b;
  return r;
}

// Candidate families for one arity, in enumeration order.
inline std::vector<std::vector<Relation>> family_candidates(int domain, int arity,
                                                            const SearchBounds& b) {
  long tuples = ipow(domain, arity);
  auto mode = b.mode;
  if (mode == FamilyMode::Default)
    mode = tuples <= 4 ? FamilyMode::FullPowerset : FamilyMode::Sampled;
  switch (mode) {
    case FamilyMode::FullPowerset: {
      return {powerset_relations(domain, arity)};
    }
    case FamilyMode::AllSubfamilies: {
      if ((1l << tuples) > 16)
        throw EvalError(EvalError::Kind::ResourceLimit,
                        "all-subfamilies needs 2^(|D|^n) <= 16 at arity " +
                            std::to_string(arity));
      auto rels = powerset_relations(domain, arity);
      long nrel = (long)rels.size();
      std::vector<std::vector<Relation>> out;
      for (long mask = 1; mask < (1l << nrel); ++mask) {  // nonempty subfamilies only
        std::vector<Relation> fam;
        for (long i = 0; i < nrel; ++i)
          if (mask & (1l << i)) fam.push_back(rels[i]);
        out.push_back(std::move(fam));
      }
      return out;
    }
    case FamilyMode::Sampled: {
      if (tuples > 62)
        throw EvalError(EvalError::Kind::ResourceLimit,
                        "tuple space too large to sample at arity " + std::to_string(arity));
      std::mt19937 rng(b.sample_seed + 0x9e37u * (unsigned)arity + (unsigned)domain);
      std::vector<Tuple> all;
      {
        Tuple t(arity, 0);
        for (long i = 0; i < tuples; ++i) {
          long x = i;
          for (int j = arity - 1; j >= 0; --j) {
            t[j] = (int)(x % domain);
            x /= domain;
          }
          all.push_back(t);
        }
      }
      std::vector<std::vector<Relation>> out;
      for (int s = 0; s < b.sample_count; ++s) {
        int size = 1 + (int)(rng() % 4);
        std::vector<Relation> fam;
        for (int i = 0; i < size; ++i) {
          Relation r;
          for (auto& t : all)
            if (rng() & 1) r.insert(t);
          if (std::find(fam.begin(), fam.end(), r) == fam.end()) fam.push_back(std::move(r));
        }
        out.push_back(std::move(fam));
      }
      return out;
    }
    default: throw std::logic_error("unreachable");
  }
}

struct CounterSearch {
  const Sequent& goal;
  const SearchBounds& bounds;
  long budget;

  // free symbols grouped by role, each sorted by name
  std::vector<SymbolName> preds, indconsts, relconsts, indfree, relfree;
  std::set<int> arities;

  explicit CounterSearch(const Sequent& s, const SearchBounds& b)
      : goal(s), bounds(b), budget(b.max_candidates) {
    for (auto& sym : rl2::free_symbols(s)) {
      switch (sym.kind) {
        case SymbolKind::PredSym: preds.push_back(sym); break;
        case SymbolKind::IndConst: indconsts.push_back(sym); break;
        case SymbolKind::RelConst: relconsts.push_back(sym); break;
        case SymbolKind::IndVar:
        case SymbolKind::IndPar: indfree.push_back(sym); break;
        case SymbolKind::RelVar:
        case SymbolKind::RelPar: relfree.push_back(sym); break;
      }
    }
    arities = needed_arities(s);
    int widest = 0;
    for (int a : arities) widest = std::max(widest, a);
    for (auto& p : preds) widest = std::max(widest, p.arity);
    if (widest > bounds.max_arity)
      throw EvalError(EvalError::Kind::ResourceLimit,
                      "sequent needs arity " + std::to_string(widest) + " beyond the bound");
  }

  std::optional<ModelDocument> run() {
    for (int d = 1; d <= bounds.max_domain; ++d) {
      ModelDocument doc;
      doc.gm.base.domain_size = d;
      std::vector<std::vector<std::vector<Relation>>> fams;
      for (int a : arities) fams.push_back(family_candidates(d, a, bounds));
      if (auto r = choose_family(doc, d, 0, fams)) return r;
    }
    return std::nullopt;
  }

  std::optional<ModelDocument> choose_family(
      ModelDocument& doc, int d, size_t idx,
      const std::vector<std::vector<std::vector<Relation>>>& fams) {
    if (idx == fams.size()) return choose_relconst(doc, d, 0);
    auto it = arities.begin();
    std::advance(it, idx);
    int arity = *it;
    for (auto& fam : fams[idx]) {
      doc.gm.families[arity] = fam;
      if (auto r = choose_family(doc, d, idx + 1, fams)) return r;
    }
    doc.gm.families.erase(arity);
    return std::nullopt;
  }

  std::optional<ModelDocument> choose_relconst(ModelDocument& doc, int d, size_t idx) {
    if (idx == relconsts.size()) return choose_indconst(doc, d, 0);
    const SymbolName& k = relconsts[idx];
    auto fit = doc.gm.families.find(k.arity);
    if (fit == doc.gm.families.end())
      throw EvalError(EvalError::Kind::UninterpretedSymbol,
                      "no family for relational constant " + k.spelling());
    for (auto& r : fit->second) {
      doc.gm.relconst_interp[k.spelling()] = r;
      if (auto res = choose_relconst(doc, d, idx + 1)) return res;
    }
    doc.gm.relconst_interp.erase(k.spelling());
    return std::nullopt;
  }

  std::optional<ModelDocument> choose_indconst(ModelDocument& doc, int d, size_t idx) {
    if (idx == indconsts.size()) return choose_pred(doc, d, 0);
    for (int o = 0; o < d; ++o) {
      doc.gm.base.const_interp[indconsts[idx].spelling()] = o;
      if (auto r = choose_indconst(doc, d, idx + 1)) return r;
    }
    doc.gm.base.const_interp.erase(indconsts[idx].spelling());
    return std::nullopt;
  }

  std::optional<ModelDocument> choose_pred(ModelDocument& doc, int d, size_t idx) {
    if (idx == preds.size()) return choose_relfree(doc, d, 0);
    auto rels = powerset_relations(d, preds[idx].arity);
    for (auto& r : rels) {
      doc.gm.base.pred_interp[preds[idx].spelling()] = r;
      if (auto res = choose_pred(doc, d, idx + 1)) return res;
    }
    doc.gm.base.pred_interp.erase(preds[idx].spelling());
    return std::nullopt;
  }

  std::optional<ModelDocument> choose_relfree(ModelDocument& doc, int d, size_t idx) {
    if (idx == relfree.size()) return choose_indfree(doc, d, 0);
    const SymbolName& x = relfree[idx];
    auto fit = doc.gm.families.find(x.arity);
    if (fit == doc.gm.families.end())
      throw EvalError(EvalError::Kind::UninterpretedSymbol,
                      "no family for " + x.spelling());
    for (auto& r : fit->second) {
      doc.v.rel[x.spelling()] = r;
      if (auto res = choose_relfree(doc, d, idx + 1)) return res;
    }
    doc.v.rel.erase(x.spelling());
    return std::nullopt;
  }

  std::optional<ModelDocument> choose_indfree(ModelDocument& doc, int d, size_t idx) {
    if (idx == indfree.size()) return test(doc);
    for (int o = 0; o < d; ++o) {
      doc.v.ind[indfree[idx].spelling()] = o;
      if (auto r = choose_indfree(doc, d, idx + 1)) return r;
    }
    doc.v.ind.erase(indfree[idx].spelling());
    return std::nullopt;
  }

  std::optional<ModelDocument> test(ModelDocument& doc) {
    if (--budget < 0)
      throw EvalError(EvalError::Kind::ResourceLimit, "candidate ceiling exceeded");
    if (!holds_sequent(doc.gm, doc.v, goal)) {
      // self-check the candidate before handing it out
      ModelDocument found = doc;
      validate_general(found);
      if (holds_sequent(found.gm, found.v, goal))
        throw std::logic_error("countermodel verification disagrees with enumeration");
      return found;
    }
    return std::nullopt;
  }
};

}  // namespace detail

// First countermodel of the sequent in deterministic enumeration order:
// domain size ascending, then families, relational constants, individual
// constants, predicate interpretations, relational assignment, individual
// assignment, each ascending by tuple-set encoding.
inline CountermodelResult find_countermodel(const Sequent& s, const SearchBounds& bounds) {
  detail::CounterSearch search(s, bounds);
  if (auto r = search.run()) return *r;
  return NotFoundWithinBounds{};
}

}  // namespace rl2
