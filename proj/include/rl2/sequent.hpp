#pragma once

#include <string>
#include <vector>

#include "rl2/formula.hpp"
#include "rl2/printer.hpp"

namespace rl2 {

// Gamma => Delta over finite multisets. Both sides are kept in canonical
// order (ascending print form, stable), which gives occurrence indices a
// deterministic meaning.
struct Sequent {
  std::vector<FormulaPtr> ant, suc;

  Sequent() = default;
  Sequent(std::vector<FormulaPtr> a, std::vector<FormulaPtr> s)
      : ant(std::move(a)), suc(std::move(s)) {
    canonicalize(ant);
    canonicalize(suc);
  }

  static void canonicalize(std::vector<FormulaPtr>& v) {
    std::stable_sort(v.begin(), v.end(), [](const FormulaPtr& l, const FormulaPtr& r) {
      return print_formula(l) < print_formula(r);
    });
  }
};

inline std::string print_sequent(const Sequent& s) {
  std::string out;
  for (size_t i = 0; i < s.ant.size(); ++i) {
    if (i) out += ", ";
    out += print_formula(s.ant[i]);
  }
  if (!s.ant.empty()) out += ' ';
  out += "=>";
  for (size_t i = 0; i < s.suc.size(); ++i) {
    out += i ? ", " : " ";
    out += print_formula(s.suc[i]);
  }
  return out;
}

// ---- multiset operations up to alpha-equivalence -------------------------

using FormulaMultiset = std::vector<FormulaPtr>;

inline int count_alpha(const FormulaMultiset& m, const FormulaPtr& f) {
  int n = 0;
  for (auto& g : m)
    if (alpha_eq(f, g)) ++n;
  return n;
}

inline bool remove_one_alpha(FormulaMultiset& m, const FormulaPtr& f) {
  for (auto it = m.begin(); it != m.end(); ++it) {
    if (alpha_eq(*it, f)) {
      m.erase(it);
      return true;
    }
  }
  return false;
}

// a is a sub-multiset of b, matching formulas up to alpha.
inline bool subset_alpha(const FormulaMultiset& a, const FormulaMultiset& b) {
  FormulaMultiset rest = b;
  for (auto& f : a)
    if (!remove_one_alpha(rest, f)) return false;
  return true;
}

inline bool equal_alpha(const FormulaMultiset& a, const FormulaMultiset& b) {
  return a.size() == b.size() && subset_alpha(a, b);
}

inline bool sequent_equal_alpha(const Sequent& a, const Sequent& b) {
  return equal_alpha(a.ant, b.ant) && equal_alpha(a.suc, b.suc);
}

// Multiset sum.
inline FormulaMultiset mset_sum(FormulaMultiset a, const FormulaMultiset& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// Absorbing union: the result holds each alpha-class at
// max(multiplicity in a, multiplicity in b).
inline FormulaMultiset mset_absorb(const FormulaMultiset& a, const FormulaMultiset& b) {
  FormulaMultiset out = a;
  FormulaMultiset pending = b;
  FormulaMultiset budget = a;  // copies of a still available for absorption
  for (auto& f : pending) {
    if (remove_one_alpha(budget, f)) continue;  // absorbed into an existing copy
    out.push_back(f);
  }
  return out;
}

inline SymbolSet free_symbols(const Sequent& s) {
  SymbolSet out;
  for (auto& f : s.ant) {
    auto fs = free_symbols(f);
    out.insert(fs.begin(), fs.end());
  }
  for (auto& f : s.suc) {
    auto fs = free_symbols(f);
    out.insert(fs.begin(), fs.end());
  }
  return out;
}

// Key for loop checks: both sides deduplicated alpha-normally and sorted, so
// the key is invariant under multiplicities and bound-variable names.
inline std::string sequent_loop_key(const Sequent& s) {
  auto side_key = [](const FormulaMultiset& m) {
    std::vector<std::string> keys;
    for (auto& f : m) keys.push_back(alpha_key(f));
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    std::string out;
    for (auto& k : keys) {
      out += k;
      out += '\x01';
    }
    return out;
  };
  return side_key(s.ant) + "\x02" + side_key(s.suc);
}

}  // namespace rl2
