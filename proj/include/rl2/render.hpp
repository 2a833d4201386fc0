#pragma once

#include "rl2/derivation.hpp"
#include "rl2/printer.hpp"

namespace rl2 {

// ASCII proof tree, root first, premises indented below.
inline std::string render_ascii(const DerivationPtr& d) {
  std::ostringstream os;
  std::function<void(const DerivationPtr&, const std::string&, bool, bool)> go =
      [&](const DerivationPtr& n, const std::string& prefix, bool last, bool root) {
        os << prefix;
        if (!root) os << (last ? "`- " : "|- ");
        os << "[" << rule_name(n->rule) << "] " << print_sequent(n->conclusion) << "\n";
        std::string child_prefix = root ? prefix : prefix + (last ? "   " : "|  ");
        for (size_t i = 0; i < n->premises.size(); ++i)
          go(n->premises[i], child_prefix, i + 1 == n->premises.size(), false);
      };
  go(d, "", true, true);
  return os.str();
}

inline std::string latex_sequent(const Sequent& s) {
  std::string out;
  for (size_t i = 0; i < s.ant.size(); ++i) {
    if (i) out += ", ";
    out += latex_formula(s.ant[i]);
  }
  out += s.ant.empty() ? "\\Rightarrow" : " \\Rightarrow";
  for (size_t i = 0; i < s.suc.size(); ++i) {
    out += i ? ", " : " ";
    out += latex_formula(s.suc[i]);
  }
  return out;
}

inline std::string latex_rule_label(RuleId r) {
  switch (r) {
    case RuleId::AX: return "AX";
    case RuleId::Cut: return "Cut";
    case RuleId::WL: return "W{\\Rightarrow}";
    case RuleId::WR: return "{\\Rightarrow}W";
    case RuleId::CL: return "C{\\Rightarrow}";
    case RuleId::CR: return "{\\Rightarrow}C";
    case RuleId::AndL: return "{\\land}{\\Rightarrow}";
    case RuleId::AndR: return "{\\Rightarrow}{\\land}";
    case RuleId::OrL: return "{\\lor}{\\Rightarrow}";
    case RuleId::OrR: return "{\\Rightarrow}{\\lor}";
    case RuleId::NegL: return "{\\neg}{\\Rightarrow}";
    case RuleId::NegR: return "{\\Rightarrow}{\\neg}";
    case RuleId::ImpL: return "{\\to}{\\Rightarrow}";
    case RuleId::ImpR: return "{\\Rightarrow}{\\to}";
    case RuleId::IffL: return "{\\leftrightarrow}{\\Rightarrow}";
    case RuleId::IffR: return "{\\Rightarrow}{\\leftrightarrow}";
    case RuleId::AllL: return "{\\forall}{\\Rightarrow}";
    case RuleId::AllR: return "{\\Rightarrow}{\\forall}";
    case RuleId::ExL: return "{\\exists}{\\Rightarrow}";
    case RuleId::ExR: return "{\\Rightarrow}{\\exists}";
    case RuleId::EqPlus: return "{=}{+}";
    case RuleId::EqMinus: return "{=}{-}";
    case RuleId::LamL: return "{\\lambda}{\\Rightarrow}";
    case RuleId::LamR: return "{\\Rightarrow}{\\lambda}";
    case RuleId::Iota1L: return "{\\iota_1}{\\Rightarrow}";
    case RuleId::Iota2L: return "{\\iota_2}{\\Rightarrow}";
    case RuleId::IotaR: return "{\\Rightarrow}{\\iota}";
    case RuleId::Eq2L: return "{=^2}{\\Rightarrow}";
    case RuleId::Eq2R: return "{\\Rightarrow}{=^2}";
    case RuleId::All2L: return "{\\forall^2}{\\Rightarrow}";
    case RuleId::All2R: return "{\\Rightarrow}{\\forall^2}";
    case RuleId::Ex2L: return "{\\exists^2}{\\Rightarrow}";
    case RuleId::Ex2R: return "{\\Rightarrow}{\\exists^2}";
    case RuleId::Iota1L2: return "{\\iota_1^2}{\\Rightarrow}";
    case RuleId::Iota2L2: return "{\\iota_2^2}{\\Rightarrow}";
    case RuleId::IotaR2: return "{\\Rightarrow}{\\iota^2}";
    case RuleId::Assume: return "\\mathcal{S}";
  }
  return "?";
}

// Standalone bussproofs document. The sequents inside the tree reparse with
// the tolerant lexer, so the rendering round-trips.
inline std::string render_latex(const DerivationPtr& d) {
  std::ostringstream os;
  os << "\\documentclass{article}\n"
     << "\\usepackage{bussproofs}\n"
     << "\\usepackage{amsmath}\n"
     << "\\begin{document}\n"
     << "\\begin{prooftree}\n";
  std::function<void(const DerivationPtr&)> go = [&](const DerivationPtr& n) {
    for (auto& p : n->premises) go(p);
    if (n->premises.empty()) {
      os << "\\AxiomC{$" << latex_sequent(n->conclusion) << "$}\n";
      if (n->rule != RuleId::AX)
        os << "\\RightLabel{$" << latex_rule_label(n->rule) << "$}\n";
    } else {
      os << "\\RightLabel{$" << latex_rule_label(n->rule) << "$}\n";
      const char* cmd = n->premises.size() == 1   ? "\\UnaryInfC"
                        : n->premises.size() == 2 ? "\\BinaryInfC"
                                                  : "\\TrinaryInfC";
      os << cmd << "{$" << latex_sequent(n->conclusion) << "$}\n";
    }
  };
  go(d);
  os << "\\end{prooftree}\n\\end{document}\n";
  return os.str();
}

}  // namespace rl2
