#pragma once

#include <array>
#include <optional>
#include <string>

namespace rl2 {

enum class System { RL, RL2 };

// The rule catalog. First-order block, then the second-order extension.
// Assume is the leaf form for proofs from a set of assumption sequents.
enum class RuleId {
  AX,
  Cut,
  WL,
  WR,
  CL,
  CR,
  AndL,
  AndR,
  OrL,
  OrR,
  NegL,
  NegR,
  ImpL,
  ImpR,
  IffL,
  IffR,
  AllL,
  AllR,
  ExL,
  ExR,
  EqPlus,
  EqMinus,
  LamL,
  LamR,
  Iota1L,
  Iota2L,
  IotaR,
  Eq2L,
  Eq2R,
  All2L,
  All2R,
  Ex2L,
  Ex2R,
  Iota1L2,
  Iota2L2,
  IotaR2,
  Assume,
};

inline constexpr std::array<std::pair<RuleId, const char*>, 37> kRuleNames = {{
    {RuleId::AX, "AX"},
    {RuleId::Cut, "Cut"},
    {RuleId::WL, "WL"},
    {RuleId::WR, "WR"},
    {RuleId::CL, "CL"},
    {RuleId::CR, "CR"},
    {RuleId::AndL, "AndL"},
    {RuleId::AndR, "AndR"},
    {RuleId::OrL, "OrL"},
    {RuleId::OrR, "OrR"},
    {RuleId::NegL, "NegL"},
    {RuleId::NegR, "NegR"},
    {RuleId::ImpL, "ImpL"},
    {RuleId::ImpR, "ImpR"},
    {RuleId::IffL, "IffL"},
    {RuleId::IffR, "IffR"},
    {RuleId::AllL, "AllL"},
    {RuleId::AllR, "AllR"},
    {RuleId::ExL, "ExL"},
    {RuleId::ExR, "ExR"},
    {RuleId::EqPlus, "EqPlus"},
    {RuleId::EqMinus, "EqMinus"},
    {RuleId::LamL, "LamL"},
    {RuleId::LamR, "LamR"},
    {RuleId::Iota1L, "Iota1L"},
    {RuleId::Iota2L, "Iota2L"},
    {RuleId::IotaR, "IotaR"},
    {RuleId::Eq2L, "Eq2L"},
    {RuleId::Eq2R, "Eq2R"},
    {RuleId::All2L, "All2L"},
    {RuleId::All2R, "All2R"},
    {RuleId::Ex2L, "Ex2L"},
    {RuleId::Ex2R, "Ex2R"},
    {RuleId::Iota1L2, "Iota1L2"},
    {RuleId::Iota2L2, "Iota2L2"},
    {RuleId::IotaR2, "IotaR2"},
    {RuleId::Assume, "Assume"},
}};

inline const char* rule_name(RuleId r) {
  for (auto& [id, name] : kRuleNames)
    if (id == r) return name;
  return "?";
}

inline std::optional<RuleId> rule_from_name(const std::string& name) {
  for (auto& [id, n] : kRuleNames)
    if (name == n) return id;
  return std::nullopt;
}

inline int premise_count(RuleId r) {
  switch (r) {
    case RuleId::AX:
    case RuleId::Assume: return 0;
    case RuleId::Cut:
    case RuleId::AndR:
    case RuleId::OrL:
    case RuleId::ImpL:
    case RuleId::IffL:
    case RuleId::IffR:
    case RuleId::Eq2L:
    case RuleId::Eq2R: return 2;
    case RuleId::Iota2L:
    case RuleId::IotaR:
    case RuleId::Iota2L2:
    case RuleId::IotaR2: return 3;
    default: return 1;
  }
}

inline bool is_second_order_rule(RuleId r) {
  switch (r) {
    case RuleId::Eq2L:
    case RuleId::Eq2R:
    case RuleId::All2L:
    case RuleId::All2R:
    case RuleId::Ex2L:
    case RuleId::Ex2R:
    case RuleId::Iota1L2:
    case RuleId::Iota2L2:
    case RuleId::IotaR2: return true;
    default: return false;
  }
}

// Rules whose backward application introduces a fresh eigen symbol.
inline bool is_eigen_rule(RuleId r) {
  switch (r) {
    case RuleId::AllR:
    case RuleId::ExL:
    case RuleId::Iota1L:
    case RuleId::Eq2R:
    case RuleId::All2R:
    case RuleId::Ex2L:
    case RuleId::Iota1L2: return true;
    default: return false;
  }
}

enum class ViolationKind {
  PremiseMismatch,
  EigenvariableViolation,
  NotAtomic,
  ArityMismatch,
  WrongPremiseCount,
  BadInstantiation,
  CutForbidden,
};

inline const char* violation_name(ViolationKind k) {
  switch (k) {
    case ViolationKind::PremiseMismatch: return "PremiseMismatch";
    case ViolationKind::EigenvariableViolation: return "EigenvariableViolation";
    case ViolationKind::NotAtomic: return "NotAtomic";
    case ViolationKind::ArityMismatch: return "ArityMismatch";
    case ViolationKind::WrongPremiseCount: return "WrongPremiseCount";
    case ViolationKind::BadInstantiation: return "BadInstantiation";
    case ViolationKind::CutForbidden: return "CutForbidden";
  }
  return "?";
}

}  // namespace rl2
