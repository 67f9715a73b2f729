#ifndef COIND_RULESET_HPP
#define COIND_RULESET_HPP

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "coind/proofcert.hpp"

namespace coind {

// A proof rule: premise set |- conclusion. Empty premises make an axiom.
struct Rule {
  std::string name;
  std::vector<std::string> premises;
  std::string conclusion;
};

// Finite universe of judgement ids plus rules over it.
struct RuleSystem {
  std::vector<std::string> universe;
  std::vector<Rule> rules;
};

using JudgementSet = std::set<std::string>;

// Line-based format:
//   judgements: p q r
//   rule ax: |- p
//   rule r1: p q |- r
//   # comment
RuleSystem parse_rulesystem(std::string_view text);

// Least set closed under "all premises valid => conclusion valid"
// (Kleene iteration from the empty set).
JudgementSet lfp(const RuleSystem& rs);

// Greatest set where every member is concluded by a rule whose premises
// all remain (iteration from the full universe, removing unsupported ids).
JudgementSet gfp(const RuleSystem& rs);

// Back-edge-free proof of j; present exactly when j is in lfp(rs).
std::optional<CertNode> extract_wf_proof(const RuleSystem& rs,
                                         const std::string& j);

// Circular proof of j (back-edges to identical-judgement proper ancestors);
// present exactly when j is in gfp(rs).
std::optional<CertNode> extract_circular_proof(const RuleSystem& rs,
                                               const std::string& j);

// Instance validator backed by table lookup into rs (premise comparison is
// set-based; duplicates collapse).
InstanceCheck table_instance_check(const RuleSystem& rs);

}  // namespace coind

#endif
