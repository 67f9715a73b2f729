#ifndef COIND_EQUIV_HPP
#define COIND_EQUIV_HPP

#include <optional>
#include <string>
#include <vector>

#include "coind/proofcert.hpp"
#include "coind/syntax.hpp"

namespace coind {

inline constexpr std::size_t kDefaultMaxPairs = 10000;

// Reading of the ACT rule. Literal requires a shared positional index
// family on both sides; Relaxed only requires that each summand is matched
// by a same-action summand opposite (the bisimulation-style cover).
enum class MatchMode { Literal, Relaxed };

// Ordered pair of closed expressions asserted equivalent.
struct EquivJudgement {
  ExprPtr left;
  ExprPtr right;
};

// Canonical key, e.g. "mu X. a.a.X == mu Y. a.a.a.Y".
std::string render_judgement(const EquivJudgement& j);
EquivJudgement parse_judgement(const std::string& key);

struct RuleInstance {
  std::string rule;  // "act", "rec-l", "rec-r"
  std::vector<EquivJudgement> premises;
};

// All rule instances concluding j, in search order: rec-l, rec-r, then act
// instances. Relaxed act instances enumerate the choice-function covers.
std::vector<RuleInstance> applicable_rules(const EquivJudgement& j,
                                           MatchMode mode);

// Validator for certificates over ==-judgements; re-parses judgement keys.
InstanceCheck schema_instance_check(MatchMode mode);

struct SearchOptions {
  std::size_t max_pairs = kDefaultMaxPairs;
  bool rec_r_first = false;  // swap rec-l/rec-r try order (verdict-neutral)
};

// Coinductive proof search: depth-first over judgement pairs, ancestors act
// as coinduction hypotheses, repeats close with back-edges to proper
// ancestors. Returns a certificate accepted by check_circular, or nullopt.
// Throws BudgetError("pair budget exceeded") past max_pairs distinct pairs.
std::optional<CertNode> prove_equiv(const ExprPtr& p, const ExprPtr& q,
                                    MatchMode mode = MatchMode::Relaxed,
                                    const SearchOptions& opts = {});

}  // namespace coind

#endif
