#ifndef COIND_LTS_HPP
#define COIND_LTS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "coind/syntax.hpp"

namespace coind {

inline constexpr std::size_t kDefaultMaxStates = 10000;

struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Finite transition system over closed expressions, memoized by canonical
// rendering so states are pairwise structurally distinct.
struct TransitionSystem {
  std::vector<ExprPtr> states;
  std::vector<std::vector<std::pair<std::string, std::size_t>>> transitions;
  std::vector<std::size_t> roots;
};

// Outgoing transitions of a process: head-unfold, then read the summands
// off as a set of (action, continuation) pairs.
std::vector<std::pair<Action, ExprPtr>> transitions(const ExprPtr& p);

// Breadth-first closure of the roots under transitions.
// Throws BudgetError("state budget exceeded") past max_states.
TransitionSystem explore(const std::vector<ExprPtr>& roots,
                         std::size_t max_states = kDefaultMaxStates);

// Strong bisimilarity by greatest-fixpoint refinement of the all-pairs
// relation on explore({p, q}).
bool bisimilar(const ExprPtr& p, const ExprPtr& q,
               std::size_t max_states = kDefaultMaxStates);

// Number of AST nodes; bounds the reachable state count of explore({p}).
std::size_t subexpr_count(const ProcessExpr& e);

}  // namespace coind

#endif
