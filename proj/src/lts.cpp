#include "coind/lts.hpp"

#include <deque>
#include <map>
#include <set>

namespace coind {

std::vector<std::pair<Action, ExprPtr>> transitions(const ExprPtr& p) {
  ExprPtr s = head_unfold(p);  // throws "not a process" on open input
  std::vector<std::pair<Action, ExprPtr>> out;
  std::set<std::pair<std::string, std::string>> seen;
  for (const Summand& sm : s->summands()) {
    if (seen.emplace(sm.act.name, render(sm.cont)).second)
      out.emplace_back(sm.act, sm.cont);
  }
  return out;
}

TransitionSystem explore(const std::vector<ExprPtr>& roots,
                         std::size_t max_states) {
  if (max_states < 1) throw std::invalid_argument("max_states must be >= 1");
  TransitionSystem ts;
  std::map<std::string, std::size_t> index;
  std::deque<std::size_t> work;

  auto intern = [&](const ExprPtr& e) {
    std::string key = render(e);
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    if (ts.states.size() >= max_states)
      throw BudgetError("state budget exceeded");
    std::size_t id = ts.states.size();
    ts.states.push_back(e);
    ts.transitions.emplace_back();
    index.emplace(std::move(key), id);
    work.push_back(id);
    return id;
  };

  for (const ExprPtr& r : roots) ts.roots.push_back(intern(r));
  while (!work.empty()) {
    std::size_t id = work.front();
    work.pop_front();
    for (auto& [act, cont] : transitions(ts.states[id])) {
      std::size_t target = intern(cont);  // may grow ts.transitions
      ts.transitions[id].emplace_back(act.name, target);
    }
  }
  return ts;
}

bool bisimilar(const ExprPtr& p, const ExprPtr& q, std::size_t max_states) {
  TransitionSystem ts = explore({p, q}, max_states);
  std::size_t n = ts.states.size();
  std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, true));

  auto matched = [&](std::size_t i, std::size_t j) {
    // every move of i answered by a move of j with the same action
    for (auto& [a, i2] : ts.transitions[i]) {
      bool ok = false;
      for (auto& [b, j2] : ts.transitions[j])
        if (a == b && rel[i2][j2]) {
          ok = true;
          break;
        }
      if (!ok) return false;
    }
    return true;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (!rel[i][j]) continue;
        if (!matched(i, j) || !matched(j, i)) {
          rel[i][j] = false;
          changed = true;
        }
      }
  }
  return rel[ts.roots[0]][ts.roots[1]];
}

std::size_t subexpr_count(const ProcessExpr& e) {
  switch (e.kind()) {
    case ProcessExpr::Kind::Var:
      return 1;
    case ProcessExpr::Kind::Mu:
      return 1 + subexpr_count(*e.body());
    case ProcessExpr::Kind::Sum: {
      std::size_t n = 1;
      for (const auto& s : e.summands()) n += subexpr_count(*s.cont);
      return n;
    }
  }
  return 1;
}

}  // namespace coind
