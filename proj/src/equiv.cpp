#include "coind/equiv.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "coind/lts.hpp"  // BudgetError

namespace coind {

std::string render_judgement(const EquivJudgement& j) {
  return render(j.left) + " == " + render(j.right);
}

EquivJudgement parse_judgement(const std::string& key) {
  std::size_t sep = key.find(" == ");
  if (sep == std::string::npos)
    throw std::runtime_error("malformed judgement key: '" + key + "'");
  return EquivJudgement{parse_expr(key.substr(0, sep)),
                        parse_expr(key.substr(sep + 4))};
}

namespace {

// Relaxed ACT: enumerate the choice-function covers. For every left summand
// pick a same-action right match, for every right summand a left match; the
// premise set of one instance is the union of the chosen pairs.
std::vector<RuleInstance> relaxed_act_instances(const EquivJudgement& j) {
  const auto& ls = j.left->summands();
  const auto& rs = j.right->summands();
  std::vector<std::vector<std::size_t>> lmatch(ls.size()), rmatch(rs.size());
  for (std::size_t i = 0; i < ls.size(); ++i)
    for (std::size_t k = 0; k < rs.size(); ++k)
      if (ls[i].act == rs[k].act) {
        lmatch[i].push_back(k);
        rmatch[k].push_back(i);
      }
  for (const auto& m : lmatch)
    if (m.empty()) return {};
  for (const auto& m : rmatch)
    if (m.empty()) return {};

  // try positional matches first so e.g. reflexive goals close immediately
  auto prefer = [](std::vector<std::vector<std::size_t>>& match) {
    for (std::size_t i = 0; i < match.size(); ++i) {
      auto it = std::find(match[i].begin(), match[i].end(), i);
      if (it != match[i].end()) std::rotate(match[i].begin(), it, it + 1);
    }
  };
  prefer(lmatch);
  prefer(rmatch);

  std::vector<RuleInstance> out;
  std::set<std::string> seen_instances;
  std::vector<std::size_t> f(ls.size(), 0), g(rs.size(), 0);

  auto emit = [&]() {
    std::map<std::string, EquivJudgement> premises;
    for (std::size_t i = 0; i < ls.size(); ++i) {
      EquivJudgement p{ls[i].cont, rs[lmatch[i][f[i]]].cont};
      premises.emplace(render_judgement(p), p);
    }
    for (std::size_t k = 0; k < rs.size(); ++k) {
      EquivJudgement p{ls[rmatch[k][g[k]]].cont, rs[k].cont};
      premises.emplace(render_judgement(p), p);
    }
    std::string sig;
    for (const auto& [key, _] : premises) sig += key + "\n";
    if (!seen_instances.insert(sig).second) return;
    RuleInstance inst{"act", {}};
    for (auto& [_, p] : premises) inst.premises.push_back(p);
    out.push_back(std::move(inst));
  };

  // odometer over all assignments f x g
  while (true) {
    emit();
    std::size_t pos = 0;
    std::size_t total = f.size() + g.size();
    for (; pos < total; ++pos) {
      std::vector<std::size_t>& slot = pos < f.size() ? f : g;
      std::size_t idx = pos < f.size() ? pos : pos - f.size();
      const auto& options =
          pos < f.size() ? lmatch[idx] : rmatch[idx];
      if (slot[idx] + 1 < options.size()) {
        ++slot[idx];
        break;
      }
      slot[idx] = 0;
    }
    if (pos == total) break;
  }
  return out;
}

}  // namespace

std::vector<RuleInstance> applicable_rules(const EquivJudgement& j,
                                           MatchMode mode) {
  std::vector<RuleInstance> out;
  if (j.left->is_mu())
    out.push_back(
        {"rec-l", {EquivJudgement{head_unfold(j.left), j.right}}});
  if (j.right->is_mu())
    out.push_back(
        {"rec-r", {EquivJudgement{j.left, head_unfold(j.right)}}});
  if (j.left->is_sum() && j.right->is_sum()) {
    const auto& ls = j.left->summands();
    const auto& rs = j.right->summands();
    if (mode == MatchMode::Literal) {
      bool ok = ls.size() == rs.size();
      for (std::size_t i = 0; ok && i < ls.size(); ++i)
        ok = ls[i].act == rs[i].act;
      if (ok) {
        RuleInstance inst{"act", {}};
        for (std::size_t i = 0; i < ls.size(); ++i)
          inst.premises.push_back(EquivJudgement{ls[i].cont, rs[i].cont});
        out.push_back(std::move(inst));
      }
    } else {
      auto insts = relaxed_act_instances(j);
      out.insert(out.end(), std::make_move_iterator(insts.begin()),
                 std::make_move_iterator(insts.end()));
    }
  }
  return out;
}

InstanceCheck schema_instance_check(MatchMode mode) {
  return [mode](const std::string& rule,
                const std::vector<std::string>& premises,
                const std::string& conclusion) -> bool {
    try {
      EquivJudgement j = parse_judgement(conclusion);
      if (!is_process(j.left) || !is_process(j.right)) return false;

      if (rule == "rec-l" || rule == "rec-r") {
        if (premises.size() != 1) return false;
        const ExprPtr& side = rule == "rec-l" ? j.left : j.right;
        if (!side->is_mu()) return false;
        EquivJudgement want =
            rule == "rec-l"
                ? EquivJudgement{head_unfold(j.left), j.right}
                : EquivJudgement{j.left, head_unfold(j.right)};
        return premises[0] == render_judgement(want);
      }

      if (rule != "act") return false;
      if (!j.left->is_sum() || !j.right->is_sum()) return false;
      const auto& ls = j.left->summands();
      const auto& rs = j.right->summands();
      std::set<std::string> given(premises.begin(), premises.end());

      if (mode == MatchMode::Literal) {
        if (ls.size() != rs.size()) return false;
        std::set<std::string> want;
        for (std::size_t i = 0; i < ls.size(); ++i) {
          if (ls[i].act != rs[i].act) return false;
          want.insert(render_judgement({ls[i].cont, rs[i].cont}));
        }
        return want == given;
      }

      // Relaxed: every premise is a same-action cross pair and the premise
      // set covers every summand on both sides.
      std::vector<bool> lcov(ls.size(), false), rcov(rs.size(), false);
      for (const std::string& p : given) {
        bool witnessed = false;
        for (std::size_t i = 0; i < ls.size(); ++i)
          for (std::size_t k = 0; k < rs.size(); ++k) {
            if (ls[i].act != rs[k].act) continue;
            if (p == render_judgement({ls[i].cont, rs[k].cont})) {
              lcov[i] = rcov[k] = true;
              witnessed = true;
            }
          }
        if (!witnessed) return false;
      }
      return std::all_of(lcov.begin(), lcov.end(), [](bool b) { return b; }) &&
             std::all_of(rcov.begin(), rcov.end(), [](bool b) { return b; });
    } catch (const std::exception&) {
      return false;
    }
  };
}

namespace {

struct Searcher {
  MatchMode mode;
  SearchOptions opts;
  std::map<std::string, CertNode> proven;   // self-contained proofs only
  std::map<std::string, std::set<std::string>> refuted;  // key -> footprint
  std::set<std::string> distinct;           // budget accounting
  std::vector<std::string> path;

  std::optional<CertNode> search(const EquivJudgement& j,
                                 std::set<std::string>& visited) {
    std::string key = render_judgement(j);
    visited.insert(key);

    if (auto it = proven.find(key); it != proven.end()) return it->second;

    auto anc = std::find(path.rbegin(), path.rend(), key);
    if (anc != path.rend()) {
      std::size_t up = static_cast<std::size_t>(anc - path.rbegin()) + 1;
      return CertNode::back_edge(key, up);
    }

    if (auto it = refuted.find(key); it != refuted.end()) {
      const std::set<std::string>& footprint = it->second;
      bool disjoint = std::none_of(
          path.begin(), path.end(),
          [&](const std::string& a) { return footprint.contains(a); });
      if (disjoint) {
        visited.insert(footprint.begin(), footprint.end());
        return std::nullopt;
      }
    }

    if (distinct.insert(key).second && distinct.size() > opts.max_pairs)
      throw BudgetError("pair budget exceeded");

    std::vector<RuleInstance> instances = applicable_rules(j, mode);
    if (opts.rec_r_first && instances.size() >= 2 &&
        instances[0].rule == "rec-l" && instances[1].rule == "rec-r")
      std::swap(instances[0], instances[1]);

    std::set<std::string> below;
    below.insert(key);
    path.push_back(key);
    for (const RuleInstance& inst : instances) {
      std::vector<CertNode> children;
      bool ok = true;
      for (const EquivJudgement& premise : inst.premises) {
        auto sub = search(premise, below);
        if (!sub) {
          ok = false;
          break;
        }
        children.push_back(std::move(*sub));
      }
      if (!ok) continue;
      path.pop_back();
      CertNode node =
          children.empty()
              ? CertNode::axiom(key, inst.rule)
              : CertNode::inner(key, inst.rule, std::move(children));
      if (cert_escape(node) == 0) proven.emplace(key, node);
      visited.insert(below.begin(), below.end());
      return node;
    }
    path.pop_back();
    refuted[key] = below;
    visited.insert(below.begin(), below.end());
    return std::nullopt;
  }
};

}  // namespace

std::optional<CertNode> prove_equiv(const ExprPtr& p, const ExprPtr& q,
                                    MatchMode mode,
                                    const SearchOptions& opts) {
  if (!is_process(p) || !is_process(q))
    throw std::invalid_argument("not a process");
  Searcher s{mode, opts, {}, {}, {}, {}};
  std::set<std::string> visited;
  return s.search(EquivJudgement{p, q}, visited);
}

}  // namespace coind
