#include "coind/ruleset.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace coind {

namespace {

std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

std::string_view strip_comment(std::string_view line) {
  std::size_t h = line.find('#');
  return h == std::string_view::npos ? line : line.substr(0, h);
}

}  // namespace

RuleSystem parse_rulesystem(std::string_view text) {
  RuleSystem rs;
  std::set<std::string> universe_set;
  std::set<std::string> rule_names;
  bool have_universe = false;
  std::size_t lineno = 0;

  while (!text.empty() || lineno == 0) {
    ++lineno;
    std::size_t nl = text.find('\n');
    std::string_view line = strip_comment(text.substr(0, nl));
    text = (nl == std::string_view::npos) ? std::string_view{}
                                          : text.substr(nl + 1);
    std::vector<std::string> words = split_words(line);
    if (words.empty()) {
      if (text.empty()) break;
      continue;
    }

    auto fail = [&](const std::string& msg) {
      throw std::runtime_error("rule file line " + std::to_string(lineno) +
                               ": " + msg);
    };

    if (!have_universe) {
      if (words[0] != "judgements:") fail("expected 'judgements:' line");
      for (std::size_t i = 1; i < words.size(); ++i) {
        if (!universe_set.insert(words[i]).second)
          fail("duplicate judgement id '" + words[i] + "'");
        rs.universe.push_back(words[i]);
      }
      have_universe = true;
      continue;
    }

    if (words[0] != "rule") fail("expected 'rule' line");
    if (words.size() < 2 || words[1].back() != ':')
      fail("expected 'rule <name>:'");
    Rule r;
    r.name = words[1].substr(0, words[1].size() - 1);
    if (r.name.empty()) fail("empty rule name");
    if (!rule_names.insert(r.name).second)
      fail("duplicate rule name '" + r.name + "'");
    std::size_t bar = 0;
    for (std::size_t i = 2; i < words.size(); ++i)
      if (words[i] == "|-") {
        bar = i;
        break;
      }
    if (bar == 0 || bar + 2 != words.size())
      fail("expected '<premises> |- <conclusion>'");
    for (std::size_t i = 2; i < bar; ++i) r.premises.push_back(words[i]);
    r.conclusion = words[bar + 1];
    for (const auto& id : r.premises)
      if (!universe_set.contains(id)) fail("unknown judgement id '" + id + "'");
    if (!universe_set.contains(r.conclusion))
      fail("unknown judgement id '" + r.conclusion + "'");
    rs.rules.push_back(std::move(r));
  }

  if (!have_universe)
    throw std::runtime_error("rule file: missing 'judgements:' line");
  return rs;
}

namespace {

bool all_in(const std::vector<std::string>& ids, const JudgementSet& v) {
  return std::all_of(ids.begin(), ids.end(),
                     [&](const std::string& id) { return v.contains(id); });
}

// Kleene rounds; records for each member the round it entered and the rule
// that first fired for it (premises all from strictly earlier rounds).
struct LfpTrace {
  JudgementSet members;
  std::map<std::string, std::size_t> round;
  std::map<std::string, const Rule*> via;
};

LfpTrace lfp_trace(const RuleSystem& rs) {
  LfpTrace t;
  for (std::size_t r = 1;; ++r) {
    std::vector<std::pair<std::string, const Rule*>> added;
    for (const Rule& rule : rs.rules) {
      if (t.members.contains(rule.conclusion)) continue;
      if (all_in(rule.premises, t.members))
        added.emplace_back(rule.conclusion, &rule);
    }
    if (added.empty()) break;
    for (auto& [id, rule] : added) {
      if (t.members.insert(id).second) {
        t.round[id] = r;
        t.via[id] = rule;
      }
    }
  }
  return t;
}

}  // namespace

JudgementSet lfp(const RuleSystem& rs) { return lfp_trace(rs).members; }

JudgementSet gfp(const RuleSystem& rs) {
  JudgementSet v(rs.universe.begin(), rs.universe.end());
  bool changed = true;
  while (changed) {
    changed = false;
    for (const std::string& id : rs.universe) {
      if (!v.contains(id)) continue;
      bool supported = false;
      for (const Rule& rule : rs.rules)
        if (rule.conclusion == id && all_in(rule.premises, v)) {
          supported = true;
          break;
        }
      if (!supported) {
        v.erase(id);
        changed = true;
      }
    }
  }
  return v;
}

namespace {

CertNode build_wf(const LfpTrace& t, const std::string& j) {
  const Rule* rule = t.via.at(j);
  if (rule->premises.empty()) return CertNode::axiom(j, rule->name);
  // one child per distinct premise id
  std::vector<CertNode> children;
  std::set<std::string> seen;
  for (const auto& p : rule->premises)
    if (seen.insert(p).second) children.push_back(build_wf(t, p));
  return CertNode::inner(j, rule->name, std::move(children));
}

struct CircularBuilder {
  const RuleSystem& rs;
  const JudgementSet valid;  // gfp
  std::map<std::string, CertNode> self_contained;

  explicit CircularBuilder(const RuleSystem& rs_) : rs(rs_), valid(gfp(rs_)) {}

  CertNode build(const std::string& j, std::vector<std::string>& path) {
    if (auto it = self_contained.find(j); it != self_contained.end())
      return it->second;
    const Rule* rule = nullptr;
    for (const Rule& r : rs.rules)
      if (r.conclusion == j && all_in(r.premises, valid)) {
        rule = &r;
        break;
      }
    if (rule == nullptr)
      throw std::logic_error("gfp member without supporting rule");
    if (rule->premises.empty()) {
      CertNode n = CertNode::axiom(j, rule->name);
      self_contained.emplace(j, n);
      return n;
    }
    path.push_back(j);
    std::vector<CertNode> children;
    std::set<std::string> seen;
    for (const auto& p : rule->premises) {
      if (!seen.insert(p).second) continue;
      auto anc = std::find(path.rbegin(), path.rend(), p);
      if (anc != path.rend()) {
        std::size_t up = static_cast<std::size_t>(anc - path.rbegin()) + 1;
        children.push_back(CertNode::back_edge(p, up));
      } else {
        children.push_back(build(p, path));
      }
    }
    path.pop_back();
    CertNode n = CertNode::inner(j, rule->name, std::move(children));
    if (cert_escape(n) == 0) self_contained.emplace(j, n);
    return n;
  }
};

}  // namespace

std::optional<CertNode> extract_wf_proof(const RuleSystem& rs,
                                         const std::string& j) {
  LfpTrace t = lfp_trace(rs);
  if (!t.members.contains(j)) return std::nullopt;
  return build_wf(t, j);
}

std::optional<CertNode> extract_circular_proof(const RuleSystem& rs,
                                               const std::string& j) {
  CircularBuilder b(rs);
  if (!b.valid.contains(j)) return std::nullopt;
  std::vector<std::string> path;
  return b.build(j, path);
}

InstanceCheck table_instance_check(const RuleSystem& rs) {
  auto rules = std::make_shared<std::vector<Rule>>(rs.rules);
  return [rules](const std::string& rule,
                 const std::vector<std::string>& premises,
                 const std::string& conclusion) {
    for (const Rule& r : *rules) {
      if (r.name != rule) continue;
      if (r.conclusion != conclusion) return false;
      std::set<std::string> want(r.premises.begin(), r.premises.end());
      std::set<std::string> got(premises.begin(), premises.end());
      return want == got;
    }
    return false;
  };
}

}  // namespace coind
