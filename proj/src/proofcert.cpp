#include "coind/proofcert.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace coind {

CertNode CertNode::inner(std::string judgement, std::string rule,
                         std::vector<CertNode> children) {
  CertNode n;
  n.kind = Kind::Inner;
  n.judgement = std::move(judgement);
  n.rule = std::move(rule);
  n.children = std::move(children);
  return n;
}

CertNode CertNode::axiom(std::string judgement, std::string rule) {
  CertNode n;
  n.kind = Kind::Axiom;
  n.judgement = std::move(judgement);
  n.rule = std::move(rule);
  return n;
}

CertNode CertNode::back_edge(std::string judgement, std::size_t up) {
  CertNode n;
  n.kind = Kind::BackEdge;
  n.judgement = std::move(judgement);
  n.up = up;
  return n;
}

CertNode CertNode::hypothesis(std::string judgement, std::string name) {
  CertNode n;
  n.kind = Kind::Hypothesis;
  n.judgement = std::move(judgement);
  n.hyp_name = std::move(name);
  return n;
}

namespace {

std::string path_str(const std::vector<std::size_t>& path) {
  if (path.empty()) return "root";
  std::string s;
  for (std::size_t i : path) {
    if (!s.empty()) s += '.';
    s += std::to_string(i);
  }
  return s;
}

struct CheckPolicy {
  bool allow_back_edges = false;
  const std::set<std::string>* hypotheses = nullptr;  // null: forbidden
};

Verdict walk(const CertNode& node, const InstanceCheck& check,
             const CheckPolicy& policy,
             std::vector<const CertNode*>& ancestors,
             std::vector<std::size_t>& path) {
  switch (node.kind) {
    case CertNode::Kind::BackEdge: {
      if (!policy.allow_back_edges) return Verdict::reject("back-edge present");
      if (node.up == 0) return Verdict::reject("back-edge to self (empty fragment)");
      if (node.up > ancestors.size())
        return Verdict::reject("back-edge depth out of range at " + path_str(path));
      const CertNode* target = ancestors[ancestors.size() - node.up];
      if (target->judgement != node.judgement)
        return Verdict::reject("back-edge judgement mismatch at " + path_str(path));
      if (!node.children.empty())
        return Verdict::reject("back-edge with children at " + path_str(path));
      return Verdict::accept();
    }
    case CertNode::Kind::Hypothesis: {
      if (policy.hypotheses == nullptr)
        return Verdict::reject("hypothesis leaf present");
      if (!policy.hypotheses->contains(node.judgement))
        return Verdict::reject("unknown hypothesis at " + path_str(path));
      if (!node.children.empty())
        return Verdict::reject("hypothesis with children at " + path_str(path));
      return Verdict::accept();
    }
    case CertNode::Kind::Axiom: {
      if (!node.children.empty())
        return Verdict::reject("axiom with children at " + path_str(path));
      if (!check(node.rule, {}, node.judgement))
        return Verdict::reject("invalid rule instance at " + path_str(path));
      return Verdict::accept();
    }
    case CertNode::Kind::Inner: {
      std::vector<std::string> premises;
      premises.reserve(node.children.size());
      for (const auto& c : node.children) premises.push_back(c.judgement);
      if (!check(node.rule, premises, node.judgement))
        return Verdict::reject("invalid rule instance at " + path_str(path));
      ancestors.push_back(&node);
      for (std::size_t i = 0; i < node.children.size(); ++i) {
        path.push_back(i);
        Verdict v = walk(node.children[i], check, policy, ancestors, path);
        path.pop_back();
        if (!v) {
          ancestors.pop_back();
          return v;
        }
      }
      ancestors.pop_back();
      return Verdict::accept();
    }
  }
  return Verdict::reject("corrupt certificate node");
}

Verdict run_check(const CertNode& root, const InstanceCheck& check,
                  const CheckPolicy& policy) {
  std::vector<const CertNode*> ancestors;
  std::vector<std::size_t> path;
  return walk(root, check, policy, ancestors, path);
}

}  // namespace

Verdict check_wellfounded(const CertNode& root, const InstanceCheck& check) {
  return run_check(root, check, CheckPolicy{false, nullptr});
}

Verdict check_circular(const CertNode& root, const InstanceCheck& check) {
  return run_check(root, check, CheckPolicy{true, nullptr});
}

Verdict check_fragment(const CertNode& root,
                       const std::set<std::string>& hypotheses,
                       const InstanceCheck& check) {
  if (root.kind == CertNode::Kind::Hypothesis)
    return Verdict::reject("empty fragment");
  if (root.kind == CertNode::Kind::BackEdge)
    return Verdict::reject("back-edge present");
  return run_check(root, check, CheckPolicy{false, &hypotheses});
}

namespace {

void render_lines(const CertNode& node, std::size_t depth,
                  std::vector<std::size_t>& ancestor_lines,
                  std::ostringstream& out, std::size_t& line) {
  ++line;
  out << std::string(depth * 2, ' ') << node.judgement;
  switch (node.kind) {
    case CertNode::Kind::Inner:
    case CertNode::Kind::Axiom:
      out << "  (" << node.rule << ")";
      break;
    case CertNode::Kind::BackEdge: {
      std::size_t target = 0;
      if (node.up >= 1 && node.up <= ancestor_lines.size())
        target = ancestor_lines[ancestor_lines.size() - node.up];
      out << "  (back-edge to line " << target << ")";
      break;
    }
    case CertNode::Kind::Hypothesis:
      out << "  (hyp " << node.hyp_name << ")";
      break;
  }
  out << '\n';
  ancestor_lines.push_back(line);
  for (const auto& c : node.children)
    render_lines(c, depth + 1, ancestor_lines, out, line);
  ancestor_lines.pop_back();
}

void quote(const std::string& s, std::ostringstream& out) {
  out << '"';
  for (char c : s) {
    if (c == '"' || c == '\\') out << '\\';
    out << c;
  }
  out << '"';
}

void serialize_node(const CertNode& node, std::ostringstream& out,
                    std::size_t& next_id) {
  std::size_t id = next_id++;
  std::vector<std::size_t> child_ids;
  std::ostringstream sub;
  for (const auto& c : node.children) {
    child_ids.push_back(next_id);
    serialize_node(c, sub, next_id);
  }
  switch (node.kind) {
    case CertNode::Kind::Inner:
      out << "node n" << id << ": judgement ";
      quote(node.judgement, out);
      out << " rule " << node.rule << " children";
      for (std::size_t c : child_ids) out << " n" << c;
      break;
    case CertNode::Kind::Axiom:
      out << "axiom n" << id << ": judgement ";
      quote(node.judgement, out);
      out << " rule " << node.rule;
      break;
    case CertNode::Kind::BackEdge:
      out << "back n" << id << ": judgement ";
      quote(node.judgement, out);
      out << " up " << node.up;
      break;
    case CertNode::Kind::Hypothesis:
      out << "hyp n" << id << ": judgement ";
      quote(node.judgement, out);
      out << " name " << node.hyp_name;
      break;
  }
  out << '\n' << sub.str();
}

struct Tok {
  std::string_view rest;
  std::size_t lineno;
};

std::string take_word(std::string_view& s, std::size_t lineno) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  std::size_t i = 0;
  while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
  if (i == 0)
    throw std::runtime_error("certificate parse error: missing token on line " +
                             std::to_string(lineno));
  std::string w(s.substr(0, i));
  s.remove_prefix(i);
  return w;
}

std::string take_quoted(std::string_view& s, std::size_t lineno) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  if (s.empty() || s.front() != '"')
    throw std::runtime_error("certificate parse error: expected quoted string on line " +
                             std::to_string(lineno));
  s.remove_prefix(1);
  std::string out;
  while (!s.empty() && s.front() != '"') {
    if (s.front() == '\\' && s.size() >= 2) s.remove_prefix(1);
    out.push_back(s.front());
    s.remove_prefix(1);
  }
  if (s.empty())
    throw std::runtime_error("certificate parse error: unterminated string on line " +
                             std::to_string(lineno));
  s.remove_prefix(1);
  return out;
}

void expect_word(std::string_view& s, const std::string& want, std::size_t lineno) {
  std::string got = take_word(s, lineno);
  if (got != want)
    throw std::runtime_error("certificate parse error: expected '" + want +
                             "', got '" + got + "' on line " + std::to_string(lineno));
}

struct RawNode {
  CertNode node;                    // children left empty
  std::vector<std::string> child_ids;
};

CertNode build_tree(const std::string& id,
                    std::map<std::string, RawNode>& nodes,
                    std::set<std::string>& used) {
  auto it = nodes.find(id);
  if (it == nodes.end())
    throw std::runtime_error("certificate parse error: unknown node id '" + id + "'");
  if (!used.insert(id).second)
    throw std::runtime_error("certificate parse error: node '" + id +
                             "' used more than once");
  CertNode n = it->second.node;
  for (const auto& cid : it->second.child_ids)
    n.children.push_back(build_tree(cid, nodes, used));
  return n;
}

}  // namespace

std::string render_cert(const CertNode& root) {
  std::ostringstream out;
  std::vector<std::size_t> ancestor_lines;
  std::size_t line = 0;
  render_lines(root, 0, ancestor_lines, out, line);
  return out.str();
}

std::string serialize_cert(const CertNode& root) {
  std::ostringstream out;
  std::size_t next_id = 0;
  serialize_node(root, out, next_id);
  return out.str();
}

CertNode parse_cert(std::string_view text) {
  std::map<std::string, RawNode> nodes;
  std::string root_id;
  std::size_t lineno = 0;
  while (!text.empty()) {
    ++lineno;
    std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = (nl == std::string_view::npos) ? std::string_view{}
                                          : text.substr(nl + 1);
    std::string_view s = line;
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    if (s.empty() || s.front() == '#') continue;

    std::string kind = take_word(s, lineno);
    std::string id = take_word(s, lineno);
    if (id.empty() || id.back() != ':')
      throw std::runtime_error("certificate parse error: expected '<id>:' on line " +
                               std::to_string(lineno));
    id.pop_back();
    expect_word(s, "judgement", lineno);
    std::string judgement = take_quoted(s, lineno);

    RawNode raw;
    raw.node.judgement = judgement;
    if (kind == "node") {
      raw.node.kind = CertNode::Kind::Inner;
      expect_word(s, "rule", lineno);
      raw.node.rule = take_word(s, lineno);
      expect_word(s, "children", lineno);
      while (true) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
        if (s.empty()) break;
        raw.child_ids.push_back(take_word(s, lineno));
      }
    } else if (kind == "axiom") {
      raw.node.kind = CertNode::Kind::Axiom;
      expect_word(s, "rule", lineno);
      raw.node.rule = take_word(s, lineno);
    } else if (kind == "back") {
      raw.node.kind = CertNode::Kind::BackEdge;
      expect_word(s, "up", lineno);
      raw.node.up = std::stoul(take_word(s, lineno));
    } else if (kind == "hyp") {
      raw.node.kind = CertNode::Kind::Hypothesis;
      expect_word(s, "name", lineno);
      raw.node.hyp_name = take_word(s, lineno);
    } else {
      throw std::runtime_error("certificate parse error: unknown node kind '" +
                               kind + "' on line " + std::to_string(lineno));
    }
    if (nodes.count(id))
      throw std::runtime_error("certificate parse error: duplicate node id '" +
                               id + "'");
    if (root_id.empty()) root_id = id;
    nodes.emplace(id, std::move(raw));
  }
  if (root_id.empty())
    throw std::runtime_error("certificate parse error: empty certificate");
  std::set<std::string> used;
  return build_tree(root_id, nodes, used);
}

std::size_t cert_escape(const CertNode& node) {
  if (node.kind == CertNode::Kind::BackEdge) return node.up;
  std::size_t escape = 0;
  for (const auto& c : node.children) {
    std::size_t e = cert_escape(c);
    if (e > 1) escape = std::max(escape, e - 1);
  }
  return escape;
}

std::size_t count_back_edges(const CertNode& node) {
  std::size_t n = node.kind == CertNode::Kind::BackEdge ? 1 : 0;
  for (const auto& c : node.children) n += count_back_edges(c);
  return n;
}

std::set<std::string> distinct_judgements(const CertNode& node) {
  std::set<std::string> out;
  std::vector<const CertNode*> stack{&node};
  while (!stack.empty()) {
    const CertNode* n = stack.back();
    stack.pop_back();
    out.insert(n->judgement);
    for (const auto& c : n->children) stack.push_back(&c);
  }
  return out;
}

}  // namespace coind
