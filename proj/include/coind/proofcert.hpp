#ifndef COIND_PROOFCERT_HPP
#define COIND_PROOFCERT_HPP

#include <cstddef>
#include <functional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace coind {

// A proof certificate: finite tree of rule applications. Back-edges point
// a number of levels up to a proper ancestor carrying the same judgement;
// unrolling such a tree gives the infinite proof it denotes.
struct CertNode {
  enum class Kind { Inner, Axiom, BackEdge, Hypothesis };

  Kind kind = Kind::Axiom;
  std::string judgement;
  std::string rule;              // Inner / Axiom
  std::size_t up = 0;            // BackEdge: levels up to the target
  std::string hyp_name;          // Hypothesis
  std::vector<CertNode> children;

  bool operator==(const CertNode&) const = default;

  static CertNode inner(std::string judgement, std::string rule,
                        std::vector<CertNode> children);
  static CertNode axiom(std::string judgement, std::string rule);
  static CertNode back_edge(std::string judgement, std::size_t up);
  static CertNode hypothesis(std::string judgement, std::string name);
};

// Decides whether (rule, premises, conclusion) is an instance of a rule.
using InstanceCheck = std::function<bool(
    const std::string& rule, const std::vector<std::string>& premises,
    const std::string& conclusion)>;

struct Verdict {
  bool ok = false;
  std::string reason;  // empty when ok

  explicit operator bool() const { return ok; }
  static Verdict accept() { return {true, ""}; }
  static Verdict reject(std::string why) { return {false, std::move(why)}; }
};

// Accepts iff the tree has no back-edges and no hypotheses and every node
// is a valid rule instance.
Verdict check_wellfounded(const CertNode& root, const InstanceCheck& check);

// Accepts iff every rule node is a valid instance and every back-edge hits
// a proper ancestor with an identical judgement; no hypotheses allowed.
Verdict check_circular(const CertNode& root, const InstanceCheck& check);

// Accepts a nonempty proof fragment whose leaves are axioms or hypotheses
// drawn from the given set.
Verdict check_fragment(const CertNode& root,
                       const std::set<std::string>& hypotheses,
                       const InstanceCheck& check);

// One judgement per line, indented by depth, rule names annotated;
// back-edges name the 1-based line of their target.
std::string render_cert(const CertNode& root);

std::string serialize_cert(const CertNode& root);
CertNode parse_cert(std::string_view text);

// Largest number of levels a back-edge inside this subtree reaches above
// the subtree's root; 0 means the subtree is self-contained.
std::size_t cert_escape(const CertNode& node);

std::size_t count_back_edges(const CertNode& node);
std::set<std::string> distinct_judgements(const CertNode& node);

}  // namespace coind

#endif
