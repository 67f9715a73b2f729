// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Budgets and tolerances are pinned in code.
#include <chrono>
#include <cstdint>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "coind/equiv.hpp"
#include "coind/lts.hpp"
#include "coind/proofcert.hpp"
#include "coind/ruleset.hpp"
#include "coind/syntax.hpp"
#include "test_support.hpp"

using namespace coind;
using namespace testsupport;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;
std::vector<CertNode> cert_corpus;  // fed by criteria 1-5, used by 8

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void report(int criterion, const std::string& what, bool ok, double ms,
            const std::string& detail = "") {
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << criterion << ": "
            << what << " (" << static_cast<long>(ms) << " ms)";
  if (!ok && !detail.empty()) std::cout << " -- " << detail;
  std::cout << "\n";
  if (!ok) ++failures;
}

// ---- criterion 1: worked-example reproduction ----
void criterion1() {
  auto start = Clock::now();
  bool ok = true;
  std::string detail;

  ExprPtr l0 = parse_expr("mu X. a.a.X");
  ExprPtr r0 = parse_expr("mu Y. a.a.a.Y");
  ExprPtr l2 = head_unfold(l0);
  ExprPtr l1 = transitions(l2)[0].second;
  ExprPtr r3 = head_unfold(r0);
  ExprPtr r2 = transitions(r3)[0].second;
  ExprPtr r1 = transitions(r2)[0].second;
  std::vector<std::pair<ExprPtr, ExprPtr>> figure{
      {l0, r0}, {l2, r0}, {l2, r3}, {l1, r2}, {l0, r1}, {l2, r1},
      {l1, r0}, {l1, r3}, {l0, r2}, {l2, r2}, {l1, r1}};
  std::set<std::string> expected;
  for (auto& [l, r] : figure) expected.insert(render_judgement({l, r}));

  for (MatchMode mode : {MatchMode::Relaxed, MatchMode::Literal}) {
    auto cert = prove_equiv(l0, r0, mode);
    if (!cert) {
      ok = false;
      detail = "prove failed";
      break;
    }
    cert_corpus.push_back(*cert);
    if (distinct_judgements(*cert) != expected) {
      ok = false;
      detail = "judgement set differs from the figure";
    }
    std::set<std::string> rules;
    std::vector<const CertNode*> stack{&*cert};
    while (!stack.empty()) {
      const CertNode* n = stack.back();
      stack.pop_back();
      if (n->kind == CertNode::Kind::Inner || n->kind == CertNode::Kind::Axiom)
        rules.insert(n->rule);
      for (auto& c : n->children) stack.push_back(&c);
    }
    for (const auto& r : rules)
      if (r != "act" && r != "rec-l" && r != "rec-r") {
        ok = false;
        detail = "unexpected rule " + r;
      }
    if (count_back_edges(*cert) != 1 || !backedges_target_root(*cert)) {
      ok = false;
      detail = "back-edge shape wrong";
    }
    if (!check_circular(*cert, schema_instance_check(mode)).ok) {
      ok = false;
      detail = "checker rejected certificate";
    }
  }

  double ms = ms_since(start);
  if (ms >= 1000.0) {
    ok = false;
    detail = "runtime budget (1 s) exceeded";
  }
  report(1, "worked-example circular proof, 11 judgements, both act modes", ok,
         ms, detail);
}

// ---- criteria 2, 3, 6 share a corpus of random rule systems ----
void criteria_2_3_6() {
  std::mt19937 rng(60601);
  auto start2 = Clock::now();
  bool ok2 = true, ok3 = true, ok6 = true;
  std::string d2, d3, d6;
  double ms3 = 0;

  std::vector<RuleSystem> corpus;
  for (int i = 0; i < 200; ++i) corpus.push_back(random_system(rng, 8, 12));

  for (const RuleSystem& rs : corpus) {
    JudgementSet lo = lfp(rs);
    for (const std::string& j : rs.universe) {
      auto wf = extract_wf_proof(rs, j);
      bool member = lo.contains(j);
      bool brute = wf_provable(rs, j, rs.universe.size() + 1);
      if (wf.has_value() != member || member != brute) {
        ok2 = false;
        d2 = "discrepancy on " + j;
      }
      if (wf) {
        if (!check_wellfounded(*wf, table_instance_check(rs)).ok) {
          ok2 = false;
          d2 = "wf checker rejected extracted proof";
        }
        cert_corpus.push_back(*wf);
      }
    }
  }
  double ms2 = ms_since(start2);
  if (ms2 >= 30000.0) {
    ok2 = false;
    d2 = "runtime budget (30 s) exceeded";
  }
  report(2, "inductive validity = well-founded provability on 200 systems",
         ok2, ms2, d2);

  auto start3 = Clock::now();
  for (const RuleSystem& rs : corpus) {
    JudgementSet hi = gfp(rs);
    InstanceCheck check = table_instance_check(rs);
    for (const std::string& j : rs.universe) {
      auto circ = extract_circular_proof(rs, j);
      if (circ.has_value() != hi.contains(j)) {
        ok3 = false;
        d3 = "discrepancy on " + j;
      }
      if (circ) {
        if (!check_circular(*circ, check).ok) {
          ok3 = false;
          d3 = "circular checker rejected extracted proof";
        }
        cert_corpus.push_back(*circ);
      }
    }
  }
  ms3 = ms_since(start3);
  report(3, "coinductive validity = circular provability on the same corpus",
         ok3, ms3, d3);

  auto start6 = Clock::now();
  for (const RuleSystem& rs : corpus) {
    MaskSystem m = to_masks(rs);
    std::uint32_t lo = set_to_mask(rs, lfp(rs));
    std::uint32_t hi = set_to_mask(rs, gfp(rs));
    if (!if_closed(m, lo) || !onlyif_closed(m, lo) || !if_closed(m, hi) ||
        !onlyif_closed(m, hi)) {
      ok6 = false;
      d6 = "fixed-point equation violated";
    }
  }
  report(6, "lfp and gfp satisfy both directions of the validity guideline",
         ok6, ms_since(start6), d6);
}

// ---- criterion 4: lattice structure by full subset enumeration ----
void criterion4() {
  std::mt19937 rng(40404);
  auto start = Clock::now();
  bool ok = true;
  std::string detail;

  for (int i = 0; i < 50 && ok; ++i) {
    RuleSystem rs = random_system(rng, 10, 14);
    MaskSystem m = to_masks(rs);
    std::uint32_t full = (1u << m.n) - 1;

    std::vector<bool> is_if(full + 1), is_onlyif(full + 1);
    std::vector<std::uint32_t> ifs, onlyifs;
    for (std::uint32_t v = 0; v <= full; ++v) {
      if (if_closed(m, v)) {
        is_if[v] = true;
        ifs.push_back(v);
      }
      if (onlyif_closed(m, v)) {
        is_onlyif[v] = true;
        onlyifs.push_back(v);
      }
    }

    std::uint32_t min_if = full, max_onlyif = 0;
    for (std::uint32_t a : ifs) min_if &= a;
    for (std::uint32_t a : onlyifs) max_onlyif |= a;
    for (std::uint32_t a : ifs)
      for (std::uint32_t b : ifs)
        if (!is_if[a & b]) {
          ok = false;
          detail = "if-solutions not intersection-closed";
        }
    for (std::uint32_t a : onlyifs)
      for (std::uint32_t b : onlyifs)
        if (!is_onlyif[a | b]) {
          ok = false;
          detail = "only-if-solutions not union-closed";
        }
    if (set_to_mask(rs, lfp(rs)) != min_if) {
      ok = false;
      detail = "lfp is not the minimum if-solution";
    }
    if (set_to_mask(rs, gfp(rs)) != max_onlyif) {
      ok = false;
      detail = "gfp is not the maximum only-if-solution";
    }
  }

  double ms = ms_since(start);
  if (ms >= 60000.0) {
    ok = false;
    detail = "runtime budget (60 s) exceeded";
  }
  report(4, "intersection/union lattice structure on 50 enumerated systems",
         ok, ms, detail);
}

// ---- criterion 5: oracle agreement on 1000 random pairs ----
void criterion5() {
  std::mt19937 rng(50505);
  auto start = Clock::now();
  bool ok = true;
  std::string detail;
  int agreements = 0, proved = 0;

  auto check_pair = [&](const ExprPtr& p, const ExprPtr& q) {
    auto cert = prove_equiv(p, q, MatchMode::Relaxed);
    bool oracle = bisimilar(p, q);
    if (cert.has_value() != oracle) {
      ok = false;
      detail = "disagreement on " + render(p) + " vs " + render(q);
      return;
    }
    ++agreements;
    if (cert) {
      ++proved;
      if (cert_corpus.size() < 400) cert_corpus.push_back(*cert);
    }
  };

  for (int i = 0; i < 600 && ok; ++i)
    check_pair(random_process(rng, 4, 2, 3), random_process(rng, 4, 2, 3));
  for (int i = 0; i < 200 && ok; ++i) {
    ExprPtr p = random_process(rng, 4, 2, 3);
    check_pair(p, p);
  }
  for (int i = 0; i < 200 && ok; ++i) {
    ExprPtr p = random_process(rng, 4, 2, 3);
    check_pair(p, head_unfold(p));
  }

  double ms = ms_since(start);
  if (ms >= 60000.0) {
    ok = false;
    detail = "runtime budget (60 s) exceeded";
  }
  std::ostringstream what;
  what << "relaxed prover agrees with the bisimulation oracle on "
       << agreements << " pairs (" << proved << " provable)";
  report(5, what.str(), ok, ms, detail);
}

// ---- criterion 7: act-interpretation discrepancy is surfaced ----
void criterion7() {
  auto start = Clock::now();
  ExprPtr l = parse_expr("a.0 + a.0");
  ExprPtr r = parse_expr("a.0");
  bool literal = prove_equiv(l, r, MatchMode::Literal).has_value();
  bool relaxed = prove_equiv(l, r, MatchMode::Relaxed).has_value();
  bool oracle = bisimilar(l, r);
  bool ok = !literal && relaxed && oracle;
  report(7, "a.0 + a.0 vs a.0: literal fails, relaxed and oracle accept", ok,
         ms_since(start));
}

// ---- criterion 8: serialization round-trip over the collected corpus ----
void criterion8() {
  auto start = Clock::now();
  bool ok = !cert_corpus.empty();
  std::string detail = ok ? "" : "empty corpus";
  InstanceCheck relaxed = schema_instance_check(MatchMode::Relaxed);

  for (const CertNode& c : cert_corpus) {
    CertNode back = parse_cert(serialize_cert(c));
    if (!(back == c)) {
      ok = false;
      detail = "round-trip altered a certificate";
      break;
    }
    // verdict preservation under the schema checker where applicable
    if (c.judgement.find(" == ") != std::string::npos) {
      if (check_circular(c, relaxed).ok != check_circular(back, relaxed).ok) {
        ok = false;
        detail = "round-trip changed a verdict";
        break;
      }
    }
  }
  std::ostringstream what;
  what << "serialize/deserialize identity on " << cert_corpus.size()
       << " certificates";
  report(8, what.str(), ok, ms_since(start), detail);
}

}  // namespace

int main() {
  criterion1();
  criteria_2_3_6();
  criterion4();
  criterion5();
  criterion7();
  criterion8();
  if (failures == 0) {
    std::cout << "all acceptance criteria passed\n";
    return 0;
  }
  std::cout << failures << " criterion(s) failed\n";
  return 1;
}
