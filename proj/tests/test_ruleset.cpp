#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "coind/ruleset.hpp"
#include "test_support.hpp"

using namespace coind;
using namespace testsupport;

namespace {

RuleSystem self_loop() { return parse_rulesystem("judgements: p\nrule r1: p |- p\n"); }

RuleSystem axiom_chain() {
  return parse_rulesystem("judgements: p q\nrule ax: |- p\nrule r: p |- q\n");
}

}  // namespace

TEST_CASE("parse_rulesystem") {
  RuleSystem rs = self_loop();
  CHECK(rs.universe == std::vector<std::string>{"p"});
  REQUIRE(rs.rules.size() == 1);
  CHECK(rs.rules[0].name == "r1");
  CHECK(rs.rules[0].premises == std::vector<std::string>{"p"});
  CHECK(rs.rules[0].conclusion == "p");

  RuleSystem two = axiom_chain();
  CHECK(two.universe.size() == 2);
  CHECK(two.rules.size() == 2);
  CHECK(two.rules[0].premises.empty());

  CHECK_THROWS(parse_rulesystem("judgements: p\nrule: |-\n"));
  CHECK_THROWS_WITH(parse_rulesystem("judgements: p\nrule r: q |- p\n"),
                    doctest::Contains("unknown judgement id"));
  CHECK_THROWS_WITH(
      parse_rulesystem("judgements: p\nrule r: |- p\nrule r: |- p\n"),
      doctest::Contains("duplicate rule name"));
  CHECK_THROWS(parse_rulesystem("rule r: |- p\n"));
  // comments and blank lines are fine
  CHECK_NOTHROW(parse_rulesystem("# intro\njudgements: p\n\nrule r: |- p # ax\n"));
}

TEST_CASE("lfp and gfp on small hand-checked systems") {
  CHECK(lfp(self_loop()).empty());
  CHECK(gfp(self_loop()) == JudgementSet{"p"});
  CHECK(lfp(axiom_chain()) == JudgementSet{"p", "q"});
  CHECK(gfp(axiom_chain()) == JudgementSet{"p", "q"});
}

TEST_CASE("random systems agree with subset enumeration") {
  std::mt19937 rng(2024);
  for (int i = 0; i < 60; ++i) {
    RuleSystem rs = random_system(rng, 10, 14);
    MaskSystem m = to_masks(rs);
    CHECK(set_to_mask(rs, lfp(rs)) == brute_lfp(m));
    CHECK(set_to_mask(rs, gfp(rs)) == brute_gfp(m));
  }
}

TEST_CASE("property: lfp is contained in gfp and both are fixed points") {
  std::mt19937 rng(11);
  for (int i = 0; i < 100; ++i) {
    RuleSystem rs = random_system(rng);
    MaskSystem m = to_masks(rs);
    std::uint32_t lo = set_to_mask(rs, lfp(rs));
    std::uint32_t hi = set_to_mask(rs, gfp(rs));
    CHECK((lo & hi) == lo);  // lfp subset of gfp
    // both directions of the validity guideline hold exactly
    CHECK(if_closed(m, lo));
    CHECK(onlyif_closed(m, lo));
    CHECK(if_closed(m, hi));
    CHECK(onlyif_closed(m, hi));
  }
}

TEST_CASE("property: rule order never changes the fixpoints") {
  std::mt19937 rng(55);
  for (int i = 0; i < 50; ++i) {
    RuleSystem rs = random_system(rng);
    RuleSystem shuffled = rs;
    std::shuffle(shuffled.rules.begin(), shuffled.rules.end(), rng);
    CHECK(lfp(rs) == lfp(shuffled));
    CHECK(gfp(rs) == gfp(shuffled));
  }
}

TEST_CASE("extract_wf_proof on small hand-checked systems") {
  RuleSystem ax = parse_rulesystem("judgements: p\nrule ax: |- p\n");
  auto proof = extract_wf_proof(ax, "p");
  REQUIRE(proof.has_value());
  CHECK(proof->kind == CertNode::Kind::Axiom);
  CHECK(proof->rule == "ax");
  CHECK(check_wellfounded(*proof, table_instance_check(ax)).ok);

  CHECK_FALSE(extract_wf_proof(self_loop(), "p").has_value());
}

TEST_CASE("extract_circular_proof on small hand-checked systems") {
  auto proof = extract_circular_proof(self_loop(), "p");
  REQUIRE(proof.has_value());
  CHECK(proof->rule == "r1");
  REQUIRE(proof->children.size() == 1);
  CHECK(proof->children[0].kind == CertNode::Kind::BackEdge);
  CHECK(proof->children[0].up == 1);
  CHECK(check_circular(*proof, table_instance_check(self_loop())).ok);

  RuleSystem empty = parse_rulesystem("judgements: p\n");
  CHECK_FALSE(extract_circular_proof(empty, "p").has_value());
}

TEST_CASE("random systems: extraction matches membership, checkers accept") {
  std::mt19937 rng(314);
  for (int i = 0; i < 60; ++i) {
    RuleSystem rs = random_system(rng);
    JudgementSet lo = lfp(rs);
    JudgementSet hi = gfp(rs);
    InstanceCheck check = table_instance_check(rs);
    for (const std::string& j : rs.universe) {
      auto wf = extract_wf_proof(rs, j);
      CHECK(wf.has_value() == lo.contains(j));
      CHECK(wf.has_value() == wf_provable(rs, j, rs.universe.size() + 1));
      if (wf) {
        CHECK(check_wellfounded(*wf, check).ok);
        CHECK(check_circular(*wf, check).ok);  // wf acceptance implies circular
      }
      auto circ = extract_circular_proof(rs, j);
      CHECK(circ.has_value() == hi.contains(j));
      if (circ) CHECK(check_circular(*circ, check).ok);
    }
  }
}
