#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>

#include "ontominer/clausifier.hpp"
#include "ontominer/reasoner.hpp"
#include "support/oracles.hpp"
#include "support/random_kb.hpp"

using namespace ontominer;

namespace {

std::vector<std::string> normalized(const std::string& text) {
  std::vector<std::string> out;
  for (const auto& n : normalize(parse_kb(text).tbox)) out.push_back(to_string(n));
  return out;
}

std::vector<std::string> rule_lines(const GroundProgram& p) {
  std::vector<std::string> out;
  for (const auto& r : p.rules) out.push_back(to_string(r, p.signature, p.domain));
  return out;
}

bool has(const std::vector<std::string>& v, const std::string& s) { return std::find(v.begin(), v.end(), s) != v.end(); }

GroundProgram bank() {
  std::ifstream in(std::string(ONTOMINER_DATA_DIR) + "/bank.kb");
  return clausify(parse_kb(in));
}

}  // namespace

TEST(Normalize, EquivalenceSplitsBothWays) {
  auto n = normalized("(equivalent Client (some isOwnerOf Thing))");
  EXPECT_EQ(n, (std::vector<std::string>{"Client ⊑ ∃isOwnerOf.Thing", "∃isOwnerOf.Thing ⊑ Client"}));
}

TEST(Normalize, LeftDisjunctionAndRightConjunctionSplit) {
  auto n = normalized("(subclass (or A B) (and C D))");
  EXPECT_EQ(n, (std::vector<std::string>{"A ⊑ C", "A ⊑ D", "B ⊑ C", "B ⊑ D"}));
}

TEST(Normalize, ComplexFillersGetAuxiliaryNames) {
  auto n = normalized("(subclass (and A (some R (and B C))) (or D (some (inv S) (and E F))))");
  EXPECT_EQ(n, (std::vector<std::string>{"A ⊓ ∃R.aux_1 ⊑ D ⊔ ∃S^-.aux_2", "B ⊓ C ⊑ aux_1", "aux_2 ⊑ E",
                                         "aux_2 ⊑ F"}));
}

TEST(Normalize, ValueRestrictionsDomainAndRange) {
  EXPECT_EQ(normalized("(subclass A (all R (or B C)))"), (std::vector<std::string>{"A ⊑ ∀R.(B ⊔ C)"}));
  EXPECT_EQ(normalized("(domain R A)"), (std::vector<std::string>{"∃R.Thing ⊑ A"}));
  EXPECT_EQ(normalized("(range R B)"), (std::vector<std::string>{"Thing ⊑ ∀R.(B)"}));
}

TEST(Normalize, NegationMovesAcross) {
  auto n = normalized("(subclass (and A (not B)) C)");
  EXPECT_EQ(n, (std::vector<std::string>{"A ⊑ C ⊔ B"}));
  EXPECT_EQ(normalized("(subclass A (not B))"), (std::vector<std::string>{"A ⊓ B ⊑ Nothing"}));
}

TEST(Normalize, TautologiesVanish) {
  EXPECT_TRUE(normalized("(subclass A A)").empty());
  EXPECT_TRUE(normalized("(subclass A Thing)").empty());
}

TEST(Normalize, UniversalOnTheLeftIsUnsupported) {
  EXPECT_THROW(normalized("(subclass (all R A) B)"), UnsupportedAxiom);
}

TEST(Clausify, BankRules) {
  auto p = bank();
  auto lines = rule_lines(p);
  EXPECT_TRUE(has(lines, "exists[isOwnerOf,Thing](x) :- Client(x)."));
  EXPECT_TRUE(has(lines, "Client(x) :- isOwnerOf(x,y1)."));
  EXPECT_TRUE(has(lines, "Account(y) | CreditCard(y) :- isOwnerOf(x,y)."));
  EXPECT_TRUE(has(lines, "Property(x) :- isOwnerOf(y1,x)."));
  EXPECT_TRUE(has(lines, "exists[inv(isOwnerOf),Thing](x) :- Account(x)."));
  EXPECT_TRUE(has(lines, "Account(y) :- hasMortgage(y,x)."));
  EXPECT_TRUE(has(lines, ":- Account(x), CreditCard(x)."));
  EXPECT_TRUE(has(lines, "=(x1,x2) :- hasMortgage(x1,y), hasMortgage(x2,y)."));
  EXPECT_TRUE(has(lines, "p_man(x) | p_woman(x) :- Client(x), O(x)."));
  EXPECT_TRUE(p.has_equality);
}

TEST(Clausify, EqualityAxiomsOnlyWhenNeeded) {
  auto without = clausify(parse_kb("(subclass A B)\n(related R a b)"));
  EXPECT_FALSE(without.has_equality);
  for (const auto& r : without.rules)
    for (const auto& a : r.body) EXPECT_NE(a.pred, Signature::kEquality);

  auto with = clausify(parse_kb("(functional R)\n(related R a b)"));
  EXPECT_TRUE(with.has_equality);
  auto lines = rule_lines(with);
  EXPECT_TRUE(has(lines, "=(x,x) :- O(x)."));
  EXPECT_TRUE(has(lines, "=(y,x) :- =(x,y)."));
  EXPECT_TRUE(has(lines, "R(y,x2) :- R(x1,x2), =(x1,y)."));
  EXPECT_TRUE(has(lines, "R(x1,y) :- R(x1,x2), =(x2,y)."));
}

TEST(Clausify, RulesBecomeDlSafe) {
  auto p = clausify(parse_kb("(nondl p 1)\n(role R)\n(rule (head (A ?y)) (body (p ?x) (R ?x ?y)))\n(fact p a)"));
  EXPECT_TRUE(has(rule_lines(p), "A(y) :- p(x), R(x,y), O(y)."));
}

TEST(Clausify, DomainListsIndividualsFirst) {
  auto p = clausify(parse_kb("(nondl p 1)\n(rule (head (p c)) (body (p ?x)))\n(instance A a)\n(related R a b)"));
  ASSERT_EQ(p.domain.size(), 3u);
  EXPECT_EQ(p.domain.name(0), "a");
  EXPECT_EQ(p.domain.name(1), "b");
  EXPECT_EQ(p.domain.name(2), "c");
  EXPECT_TRUE(p.domain.is_individual(1));
  EXPECT_FALSE(p.domain.is_individual(2));
}

TEST(Clausify, RoleAxioms) {
  auto lines = rule_lines(clausify(parse_kb("(subrole R (inv S))\n(transitive T)\n(symmetric U)")));
  EXPECT_TRUE(has(lines, "S(y,x) :- R(x,y)."));
  EXPECT_TRUE(has(lines, "T(x,z) :- T(x,y), T(y,z)."));
  EXPECT_TRUE(has(lines, "U(y,x) :- U(x,y)."));
}

// Existential-free random KBs: the chase over the clausal form must find
// exactly the brute-force minimal models.
TEST(Clausify, MinimalModelsAgreeWithOracle) {
  testkb::RandomKbOptions opts;
  opts.existentials = false;
  opts.max_individuals = 6;
  int checked = 0;
  for (unsigned seed = 1; seed <= 60; ++seed) {
    auto p = clausify(parse_kb(testkb::random_kb(seed, opts).text));
    auto expected = oracle::minimal_models(p);
    auto got = chase(p);
    EXPECT_EQ(got.inconsistent, expected.inconsistent) << seed;
    if (!got.inconsistent) EXPECT_EQ(oracle::as_fact_sets(got), expected.models) << seed;
    ++checked;
  }
  EXPECT_EQ(checked, 60);
}
