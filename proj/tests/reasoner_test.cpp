#include <gtest/gtest.h>

#include <fstream>

#include "ontominer/clausifier.hpp"
#include "ontominer/reasoner.hpp"
#include "support/oracles.hpp"
#include "support/random_kb.hpp"

using namespace ontominer;

namespace {

GroundProgram fixture(const std::string& name) {
  std::ifstream in(std::string(ONTOMINER_DATA_DIR) + "/" + name);
  return clausify(parse_kb(in));
}

Fact fact(const GroundProgram& p, const std::string& pred, std::vector<std::string> args) {
  Fact f{*p.signature.find(pred), {}};
  for (const auto& a : args) f.args.push_back(*p.domain.find(a));
  return f;
}

Query query(const GroundProgram& p, std::vector<std::pair<std::string, std::vector<int>>> atoms) {
  Query q;
  for (auto& [name, vars] : atoms) {
    q.atoms.push_back({*p.signature.find(name), vars});
    for (int v : vars) q.var_count = std::max(q.var_count, v + 1);
  }
  return q;
}

}  // namespace

TEST(Chase, PatIsHumanButNeitherManNorWoman) {
  auto p = fixture("pat.kb");
  auto ms = chase(p);
  ASSERT_FALSE(ms.inconsistent);
  EXPECT_EQ(ms.models.size(), 2u);
  EXPECT_TRUE(cautious_entails(ms, fact(p, "Human", {"Pat"})));
  EXPECT_FALSE(cautious_entails(ms, fact(p, "Man", {"Pat"})));
  EXPECT_FALSE(cautious_entails(ms, fact(p, "Woman", {"Pat"})));
}

TEST(Chase, BankModels) {
  auto p = fixture("bank.kb");
  auto ms = chase(p);
  ASSERT_FALSE(ms.inconsistent);
  // Jan and Marek each choose man or woman; Anna is already a woman.
  EXPECT_EQ(ms.models.size(), 4u);
  EXPECT_TRUE(cautious_entails(ms, fact(p, "Property", {"account2"})));
  EXPECT_TRUE(cautious_entails(ms, fact(p, "Property", {"a1"})));
  EXPECT_TRUE(cautious_entails(ms, fact(p, "Account", {"a1"})));
  EXPECT_TRUE(cautious_entails(ms, fact(p, "Mortgage", {"m1"})));
  EXPECT_TRUE(cautious_entails(ms, fact(p, "relative", {"Marek", "Anna"})));
  EXPECT_TRUE(cautious_entails(ms, fact(p, "p_familyAccount", {"a1", "Anna", "Marek"})));
  EXPECT_TRUE(cautious_entails(ms, fact(p, "p_sharedAccount", {"a1", "Marek", "Anna"})));
  EXPECT_FALSE(cautious_entails(ms, fact(p, "p_man", {"Jan"})));
  EXPECT_FALSE(cautious_entails(ms, fact(p, "Account", {"cc1"})));
}

TEST(Chase, SkolemWitnessNeededForProperty) {
  auto p = clausify(parse_kb("(subclass Account (some (inv isOwnerOf) Thing))\n"
                             "(subclass (some (inv isOwnerOf) Thing) Property)\n(instance Account acc)"));
  EXPECT_TRUE(cautious_entails(chase(p), fact(p, "Property", {"acc"})));
  ChaseConfig none;
  none.skolem_depth_cap = 0;
  auto capped = chase(p, none);
  EXPECT_TRUE(capped.truncated);
  EXPECT_FALSE(cautious_entails(capped, fact(p, "Property", {"acc"})));
}

TEST(Chase, CyclicExistentialsTerminate) {
  auto p = clausify(parse_kb("(subclass A (some R A))\n(subclass (some R A) B)\n(instance A a)"));
  auto ms = chase(p);
  EXPECT_TRUE(ms.truncated);
  EXPECT_TRUE(cautious_entails(ms, fact(p, "B", {"a"})));
}

TEST(Chase, ConstraintViolationIsInconsistent) {
  auto p = clausify(parse_kb("(disjoint A B)\n(subclass A B)\n(instance A a)"));
  auto ms = chase(p);
  EXPECT_TRUE(ms.inconsistent);
  EXPECT_THROW(cautious_entails(ms, fact(p, "A", {"a"})), InconsistentKB);
}

TEST(Chase, DisjunctionPrunedByConstraint) {
  auto p = clausify(parse_kb("(subclass A (or B C))\n(disjoint B D)\n(instance A a)\n(instance D a)"));
  auto ms = chase(p);
  ASSERT_EQ(ms.models.size(), 1u);
  EXPECT_TRUE(cautious_entails(ms, fact(p, "C", {"a"})));
}

TEST(Chase, FunctionalRoleMergesFillers) {
  auto p = clausify(parse_kb("(functional R)\n(related R a b)\n(related R a c)\n(instance B b)"));
  auto ms = chase(p);
  EXPECT_TRUE(cautious_entails(ms, fact(p, "B", {"c"})));
}

TEST(Chase, BranchLimit) {
  std::string text = "(subclass A (or B C))\n";
  for (int i = 0; i < 12; ++i) text += "(instance A i" + std::to_string(i) + ")\n";
  auto p = clausify(parse_kb(text));
  ChaseConfig cfg;
  cfg.max_branches = 10;
  EXPECT_THROW(chase(p, cfg), BranchLimitExceeded);
  EXPECT_EQ(chase(p).models.size(), 4096u);
}

TEST(Chase, ModelsAreMinimalAndDistinct) {
  for (unsigned seed = 1; seed <= 40; ++seed) {
    auto p = clausify(parse_kb(testkb::random_kb(seed).text));
    auto ms = chase(p);
    for (std::size_t i = 0; i < ms.models.size(); ++i)
      for (std::size_t j = 0; j < ms.models.size(); ++j) {
        if (i == j) continue;
        const auto& a = ms.models[i].facts;
        const auto& b = ms.models[j].facts;
        EXPECT_FALSE(std::includes(b.begin(), b.end(), a.begin(), a.end())) << seed;
      }
  }
}

TEST(Chase, ExistentialFreeProgramsMatchBruteForce) {
  testkb::RandomKbOptions opts;
  opts.existentials = false;
  opts.max_individuals = 12;
  for (unsigned seed = 100; seed < 140; ++seed) {
    auto p = clausify(parse_kb(testkb::random_kb(seed, opts).text));
    auto expected = oracle::minimal_models(p);
    auto got = chase(p);
    ASSERT_EQ(got.inconsistent, expected.inconsistent) << seed;
    if (!got.inconsistent) EXPECT_EQ(oracle::as_fact_sets(got), expected.models) << seed;
  }
}

TEST(Query, CertainAnswers) {
  auto p = fixture("bank.kb");
  auto ms = chase(p);
  auto clients = answer_query(ms, query(p, {{"Client", {0}}}));
  EXPECT_EQ(clients.size(), 3u);
  auto owners = answer_query(ms, query(p, {{"Client", {0}}, {"isOwnerOf", {0, 1}}, {"Account", {1}}}));
  ASSERT_EQ(owners.size(), 2u);
  auto gold = answer_query(ms, query(p, {{"Client", {0}}, {"isOwnerOf", {0, 1}}, {"Gold", {1}}}));
  EXPECT_TRUE(gold.empty());
}

TEST(Query, Linkedness) {
  auto p = fixture("bank.kb");
  EXPECT_TRUE(is_linked(query(p, {{"Client", {0}}, {"isOwnerOf", {0, 1}}, {"Account", {1}}})));
  EXPECT_FALSE(is_linked(query(p, {{"Client", {0}}, {"Account", {1}}})));
}

TEST(Query, Compact) {
  Query q;
  q.var_count = 4;
  q.atoms = {{3, {0}}, {4, {0, 3}}, {5, {3}}};
  auto c = compact(q);
  EXPECT_EQ(c.var_count, 2);
  EXPECT_EQ(c.atoms[1].vars, (std::vector<int>{0, 1}));
}

TEST(Containment, UnsatisfiableConjunction) {
  auto p = fixture("bank.kb");
  EXPECT_FALSE(is_satisfiable_query(p, query(p, {{"Account", {0}}, {"CreditCard", {0}}})));
  EXPECT_TRUE(is_satisfiable_query(p, query(p, {{"Account", {0}}, {"Property", {0}}})));
  EXPECT_FALSE(is_satisfiable_query(p, query(p, {{"Gold", {0}}, {"Account", {0}}})));
}

TEST(Containment, TerminologyDrivesSubsumption) {
  auto p = fixture("bank.kb");
  auto owner = query(p, {{"isOwnerOf", {1, 0}}});
  auto property = query(p, {{"Property", {0}}});
  EXPECT_TRUE(subsumes(p, property, owner));
  EXPECT_FALSE(subsumes(p, owner, property));
  // The owner of an account exists but is anonymous; query variables only
  // bind to named individuals.
  auto account = query(p, {{"Account", {0}}});
  EXPECT_FALSE(subsumes(p, owner, account));
  EXPECT_TRUE(subsumes(p, query(p, {{"CreditCard", {0}}}), query(p, {{"Gold", {0}}})));
}

TEST(Containment, FactsDoNotLeakIntoTests) {
  // Anna is a woman by fact only; no pattern may become subsumed through it.
  auto p = fixture("bank.kb");
  EXPECT_FALSE(subsumes(p, query(p, {{"p_woman", {0}}}), query(p, {{"Client", {0}}})));
}

TEST(Containment, EquivalentInverseRoles) {
  auto kb = parse_kb("(equivrole hasOwner (inv isOwnerOf))\n(related isOwnerOf a b)");
  auto p = clausify(kb);
  auto a = query(p, {{"isOwnerOf", {1, 0}}});
  auto b = query(p, {{"hasOwner", {0, 1}}});
  EXPECT_TRUE(equivalent(p, a, b));
}

TEST(Containment, SubsumptionIsReflexiveAndTransitive) {
  auto p = fixture("bank.kb");
  QueryReasoner r(p);
  std::vector<Query> qs{query(p, {{"Gold", {0}}}), query(p, {{"CreditCard", {0}}}), query(p, {{"Property", {0}}}),
                        query(p, {{"Account", {0}}}), query(p, {{"isOwnerOf", {1, 0}}}),
                        query(p, {{"Client", {0}}}), query(p, {{"isOwnerOf", {0, 1}}})};
  for (const auto& a : qs) EXPECT_TRUE(r.subsumes(a, a));
  for (const auto& a : qs)
    for (const auto& b : qs)
      for (const auto& c : qs)
        if (r.subsumes(a, b) && r.subsumes(b, c)) EXPECT_TRUE(r.subsumes(a, c));
}

TEST(Taxonomy, BankHierarchy) {
  auto p = fixture("bank.kb");
  auto tax = classify(p);
  auto id = [&](const char* n) { return *p.signature.find(n); };
  EXPECT_TRUE(tax.strictly_below(id("Gold"), id("CreditCard")));
  EXPECT_TRUE(tax.strictly_below(id("Account"), id("Property")));
  EXPECT_FALSE(tax.subsumed_by(id("Account"), id("CreditCard")));
  EXPECT_TRUE(tax.unsatisfiable.empty());
  auto direct = [&](const char* a, const char* b) {
    return std::find(tax.direct.begin(), tax.direct.end(), std::make_pair(id(a), id(b))) != tax.direct.end();
  };
  EXPECT_TRUE(direct("Gold", "CreditCard"));
  EXPECT_FALSE(direct("Gold", "Property"));
}

TEST(Taxonomy, UnsatisfiableNames) {
  auto p = clausify(parse_kb("(disjoint A B)\n(subclass C A)\n(subclass C B)\n(instance A a)"));
  auto tax = classify(p);
  EXPECT_TRUE(tax.unsatisfiable.count(*p.signature.find("C")));
}

TEST(Output, ModelsText) {
  auto p = fixture("pat.kb");
  auto text = models_to_string(chase(p), p.signature);
  EXPECT_NE(text.find("Man(Pat)"), std::string::npos);
  EXPECT_NE(text.find("---"), std::string::npos);
}
