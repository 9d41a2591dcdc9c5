#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace braidrep;

namespace {

ModelParams uniform_table(std::size_t m, std::size_t l, std::size_t k, std::vector<std::size_t> row)
{
  return ModelParams{m, l, k, std::vector<std::vector<std::size_t>>(k - 1, row)};
}

// Brute force over all of S_n.
bool conjugate_by_brute_force(const BraidRep& a, const BraidRep& b)
{
  const auto ga = oracle::generator_images(a);
  const auto gb = oracle::generator_images(b);
  for (const auto& theta : oracle::symmetric_group(a.degree())) {
    const auto inv = oracle::invert(theta);
    bool ok = true;
    for (std::size_t i = 0; i < ga.size() && ok; ++i)
      ok = oracle::after(inv, oracle::after(ga[i], theta)) == gb[i];
    if (ok)
      return true;
  }
  return false;
}

} // namespace

TEST(AreConjugate, Examples)
{
  std::mt19937_64 rng(2);
  const auto rep = psi(3, 5);
  const auto theta0 = random_permutation(15, rng);
  const auto target = conjugate(rep, theta0);
  const auto w = are_conjugate(rep, target);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(conjugate(rep, *w), target);

  const auto lin = are_conjugate(lin_model(1, 7), psi(2, 7));
  ASSERT_TRUE(lin.has_value());
  EXPECT_EQ(conjugate(lin_model(1, 7), *lin), psi(2, 7));

  EXPECT_FALSE(are_conjugate(lin_model(2, 7), lin_model(3, 7)).has_value());
  EXPECT_THROW(are_conjugate(psi(2, 3), psi(2, 4)), PreconditionError);
  EXPECT_THROW(are_conjugate(psi(2, 3), psi(3, 3)), PreconditionError);
}

TEST(AreConjugate, CompleteAgainstBruteForce)
{
  std::mt19937_64 rng(77);
  std::size_t positives = 0, negatives = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 3 + trial % 4;
    const std::size_t k = 3 + trial % 2;
    std::vector<Permutation> ga, gb;
    for (std::size_t i = 1; i < k; ++i)
      ga.push_back(random_permutation(n, rng));
    // half the time a disguised copy, with one generator perturbed now and then
    if (trial % 2 == 0) {
      const auto theta = random_permutation(n, rng);
      for (const auto& g : ga)
        gb.push_back(conjugate(g, theta));
      if (trial % 6 == 0)
        gb.back() = random_permutation(n, rng);
    } else {
      for (std::size_t i = 1; i < k; ++i)
        gb.push_back(random_permutation(n, rng));
    }
    const BraidRep a(k, ga), b(k, gb);
    const auto w = are_conjugate(a, b);
    ASSERT_EQ(w.has_value(), conjugate_by_brute_force(a, b));
    (w ? positives : negatives)++;
  }
  EXPECT_GT(positives, 50u);
  EXPECT_GT(negatives, 50u);
}

TEST(AreConjugate, EquivalenceRelation)
{
  std::mt19937_64 rng(5);
  for (const auto& rep : {psi(2, 6), phi(uniform_table(3, 1, 5, {1, 1})), lin_model(1, 6), two_subset_action(5)}) {
    const std::size_t n = rep.degree();
    EXPECT_TRUE(are_conjugate(rep, rep).has_value());
    const auto b = conjugate(rep, random_permutation(n, rng));
    const auto c = conjugate(b, random_permutation(n, rng));
    const auto ab = are_conjugate(rep, b);
    const auto ba = are_conjugate(b, rep);
    const auto bc = are_conjugate(b, c);
    ASSERT_TRUE(ab && ba && bc);
    EXPECT_EQ(conjugate(b, inverse(*ab)), rep);
    EXPECT_EQ(conjugate(rep, *ab * *bc), c);
    const auto ac = are_conjugate(rep, c);
    ASSERT_TRUE(ac.has_value());
  }
}

TEST(NormalizeModel, Examples)
{
  const auto zero = normalize_model(zero_params(3, 1, 7));
  EXPECT_EQ(zero.p, 0u);
  EXPECT_EQ(conjugate(phi(zero_params(3, 1, 7)), zero.conjugator), phi(zero.canonical()));

  const auto ones = uniform_table(3, 1, 7, {1, 1});
  const auto nf = normalize_model(ones);
  EXPECT_EQ(nf.p, 2u);
  EXPECT_EQ(nf.canonical(), uniform_table(3, 1, 7, {2, 0}));
  EXPECT_EQ(conjugate(phi(ones), nf.conjugator), phi(nf.canonical()));
  EXPECT_TRUE(are_conjugate(phi(ones), phi(canonical_params(3, 1, 7, 2))).has_value());

  const auto phi3 = normalize_model(uniform_table(2, 1, 7, {0, 1}));
  EXPECT_EQ(phi3.p, 1u);
  EXPECT_TRUE(are_conjugate(lin_model(3, 7), phi(canonical_params(2, 1, 7, 1))).has_value());
  EXPECT_FALSE(are_conjugate(lin_model(3, 7), phi(canonical_params(2, 1, 7, 0))).has_value());

  const auto psi_case = normalize_model(zero_params(3, 3, 5));
  EXPECT_EQ(psi_case.p, 0u);
  EXPECT_TRUE(psi_case.conjugator.is_identity());

  ModelParams bad{3, 1, 4, {{1, 0}, {0, 0}, {0, 0}}};
  EXPECT_THROW(normalize_model(bad), ConditionTError);
}

// Every valid table with m <= 4, l in {1, 2}, k <= 6 normalizes exactly,
// and for l = 1 the invariant is the first row sum.
TEST(NormalizeModel, SoundOnEveryValidTable)
{
  std::size_t tables = 0;
  for (std::size_t m = 2; m <= 4; ++m)
    for (std::size_t l : {std::size_t{1}, std::size_t{2}}) {
      if (m % l != 0 || l == m)
        continue;
      for (std::size_t k = 2; k <= 6; ++k) {
        const auto en = enumerate_t_tables(m, l, k, EnumerationMode::by_condition);
        for (const auto& p : en.tables) {
          const auto nf = normalize_model(p);
          ASSERT_EQ(conjugate(phi(p), nf.conjugator), phi(nf.canonical()));
          if (l == 1) {
            ASSERT_EQ(nf.p, (p.t[0][0] + p.t[0][1]) % m);
          }
          ++tables;
        }
      }
    }
  EXPECT_GT(tables, 10000u);
}

TEST(NormalizeModel, RowSumInvariantMatchesBruteConjugacy)
{
  std::mt19937_64 rng(14);
  for (std::size_t k = 3; k <= 5; ++k)
    for (int trial = 0; trial < 10; ++trial) {
      const auto p = random_valid_table(3, 1, k, rng);
      const std::size_t expected = (p.t[0][0] + p.t[0][1]) % 3;
      for (std::size_t q = 0; q < 3; ++q)
        EXPECT_EQ(are_conjugate(phi(p), phi(canonical_params(3, 1, k, q))).has_value(), q == expected);
    }
}

TEST(ClassCount, Examples)
{
  EXPECT_EQ(class_count(3, 1).count, std::optional<std::size_t>(4));
  const auto two = class_count(2, 1);
  EXPECT_FALSE(two.count.has_value());
  EXPECT_EQ(two.failing_p, std::optional<std::size_t>(0));
  EXPECT_EQ(class_count(6, 2).count, std::optional<std::size_t>(4));
  EXPECT_THROW(class_count(6, 4), PreconditionError);
  EXPECT_THROW(class_count(3, 3), PreconditionError);
}

TEST(ClassCount, SeparationAtSmallScale)
{
  for (std::size_t k = 4; k <= 7; ++k) {
    std::vector<BraidRep> reps{psi(3, k)};
    for (std::size_t p = 0; p < 3; ++p)
      reps.push_back(phi(canonical_params(3, 1, k, p)));
    const auto cls = conjugacy_classes(reps);
    EXPECT_EQ(cls, (std::vector<std::size_t>{0, 1, 2, 3})) << "k=" << k;
  }
}

// Experiment outside the counting hypothesis: every valid (2,1,k) table
// falls into the class of its row-sum canonical model.
TEST(ClassCount, ModelClassesWhenHypothesisFails)
{
  for (std::size_t k = 3; k <= 5; ++k) {
    const auto en = enumerate_t_tables(2, 1, k, EnumerationMode::by_condition);
    std::vector<BraidRep> reps{psi(2, k), phi(canonical_params(2, 1, k, 0)), phi(canonical_params(2, 1, k, 1))};
    for (const auto& p : en.tables)
      reps.push_back(phi(p));
    const auto cls = conjugacy_classes(reps);
    for (std::size_t i = 0; i < en.tables.size(); ++i) {
      const auto& p = en.tables[i];
      EXPECT_EQ(cls[3 + i], cls[1 + (p.t[0][0] + p.t[0][1]) % 2]);
    }
    EXPECT_NE(cls[0], cls[1]);
    EXPECT_NE(cls[1], cls[2]);
  }
}

TEST(NormalFormJson, RoundTrip)
{
  const auto nf = normalize_model(uniform_table(3, 1, 4, {1, 1}));
  nlohmann::json j = nf;
  EXPECT_EQ(j["p"], 2);
  EXPECT_EQ(j.get<NormalForm>(), nf);
  j["extra"] = 1;
  EXPECT_THROW(j.get<NormalForm>(), ParseError);
}
