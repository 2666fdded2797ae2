#include "isotori/enumeration.hpp"

#include <gtest/gtest.h>

#include <algorithm>

#include "isotori/corpus.hpp"
#include "oracles.hpp"

namespace isotori {
namespace {

std::map<Rat, std::uint64_t> nonzero_counts(const RepSpectrum& s) {
  std::map<Rat, std::uint64_t> out;
  for (const auto& [t, c] : s.counts)
    if (c != 0) out[t] = c;
  return out;
}

TEST(Enumeration, MatchesBoxScanOnRandomForms) {
  oracle::Rng rng(31);
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index n = oracle::uniform(rng, 2, 4);
    const RatMatrix q = oracle::random_pd_form(rng, n, 5);
    const Rat bound(oracle::uniform(rng, 1, 30));
    const auto expected = oracle::box_counts(q, bound);
    if (expected.empty()) continue;
    ++checked;
    EXPECT_EQ(nonzero_counts(rep_spectrum(GramForm(q), bound)), expected) << "trial " << trial;
  }
  EXPECT_GT(checked, 80);
}

TEST(Enumeration, OrderedOneRepresentativePerSignPair) {
  oracle::Rng rng(32);
  const GramForm q(oracle::random_pd_form(rng, 3, 4));
  const auto vs = enumerate_up_to(q, Rat(25));
  for (std::size_t i = 0; i < vs.size(); ++i) {
    EXPECT_EQ(vs[i].norm, q(vs[i].coords));
    EXPECT_EQ(canonical_sign(vs[i].coords), vs[i].coords);
    EXPECT_LE(vs[i].norm, 25);
    if (i > 0) EXPECT_LE(vs[i - 1].norm, vs[i].norm);
  }
  EXPECT_TRUE(enumerate_up_to(q, Rat(0)).empty());
}

TEST(Enumeration, JobsDoNotChangeTheResult) {
  oracle::Rng rng(33);
  for (int trial = 0; trial < 10; ++trial) {
    const GramForm q(oracle::random_pd_form(rng, 4, 4));
    const auto a = enumerate_up_to(q, Rat(20), 1);
    const auto b = enumerate_up_to(q, Rat(20), 4);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_EQ(a[i].coords, b[i].coords);
      EXPECT_EQ(a[i].norm, b[i].norm);
    }
  }
  const GramForm q2 = double_form(corpus::form(1));
  EXPECT_EQ(rep_spectrum(q2, Rat(30), 1), rep_spectrum(q2, Rat(30), 3));
}

TEST(Enumeration, InvariantUnderUnimodularChange) {
  oracle::Rng rng(34);
  for (int trial = 0; trial < 10; ++trial) {
    const GramForm q(oracle::random_pd_form(rng, 3, 4));
    const GramForm t = transform(q, oracle::random_unimodular(rng, 3, 2));
    EXPECT_EQ(nonzero_counts(rep_spectrum(q, Rat(24))), nonzero_counts(rep_spectrum(t, Rat(24))));
  }
}

TEST(Enumeration, ScalingMovesValues) {
  oracle::Rng rng(35);
  const GramForm q(oracle::random_pd_form(rng, 3, 4));
  const GramForm q3(RatMatrix(Rat(3) * q.matrix()));
  const auto a = nonzero_counts(rep_spectrum(q, Rat(10)));
  const auto b = nonzero_counts(rep_spectrum(q3, Rat(30)));
  ASSERT_EQ(a.size(), b.size());
  for (const auto& [t, c] : a) EXPECT_EQ(b.at(Rat(3 * t)), c);
}

TEST(RepSpectrum, IdentityInTwoVariables) {
  const GramForm id(RatMatrix::Identity(2, 2));
  const RepSpectrum zero = rep_spectrum(id, Rat(0));
  EXPECT_EQ(zero.counts.size(), 1u);
  EXPECT_EQ(zero.at(Rat(0)), 1u);
  const RepSpectrum s = rep_spectrum(id, Rat(25));
  EXPECT_EQ(s.step, 1);
  EXPECT_EQ(s.counts.size(), 26u);
  const std::uint64_t expected[] = {1, 4, 4, 0, 4, 8, 0, 0, 4, 4, 8, 0, 0, 8, 0,
                                    0, 4, 8, 4, 0, 8, 0, 0, 0, 0, 12};
  for (int t = 0; t <= 25; ++t) EXPECT_EQ(s.at(Rat(t)), expected[t]) << t;
  EXPECT_EQ(s.at(Rat(1, 2)), 0u);
}

TEST(RepSpectrum, ParityOfEvenForms) {
  const GramForm q2 = double_form(corpus::form(1));
  EXPECT_EQ(value_step(q2), 2);
  const RepSpectrum s = rep_spectrum(q2, Rat(16));
  ASSERT_EQ(s.counts.size(), 9u);
  for (const auto& [t, c] : s.counts) EXPECT_TRUE(is_integral(Rat(t / 2)));
  for (const auto& [t, r] : corpus::doubled_table())
    if (t <= 16) EXPECT_EQ(s.at(Rat(t)), r) << t;
}

TEST(RepSpectrum, ValueStepOfRationalForm) {
  RatMatrix m(2, 2);
  m << Rat(1, 2), Rat(1, 3), Rat(1, 3), Rat(3, 2);
  EXPECT_EQ(value_step(GramForm(m)), Rat(1, 6));
}

TEST(ShortestVectors, TripletMinimum) {
  for (int i = 1; i <= 3; ++i) {
    const VectorList sv = shortest_vectors(corpus::lattice(i));
    EXPECT_EQ(sv.norm, 3);
    EXPECT_EQ(sv.vectors.size(), 1u);
  }
  const VectorList z = shortest_vectors(Lattice(RatMatrix::Identity(3, 3)));
  EXPECT_EQ(z.norm, 1);
  EXPECT_EQ(z.vectors.size(), 3u);
}

TEST(Ladder, IntegerLatticeUsesUnitVectors) {
  const auto stages = independent_ladder(Lattice(RatMatrix::Identity(3, 3)), 3);
  ASSERT_EQ(stages.size(), 3u);
  for (const auto& s : stages) {
    EXPECT_EQ(s.norm, 1);
    EXPECT_EQ(s.vectors.size(), 1u);
  }
  EXPECT_THROW(independent_ladder(Lattice(RatMatrix::Identity(3, 3)), 4), std::invalid_argument);
  EXPECT_TRUE(independent_ladder(Lattice(RatMatrix::Identity(3, 3)), 0).empty());
}

TEST(Ladder, FirstLatticeOfTheTriplet) {
  const auto stages = independent_ladder(corpus::lattice(1), 6);
  const auto expected = corpus::ladder();
  ASSERT_EQ(stages.size(), expected.size());
  for (std::size_t k = 0; k < stages.size(); ++k) {
    EXPECT_EQ(stages[k].norm, expected[k].norm) << "stage " << k + 1;
    ASSERT_EQ(stages[k].vectors.size(), expected[k].vectors.size()) << "stage " << k + 1;
    for (const auto& v : expected[k].vectors)
      EXPECT_NE(std::find(stages[k].vectors.begin(), stages[k].vectors.end(), to_rat(v)), stages[k].vectors.end());
  }
  EXPECT_FALSE(contains(corpus::lattice(1), to_rat(corpus::quoted_stage5_vector())));
}

}  // namespace
}  // namespace isotori
