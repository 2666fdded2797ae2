#include "isotori/lattice.hpp"

#include <gtest/gtest.h>

#include "isotori/corpus.hpp"
#include "oracles.hpp"

namespace isotori {
namespace {

RatMatrix rat(std::initializer_list<std::initializer_list<int>> rows) {
  RatMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (int v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

TEST(Corpus, GramOfEachBasisIsThePrintedForm) {
  for (int i = 1; i <= 3; ++i) {
    EXPECT_EQ(gram(corpus::lattice(i)).matrix(), to_rat(corpus::gram_matrix(i)));
    EXPECT_EQ(determinant(corpus::lattice(i)), 125);
  }
}

TEST(Lattice, RejectsBadBases) {
  EXPECT_THROW(Lattice(RatMatrix(2, 3)), DimensionError);
  EXPECT_THROW(Lattice(rat({{1, 2}, {2, 4}})), RankError);
  EXPECT_NO_THROW(Lattice(RatMatrix(0, 0)));
  EXPECT_THROW(GramForm(rat({{1, 2}, {2, 1}})), NotPositiveDefinite);
  EXPECT_THROW(GramForm(rat({{2, 1}, {0, 2}})), DimensionError);
}

TEST(GramForm, EvaluatesValuesAndInnerProducts) {
  const GramForm q(rat({{2, 1}, {1, 3}}));
  IntVector x(2), y(2);
  x << 1, -1;
  y << 0, 1;
  EXPECT_EQ(q(x), 3);
  EXPECT_EQ(q.inner(x, y), -2);
}

TEST(Dual, InverseTransposeAndInvolution) {
  oracle::Rng rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const IntMatrix b = oracle::random_int_matrix(rng, 3, 3, 4);
    if (determinant(b) == 0) continue;
    const Lattice l(to_rat(b));
    const Lattice d = dual(l);
    EXPECT_EQ(RatMatrix(l.basis().transpose() * d.basis()), RatMatrix::Identity(3, 3));
    EXPECT_TRUE(same_lattice(dual(d), l));
    EXPECT_EQ(determinant(d) * determinant(l), 1);
  }
}

TEST(Membership, CoordinatesAndSameLattice) {
  const Lattice l = corpus::lattice(1);
  RatVector v(6);
  v << 0, 0, 1, 0, 1, 1;
  ASSERT_TRUE(contains(l, v));
  const auto c = coordinates(l, v);
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(l.point(*c), v);
  RatVector w(6);
  w << 1, 0, 0, 0, 0, 0;
  EXPECT_FALSE(contains(l, w));

  oracle::Rng rng(22);
  const IntMatrix u = oracle::random_unimodular(rng, 6, 2);
  EXPECT_TRUE(same_lattice(l, Lattice(RatMatrix(l.basis() * to_rat(u)))));
  EXPECT_FALSE(same_lattice(l, corpus::lattice(2)));
}

TEST(Evenness, LevelsOfSmallForms) {
  EXPECT_EQ(level(GramForm(rat({{2}}))), 4);
  EXPECT_EQ(level(GramForm(rat({{2, 1}, {1, 2}}))), 3);
  EXPECT_EQ(level(GramForm(rat({{2, 0}, {0, 8}}))), 16);
  EXPECT_EQ(level(GramForm(rat({{4, 0}, {0, 4}}))), 8);
  EXPECT_FALSE(is_even(GramForm(rat({{1}}))));
  EXPECT_THROW(level(GramForm(rat({{3}}))), std::domain_error);
  for (int i = 1; i <= 3; ++i) {
    const GramForm q2 = double_form(corpus::form(i));
    EXPECT_TRUE(is_even(q2));
    EXPECT_EQ(level(q2), 100);
    const FormClassTags tags = class_tags(q2);
    EXPECT_EQ(tags.det, 1000000);
    EXPECT_EQ(*tags.level, 100);
    EXPECT_FALSE(class_tags(corpus::form(i)).level.has_value());
  }
  EXPECT_THROW(double_form(GramForm(rat({{1}}) / Rat(2))), IntegralityError);
}

TEST(DirectSum, BlockDiagonal) {
  const GramForm a(rat({{2, 1}, {1, 2}}));
  const GramForm b(rat({{3}}));
  const GramForm s = direct_sum(a, b);
  EXPECT_EQ(s.matrix(), rat({{2, 1, 0}, {1, 2, 0}, {0, 0, 3}}));
  EXPECT_EQ(direct_sum(GramForm(RatMatrix(0, 0)), a), a);
  const Lattice l = direct_sum(corpus::lattice(1), corpus::lattice(2));
  EXPECT_EQ(l.dimension(), 12);
  EXPECT_EQ(gram(l), direct_sum(corpus::form(1), corpus::form(2)));
}

TEST(Scale, GramScalesBySquare) {
  const Lattice l = scale(corpus::lattice(1), Rat(2));
  EXPECT_EQ(gram(l).matrix(), RatMatrix(Rat(4) * corpus::form(1).matrix()));
  EXPECT_THROW(scale(corpus::lattice(1), Rat(0)), std::invalid_argument);
}

TEST(Transform, UnimodularChangeOfBasis) {
  oracle::Rng rng(23);
  const IntMatrix u = oracle::random_unimodular(rng, 6, 2);
  const GramForm t = transform(corpus::form(1), u);
  EXPECT_EQ(t, gram(Lattice(RatMatrix(corpus::lattice(1).basis() * to_rat(u)))));
}

TEST(ChoirFamily, LexicographicScaledSums) {
  const std::vector<Lattice> ls{corpus::lattice(1), corpus::lattice(2), corpus::lattice(3)};
  const auto family = choir_family(ls, 2);
  ASSERT_EQ(family.size(), 9u);
  for (const auto& l : family) EXPECT_EQ(l.dimension(), 12);
  EXPECT_EQ(gram(family[1]), direct_sum(corpus::form(1), GramForm(RatMatrix(Rat(4) * corpus::form(2).matrix()))));
  EXPECT_EQ(choir_family(ls, 1).size(), 3u);
  EXPECT_THROW(choir_family(ls, 0), std::invalid_argument);
  EXPECT_THROW(choir_family(std::vector<Lattice>{}, 2), std::invalid_argument);
}

TEST(LaplaceSpectrum, IntegerLattice) {
  const Lattice z(RatMatrix::Identity(1, 1));
  const auto eig = laplace_spectrum_prefix(z, 3);
  ASSERT_EQ(eig.size(), 3u);
  EXPECT_EQ(eig[0], (LaplaceEigenvalue{0, 1}));
  EXPECT_EQ(eig[1], (LaplaceEigenvalue{4, 2}));
  EXPECT_EQ(eig[2], (LaplaceEigenvalue{16, 2}));
  const Lattice z2(RatMatrix::Identity(2, 2) * Rat(2));
  const auto e2 = laplace_spectrum_prefix(z2, 2);
  EXPECT_EQ(e2[1], (LaplaceEigenvalue{1, 4}));
}

TEST(LaplaceSpectrum, TripletAgrees) {
  const auto a = laplace_spectrum_prefix(corpus::lattice(1), 12);
  EXPECT_EQ(a, laplace_spectrum_prefix(corpus::lattice(2), 12));
  EXPECT_EQ(a, laplace_spectrum_prefix(corpus::lattice(3), 12));
}

}  // namespace
}  // namespace isotori
