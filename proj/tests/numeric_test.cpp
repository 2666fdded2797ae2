#include "isotori/numeric.hpp"

#include <algorithm>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "isotori/corpus.hpp"
#include "isotori/matrix_io.hpp"
#include "oracles.hpp"

namespace isotori {
namespace {

using oracle::Rng;

TEST(Determinant, MatchesCofactorExpansion) {
  Rng rng(11);
  for (int trial = 0; trial < 150; ++trial) {
    const Eigen::Index n = oracle::uniform(rng, 1, 5);
    const IntMatrix m = oracle::random_int_matrix(rng, n, n, 4);
    EXPECT_EQ(determinant(m), oracle::cofactor_determinant(m)) << m;
    const RatMatrix r = to_rat(m) / Rat(3);
    EXPECT_EQ(determinant(r), oracle::cofactor_determinant(r));
  }
}

TEST(Determinant, EdgeCases) {
  EXPECT_EQ(determinant(IntMatrix(0, 0)), 1);
  IntMatrix singular(2, 2);
  singular << 2, 4, 1, 2;
  EXPECT_EQ(determinant(singular), 0);
  IntMatrix needs_swap(2, 2);
  needs_swap << 0, 1, 1, 0;
  EXPECT_EQ(determinant(needs_swap), -1);
  for (int i = 1; i <= 3; ++i) EXPECT_EQ(determinant(corpus::basis(i)), 125);
}

TEST(Ldl, RoundTripOnRandomForms) {
  Rng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Index n = oracle::uniform(rng, 1, 6);
    const RatMatrix q = oracle::random_pd_form(rng, n, 5);
    const LdlFactor f = ldl(q);
    RatMatrix d = RatMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      d(i, i) = f.diag[static_cast<std::size_t>(i)];
      EXPECT_GT(d(i, i), 0);
      EXPECT_EQ(f.lower(i, i), 1);
      for (Eigen::Index j = i + 1; j < n; ++j) EXPECT_EQ(f.lower(i, j), 0);
    }
    EXPECT_EQ(RatMatrix(f.lower * d * f.lower.transpose()), q);
  }
}

TEST(Ldl, RejectsIndefiniteAndAsymmetric) {
  RatMatrix indefinite(2, 2);
  indefinite << 1, 2, 2, 1;
  EXPECT_THROW(ldl(indefinite), NotPositiveDefinite);
  RatMatrix asymmetric(2, 2);
  asymmetric << 2, 1, 0, 2;
  EXPECT_THROW(ldl(asymmetric), DimensionError);
}

// Every column of `a` is an integer combination of the columns of `b`.
bool spans_within(const IntMatrix& a, const IntMatrix& b) {
  const RatMatrix br = to_rat(b);
  const RatMatrix ar = to_rat(a);
  // Normal equations; b has full column rank.
  const RatMatrix gram = br.transpose() * br;
  for (Eigen::Index c = 0; c < a.cols(); ++c) {
    const RatVector x = solve(gram, RatVector(br.transpose() * ar.col(c)));
    if (RatVector(br * x) != ar.col(c) || !is_integral(x)) return false;
  }
  return true;
}

// For a matrix of full row rank n, the index of its column lattice in Z^n is
// the gcd of its n x n minors.
Int minor_gcd(const IntMatrix& m) {
  const Eigen::Index n = m.rows();
  Int g = 0;
  std::vector<bool> pick(static_cast<std::size_t>(m.cols()), false);
  std::fill(pick.begin(), pick.begin() + n, true);
  do {
    IntMatrix sub(n, n);
    for (Eigen::Index c = 0, k = 0; c < m.cols(); ++c)
      if (pick[static_cast<std::size_t>(c)]) sub.col(k++) = m.col(c);
    g = gcd(g, Int(oracle::cofactor_determinant(sub)));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return g;
}

TEST(Hnf, ShapeIdempotenceAndSameLattice) {
  Rng rng(13);
  for (int trial = 0; trial < 120; ++trial) {
    const Eigen::Index n = oracle::uniform(rng, 1, 5);
    const Eigen::Index cols = n + oracle::uniform(rng, 0, 3);
    const IntMatrix m = oracle::random_int_matrix(rng, n, cols, 6);
    const IntMatrix h = hnf(m);
    EXPECT_EQ(h.cols(), rank(to_rat(m)));
    Eigen::Index prev_row = -1;
    for (Eigen::Index j = 0; j < h.cols(); ++j) {
      Eigen::Index r = 0;
      while (h(r, j) == 0) ++r;
      EXPECT_GT(r, prev_row);
      EXPECT_GT(h(r, j), 0);
      for (Eigen::Index left = 0; left < j; ++left) {
        EXPECT_GE(h(r, left), 0);
        EXPECT_LT(h(r, left), h(r, j));
      }
      prev_row = r;
    }
    EXPECT_EQ(hnf(h), h);
    if (h.cols() > 0) {
      EXPECT_TRUE(spans_within(m, h));
      if (h.cols() == n) {
        Int index = 1;
        for (Eigen::Index j = 0; j < n; ++j) index *= h(j, j);
        EXPECT_EQ(index, minor_gcd(m));
      }
    }
  }
}

TEST(Hnf, OfUnimodularImageIsUnchanged) {
  Rng rng(14);
  for (int trial = 0; trial < 40; ++trial) {
    const IntMatrix b = oracle::random_int_matrix(rng, 4, 4, 5);
    if (determinant(b) == 0) continue;
    const IntMatrix u = oracle::random_unimodular(rng, 4, 2);
    EXPECT_EQ(hnf(IntMatrix(b * u)), hnf(b));
  }
}

TEST(Hnf, RejectsNonIntegralRationalInput) {
  RatMatrix m(1, 1);
  m << Rat(1, 2);
  EXPECT_THROW(hnf(m), IntegralityError);
}

TEST(Lll, PreservesDeterminantAndReduces) {
  Rng rng(15);
  const Rat delta(3, 4);
  for (int trial = 0; trial < 60; ++trial) {
    const Eigen::Index n = oracle::uniform(rng, 2, 6);
    const RatMatrix q = oracle::random_pd_form(rng, n, 5);
    const LllResult r = lll_reduce_gram(q, delta);
    EXPECT_EQ(abs(determinant(r.transform)), 1);
    EXPECT_EQ(RatMatrix(to_rat(r.transform).transpose() * q * to_rat(r.transform)), r.gram);
    EXPECT_EQ(determinant(r.gram), determinant(q));
    // Gram-Schmidt data from the LDL factors of the reduced Gram matrix.
    const LdlFactor f = ldl(r.gram);
    for (Eigen::Index i = 1; i < n; ++i) {
      for (Eigen::Index j = 0; j < i; ++j) EXPECT_LE(abs(f.lower(i, j)), Rat(1, 2));
      const Rat mu = f.lower(i, i - 1);
      EXPECT_GE(f.diag[static_cast<std::size_t>(i)],
                (delta - mu * mu) * f.diag[static_cast<std::size_t>(i - 1)]);
    }
  }
}

TEST(Lll, RejectsBadDeltaAndSingularInput) {
  EXPECT_THROW(lll_reduce_gram(RatMatrix::Identity(2, 2), Rat(1, 4)), std::invalid_argument);
  RatMatrix singular(2, 2);
  singular << 1, 1, 1, 1;
  EXPECT_THROW(lll_reduce_gram(singular), RankError);
}

TEST(Inverse, ProductIsIdentity) {
  Rng rng(16);
  for (int trial = 0; trial < 50; ++trial) {
    const RatMatrix q = oracle::random_pd_form(rng, 4, 6);
    EXPECT_EQ(RatMatrix(q * inverse(q)), RatMatrix::Identity(4, 4));
  }
  EXPECT_THROW(inverse(RatMatrix::Zero(2, 2)), RankError);
}

TEST(CharPoly, CayleyHamilton) {
  Rng rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const Eigen::Index n = oracle::uniform(rng, 1, 5);
    const RatMatrix m = to_rat(oracle::random_int_matrix(rng, n, n, 4));
    const Polynomial p = char_poly(m);
    ASSERT_EQ(p.size(), static_cast<std::size_t>(n + 1));
    EXPECT_EQ(p.back(), 1);
    RatMatrix acc = RatMatrix::Zero(n, n);
    for (std::size_t k = p.size(); k-- > 0;) acc = RatMatrix(acc * m) + p[k] * RatMatrix::Identity(n, n);
    EXPECT_TRUE(acc.isZero());
    EXPECT_EQ(p[0] * ((n % 2) ? -1 : 1), determinant(m));
  }
}

TEST(Sturm, CountsRootsInHalfOpenInterval) {
  // (x - 1)(x - 2)(x - 3)
  const Polynomial p{-6, 11, -6, 1};
  EXPECT_EQ(sturm_root_count(p, 0, 2), 2u);
  EXPECT_EQ(sturm_root_count(p, 1, 2), 1u);
  EXPECT_EQ(sturm_root_count(p, 0, Rat(5, 2)), 2u);
  EXPECT_EQ(sturm_root_count(p, 3, 10), 0u);
  // (x - 1)^2 (x + 1): distinct roots only
  const Polynomial q{1, -1, -1, 1};
  EXPECT_EQ(sturm_root_count(q, -2, 2), 2u);
}

void check_eigenvalue_bound(const RatMatrix& q, const Rat& eps) {
  const Rat l = eigenvalue_lower_bound(q, eps);
  const Eigen::Index n = q.rows();
  EXPECT_GT(l, 0);
  EXPECT_TRUE(oracle::is_psd(RatMatrix(q - l * RatMatrix::Identity(n, n)))) << q;
  EXPECT_FALSE(oracle::is_psd(RatMatrix(q - (l + eps) * RatMatrix::Identity(n, n)))) << q;
  EXPECT_TRUE(certifies_lower_bound(q, l));
}

TEST(EigenvalueBound, AgreesWithPrincipalMinorOracle) {
  Rng rng(18);
  for (int trial = 0; trial < 40; ++trial)
    check_eigenvalue_bound(oracle::random_pd_form(rng, oracle::uniform(rng, 1, 5), 5), Rat(1, 1000));
  for (int i = 1; i <= 3; ++i) check_eigenvalue_bound(corpus::form(i).matrix(), Rat(1, 1000));
}

TEST(EigenvalueBound, ExactIntegerEigenvalue) {
  RatMatrix q(2, 2);
  q << 2, 1, 1, 2;  // eigenvalues 1 and 3
  const Rat l = eigenvalue_lower_bound(q, Rat(1, 100));
  EXPECT_LE(l, 1);
  EXPECT_GE(l, Rat(99, 100));
  EXPECT_TRUE(certifies_lower_bound(q, 1));
  EXPECT_FALSE(certifies_lower_bound(q, Rat(101, 100)));
}

TEST(EigenvalueBound, QuotedValueIsAValidButLooseBoundForQ1) {
  const RatMatrix q1 = corpus::form(1).matrix();
  const Rat l = eigenvalue_lower_bound(q1, Rat(1, 1000));
  EXPECT_GE(l, corpus::quoted_lambda());
  EXPECT_TRUE(certifies_lower_bound(q1, corpus::quoted_lambda()));
  EXPECT_FALSE(certifies_lower_bound(corpus::form(2).matrix(), corpus::quoted_lambda()));
  EXPECT_FALSE(certifies_lower_bound(corpus::form(3).matrix(), corpus::quoted_lambda()));

  Eigen::MatrixXd d(6, 6);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) d(i, j) = q1(i, j).get_d();
  const double smallest = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(d).eigenvalues()(0);
  EXPECT_NEAR(l.get_d(), smallest, 1e-3);
}

TEST(Scalars, RoundingHelpers) {
  EXPECT_EQ(floor(Rat(-7, 2)), -4);
  EXPECT_EQ(ceil(Rat(-7, 2)), -3);
  EXPECT_EQ(round_nearest(Rat(5, 2)), 3);
  EXPECT_EQ(floor_sqrt(Rat(50, 2)), 5);
  EXPECT_EQ(floor_sqrt(Rat(24)), 4);
  EXPECT_EQ(floor_sqrt(Rat(1, 4)), 0);
  EXPECT_EQ(to_string(Rat(3, 2)), "3/2");
  EXPECT_EQ(to_string(Rat(-4)), "-4");
}

TEST(MatrixIo, ParsesRationalsStrictly) {
  EXPECT_EQ(parse_rational("-3/6"), Rat(-1, 2));
  EXPECT_EQ(parse_rational("+7"), 7);
  for (const char* bad : {"", "1/0", "1.5", "a", "1/", "/2", "--1", "1/-2", "1e3"})
    EXPECT_THROW(parse_rational(bad), FormatError) << bad;
}

TEST(MatrixIo, RoundTripWithComments) {
  const RatMatrix q = corpus::form(2).matrix() / Rat(7);
  std::stringstream s;
  write_matrix(s, q, "scaled gram");
  EXPECT_EQ(s.str().rfind("# scaled gram\n6 6\n", 0), 0u);
  EXPECT_EQ(read_matrix(s), q);

  std::istringstream in("# header comment\n2 2\n1 2\n# inside\n3 4/5\n");
  RatMatrix expected(2, 2);
  expected << 1, 2, 3, Rat(4, 5);
  EXPECT_EQ(read_matrix(in), expected);
}

TEST(MatrixIo, RejectsMalformedInput) {
  for (const char* bad : {"2 2\n1 2 3\n", "2 2\n1 2 3 4 5\n", "x 2\n", "", "1 1\nfoo\n"}) {
    std::istringstream in(bad);
    EXPECT_THROW(read_matrix(in), FormatError) << bad;
  }
  EXPECT_THROW(read_matrix_file("/nonexistent/matrix.txt"), FormatError);
}

}  // namespace
}  // namespace isotori
