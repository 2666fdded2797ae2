#pragma once

// Exact linear algebra over the integers and rationals.
//
// Dense matrices are plain Eigen matrices whose scalar is a GMP integer or
// rational, so the usual Eigen expressions (products, blocks, transposes) are
// exact.  Everything that Eigen would do with pivoting or floating point
// (determinants, factorizations, normal forms, eigenvalue bounds) lives here
// as free functions.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <gmpxx.h>

namespace Eigen {

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  using Real = mpq_class;
  using NonInteger = mpq_class;
  using Nested = mpq_class;
  using Literal = mpq_class;
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };
};

template <>
struct NumTraits<mpz_class> : GenericNumTraits<mpz_class> {
  using Real = mpz_class;
  using NonInteger = mpq_class;
  using Nested = mpz_class;
  using Literal = mpz_class;
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 1,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 100,
    MulCost = 100
  };
};

}  // namespace Eigen

namespace isotori {

using Int = mpz_class;
using Rat = mpq_class;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RatMatrix = Matrix<Rat>;
using IntMatrix = Matrix<Int>;
using RatVector = Vector<Rat>;
using IntVector = Vector<Int>;

/// Ascending coefficients: p(x) = c[0] + c[1] x + ... + c[d] x^d.
using Polynomial = std::vector<Rat>;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotPositiveDefinite : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class RankError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class IntegralityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// ---------------------------------------------------------------------------
// Scalars

inline bool is_integral(const Rat& r) { return r.get_den() == 1; }

Int floor(const Rat& r);
Int ceil(const Rat& r);
/// Nearest integer, ties rounded up (floor(r + 1/2)).
Int round_nearest(const Rat& r);
/// floor(sqrt(r)) for r >= 0, exact.
Int floor_sqrt(const Rat& r);

std::string to_string(const Rat& r);
std::string to_string(const Int& z);

// ---------------------------------------------------------------------------
// Shape and integrality predicates

template <typename Derived>
bool is_symmetric(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() != m.cols()) return false;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = i + 1; j < m.cols(); ++j)
      if (m(i, j) != m(j, i)) return false;
  return true;
}

template <typename Derived>
bool is_integral(const Eigen::MatrixBase<Derived>& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (!is_integral(Rat(m(i, j)))) return false;
  return true;
}

/// Throws IntegralityError if any entry has a denominator.
IntMatrix to_int(const RatMatrix& m);
IntVector to_int(const RatVector& v);

template <typename Derived>
Matrix<Rat> to_rat(const Eigen::MatrixBase<Derived>& m) {
  Matrix<Rat> out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = Rat(m(i, j));
  return out;
}

/// Least common multiple of all entry denominators.
Int denominator_lcm(const RatMatrix& m);

// ---------------------------------------------------------------------------
// Determinant (fraction-free Bareiss elimination)

template <typename Derived>
typename Derived::Scalar determinant(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  if (input.rows() != input.cols())
    throw DimensionError("determinant: matrix is " + std::to_string(input.rows()) + "x" +
                         std::to_string(input.cols()));
  const Eigen::Index n = input.rows();
  if (n == 0) return Scalar(1);
  Matrix<Scalar> m = input;
  Scalar previous(1);
  bool negate = false;
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      Eigen::Index swap_row = k + 1;
      while (swap_row < n && m(swap_row, k) == 0) ++swap_row;
      if (swap_row == n) return Scalar(0);
      m.row(k).swap(m.row(swap_row));
      negate = !negate;
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      for (Eigen::Index j = k + 1; j < n; ++j) {
        Scalar t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        m(i, j) = t / previous;
      }
      m(i, k) = 0;
    }
    previous = m(k, k);
  }
  Scalar det = m(n - 1, n - 1);
  return negate ? Scalar(-det) : det;
}

// ---------------------------------------------------------------------------
// Solving

RatMatrix inverse(const RatMatrix& m);
/// Exact solution of m x = b for square non-singular m.
RatVector solve(const RatMatrix& m, const RatVector& b);
Eigen::Index rank(const RatMatrix& m);

// ---------------------------------------------------------------------------
// Factorizations and normal forms

/// q = lower * diag(diag) * lower^T with lower unit lower-triangular.
struct LdlFactor {
  RatMatrix lower;
  std::vector<Rat> diag;
};

/// Throws DimensionError for a non-symmetric input and NotPositiveDefinite
/// as soon as a pivot is <= 0.
LdlFactor ldl(const RatMatrix& q);

/// Lower-triangular column Hermite normal form of the column lattice of m.
///
/// The result has one column per pivot (the rank of m).  Column j has its
/// pivot in row r_j with r_0 < r_1 < ..., pivot entries are positive, and in
/// every pivot row the entries to the left of the pivot lie in [0, pivot).
/// For a full-rank square lattice basis this is the familiar lower-triangular
/// form with the pivots on the diagonal.
IntMatrix hnf(const IntMatrix& m);
/// Same, for a rational matrix whose entries must all be integers.
IntMatrix hnf(const RatMatrix& m);

struct LllResult {
  RatMatrix gram;       ///< reduced Gram matrix, transform^T * input * transform
  IntMatrix transform;  ///< unimodular
};

/// Exact LLL on a positive-definite Gram matrix.  Throws RankError when the
/// Gram matrix is singular and std::invalid_argument unless 1/4 < delta < 1.
LllResult lll_reduce_gram(const RatMatrix& gram, const Rat& delta = Rat(3, 4));

/// LLL-reduced basis (columns) of the lattice spanned by the columns of basis.
RatMatrix lll_reduce(const RatMatrix& basis, const Rat& delta = Rat(3, 4));

// ---------------------------------------------------------------------------
// Polynomials and eigenvalue bounds

/// det(x I - m), monic.
Polynomial char_poly(const RatMatrix& m);

Rat evaluate(const Polynomial& p, const Rat& x);

/// Number of distinct real roots of p in the half-open interval (a, b].
std::size_t sturm_root_count(const Polynomial& p, const Rat& a, const Rat& b);

/// Rational L with 0 < L <= lambda_min(q) and lambda_min(q) - L <= eps,
/// certified by Sturm sign counting on the characteristic polynomial.
Rat eigenvalue_lower_bound(const RatMatrix& q, const Rat& eps);

/// True iff every eigenvalue of the positive-definite matrix q is >= bound.
bool certifies_lower_bound(const RatMatrix& q, const Rat& bound);

}  // namespace isotori
