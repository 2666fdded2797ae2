#pragma once

// Lattices M Z^n (the columns of M generate) and positive-definite quadratic
// forms Q(x) = x^T Q x, with the structural operations used to build and
// compare flat tori.

#include <optional>
#include <span>
#include <vector>

#include "isotori/numeric.hpp"

namespace isotori {

/// Full-rank lattice spanned by the columns of a square rational basis.
/// The 0-dimensional lattice is allowed and is the identity for direct sums.
class Lattice {
 public:
  Lattice() = default;
  /// Throws DimensionError for a non-square basis and RankError if singular.
  explicit Lattice(RatMatrix basis);

  const RatMatrix& basis() const { return basis_; }
  Eigen::Index dimension() const { return basis_.cols(); }

  /// Ambient vector basis * coords.
  RatVector point(const IntVector& coords) const;

 private:
  RatMatrix basis_;
};

/// Symmetric positive-definite rational matrix, acting as x -> x^T Q x.
class GramForm {
 public:
  GramForm() = default;
  /// Throws DimensionError if q is not symmetric, NotPositiveDefinite if an
  /// LDL pivot is not positive.
  explicit GramForm(RatMatrix q);

  const RatMatrix& matrix() const { return q_; }
  Eigen::Index dimension() const { return q_.rows(); }

  Rat operator()(const IntVector& x) const;
  Rat inner(const IntVector& x, const IntVector& y) const;

  friend bool operator==(const GramForm& a, const GramForm& b) { return a.q_ == b.q_; }

 private:
  RatMatrix q_;
};

struct FormClassTags {
  Rat det;
  bool is_even = false;
  std::optional<Int> level;  ///< present iff is_even
};

GramForm gram(const Lattice& l);
Lattice dual(const Lattice& l);
Rat determinant(const Lattice& l);

/// b^T q b; b must be square of matching size and non-singular.
GramForm transform(const GramForm& q, const IntMatrix& b);

bool contains(const Lattice& l, const RatVector& v);
/// Integer coordinates of v in the basis of l, if v belongs to l.
std::optional<IntVector> coordinates(const Lattice& l, const RatVector& v);
/// Mutual membership of the two bases.
bool same_lattice(const Lattice& a, const Lattice& b);

/// One distinct Laplace eigenvalue of R^n / l, equal to coefficient * pi^2.
struct LaplaceEigenvalue {
  Rat pi_squared_coefficient;
  Int multiplicity;

  friend bool operator==(const LaplaceEigenvalue&, const LaplaceEigenvalue&) = default;
};

/// First `count` distinct eigenvalues 4 pi^2 |y|^2, y in the dual lattice,
/// in ascending order.
std::vector<LaplaceEigenvalue> laplace_spectrum_prefix(const Lattice& l, std::size_t count);

/// 2q; requires integer entries (IntegralityError otherwise).
GramForm double_form(const GramForm& q);

/// Integer entries and even diagonal.
bool is_even(const GramForm& q);

/// Smallest N >= 1 with N q^{-1} even.  Throws std::domain_error if q is not
/// even.
Int level(const GramForm& q);

FormClassTags class_tags(const GramForm& q);

Lattice direct_sum(const Lattice& a, const Lattice& b);
GramForm direct_sum(const GramForm& a, const GramForm& b);

/// lam * l; lam must be non-zero.
Lattice scale(const Lattice& l, const Rat& lam);

/// All scaled direct sums f_1 L_{i_1} + ... + f_c L_{i_c} over index tuples
/// (i_1, ..., i_c) in lexicographic order, where c = copies and the factors
/// default to 1, 2, ..., copies.
std::vector<Lattice> choir_family(std::span<const Lattice> lattices, int copies,
                                  std::vector<Rat> factors = {});

}  // namespace isotori
