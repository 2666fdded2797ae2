#pragma once

// Exact Fincke-Pohst enumeration of lattice vectors below a norm bound, and
// the representation numbers, shortest vectors and independent-vector ladder
// built on it.

#include <cstdint>
#include <map>
#include <vector>

#include "isotori/lattice.hpp"

namespace isotori {

/// A non-zero integer vector together with its exact value under the form.
/// Vectors come one per +-pair, with the first non-zero coordinate positive.
struct ShortVector {
  IntVector coords;
  Rat norm;
};

/// Every non-zero x with x^T q x <= bound, one representative per +-pair,
/// ordered by norm and then lexicographically.  With jobs > 1 the search
/// tree is split on the outermost coordinate.
std::vector<ShortVector> enumerate_up_to(const GramForm& q, const Rat& bound, unsigned jobs = 1);

/// Greatest rational g such that every value x^T q x is a multiple of g:
/// gcd of the diagonal entries and twice the off-diagonal entries.
Rat value_step(const GramForm& q);

/// R(q, t) for every multiple t of value_step(q) in [0, bound], zeros
/// included, with both signs of each vector counted.
struct RepSpectrum {
  Rat bound;
  Rat step;
  std::map<Rat, std::uint64_t> counts;

  std::uint64_t at(const Rat& t) const;
  friend bool operator==(const RepSpectrum&, const RepSpectrum&) = default;
};

RepSpectrum rep_spectrum(const GramForm& q, const Rat& bound, unsigned jobs = 1);

/// Vectors of one common norm, in ambient coordinates, one per +-pair with
/// the first non-zero coordinate positive.
struct VectorList {
  std::vector<RatVector> vectors;
  Rat norm;
};

/// Canonical sign: first non-zero entry positive.
RatVector canonical_sign(RatVector v);
IntVector canonical_sign(IntVector v);

VectorList shortest_vectors(const Lattice& l);

/// Stage k holds every minimal-norm vector that is linearly independent of
/// the span of stages 1..k-1 but lies in the span obtained by adding the
/// stage's leading vector (the lexicographically greatest candidate).  Each
/// stage therefore raises the rank by exactly one; equal-norm ties within the
/// same new direction stay together.  Throws std::invalid_argument if count
/// exceeds the dimension.
std::vector<VectorList> independent_ladder(const Lattice& l, std::size_t count);

}  // namespace isotori
