#pragma once

// Orthogonal decomposition of a lattice into indecomposable components.
//
// A non-zero vector is indecomposable when it is not a sum x + y of non-zero
// lattice vectors with <x, y> >= 0.  Indecomposable vectors generate the
// lattice, each lies in a single orthogonal component, and two of them with a
// non-zero scalar product lie in the same component.  The components are
// therefore the connected components of the "non-orthogonal" graph on the
// indecomposable vectors up to a norm that already contains a basis.

#include <stdexcept>
#include <vector>

#include "isotori/lattice.hpp"

namespace isotori {

struct Component {
  std::vector<RatVector> generators;  ///< indecomposable vectors, ambient coordinates
  IntMatrix coordinate_basis;         ///< HNF basis in coordinates of the input basis
  RatMatrix basis;                    ///< the same basis in ambient coordinates
  Eigen::Index dimension = 0;
};

struct DecompositionCertificate {
  Rat norm_cutoff;                  ///< largest diagonal entry of the LLL-reduced Gram matrix
  std::size_t vectors_enumerated = 0;  ///< +-pairs with norm <= cutoff
  std::size_t indecomposable = 0;      ///< +-pairs kept as graph vertices
  /// cross_products[i][j]: number of generator pairs of components i != j with
  /// a non-zero scalar product (all zero when the certificate holds).
  std::vector<std::vector<std::size_t>> cross_products;
  bool orthogonal = false;
  bool dimensions_sum = false;
  bool generates = false;  ///< HNF of all component generators equals HNF of the lattice
};

struct Decomposition {
  std::vector<Component> components;
  DecompositionCertificate certificate;
};

class InternalVerificationError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Whether v is a sum of two non-zero lattice vectors with non-negative
/// scalar product.  Throws std::invalid_argument if v is zero or not in l.
bool is_decomposable_vector(const Lattice& l, const RatVector& v);

/// Throws InternalVerificationError if the computed split fails its own
/// orthogonality, dimension or generation checks.
Decomposition decompose(const Lattice& l);

bool is_irreducible(const Lattice& l);

}  // namespace isotori
