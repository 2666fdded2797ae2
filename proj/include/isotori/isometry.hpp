#pragma once

// Integral equivalence of positive-definite forms, i.e. congruence of the
// lattices and isometry of the flat tori.
//
// If B^T Q1 B = Q2 then every column b_j satisfies b_j^T Q1 b_j = (Q2)_jj and
// |b_j|^2 <= (Q2)_jj / lambda_min(Q1), so the columns come from finite
// candidate sets.  The search assigns columns from those sets depth first,
// pruning on the off-diagonal Gram entries, and either returns a verified B
// or exhausts the tree.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "isotori/lattice.hpp"

namespace isotori {

struct SearchStats {
  Rat lambda_bound;                          ///< certified lower bound used for the caps
  std::vector<Rat> norm_caps;                ///< per column of the searched target form
  std::vector<std::size_t> candidate_counts; ///< per column, both signs counted
  std::vector<Eigen::Index> column_order;    ///< assignment order
  std::uint64_t nodes_visited = 0;
  bool determinant_gate = false;  ///< rejected on determinants alone, no search
  bool reduced = false;           ///< both forms were LLL-reduced before searching
  /// No automorphism-group pruning is done; kept for comparison with
  /// stabilizer-based searches.
  bool automorphism_pruning = false;
};

struct EquivalenceWitness {
  std::optional<IntMatrix> transform;  ///< B with B^T Q1 B = Q2 when equivalent
  SearchStats stats;

  bool equivalent() const { return transform.has_value(); }
};

struct EquivalenceOptions {
  /// Lower bound for the smallest eigenvalue of the searched source form.
  /// It is checked by Sturm counting; when absent one is computed with eps.
  std::optional<Rat> lambda_bound;
  Rat eps{1, 1000};
  /// LLL-reduce both forms first; the witness is mapped back afterwards.
  bool reduce = true;
  unsigned jobs = 1;
  /// Abort with SearchBudgetExceeded after this many nodes (0: no limit).
  std::uint64_t node_limit = 0;
};

class SearchBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// cap_j = (q2)_jj / lambda_bound.  Throws std::invalid_argument if
/// lambda_bound <= 0.
std::vector<Rat> norm_caps(const GramForm& q1, const GramForm& q2, const Rat& lambda_bound);

EquivalenceWitness integral_equivalence(const GramForm& q1, const GramForm& q2,
                                        const EquivalenceOptions& options = {});

EquivalenceWitness congruent_lattices(const Lattice& a, const Lattice& b,
                                      const EquivalenceOptions& options = {});

/// B^T q1 B == q2 exactly and |det B| == 1.
bool verify_witness(const GramForm& q1, const GramForm& q2, const IntMatrix& b);

}  // namespace isotori
