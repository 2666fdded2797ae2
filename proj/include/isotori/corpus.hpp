#pragma once

// The six-dimensional triplet L_i = A_i Z^6 (i = 1, 2, 3), their Gram
// matrices Q_i = A_i^T A_i, the expected representation numbers of 2Q_i and
// the shortest-vector ladder of L_1.  Compiled in so that the regression
// checks need no external files.

#include <cstdint>
#include <utility>
#include <vector>

#include "isotori/codes.hpp"
#include "isotori/lattice.hpp"

namespace isotori::corpus {

/// A_i, columns are the generators.  i in {1, 2, 3}.
IntMatrix basis(int i);
Lattice lattice(int i);
/// Q_i as printed, independent of basis(i).
IntMatrix gram_matrix(int i);
GramForm form(int i);
/// Generator rows of C_i = L_i mod 5.
CodeMatrix code_generators(int i);

/// (t, R(2Q_i, t)) for t = 0, 2, ..., 92; the same for all three forms.
std::vector<std::pair<int, std::uint64_t>> doubled_table();

/// The eigenvalue bound quoted for Q_1.
Rat quoted_lambda();
/// Column caps for the pair (Q_1, Q_2) under quoted_lambda().
std::vector<Rat> quoted_caps();

struct LadderStage {
  Rat norm;
  std::vector<IntVector> vectors;  ///< ambient coordinates, up to sign
};
/// Stages of independent_ladder(L_1, 6).  Stage 5 is +-(0,1,1,1,1,-2); the
/// vector printed for it, quoted_stage5_vector(), is not in L_1.
std::vector<LadderStage> ladder();
IntVector quoted_stage5_vector();

}  // namespace isotori::corpus
