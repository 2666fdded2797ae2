#pragma once

// Search for linear codes with equal weight distributions whose lifts are
// isospectral but pairwise non-isometric.
//
// Codes are deduplicated by monomial orbit (each orbit is expanded once over
// a bitmap of all k-dimensional codes), bucketed by weight distribution, and
// buckets with enough classes are lifted, split into isometry classes and
// certified.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "isotori/codes.hpp"
#include "isotori/isometry.hpp"
#include "isotori/spectra.hpp"

namespace isotori {

struct SearchOptions {
  int q = 5;
  int n = 6;
  int k = 3;
  CodeFamily family = CodeFamily::Systematic;
  std::size_t min_tuple = 3;
  unsigned jobs = 1;
  /// Stop after about this many family codes and write a checkpoint
  /// (0: no limit).  The run stops at the first block boundary past the cap.
  std::uint64_t max_codes = 0;
  std::filesystem::path checkpoint = "isotori-search.checkpoint";
  /// Continue from `checkpoint` if it exists.
  bool resume = false;
};

struct PairOutcome {
  std::size_t first = 0;
  std::size_t second = 0;
  EquivalenceWitness witness;
};

struct CollisionTuple {
  std::vector<LinearCode> codes;
  std::vector<Lattice> lattices;  ///< lift of each code
  IsoCertificate certificate;
  std::vector<PairOutcome> pairwise;  ///< every pair first < second
};

/// A weight distribution shared by two or more monomial classes.
struct Collision {
  WeightDistribution distribution;
  std::vector<LinearCode> codes;  ///< canonical forms, ascending
};

struct SearchResult {
  std::uint64_t codes_examined = 0;
  std::uint64_t classes = 0;
  std::vector<Collision> collisions;  ///< ordered by first code
  std::vector<CollisionTuple> tuples;  ///< ordered by first code
};

class PartialResultError : public std::runtime_error {
 public:
  PartialResultError(const std::string& what, std::filesystem::path checkpoint)
      : std::runtime_error(what), checkpoint_(std::move(checkpoint)) {}
  const std::filesystem::path& checkpoint() const { return checkpoint_; }

 private:
  std::filesystem::path checkpoint_;
};

class VerificationError : public std::runtime_error {
 public:
  VerificationError(std::string stage, const std::string& what)
      : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

/// Throws std::invalid_argument for parameters outside the enumeration caps
/// (prime q < 256, n <= 8, at most 2^32 codes) or min_tuple < 2, and
/// PartialResultError when max_codes stops the run early.
SearchResult run_search(const SearchOptions& options);

/// The same pipeline over an explicit family of codes of equal q and n.
SearchResult search_family(std::span<const LinearCode> family, std::size_t min_tuple, unsigned jobs = 1);

/// Re-verifies a tuple from scratch: distinct canonical forms, equal weight
/// distributions, Lemma 1 round trip of each lift, an Isospectral
/// certificate and pairwise non-equivalence.  Throws VerificationError
/// naming the failing stage.
CollisionTuple verify_tuple(std::span<const LinearCode> codes, unsigned jobs = 1);

/// Writes manifest.txt, collisions.txt and one tuple_NNNN directory per
/// tuple.
void write_results(const SearchResult& result, const std::filesystem::path& dir);

}  // namespace isotori
