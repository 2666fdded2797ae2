#pragma once

// Isospectrality certificates for even positive-definite forms: two even
// forms in 2k variables with equal determinant and level N whose
// representation numbers agree for all t <= mu0(N) k / 6 + 2 agree
// everywhere.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "isotori/enumeration.hpp"
#include "isotori/lattice.hpp"

namespace isotori {

/// N * prod_{p | N prime} (1 + 1/p).  Throws std::invalid_argument for n < 1.
Int mu0(const Int& n);

/// mu0(level(q)) * k / 6 + 2 for an even form in 2k variables.  Throws
/// std::domain_error if q is not even or has odd dimension.
Rat hecke_threshold(const GramForm& q);

enum class Verdict { Isospectral, NotIsospectral, Inconclusive };

std::string to_string(Verdict v);

struct CertifyOptions {
  /// Compare only up to this value; below the threshold an agreement is
  /// reported as Inconclusive.
  std::optional<Rat> max_t;
  /// Bound of the plain spectrum scan used when the level gate fails and for
  /// the extra check in odd dimension.
  Rat fallback_cap{100};
  unsigned jobs = 1;
};

struct IsoCertificate {
  Verdict verdict = Verdict::Inconclusive;
  Rat det;                        ///< determinant of the compared (even) forms
  std::optional<Int> level;       ///< common level, absent when levels differ
  std::optional<Rat> threshold;   ///< Hecke threshold when it was reached
  Rat compared_up_to;             ///< spectra below compared
  std::vector<RepSpectrum> compared_spectra;
  std::optional<Rat> first_discrepancy;
  std::vector<std::string> notes;

  bool doubled = false;  ///< forms were replaced by 2Q to make them even
  bool squared = false;  ///< odd dimension: forms were replaced by Q + Q
  std::vector<Rat> dets;
  std::vector<std::optional<Int>> levels;
};

/// Smallest t <= up_to where the two spectra differ; missing keys count as 0.
std::optional<Rat> first_discrepancy(const RepSpectrum& a, const RepSpectrum& b, const Rat& up_to);

/// Runs the full certificate pipeline on two or more forms of equal
/// dimension with integer entries.
IsoCertificate certify(std::span<const GramForm> forms, const CertifyOptions& options = {});

}  // namespace isotori
