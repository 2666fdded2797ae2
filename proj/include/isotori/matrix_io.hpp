#pragma once

// Plain-text matrix format shared by lattice, Gram and witness files:
//
//   <rows> <cols>
//   a11 a12 ...
//   ...
//
// Entries are signed decimal integers or "a/b" rationals.  Lines whose first
// non-blank character is '#' are comments and may appear anywhere.

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "isotori/numeric.hpp"

namespace isotori {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Strict parse of one entry: [+-]digits or [+-]digits/digits.
Rat parse_rational(const std::string& token);

RatMatrix read_matrix(std::istream& in);
RatMatrix read_matrix_file(const std::filesystem::path& path);

/// Writes the header line and one line per row; entries in lowest terms.
/// A non-empty comment is emitted first as "# <comment>".
void write_matrix(std::ostream& out, const RatMatrix& m, const std::string& comment = {});
void write_matrix(std::ostream& out, const IntMatrix& m, const std::string& comment = {});
std::string format_matrix(const RatMatrix& m, const std::string& comment = {});

}  // namespace isotori
