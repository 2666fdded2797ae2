#pragma once

// Linear codes C in (Z/qZ)^n, the projection pi_q(L) = L mod q of an integer
// lattice, the lift pi_q^{-1}(C), and weight distributions up to coordinate
// permutations and sign changes.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "isotori/lattice.hpp"

namespace isotori {

using CodeMatrix = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// A subgroup of (Z/qZ)^n with canonical generators.
///
/// The generators are read off the Hermite normal form H of the lift: the
/// columns of H whose pivot is smaller than q, reduced mod q.  For prime q
/// this is exactly the reduced row echelon form.
class LinearCode {
 public:
  LinearCode() = default;

  /// Subgroup generated by the rows of `rows` (any integers, taken mod q).
  static LinearCode generated_by(int q, const CodeMatrix& rows);
  static LinearCode zero(int q, int n);
  static LinearCode full(int q, int n);

  int modulus() const { return q_; }
  int length() const { return n_; }
  const CodeMatrix& generators() const { return generators_; }
  Eigen::Index generator_count() const { return generators_.rows(); }
  const Int& size() const { return size_; }

  /// Every codeword, in the order of the coefficient tuples.  Throws
  /// std::length_error if the code has more than `cap` words.
  std::vector<std::vector<int>> codewords(std::uint64_t cap = 1'000'000) const;

  friend bool operator==(const LinearCode& a, const LinearCode& b) {
    return a.q_ == b.q_ && a.n_ == b.n_ && a.generators_.rows() == b.generators_.rows() &&
           a.generators_ == b.generators_;
  }
  /// Lexicographic on (q, n, generator rows read row by row).
  friend bool operator<(const LinearCode& a, const LinearCode& b);

 private:
  friend class CodeStream;
  LinearCode(int q, int n, CodeMatrix generators, Int size)
      : q_(q), n_(n), generators_(std::move(generators)), size_(std::move(size)) {}

  int q_ = 2;
  int n_ = 0;
  CodeMatrix generators_;
  Int size_ = 1;
};

/// Sorted folded residues min(c_i, q - c_i) of one codeword.
using WeightSignature = std::vector<int>;
/// Signature multiset of all codewords.
using WeightDistribution = std::map<WeightSignature, std::uint64_t>;

bool is_prime(int q);

LinearCode project(const Lattice& l, int q);
Lattice lift(const LinearCode& c);

WeightSignature weight_signature(std::span<const int> codeword, int q);
WeightDistribution weight_distribution(const LinearCode& c, std::uint64_t cap = 1'000'000);
/// Throws std::invalid_argument if q or n differ.
bool equal_weight_dist(const LinearCode& a, const LinearCode& b);

/// Image under x -> (s_0 x_{p_0}, ..., s_{n-1} x_{p_{n-1}}) with s_j = +-1.
LinearCode apply_monomial(const LinearCode& c, std::span<const int> permutation,
                          std::span<const int> signs);

/// Lexicographically least canonical generator matrix over all signed
/// coordinate permutations.  Throws std::invalid_argument for n > 8.
LinearCode canonical_monomial_form(const LinearCode& c);

enum class CodeFamily { All, Systematic };

/// Bijection between the k-dimensional subspaces of F_q^n (prime q) and
/// 0..size()-1.  Codes are ordered by pivot pattern (lexicographic in the
/// pivot columns) and then by their free entries read row by row, most
/// significant first.  The systematic family is the first pattern,
/// generators [I_k | X].
class CodeSpace {
 public:
  static constexpr std::uint64_t npos = ~std::uint64_t{0};

  CodeSpace(int q, int n, int k, CodeFamily family = CodeFamily::All);

  int modulus() const { return q_; }
  int length() const { return n_; }
  int dimension() const { return k_; }
  std::uint64_t size() const { return size_; }

  std::size_t pattern_count() const { return patterns_.size(); }
  std::uint64_t pattern_offset(std::size_t p) const { return offsets_[p]; }
  std::uint64_t pattern_size(std::size_t p) const;
  const std::vector<int>& pattern(std::size_t p) const { return patterns_[p]; }
  std::size_t free_count(std::size_t p) const { return free_positions_[p].size(); }

  /// Writes the row-major k x n reduced echelon generators of code `index`.
  void unrank(std::uint64_t index, std::span<std::uint8_t> out) const;
  /// Index of a row-major reduced echelon matrix, npos if outside the family.
  std::uint64_t rank(std::span<const std::uint8_t> rref) const;

  CodeMatrix generators(std::uint64_t index) const;

 private:
  int q_, n_, k_;
  std::uint64_t size_ = 0;
  std::vector<std::vector<int>> patterns_;
  std::vector<std::vector<int>> free_positions_;  // row-major positions r * n + c
  std::vector<std::uint64_t> offsets_;
  std::vector<std::int32_t> pattern_of_mask_;
};

/// Streams every code of a CodeSpace once, in index order.
class CodeStream {
 public:
  CodeStream(int q, int n, int k, CodeFamily family);
  std::optional<LinearCode> next();
  std::uint64_t total() const { return space_.size(); }

 private:
  CodeSpace space_;
  std::uint64_t next_ = 0;
};

/// Throws std::invalid_argument for composite q ("unsupported") or k
/// outside [0, n].
CodeStream enumerate_codes(int q, int n, int k, CodeFamily family = CodeFamily::All);

// Code file format: "q n k" on the first line, then k rows of n residues.
LinearCode read_code(std::istream& in);
LinearCode read_code_file(const std::filesystem::path& path);
void write_code(std::ostream& out, const LinearCode& c);

}  // namespace isotori
