#include "isotori/codes.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "code_kernel.hpp"
#include "isotori/matrix_io.hpp"

namespace isotori {

namespace {

int reduce_mod(const Int& z, int q) {
  Int r = z % q;
  if (r < 0) r += q;
  return static_cast<int>(r.get_si());
}

void check_modulus(int q) {
  if (q < 2) throw std::invalid_argument("linear code: modulus must be at least 2");
}

// Column HNF of [rows^T | q I]; full rank, so the result is n x n.
IntMatrix lift_hnf(int q, const CodeMatrix& rows) {
  const Eigen::Index n = rows.cols();
  IntMatrix m = IntMatrix::Zero(n, rows.rows() + n);
  for (Eigen::Index r = 0; r < rows.rows(); ++r)
    for (Eigen::Index j = 0; j < n; ++j) m(j, r) = ((rows(r, j) % q) + q) % q;
  for (Eigen::Index j = 0; j < n; ++j) m(j, rows.rows() + j) = q;
  return hnf(m);
}

Int power(int base, Eigen::Index exponent) {
  Int out = 1;
  for (Eigen::Index i = 0; i < exponent; ++i) out *= base;
  return out;
}

std::vector<int> pivot_values(const LinearCode& c) {
  std::vector<int> pivots;
  const CodeMatrix& g = c.generators();
  for (Eigen::Index r = 0; r < g.rows(); ++r)
    for (Eigen::Index j = 0; j < g.cols(); ++j)
      if (g(r, j) != 0) {
        pivots.push_back(g(r, j));
        break;
      }
  return pivots;
}

// Calls visit(word) for every codeword, coefficient tuples in lexicographic
// order.
template <class Visit>
void for_each_codeword(const LinearCode& c, std::uint64_t cap, Visit visit) {
  if (c.size() > cap)
    throw std::length_error("linear code: " + to_string(c.size()) + " codewords exceed the cap of " +
                            std::to_string(cap));
  const int q = c.modulus();
  const int n = c.length();
  const CodeMatrix& g = c.generators();
  const std::vector<int> pivots = pivot_values(c);
  const std::size_t k = pivots.size();
  std::vector<int> coeff(k, 0);
  std::vector<int> word(static_cast<std::size_t>(n), 0);
  while (true) {
    std::fill(word.begin(), word.end(), 0);
    for (std::size_t r = 0; r < k; ++r)
      if (coeff[r] != 0)
        for (int j = 0; j < n; ++j)
          word[static_cast<std::size_t>(j)] =
              (word[static_cast<std::size_t>(j)] + coeff[r] * g(static_cast<Eigen::Index>(r), j)) % q;
    visit(word);
    std::size_t pos = k;
    while (pos > 0) {
      --pos;
      if (++coeff[pos] < q / pivots[pos]) break;
      coeff[pos] = 0;
      if (pos == 0) return;
    }
    if (k == 0) return;
  }
}

detail::SmallCode to_small(const LinearCode& c) {
  detail::SmallCode s;
  s.k = static_cast<int>(c.generator_count());
  s.n = c.length();
  for (int r = 0; r < s.k; ++r)
    for (int j = 0; j < s.n; ++j) s.at(r, j) = static_cast<std::uint8_t>(c.generators()(r, j));
  return s;
}

CodeMatrix to_matrix(const detail::SmallCode& s) {
  CodeMatrix m(s.k, s.n);
  for (int r = 0; r < s.k; ++r)
    for (int j = 0; j < s.n; ++j) m(r, j) = s.at(r, j);
  return m;
}

bool kernel_applies(const LinearCode& c) {
  return is_prime(c.modulus()) && c.modulus() < 256 &&
         c.generator_count() * c.length() <= detail::kMaxEntries;
}

bool row_major_less(const CodeMatrix& a, const CodeMatrix& b) {
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
}

}  // namespace

bool is_prime(int q) {
  if (q < 2) return false;
  for (int d = 2; d * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

LinearCode LinearCode::generated_by(int q, const CodeMatrix& rows) {
  check_modulus(q);
  const Eigen::Index n = rows.cols();
  const IntMatrix h = lift_hnf(q, rows);
  std::vector<Eigen::Index> kept;
  Int size = 1;
  for (Eigen::Index j = 0; j < n; ++j) {
    const Int pivot = h(j, j);
    size *= Int(q) / pivot;
    if (pivot < q) kept.push_back(j);
  }
  CodeMatrix g(static_cast<Eigen::Index>(kept.size()), n);
  for (std::size_t r = 0; r < kept.size(); ++r)
    for (Eigen::Index i = 0; i < n; ++i)
      g(static_cast<Eigen::Index>(r), i) = reduce_mod(h(i, kept[r]), q);
  return LinearCode(q, static_cast<int>(n), std::move(g), std::move(size));
}

LinearCode LinearCode::zero(int q, int n) {
  check_modulus(q);
  if (n < 0) throw DimensionError("linear code: negative length");
  return LinearCode(q, n, CodeMatrix(0, n), 1);
}

LinearCode LinearCode::full(int q, int n) {
  check_modulus(q);
  if (n < 0) throw DimensionError("linear code: negative length");
  return LinearCode(q, n, CodeMatrix::Identity(n, n), power(q, n));
}

std::vector<std::vector<int>> LinearCode::codewords(std::uint64_t cap) const {
  std::vector<std::vector<int>> out;
  for_each_codeword(*this, cap, [&](const std::vector<int>& w) { out.push_back(w); });
  return out;
}

bool operator<(const LinearCode& a, const LinearCode& b) {
  if (a.q_ != b.q_) return a.q_ < b.q_;
  if (a.n_ != b.n_) return a.n_ < b.n_;
  return row_major_less(a.generators_, b.generators_);
}

LinearCode project(const Lattice& l, int q) {
  check_modulus(q);
  if (!is_integral(l.basis())) throw IntegralityError("project: lattice basis is not integral");
  const IntMatrix b = to_int(l.basis());
  CodeMatrix rows(b.cols(), b.rows());
  for (Eigen::Index c = 0; c < b.cols(); ++c)
    for (Eigen::Index i = 0; i < b.rows(); ++i) rows(c, i) = reduce_mod(b(i, c), q);
  return LinearCode::generated_by(q, rows);
}

Lattice lift(const LinearCode& c) {
  return Lattice(to_rat(lift_hnf(c.modulus(), c.generators())));
}

WeightSignature weight_signature(std::span<const int> codeword, int q) {
  check_modulus(q);
  WeightSignature s;
  s.reserve(codeword.size());
  for (int v : codeword) {
    if (v < 0 || v >= q) throw std::invalid_argument("weight_signature: entry outside [0, q)");
    s.push_back(std::min(v, q - v));
  }
  std::sort(s.begin(), s.end());
  return s;
}

WeightDistribution weight_distribution(const LinearCode& c, std::uint64_t cap) {
  WeightDistribution out;
  for_each_codeword(c, cap, [&](const std::vector<int>& w) { ++out[weight_signature(w, c.modulus())]; });
  return out;
}

bool equal_weight_dist(const LinearCode& a, const LinearCode& b) {
  if (a.modulus() != b.modulus() || a.length() != b.length())
    throw std::invalid_argument("equal_weight_dist: codes have different modulus or length");
  if (a.size() != b.size()) return false;
  return weight_distribution(a) == weight_distribution(b);
}

LinearCode apply_monomial(const LinearCode& c, std::span<const int> permutation,
                          std::span<const int> signs) {
  const auto n = static_cast<std::size_t>(c.length());
  if (permutation.size() != n || signs.size() != n)
    throw DimensionError("apply_monomial: map does not match the code length");
  std::vector<int> sorted(permutation.begin(), permutation.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < n; ++i)
    if (sorted[i] != static_cast<int>(i)) throw std::invalid_argument("apply_monomial: not a permutation");
  for (int s : signs)
    if (s != 1 && s != -1) throw std::invalid_argument("apply_monomial: signs must be +1 or -1");
  const CodeMatrix& g = c.generators();
  CodeMatrix image(g.rows(), g.cols());
  for (Eigen::Index r = 0; r < g.rows(); ++r)
    for (std::size_t j = 0; j < n; ++j)
      image(r, static_cast<Eigen::Index>(j)) = signs[j] * g(r, permutation[j]);
  return LinearCode::generated_by(c.modulus(), image);
}

LinearCode canonical_monomial_form(const LinearCode& c) {
  const int n = c.length();
  if (n > 8) throw std::invalid_argument("canonical_monomial_form: length above 8 is too large");
  const int q = c.modulus();
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::vector<int> signs(static_cast<std::size_t>(n), 1);
  // Global negation maps a subgroup to itself, so the first sign stays +1.
  const unsigned sign_masks = (q == 2 || n == 0) ? 1u : (1u << (n - 1));

  if (kernel_applies(c)) {
    const detail::FieldTables field(q);
    const detail::SmallCode source = to_small(c);
    detail::SmallCode best = source;
    detail::SmallCode image;
    std::iota(perm.begin(), perm.end(), 0);
    do {
      for (unsigned mask = 0; mask < sign_masks; ++mask) {
        for (int j = 1; j < n; ++j) signs[static_cast<std::size_t>(j)] = (mask >> (j - 1)) & 1u ? -1 : 1;
        detail::apply_signed_permutation(source, perm.data(), signs.data(), q, image);
        detail::rref(image, field);
        if (image < best) best = image;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return LinearCode::generated_by(q, to_matrix(best));
  }

  LinearCode best = c;
  std::iota(perm.begin(), perm.end(), 0);
  do {
    for (unsigned mask = 0; mask < sign_masks; ++mask) {
      for (int j = 1; j < n; ++j) signs[static_cast<std::size_t>(j)] = (mask >> (j - 1)) & 1u ? -1 : 1;
      LinearCode image = apply_monomial(c, perm, signs);
      if (row_major_less(image.generators(), best.generators())) best = std::move(image);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

CodeSpace::CodeSpace(int q, int n, int k, CodeFamily family) : q_(q), n_(n), k_(k) {
  if (!is_prime(q)) throw std::invalid_argument("code enumeration: composite modulus " + std::to_string(q) + " is unsupported");
  if (q >= 256) throw std::invalid_argument("code enumeration: modulus too large");
  if (n < 0 || k < 0 || k > n) throw std::invalid_argument("code enumeration: need 0 <= k <= n");
  if (n > 16 || k * n > detail::kMaxEntries)
    throw std::invalid_argument("code enumeration: length too large");

  pattern_of_mask_.assign(std::size_t{1} << n, -1);
  std::vector<int> pattern(static_cast<std::size_t>(k));
  std::iota(pattern.begin(), pattern.end(), 0);
  const std::uint64_t limit = ~std::uint64_t{0} / static_cast<std::uint64_t>(q);
  while (true) {
    std::vector<int> free_positions;
    unsigned mask = 0;
    for (int p : pattern) mask |= 1u << p;
    for (int r = 0; r < k; ++r)
      for (int c = pattern[static_cast<std::size_t>(r)] + 1; c < n; ++c)
        if (!(mask & (1u << c))) free_positions.push_back(r * n + c);
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < free_positions.size(); ++i) {
      if (count > limit) throw std::invalid_argument("code enumeration: too many codes");
      count *= static_cast<std::uint64_t>(q);
    }
    if (size_ > ~std::uint64_t{0} - count) throw std::invalid_argument("code enumeration: too many codes");
    pattern_of_mask_[mask] = static_cast<std::int32_t>(patterns_.size());
    offsets_.push_back(size_);
    size_ += count;
    patterns_.push_back(pattern);
    free_positions_.push_back(std::move(free_positions));
    if (family == CodeFamily::Systematic) break;

    // Next k-combination of 0..n-1 in lexicographic order.
    int i = k - 1;
    while (i >= 0 && pattern[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++pattern[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j)
      pattern[static_cast<std::size_t>(j)] = pattern[static_cast<std::size_t>(j - 1)] + 1;
  }
}

std::uint64_t CodeSpace::pattern_size(std::size_t p) const {
  const std::uint64_t end = p + 1 < offsets_.size() ? offsets_[p + 1] : size_;
  return end - offsets_[p];
}

void CodeSpace::unrank(std::uint64_t index, std::span<std::uint8_t> out) const {
  if (index >= size_) throw std::out_of_range("CodeSpace::unrank: index out of range");
  if (out.size() < static_cast<std::size_t>(k_ * n_)) throw DimensionError("CodeSpace::unrank: buffer too small");
  const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), index);
  const auto p = static_cast<std::size_t>(it - offsets_.begin() - 1);
  std::fill(out.begin(), out.begin() + k_ * n_, std::uint8_t{0});
  for (int r = 0; r < k_; ++r) out[static_cast<std::size_t>(r * n_ + patterns_[p][static_cast<std::size_t>(r)])] = 1;
  std::uint64_t local = index - offsets_[p];
  const auto& free = free_positions_[p];
  for (std::size_t i = free.size(); i-- > 0;) {
    out[static_cast<std::size_t>(free[i])] = static_cast<std::uint8_t>(local % static_cast<std::uint64_t>(q_));
    local /= static_cast<std::uint64_t>(q_);
  }
}

std::uint64_t CodeSpace::rank(std::span<const std::uint8_t> rref) const {
  unsigned mask = 0;
  for (int r = 0; r < k_; ++r) {
    int c = 0;
    while (c < n_ && rref[static_cast<std::size_t>(r * n_ + c)] == 0) ++c;
    if (c == n_) return npos;
    mask |= 1u << c;
  }
  const std::int32_t p = pattern_of_mask_[mask];
  if (p < 0) return npos;
  std::uint64_t local = 0;
  for (int pos : free_positions_[static_cast<std::size_t>(p)])
    local = local * static_cast<std::uint64_t>(q_) + rref[static_cast<std::size_t>(pos)];
  return offsets_[static_cast<std::size_t>(p)] + local;
}

CodeMatrix CodeSpace::generators(std::uint64_t index) const {
  detail::SmallCode s;
  s.k = k_;
  s.n = n_;
  unrank(index, s.entries());
  return to_matrix(s);
}

CodeStream::CodeStream(int q, int n, int k, CodeFamily family) : space_(q, n, k, family) {}

std::optional<LinearCode> CodeStream::next() {
  if (next_ >= space_.size()) return std::nullopt;
  CodeMatrix g = space_.generators(next_++);
  return LinearCode(space_.modulus(), space_.length(), std::move(g),
                    power(space_.modulus(), space_.dimension()));
}

CodeStream enumerate_codes(int q, int n, int k, CodeFamily family) {
  return CodeStream(q, n, k, family);
}

LinearCode read_code(std::istream& in) {
  std::vector<std::string> toks;
  std::string line;
  while (std::getline(in, line)) {
    const std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) toks.push_back(tok);
  }
  auto number = [](const std::string& tok) {
    const Rat r = parse_rational(tok);
    if (!is_integral(r) || !r.get_num().fits_sint_p()) throw FormatError("invalid code entry '" + tok + "'");
    return static_cast<int>(r.get_num().get_si());
  };
  if (toks.size() < 3) throw FormatError("code file: missing \"q n k\" header");
  const int q = number(toks[0]);
  const int n = number(toks[1]);
  const int k = number(toks[2]);
  if (q < 2 || n < 0 || k < 0 || n > 4096 || k > 4096) throw FormatError("code file: invalid header");
  if (toks.size() != 3 + static_cast<std::size_t>(n) * static_cast<std::size_t>(k))
    throw FormatError("code file: expected " + std::to_string(n * k) + " entries, found " +
                      std::to_string(toks.size() - 3));
  CodeMatrix rows(k, n);
  for (int r = 0; r < k; ++r)
    for (int j = 0; j < n; ++j) {
      const int v = number(toks[3 + static_cast<std::size_t>(r * n + j)]);
      if (v < 0 || v >= q) throw FormatError("code file: entry outside [0, q)");
      rows(r, j) = v;
    }
  return LinearCode::generated_by(q, rows);
}

LinearCode read_code_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  return read_code(in);
}

void write_code(std::ostream& out, const LinearCode& c) {
  out << c.modulus() << ' ' << c.length() << ' ' << c.generator_count() << '\n';
  const CodeMatrix& g = c.generators();
  for (Eigen::Index r = 0; r < g.rows(); ++r) {
    for (Eigen::Index j = 0; j < g.cols(); ++j) out << (j ? " " : "") << g(r, j);
    out << '\n';
  }
}

}  // namespace isotori
