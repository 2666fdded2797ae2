#include "isotori/lattice.hpp"

#include <algorithm>
#include <stdexcept>

#include "isotori/enumeration.hpp"

namespace isotori {

Lattice::Lattice(RatMatrix basis) : basis_(std::move(basis)) {
  if (basis_.rows() != basis_.cols())
    throw DimensionError("lattice basis must be square, got " + std::to_string(basis_.rows()) +
                         "x" + std::to_string(basis_.cols()));
  if (determinant(basis_) == 0) throw RankError("lattice basis is singular");
}

RatVector Lattice::point(const IntVector& coords) const { return basis_ * to_rat(coords); }

GramForm::GramForm(RatMatrix q) : q_(std::move(q)) { ldl(q_); }

Rat GramForm::operator()(const IntVector& x) const { return inner(x, x); }

Rat GramForm::inner(const IntVector& x, const IntVector& y) const {
  if (x.size() != q_.rows() || y.size() != q_.rows())
    throw DimensionError("vector length does not match the form");
  Rat acc = 0;
  for (Eigen::Index i = 0; i < q_.rows(); ++i) {
    if (x(i) == 0) continue;
    Rat row = 0;
    for (Eigen::Index j = 0; j < q_.cols(); ++j)
      if (y(j) != 0) row += q_(i, j) * y(j);
    acc += x(i) * row;
  }
  return acc;
}

GramForm gram(const Lattice& l) { return GramForm(l.basis().transpose() * l.basis()); }

Lattice dual(const Lattice& l) { return Lattice(inverse(l.basis()).transpose()); }

Rat determinant(const Lattice& l) { return determinant(l.basis()); }

GramForm transform(const GramForm& q, const IntMatrix& b) {
  if (b.rows() != q.dimension() || b.cols() != q.dimension())
    throw DimensionError("transform: matrix size does not match the form");
  const RatMatrix br = to_rat(b);
  return GramForm(br.transpose() * q.matrix() * br);
}

std::optional<IntVector> coordinates(const Lattice& l, const RatVector& v) {
  if (v.size() != l.dimension()) throw DimensionError("vector length does not match lattice");
  const RatVector x = solve(l.basis(), v);
  if (!is_integral(x)) return std::nullopt;
  return to_int(x);
}

bool contains(const Lattice& l, const RatVector& v) { return coordinates(l, v).has_value(); }

bool same_lattice(const Lattice& a, const Lattice& b) {
  if (a.dimension() != b.dimension()) return false;
  for (Eigen::Index j = 0; j < a.dimension(); ++j)
    if (!contains(b, a.basis().col(j))) return false;
  for (Eigen::Index j = 0; j < b.dimension(); ++j)
    if (!contains(a, b.basis().col(j))) return false;
  return true;
}

std::vector<LaplaceEigenvalue> laplace_spectrum_prefix(const Lattice& l, std::size_t count) {
  std::vector<LaplaceEigenvalue> out;
  if (count == 0) return out;
  out.push_back({Rat(0), Int(1)});
  if (l.dimension() == 0 || count == 1) return out;

  const GramForm dual_form = gram(dual(l));
  const LllResult reduced = lll_reduce_gram(dual_form.matrix());
  Rat bound = reduced.gram(0, 0);
  for (Eigen::Index i = 1; i < reduced.gram.rows(); ++i)
    bound = std::max(bound, Rat(reduced.gram(i, i)));

  // Grow the bound until it covers `count` distinct values; every norm at or
  // below the bound is then complete.
  for (;;) {
    const auto vectors = enumerate_up_to(dual_form, bound);
    std::vector<LaplaceEigenvalue> found{{Rat(0), Int(1)}};
    for (const auto& v : vectors) {
      const Rat value = 4 * v.norm;
      if (found.back().pi_squared_coefficient == value)
        found.back().multiplicity += 2;
      else
        found.push_back({value, Int(2)});
    }
    if (found.size() >= count) {
      found.resize(count);
      return found;
    }
    bound *= 2;
  }
}

GramForm double_form(const GramForm& q) {
  if (!is_integral(q.matrix())) throw IntegralityError("double_form: form has non-integer entries");
  return GramForm(2 * q.matrix());
}

bool is_even(const GramForm& q) {
  if (!is_integral(q.matrix())) return false;
  for (Eigen::Index i = 0; i < q.dimension(); ++i)
    if (mpz_odd_p(q.matrix()(i, i).get_num_mpz_t())) return false;
  return true;
}

Int level(const GramForm& q) {
  if (!is_even(q)) throw std::domain_error("level: form is not even");
  const RatMatrix inv = inverse(q.matrix());
  // Any admissible N is a multiple of the denominator lcm d; either d works or
  // the diagonal parity forces 2d.
  const Int d = denominator_lcm(inv);
  for (Eigen::Index i = 0; i < inv.rows(); ++i) {
    const Rat scaled = d * inv(i, i);
    if (mpz_odd_p(scaled.get_num_mpz_t())) return 2 * d;
  }
  return d;
}

FormClassTags class_tags(const GramForm& q) {
  FormClassTags tags;
  tags.det = determinant(q.matrix());
  tags.is_even = is_even(q);
  if (tags.is_even) tags.level = level(q);
  return tags;
}

namespace {

RatMatrix block_diagonal(const RatMatrix& a, const RatMatrix& b) {
  RatMatrix m = RatMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  m.topLeftCorner(a.rows(), a.cols()) = a;
  m.bottomRightCorner(b.rows(), b.cols()) = b;
  return m;
}

}  // namespace

Lattice direct_sum(const Lattice& a, const Lattice& b) {
  return Lattice(block_diagonal(a.basis(), b.basis()));
}

GramForm direct_sum(const GramForm& a, const GramForm& b) {
  return GramForm(block_diagonal(a.matrix(), b.matrix()));
}

Lattice scale(const Lattice& l, const Rat& lam) {
  if (lam == 0) throw std::invalid_argument("scale: factor must be non-zero");
  return Lattice(lam * l.basis());
}

std::vector<Lattice> choir_family(std::span<const Lattice> lattices, int copies,
                                  std::vector<Rat> factors) {
  if (lattices.empty()) throw std::invalid_argument("choir_family: no lattices given");
  if (copies < 1) throw std::invalid_argument("choir_family: copies must be positive");
  for (const auto& l : lattices)
    if (l.dimension() != lattices.front().dimension())
      throw DimensionError("choir_family: lattices have different dimensions");
  if (factors.empty())
    for (int j = 1; j <= copies; ++j) factors.emplace_back(j);
  if (factors.size() != static_cast<std::size_t>(copies))
    throw std::invalid_argument("choir_family: need one scale factor per copy");

  std::vector<Lattice> out;
  std::vector<std::size_t> index(static_cast<std::size_t>(copies), 0);
  for (;;) {
    Lattice sum;
    for (std::size_t j = 0; j < index.size(); ++j)
      sum = direct_sum(sum, scale(lattices[index[j]], factors[j]));
    out.push_back(std::move(sum));

    std::size_t pos = index.size();
    while (pos > 0 && ++index[pos - 1] == lattices.size()) index[--pos] = 0;
    if (pos == 0) break;
  }
  return out;
}

}  // namespace isotori
