#include "isotori/enumeration.hpp"

#include <algorithm>
#include <future>
#include <limits>
#include <stdexcept>

namespace isotori {

namespace {

// Fincke-Pohst over the exact factorization q = L D L^T:
//   x^T q x = sum_i d_i (x_i + sum_{j>i} L_ji x_j)^2,
// so coordinates are fixed from the last one down, each within the interval
// left by the remaining budget.  Only vectors whose last non-zero coordinate
// is positive are produced; callers flip them to the canonical sign.
class FinckePohst {
 public:
  FinckePohst(const LdlFactor& f, Rat bound)
      : lower_(f.lower), diag_(f.diag), bound_(std::move(bound)),
        n_(static_cast<Eigen::Index>(f.diag.size())), x_(static_cast<std::size_t>(n_), 0) {}

  std::vector<ShortVector> run(long top_first, long top_last) {
    out_.clear();
    if (n_ == 0) return {};
    descend(n_ - 1, bound_, true, top_first, top_last);
    return std::move(out_);
  }

  // Admissible range of the outermost coordinate (already restricted to >= 0).
  std::pair<long, long> top_range() const {
    const Rat w = bound_ / diag_[n_ - 1];
    const long s = floor_sqrt(w).get_si();
    return {0, s};
  }

 private:
  void descend(Eigen::Index i, const Rat& remaining, bool zero_above, long first, long last) {
    Rat c = 0;
    for (Eigen::Index j = i + 1; j < n_; ++j)
      if (x_[j] != 0) c -= lower_(j, i) * x_[j];
    const Rat w = remaining / diag_[i];
    const Int s = floor_sqrt(w);
    // |x - c| <= sqrt(w) < s + 1 puts x in [floor(c) - s, ceil(c) + s].
    Int lo = floor(c) - s;
    Int hi = ceil(c) + s;
    if (zero_above && lo < 0) lo = 0;
    if (lo < first) lo = first;
    if (hi > last) hi = last;
    Rat t, e;
    for (long v = lo.get_si(); v <= hi.get_si(); ++v) {
      t = v - c;
      e = diag_[i] * t * t;
      if (e > remaining) continue;
      x_[i] = v;
      const Rat left = remaining - e;
      const bool still_zero = zero_above && v == 0;
      if (i == 0) {
        if (!still_zero) emit(left);
      } else {
        descend(i - 1, left, still_zero, kMin, kMax);
      }
    }
    x_[i] = 0;
  }

  void emit(const Rat& left) {
    IntVector coords(n_);
    for (Eigen::Index k = 0; k < n_; ++k) coords(k) = x_[k];
    out_.push_back({canonical_sign(std::move(coords)), bound_ - left});
  }

  static constexpr long kMin = std::numeric_limits<long>::min() / 2;
  static constexpr long kMax = std::numeric_limits<long>::max() / 2;

  const RatMatrix& lower_;
  const std::vector<Rat>& diag_;
  Rat bound_;
  Eigen::Index n_;
  std::vector<long> x_;
  std::vector<ShortVector> out_;
};

bool lex_less(const IntVector& a, const IntVector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i) < b(i)) return true;
    if (b(i) < a(i)) return false;
  }
  return false;
}

bool lex_greater(const RatVector& a, const RatVector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i) > b(i)) return true;
    if (a(i) < b(i)) return false;
  }
  return false;
}

// Incremental row echelon basis of a rational subspace.
class Span {
 public:
  RatVector residual(RatVector v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Eigen::Index p = pivots_[r];
      if (v(p) != 0) {
        const Rat f = v(p) / rows_[r](p);
        v -= f * rows_[r];
      }
    }
    return v;
  }

  bool independent(const RatVector& v) const { return !residual(v).isZero(); }

  void add(const RatVector& v) {
    RatVector r = residual(v);
    Eigen::Index p = 0;
    while (p < r.size() && r(p) == 0) ++p;
    if (p == r.size()) return;
    // Keep earlier rows reduced at the new pivot so residual() stays a single pass.
    for (auto& row : rows_)
      if (row(p) != 0) row -= (row(p) / r(p)) * r;
    rows_.push_back(std::move(r));
    pivots_.push_back(p);
  }

  std::size_t dimension() const { return rows_.size(); }

 private:
  std::vector<RatVector> rows_;
  std::vector<Eigen::Index> pivots_;
};

struct AmbientVector {
  RatVector v;
  Rat norm;
};

// All non-zero vectors of l up to the largest diagonal entry of an LLL-reduced
// Gram matrix, in ambient coordinates, sorted by norm then descending
// lexicographic order.  The bound guarantees that a basis is among them.
std::vector<AmbientVector> vectors_spanning(const Lattice& l) {
  const GramForm g = gram(l);
  const LllResult red = lll_reduce_gram(g.matrix());
  Rat bound = red.gram(0, 0);
  for (Eigen::Index i = 1; i < red.gram.rows(); ++i) bound = std::max(bound, Rat(red.gram(i, i)));
  const RatMatrix to_ambient = l.basis() * to_rat(red.transform);
  std::vector<AmbientVector> out;
  for (auto& sv : enumerate_up_to(GramForm(red.gram), bound))
    out.push_back({canonical_sign(RatVector(to_ambient * to_rat(sv.coords))), sv.norm});
  std::stable_sort(out.begin(), out.end(), [](const AmbientVector& a, const AmbientVector& b) {
    if (a.norm != b.norm) return a.norm < b.norm;
    return lex_greater(a.v, b.v);
  });
  return out;
}

}  // namespace

RatVector canonical_sign(RatVector v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v(i) == 0) continue;
    if (v(i) < 0) v = -v;
    break;
  }
  return v;
}

IntVector canonical_sign(IntVector v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v(i) == 0) continue;
    if (v(i) < 0) v = -v;
    break;
  }
  return v;
}

std::vector<ShortVector> enumerate_up_to(const GramForm& q, const Rat& bound, unsigned jobs) {
  if (bound < 0) throw std::invalid_argument("enumerate_up_to: bound must be non-negative");
  const LdlFactor f = ldl(q.matrix());
  if (q.dimension() == 0) return {};

  std::vector<ShortVector> out;
  FinckePohst probe(f, bound);
  const auto [top_lo, top_hi] = probe.top_range();
  const long width = top_hi - top_lo + 1;
  if (jobs <= 1 || width < 2) {
    out = probe.run(top_lo, top_hi);
  } else {
    const long parts = std::min<long>(jobs, width);
    std::vector<std::future<std::vector<ShortVector>>> futures;
    for (long p = 0; p < parts; ++p) {
      const long first = top_lo + width * p / parts;
      const long last = top_lo + width * (p + 1) / parts - 1;
      futures.push_back(std::async(std::launch::async, [&f, &bound, first, last] {
        FinckePohst worker(f, bound);
        return worker.run(first, last);
      }));
    }
    for (auto& fu : futures) {
      auto part = fu.get();
      out.insert(out.end(), std::make_move_iterator(part.begin()),
                 std::make_move_iterator(part.end()));
    }
  }
  std::sort(out.begin(), out.end(), [](const ShortVector& a, const ShortVector& b) {
    if (a.norm != b.norm) return a.norm < b.norm;
    return lex_less(a.coords, b.coords);
  });
  return out;
}

Rat value_step(const GramForm& q) {
  const RatMatrix& m = q.matrix();
  std::vector<Rat> values;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    values.push_back(m(i, i));
    for (Eigen::Index j = i + 1; j < m.cols(); ++j) values.push_back(2 * m(i, j));
  }
  Int den = 1;
  for (const Rat& v : values) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
  Int g = 0;
  for (const Rat& v : values) {
    const Rat scaled = v * den;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), scaled.get_num_mpz_t());
  }
  if (g == 0) return Rat(1);
  Rat step(g, den);
  step.canonicalize();
  return step;
}

std::uint64_t RepSpectrum::at(const Rat& t) const {
  const auto it = counts.find(t);
  return it == counts.end() ? 0 : it->second;
}

RepSpectrum rep_spectrum(const GramForm& q, const Rat& bound, unsigned jobs) {
  RepSpectrum spec{bound, value_step(q), {}};
  const Int steps = floor(bound / spec.step);
  for (Int k = 0; k <= steps; ++k) spec.counts.emplace(Rat(k) * spec.step, 0);
  spec.counts[Rat(0)] = 1;
  for (const auto& v : enumerate_up_to(q, bound, jobs)) spec.counts[v.norm] += 2;
  return spec;
}

VectorList shortest_vectors(const Lattice& l) {
  VectorList out;
  if (l.dimension() == 0) return out;
  const GramForm g = gram(l);
  const LllResult red = lll_reduce_gram(g.matrix());
  Rat bound = red.gram(0, 0);
  for (Eigen::Index i = 1; i < red.gram.rows(); ++i) bound = std::min(bound, Rat(red.gram(i, i)));
  const auto vectors = enumerate_up_to(GramForm(red.gram), bound);
  const RatMatrix to_ambient = l.basis() * to_rat(red.transform);
  out.norm = vectors.front().norm;
  for (const auto& sv : vectors) {
    if (sv.norm != out.norm) break;
    out.vectors.push_back(canonical_sign(RatVector(to_ambient * to_rat(sv.coords))));
  }
  std::sort(out.vectors.begin(), out.vectors.end(), lex_greater);
  return out;
}

std::vector<VectorList> independent_ladder(const Lattice& l, std::size_t count) {
  if (count > static_cast<std::size_t>(l.dimension()))
    throw std::invalid_argument("independent_ladder: count exceeds the dimension");
  std::vector<VectorList> stages;
  if (count == 0) return stages;

  const auto vectors = vectors_spanning(l);
  Span span;
  while (stages.size() < count) {
    std::size_t seed = 0;
    while (seed < vectors.size() && !span.independent(vectors[seed].v)) ++seed;
    if (seed == vectors.size()) throw std::logic_error("independent_ladder: vectors do not span");

    Span extended = span;
    extended.add(vectors[seed].v);
    VectorList stage;
    stage.norm = vectors[seed].norm;
    for (std::size_t i = seed; i < vectors.size() && vectors[i].norm == stage.norm; ++i) {
      const RatVector& v = vectors[i].v;
      if (span.independent(v) && !extended.independent(v)) stage.vectors.push_back(v);
    }
    span = std::move(extended);
    stages.push_back(std::move(stage));
  }
  return stages;
}

}  // namespace isotori
