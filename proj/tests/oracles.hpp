#pragma once

// Independent reference computations for the tests: brute-force box
// enumeration, cofactor determinants, principal-minor positivity and random
// forms and unimodular matrices from fixed seeds.

#include <functional>
#include <map>
#include <random>
#include <vector>

#include "isotori/lattice.hpp"

namespace isotori::oracle {

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

/// Laplace expansion along the first row.
template <class S>
S cofactor_determinant(const Matrix<S>& m) {
  const Eigen::Index n = m.rows();
  if (n == 0) return S(1);
  if (n == 1) return m(0, 0);
  S total = 0;
  for (Eigen::Index j = 0; j < n; ++j) {
    Matrix<S> minor(n - 1, n - 1);
    for (Eigen::Index r = 1; r < n; ++r)
      for (Eigen::Index c = 0, k = 0; c < n; ++c)
        if (c != j) minor(r - 1, k++) = m(r, c);
    const S term = m(0, j) * cofactor_determinant(minor);
    total += (j % 2 == 0) ? term : S(-term);
  }
  return total;
}

/// Positive semidefinite iff every principal minor is >= 0.
inline bool is_psd(const RatMatrix& m) {
  const Eigen::Index n = m.rows();
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index i = 0; i < n; ++i)
      if (mask & (1u << i)) idx.push_back(i);
    RatMatrix sub(static_cast<Eigen::Index>(idx.size()), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (std::size_t b = 0; b < idx.size(); ++b)
        sub(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = m(idx[a], idx[b]);
    if (cofactor_determinant(sub) < 0) return false;
  }
  return true;
}

/// Positive definite iff every leading principal minor is > 0.
inline bool is_pd(const RatMatrix& m) {
  for (Eigen::Index k = 1; k <= m.rows(); ++k)
    if (cofactor_determinant(RatMatrix(m.topLeftCorner(k, k))) <= 0) return false;
  return true;
}

inline IntMatrix random_int_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols, int bound) {
  IntMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = uniform(rng, -bound, bound);
  return m;
}

/// Symmetric integer matrix with entries in [-bound, bound] that is positive
/// definite.  Rows are drawn one at a time and redrawn until the new leading
/// minor is positive.
inline RatMatrix random_pd_form(Rng& rng, Eigen::Index n, int bound) {
  RatMatrix q = RatMatrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    do {
      q(k, k) = uniform(rng, 1, bound);
      for (Eigen::Index j = 0; j < k; ++j) q(k, j) = q(j, k) = uniform(rng, -bound, bound);
    } while (determinant(RatMatrix(q.topLeftCorner(k + 1, k + 1))) <= 0);
  }
  return q;
}

/// Entries in [-bound, bound], redrawn until the determinant is +-1.
inline IntMatrix random_unimodular(Rng& rng, Eigen::Index n, int bound) {
  while (true) {
    IntMatrix b = random_int_matrix(rng, n, n, bound);
    const Int d = cofactor_determinant(b);
    if (d == 1 || d == -1) return b;
  }
}

/// Number of integer x with x^T q x = t for every attained t <= bound,
/// scanning the box |x_i| <= sqrt(bound * (q^{-1})_ii).  Returns an empty
/// map if the box has more than max_points points.
inline std::map<Rat, std::uint64_t> box_counts(const RatMatrix& q, const Rat& bound,
                                               double max_points = 5e6) {
  const Eigen::Index n = q.rows();
  const RatMatrix inv = inverse(q);
  std::vector<long> radius(static_cast<std::size_t>(n));
  double points = 1;
  for (Eigen::Index i = 0; i < n; ++i) {
    radius[static_cast<std::size_t>(i)] = floor_sqrt(Rat(bound * inv(i, i))).get_si();
    points *= 2.0 * static_cast<double>(radius[static_cast<std::size_t>(i)]) + 1;
  }
  std::map<Rat, std::uint64_t> counts;
  if (points > max_points) return counts;
  IntVector x(n);
  std::function<void(Eigen::Index)> rec = [&](Eigen::Index i) {
    if (i == n) {
      const RatVector xr = to_rat(x);
      const Rat v = Rat(xr.dot(q * xr));
      if (v <= bound) ++counts[v];
      return;
    }
    const long r = radius[static_cast<std::size_t>(i)];
    for (long c = -r; c <= r; ++c) {
      x(i) = c;
      rec(i + 1);
    }
  };
  rec(0);
  return counts;
}

}  // namespace isotori::oracle
