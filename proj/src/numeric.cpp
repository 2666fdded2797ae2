#include "isotori/numeric.hpp"

#include <algorithm>
#include <utility>

namespace isotori {

Int floor(const Rat& r) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

Int ceil(const Rat& r) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

Int round_nearest(const Rat& r) { return floor(r + Rat(1, 2)); }

Int floor_sqrt(const Rat& r) {
  if (r < 0) throw std::domain_error("floor_sqrt of a negative number");
  // sqrt(p/q) = sqrt(p q) / q, and floor(x / q) = floor(floor(x) / q).
  Int pq = r.get_num() * r.get_den();
  Int root;
  mpz_sqrt(root.get_mpz_t(), pq.get_mpz_t());
  Int out;
  mpz_fdiv_q(out.get_mpz_t(), root.get_mpz_t(), r.get_den_mpz_t());
  return out;
}

std::string to_string(const Rat& r) { return r.get_str(); }
std::string to_string(const Int& z) { return z.get_str(); }

IntMatrix to_int(const RatMatrix& m) {
  IntMatrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (!is_integral(m(i, j)))
        throw IntegralityError("entry (" + std::to_string(i) + "," + std::to_string(j) +
                               ") = " + m(i, j).get_str() + " is not an integer");
      out(i, j) = m(i, j).get_num();
    }
  return out;
}

IntVector to_int(const RatVector& v) {
  RatMatrix m = v;
  IntMatrix out = to_int(m);
  return out.col(0);
}

Int denominator_lcm(const RatMatrix& m) {
  Int l = 1;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
  return l;
}

// ---------------------------------------------------------------------------

RatMatrix inverse(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("inverse: matrix is not square");
  const Eigen::Index n = m.rows();
  RatMatrix a = m;
  RatMatrix inv = RatMatrix::Identity(n, n);
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = col;
    while (pivot < n && a(pivot, col) == 0) ++pivot;
    if (pivot == n) throw RankError("inverse: matrix is singular");
    if (pivot != col) {
      a.row(pivot).swap(a.row(col));
      inv.row(pivot).swap(inv.row(col));
    }
    const Rat scale = 1 / a(col, col);
    a.row(col) *= scale;
    inv.row(col) *= scale;
    for (Eigen::Index r = 0; r < n; ++r) {
      if (r == col || a(r, col) == 0) continue;
      const Rat f = a(r, col);
      a.row(r) -= f * a.row(col);
      inv.row(r) -= f * inv.row(col);
    }
  }
  return inv;
}

RatVector solve(const RatMatrix& m, const RatVector& b) {
  if (m.rows() != b.rows()) throw DimensionError("solve: right-hand side has wrong length");
  return inverse(m) * b;
}

Eigen::Index rank(const RatMatrix& m) {
  RatMatrix a = m;
  Eigen::Index r = 0;
  for (Eigen::Index col = 0; col < a.cols() && r < a.rows(); ++col) {
    Eigen::Index pivot = r;
    while (pivot < a.rows() && a(pivot, col) == 0) ++pivot;
    if (pivot == a.rows()) continue;
    a.row(pivot).swap(a.row(r));
    for (Eigen::Index i = r + 1; i < a.rows(); ++i) {
      if (a(i, col) == 0) continue;
      const Rat f = a(i, col) / a(r, col);
      a.row(i) -= f * a.row(r);
    }
    ++r;
  }
  return r;
}

// ---------------------------------------------------------------------------

LdlFactor ldl(const RatMatrix& q) {
  if (!is_symmetric(q)) throw DimensionError("ldl: matrix is not symmetric");
  const Eigen::Index n = q.rows();
  LdlFactor f{RatMatrix::Identity(n, n), std::vector<Rat>(static_cast<std::size_t>(n))};
  for (Eigen::Index j = 0; j < n; ++j) {
    Rat d = q(j, j);
    for (Eigen::Index k = 0; k < j; ++k) d -= f.lower(j, k) * f.lower(j, k) * f.diag[k];
    if (d <= 0)
      throw NotPositiveDefinite("ldl: pivot " + std::to_string(j) + " is " + d.get_str());
    f.diag[j] = d;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      Rat s = q(i, j);
      for (Eigen::Index k = 0; k < j; ++k) s -= f.lower(i, k) * f.lower(j, k) * f.diag[k];
      f.lower(i, j) = s / d;
    }
  }
  return f;
}

IntMatrix hnf(const IntMatrix& m) {
  IntMatrix h = m;
  const Eigen::Index rows = h.rows();
  const Eigen::Index cols = h.cols();
  Eigen::Index p = 0;
  Int g, s, t;
  for (Eigen::Index i = 0; i < rows && p < cols; ++i) {
    for (Eigen::Index j = p + 1; j < cols; ++j) {
      if (h(i, j) == 0) continue;
      if (h(i, p) == 0) {
        h.col(p).swap(h.col(j));
        continue;
      }
      const Int a = h(i, p);
      const Int b = h(i, j);
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      const Int a_g = a / g;
      const Int b_g = b / g;
      for (Eigen::Index r = 0; r < rows; ++r) {
        const Int cp = h(r, p);
        const Int cj = h(r, j);
        h(r, p) = s * cp + t * cj;
        h(r, j) = a_g * cj - b_g * cp;
      }
    }
    if (h(i, p) == 0) continue;
    if (h(i, p) < 0) h.col(p) = -h.col(p);
    const Int pivot = h(i, p);
    for (Eigen::Index j = 0; j < p; ++j) {
      Int f;
      mpz_fdiv_q(f.get_mpz_t(), h(i, j).get_mpz_t(), pivot.get_mpz_t());
      if (f != 0) h.col(j) -= f * h.col(p);
    }
    ++p;
  }
  return h.leftCols(p);
}

IntMatrix hnf(const RatMatrix& m) { return hnf(to_int(m)); }

LllResult lll_reduce_gram(const RatMatrix& gram, const Rat& delta) {
  if (!(delta > Rat(1, 4) && delta < 1))
    throw std::invalid_argument("lll: delta must lie strictly between 1/4 and 1");
  if (!is_symmetric(gram)) throw DimensionError("lll: Gram matrix is not symmetric");
  const Eigen::Index n = gram.rows();
  RatMatrix g = gram;
  IntMatrix u = IntMatrix::Identity(n, n);
  RatMatrix mu = RatMatrix::Zero(n, n);
  std::vector<Rat> bs(static_cast<std::size_t>(n));

  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < i; ++j) {
      Rat s = g(i, j);
      for (Eigen::Index k = 0; k < j; ++k) s -= mu(j, k) * mu(i, k) * bs[k];
      mu(i, j) = s / bs[j];
    }
    Rat b = g(i, i);
    for (Eigen::Index k = 0; k < i; ++k) b -= mu(i, k) * mu(i, k) * bs[k];
    if (b <= 0) throw RankError("lll: basis vectors are linearly dependent");
    bs[i] = b;
  }

  auto size_reduce = [&](Eigen::Index k, Eigen::Index l) {
    const Int r = round_nearest(mu(k, l));
    if (r == 0) return;
    const Rat rq(r);
    u.col(k) -= r * u.col(l);
    g.row(k) -= rq * g.row(l);
    g.col(k) -= rq * g.col(l);
    mu(k, l) -= rq;
    for (Eigen::Index i = 0; i < l; ++i) mu(k, i) -= rq * mu(l, i);
  };

  auto swap_down = [&](Eigen::Index k) {
    u.col(k).swap(u.col(k - 1));
    g.row(k).swap(g.row(k - 1));
    g.col(k).swap(g.col(k - 1));
    for (Eigen::Index j = 0; j + 1 < k; ++j) std::swap(mu(k, j), mu(k - 1, j));
    const Rat m = mu(k, k - 1);
    const Rat b = bs[k] + m * m * bs[k - 1];
    mu(k, k - 1) = m * bs[k - 1] / b;
    bs[k] = bs[k - 1] * bs[k] / b;
    bs[k - 1] = b;
    for (Eigen::Index i = k + 1; i < n; ++i) {
      const Rat t = mu(i, k);
      mu(i, k) = mu(i, k - 1) - m * t;
      mu(i, k - 1) = t + mu(k, k - 1) * mu(i, k);
    }
  };

  Eigen::Index k = 1;
  while (k < n) {
    size_reduce(k, k - 1);
    if (bs[k] < (delta - mu(k, k - 1) * mu(k, k - 1)) * bs[k - 1]) {
      swap_down(k);
      k = std::max<Eigen::Index>(1, k - 1);
    } else {
      for (Eigen::Index l = k - 2; l >= 0; --l) size_reduce(k, l);
      ++k;
    }
  }
  return {g, u};
}

RatMatrix lll_reduce(const RatMatrix& basis, const Rat& delta) {
  if (basis.cols() > basis.rows()) throw RankError("lll: more basis vectors than dimensions");
  RatMatrix g = basis.transpose() * basis;
  LllResult r = lll_reduce_gram(g, delta);
  return basis * to_rat(r.transform);
}

// ---------------------------------------------------------------------------

namespace {

void trim(Polynomial& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Polynomial derivative(const Polynomial& p) {
  Polynomial d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<unsigned long>(i));
  trim(d);
  return d;
}

Polynomial remainder(Polynomial a, const Polynomial& b) {
  trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    const Rat f = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

std::vector<Polynomial> sturm_sequence(const Polynomial& p) {
  std::vector<Polynomial> seq{p};
  trim(seq.back());
  Polynomial d = derivative(seq.back());
  if (d.empty()) return seq;
  seq.push_back(d);
  while (seq.back().size() > 1) {
    Polynomial r = remainder(seq[seq.size() - 2], seq.back());
    if (r.empty()) break;
    for (Rat& c : r) c = -c;
    seq.push_back(std::move(r));
  }
  return seq;
}

std::size_t sign_changes(const std::vector<Polynomial>& seq, const Rat& x) {
  std::size_t changes = 0;
  int last = 0;
  for (const Polynomial& p : seq) {
    const int s = sgn(evaluate(p, x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace

Polynomial char_poly(const RatMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionError("char_poly: matrix is not square");
  const Eigen::Index n = a.rows();
  Polynomial c(static_cast<std::size_t>(n) + 1);
  c[n] = 1;
  RatMatrix m = RatMatrix::Zero(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    m = a * m;
    for (Eigen::Index i = 0; i < n; ++i) m(i, i) += c[n - k + 1];
    RatMatrix am = a * m;
    c[n - k] = -am.trace() / Rat(k);
  }
  return c;
}

Rat evaluate(const Polynomial& p, const Rat& x) {
  Rat acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::size_t sturm_root_count(const Polynomial& p, const Rat& a, const Rat& b) {
  if (b <= a) return 0;
  const auto seq = sturm_sequence(p);
  const std::size_t va = sign_changes(seq, a);
  const std::size_t vb = sign_changes(seq, b);
  return va >= vb ? va - vb : 0;
}

Rat eigenvalue_lower_bound(const RatMatrix& q, const Rat& eps) {
  if (eps <= 0) throw std::invalid_argument("eigenvalue_lower_bound: eps must be positive");
  ldl(q);  // positive definiteness
  const Polynomial p = char_poly(q);
  const auto seq = sturm_sequence(p);
  const std::size_t at_zero = sign_changes(seq, Rat(0));

  // Invariant: no root in (0, lo]; at least one root in (0, hi].
  Rat lo = 0;
  Rat hi = q(0, 0);
  for (Eigen::Index i = 1; i < q.rows(); ++i) hi = std::min(hi, Rat(q(i, i)));
  while (lo == 0 || hi - lo > eps) {
    const Rat mid = (lo + hi) / 2;
    if (evaluate(p, mid) == 0 || sign_changes(seq, mid) < at_zero)
      hi = mid;
    else
      lo = mid;
  }
  return lo;
}

bool certifies_lower_bound(const RatMatrix& q, const Rat& bound) {
  ldl(q);
  if (bound <= 0) return true;
  const Polynomial p = char_poly(q);
  std::size_t below = sturm_root_count(p, Rat(0), bound);
  if (evaluate(p, bound) == 0) --below;
  return below == 0;
}

}  // namespace isotori
