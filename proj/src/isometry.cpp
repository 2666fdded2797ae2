#include "isotori/isometry.hpp"

#include <algorithm>
#include <atomic>
#include <future>
#include <numeric>

#include "isotori/enumeration.hpp"

namespace isotori {

namespace {

using Coord = std::int64_t;
using Wide = __int128;

Coord to_coord(const Int& z) {
  if (!z.fits_slong_p() || abs(z) > (Int(1) << 62))
    throw std::overflow_error("integral_equivalence: entry too large for the search kernel");
  return z.get_si();
}

struct Candidate {
  std::vector<Coord> x;  // coordinates of the column
  std::vector<Coord> y;  // source form times x
};

// Depth-first column assignment over precomputed candidate sets.
class ColumnSearch {
 public:
  ColumnSearch(const std::vector<std::vector<Candidate>>& candidates,
               const std::vector<Eigen::Index>& order, const Matrix<Coord>& target,
               std::uint64_t node_limit, std::atomic<bool>& stop, std::atomic<std::uint64_t>& nodes)
      : candidates_(candidates), order_(order), target_(target), node_limit_(node_limit),
        stop_(stop), nodes_(nodes), chosen_(order.size(), nullptr) {}

  // Explores the subtree below the given candidate for the first column.
  bool run_from(const Candidate& first) {
    chosen_[0] = &first;
    count_node();
    return descend(1);
  }

  std::vector<const Candidate*> solution() const { return chosen_; }

 private:
  void count_node() {
    const auto n = ++nodes_;
    if (node_limit_ != 0 && n > node_limit_) {
      stop_ = true;
      throw SearchBudgetExceeded("integral_equivalence: node limit exceeded");
    }
  }

  bool descend(std::size_t depth) {
    if (depth == order_.size()) return true;
    if (stop_) return false;
    const Eigen::Index col = order_[depth];
    for (const Candidate& c : candidates_[col]) {
      bool fits = true;
      for (std::size_t e = 0; e < depth && fits; ++e) {
        const Candidate& placed = *chosen_[e];
        Wide dot = 0;
        for (std::size_t k = 0; k < c.y.size(); ++k) dot += Wide(placed.x[k]) * c.y[k];
        fits = dot == Wide(target_(order_[e], col));
      }
      if (!fits) continue;
      chosen_[depth] = &c;
      count_node();
      if (descend(depth + 1)) return true;
      if (stop_) return false;
    }
    return false;
  }

  const std::vector<std::vector<Candidate>>& candidates_;
  const std::vector<Eigen::Index>& order_;
  const Matrix<Coord>& target_;
  std::uint64_t node_limit_;
  std::atomic<bool>& stop_;
  std::atomic<std::uint64_t>& nodes_;
  std::vector<const Candidate*> chosen_;
};

Candidate make_candidate(const IntVector& x, const IntMatrix& source) {
  Candidate c;
  const IntVector y = source * x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    c.x.push_back(to_coord(x(i)));
    c.y.push_back(to_coord(y(i)));
  }
  return c;
}

}  // namespace

std::vector<Rat> norm_caps(const GramForm& q1, const GramForm& q2, const Rat& lambda_bound) {
  if (lambda_bound <= 0) throw std::invalid_argument("norm_caps: lambda bound must be positive");
  if (q1.dimension() != q2.dimension()) throw DimensionError("norm_caps: dimension mismatch");
  std::vector<Rat> caps;
  for (Eigen::Index j = 0; j < q2.dimension(); ++j) caps.push_back(q2.matrix()(j, j) / lambda_bound);
  return caps;
}

bool verify_witness(const GramForm& q1, const GramForm& q2, const IntMatrix& b) {
  if (b.rows() != q1.dimension() || b.cols() != q1.dimension() ||
      q2.dimension() != q1.dimension())
    return false;
  const RatMatrix br = to_rat(b);
  if (RatMatrix(br.transpose() * q1.matrix() * br) != q2.matrix()) return false;
  return abs(determinant(b)) == 1;
}

EquivalenceWitness integral_equivalence(const GramForm& q1, const GramForm& q2,
                                        const EquivalenceOptions& options) {
  if (q1.dimension() != q2.dimension())
    throw DimensionError("integral_equivalence: forms have different dimensions");
  const Eigen::Index n = q1.dimension();
  EquivalenceWitness result;
  SearchStats& stats = result.stats;

  if (determinant(q1.matrix()) != determinant(q2.matrix())) {
    stats.determinant_gate = true;
    return result;
  }
  if (n == 0) {
    result.transform = IntMatrix(0, 0);
    return result;
  }

  IntMatrix u1 = IntMatrix::Identity(n, n);
  IntMatrix u2 = IntMatrix::Identity(n, n);
  RatMatrix s1 = q1.matrix();
  RatMatrix s2 = q2.matrix();
  if (options.reduce) {
    LllResult r1 = lll_reduce_gram(s1);
    LllResult r2 = lll_reduce_gram(s2);
    s1 = std::move(r1.gram);
    s2 = std::move(r2.gram);
    u1 = std::move(r1.transform);
    u2 = std::move(r2.transform);
    stats.reduced = true;
  }

  if (options.lambda_bound) {
    if (!certifies_lower_bound(s1, *options.lambda_bound))
      throw std::invalid_argument("integral_equivalence: lambda bound " +
                                  to_string(*options.lambda_bound) +
                                  " exceeds the smallest eigenvalue of the source form");
    stats.lambda_bound = *options.lambda_bound;
  } else {
    stats.lambda_bound = eigenvalue_lower_bound(s1, options.eps);
  }
  const GramForm source(s1);
  const GramForm target(s2);
  stats.norm_caps = norm_caps(source, target, stats.lambda_bound);

  // Candidate sets: vectors whose value under the source form equals the
  // target diagonal entry.
  Rat largest = s2(0, 0);
  for (Eigen::Index j = 1; j < n; ++j) largest = std::max(largest, Rat(s2(j, j)));
  const auto vectors = enumerate_up_to(source, largest, options.jobs);

  const Int scale = lcm(denominator_lcm(s1), denominator_lcm(s2));
  const IntMatrix int_source = to_int(RatMatrix(Rat(scale) * s1));
  const IntMatrix int_target = to_int(RatMatrix(Rat(scale) * s2));
  Matrix<Coord> target_entries(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) target_entries(i, j) = to_coord(int_target(i, j));

  std::vector<std::vector<const ShortVector*>> sets(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) {
    for (const auto& v : vectors) {
      if (v.norm != s2(j, j)) continue;
      if (Rat(v.coords.squaredNorm()) > stats.norm_caps[j])
        throw std::logic_error("integral_equivalence: candidate violates the eigenvalue cap");
      sets[j].push_back(&v);
    }
    stats.candidate_counts.push_back(2 * sets[j].size());
  }

  stats.column_order.resize(static_cast<std::size_t>(n));
  std::iota(stats.column_order.begin(), stats.column_order.end(), 0);
  std::stable_sort(stats.column_order.begin(), stats.column_order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return sets[a].size() < sets[b].size(); });
  for (const auto& s : sets)
    if (s.empty()) return result;

  // The first assigned column keeps only the canonical sign: -B is a witness
  // whenever B is.
  const Eigen::Index first_col = stats.column_order.front();
  std::vector<std::vector<Candidate>> candidates(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) {
    for (const ShortVector* v : sets[j]) {
      candidates[j].push_back(make_candidate(v->coords, int_source));
      if (j != first_col) candidates[j].push_back(make_candidate(-v->coords, int_source));
    }
  }

  std::atomic<bool> stop{false};
  std::atomic<std::uint64_t> nodes{0};
  std::optional<std::vector<const Candidate*>> found;
  const auto& firsts = candidates[first_col];

  auto explore = [&](std::size_t begin, std::size_t step) -> std::optional<std::vector<const Candidate*>> {
    ColumnSearch search(candidates, stats.column_order, target_entries, options.node_limit, stop, nodes);
    for (std::size_t i = begin; i < firsts.size(); i += step) {
      if (stop) break;
      if (search.run_from(firsts[i])) {
        stop = true;
        return search.solution();
      }
    }
    return std::nullopt;
  };

  if (options.jobs <= 1 || firsts.size() < 2) {
    found = explore(0, 1);
  } else {
    const std::size_t workers = std::min<std::size_t>(options.jobs, firsts.size());
    std::vector<std::future<std::optional<std::vector<const Candidate*>>>> futures;
    for (std::size_t w = 0; w < workers; ++w)
      futures.push_back(std::async(std::launch::async, explore, w, workers));
    std::exception_ptr error;
    for (auto& f : futures) {
      try {
        auto r = f.get();
        if (r && !found) found = std::move(r);
      } catch (...) {
        if (!error) error = std::current_exception();
      }
    }
    if (error && !found) std::rethrow_exception(error);
  }
  stats.nodes_visited = nodes;
  if (!found) return result;

  IntMatrix b_reduced(n, n);
  for (std::size_t d = 0; d < found->size(); ++d) {
    const Eigen::Index col = stats.column_order[d];
    for (Eigen::Index i = 0; i < n; ++i) b_reduced(i, col) = Int(static_cast<long>((*found)[d]->x[i]));
  }
  const IntMatrix u2_inv = to_int(inverse(to_rat(u2)));
  IntMatrix b = u1 * b_reduced * u2_inv;
  if (!verify_witness(q1, q2, b))
    throw std::logic_error("integral_equivalence: witness failed exact verification");
  result.transform = std::move(b);
  return result;
}

EquivalenceWitness congruent_lattices(const Lattice& a, const Lattice& b,
                                      const EquivalenceOptions& options) {
  if (a.dimension() != b.dimension())
    throw DimensionError("congruent_lattices: lattices have different dimensions");
  return integral_equivalence(gram(a), gram(b), options);
}

}  // namespace isotori
