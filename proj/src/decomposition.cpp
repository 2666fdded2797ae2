#include "isotori/decomposition.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "isotori/enumeration.hpp"

namespace isotori {

namespace {

using Wide = __int128;

std::int64_t narrow(const Int& z) {
  if (!z.fits_slong_p()) throw std::overflow_error("decompose: entry too large");
  return z.get_si();
}

// Lattice vectors in LLL-reduced coordinates with an integer-scaled Gram
// matrix, so scalar products are exact integer dot products.
struct ReducedLattice {
  IntMatrix transform;       // input-basis coordinates = transform * reduced coordinates
  RatMatrix gram;            // reduced Gram matrix
  Int scale;                 // scale * gram is integral
  Matrix<std::int64_t> int_gram;

  explicit ReducedLattice(const Lattice& l) {
    LllResult red = lll_reduce_gram(isotori::gram(l).matrix());
    transform = std::move(red.transform);
    gram = std::move(red.gram);
    scale = denominator_lcm(gram);
    const IntMatrix g = to_int(RatMatrix(Rat(scale) * gram));
    int_gram.resize(g.rows(), g.cols());
    for (Eigen::Index i = 0; i < g.rows(); ++i)
      for (Eigen::Index j = 0; j < g.cols(); ++j) int_gram(i, j) = narrow(g(i, j));
  }
};

struct Node {
  IntVector coords;               // reduced coordinates
  std::vector<std::int64_t> x;    // same, narrowed
  std::vector<std::int64_t> gx;   // int_gram * x
  Wide norm = 0;                  // scaled norm
};

Node make_node(const IntVector& coords, const Matrix<std::int64_t>& g) {
  Node node{coords, {}, {}, 0};
  const Eigen::Index n = coords.size();
  for (Eigen::Index i = 0; i < n; ++i) node.x.push_back(narrow(coords(i)));
  for (Eigen::Index i = 0; i < n; ++i) {
    Wide acc = 0;
    for (Eigen::Index j = 0; j < n; ++j) acc += Wide(g(i, j)) * node.x[j];
    if (acc > Wide(INT64_MAX) || acc < Wide(INT64_MIN))
      throw std::overflow_error("decompose: scalar product too large");
    node.gx.push_back(static_cast<std::int64_t>(acc));
  }
  for (Eigen::Index i = 0; i < n; ++i) node.norm += Wide(node.x[i]) * node.gx[i];
  return node;
}

Wide dot(const Node& a, const Node& b) {
  Wide acc = 0;
  for (std::size_t i = 0; i < a.x.size(); ++i) acc += Wide(a.x[i]) * b.gx[i];
  return acc;
}

// v decomposes iff some shorter x (either sign) has <x, v> >= |x|^2; such an
// x automatically has |x|^2 < |v|^2.
bool decomposable(const Node& v, const std::vector<Node>& shorter) {
  for (const Node& x : shorter) {
    if (x.norm >= v.norm) break;
    Wide p = dot(x, v);
    if (p < 0) p = -p;
    if (p >= x.norm) return true;
  }
  return false;
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t i) {
  while (parent[i] != i) i = parent[i] = parent[parent[i]];
  return i;
}

}  // namespace

bool is_decomposable_vector(const Lattice& l, const RatVector& v) {
  const auto coords = coordinates(l, v);
  if (!coords) throw std::invalid_argument("is_decomposable_vector: vector is not in the lattice");
  if (coords->isZero()) throw std::invalid_argument("is_decomposable_vector: vector is zero");
  const ReducedLattice red(l);
  const IntVector reduced_coords = to_int(RatVector(inverse(to_rat(red.transform)) * to_rat(*coords)));
  const Node target = make_node(reduced_coords, red.int_gram);
  const Rat norm = Rat(v.squaredNorm());
  std::vector<Node> shorter;
  for (const auto& sv : enumerate_up_to(GramForm(red.gram), norm))
    if (sv.norm < norm) shorter.push_back(make_node(sv.coords, red.int_gram));
  return decomposable(target, shorter);
}

Decomposition decompose(const Lattice& l) {
  Decomposition out;
  const Eigen::Index n = l.dimension();
  if (n == 0) {
    out.certificate.orthogonal = out.certificate.dimensions_sum = out.certificate.generates = true;
    return out;
  }
  const ReducedLattice red(l);
  Rat cutoff = red.gram(0, 0);
  for (Eigen::Index i = 1; i < n; ++i) cutoff = std::max(cutoff, Rat(red.gram(i, i)));
  out.certificate.norm_cutoff = cutoff;

  std::vector<Node> nodes;
  for (const auto& sv : enumerate_up_to(GramForm(red.gram), cutoff))
    nodes.push_back(make_node(sv.coords, red.int_gram));
  out.certificate.vectors_enumerated = nodes.size();

  std::vector<std::size_t> vertices;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (!decomposable(nodes[i], nodes)) vertices.push_back(i);
  out.certificate.indecomposable = vertices.size();

  std::vector<std::size_t> parent(vertices.size());
  std::iota(parent.begin(), parent.end(), 0);
  for (std::size_t a = 0; a < vertices.size(); ++a)
    for (std::size_t b = a + 1; b < vertices.size(); ++b)
      if (dot(nodes[vertices[a]], nodes[vertices[b]]) != 0)
        parent[find_root(parent, a)] = find_root(parent, b);

  // Components in order of their first (shortest, then lexicographic) vertex.
  std::map<std::size_t, std::size_t> component_of_root;
  std::vector<std::vector<std::size_t>> members;
  for (std::size_t a = 0; a < vertices.size(); ++a) {
    const std::size_t root = find_root(parent, a);
    auto [it, inserted] = component_of_root.emplace(root, members.size());
    if (inserted) members.emplace_back();
    members[it->second].push_back(vertices[a]);
  }

  const RatMatrix to_ambient = l.basis() * to_rat(red.transform);
  IntMatrix all_generators(n, static_cast<Eigen::Index>(vertices.size()));
  Eigen::Index column = 0;
  Eigen::Index dimension_total = 0;
  for (const auto& group : members) {
    Component comp;
    IntMatrix gens(n, static_cast<Eigen::Index>(group.size()));
    for (std::size_t k = 0; k < group.size(); ++k) {
      const IntVector& y = nodes[group[k]].coords;
      gens.col(static_cast<Eigen::Index>(k)) = red.transform * y;
      all_generators.col(column++) = red.transform * y;
      comp.generators.push_back(canonical_sign(RatVector(to_ambient * to_rat(y))));
    }
    comp.coordinate_basis = hnf(gens);
    comp.dimension = comp.coordinate_basis.cols();
    comp.basis = l.basis() * to_rat(comp.coordinate_basis);
    dimension_total += comp.dimension;
    out.components.push_back(std::move(comp));
  }

  auto& cert = out.certificate;
  const std::size_t m = members.size();
  cert.cross_products.assign(m, std::vector<std::size_t>(m, 0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      for (std::size_t a : members[i])
        for (std::size_t b : members[j])
          if (dot(nodes[a], nodes[b]) != 0) ++cert.cross_products[i][j];
    }
  cert.orthogonal = true;
  for (const auto& row : cert.cross_products)
    for (std::size_t c : row) cert.orthogonal = cert.orthogonal && c == 0;
  cert.dimensions_sum = dimension_total == n;
  const IntMatrix joint = hnf(all_generators);
  cert.generates = joint.cols() == n && joint == IntMatrix::Identity(n, n);

  if (!cert.orthogonal || !cert.dimensions_sum || !cert.generates)
    throw InternalVerificationError("decompose: certificate failed (orthogonal=" +
                                    std::to_string(cert.orthogonal) +
                                    ", dimensions=" + std::to_string(cert.dimensions_sum) +
                                    ", generates=" + std::to_string(cert.generates) + ")");
  return out;
}

bool is_irreducible(const Lattice& l) { return decompose(l).components.size() == 1; }

}  // namespace isotori
