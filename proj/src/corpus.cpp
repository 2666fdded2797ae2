#include "isotori/corpus.hpp"

#include <array>
#include <stdexcept>

namespace isotori::corpus {

namespace {

using Rows = std::array<std::array<int, 6>, 6>;

constexpr std::array<Rows, 3> kBases{{
    {{{1, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0},
      {1, 1, 0, 5, 0, 0}, {2, 0, 1, 0, 5, 0}, {1, 2, 1, 0, 0, 5}}},
    {{{1, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0},
      {2, 1, 0, 5, 0, 0}, {0, 1, 1, 0, 5, 0}, {3, 2, 1, 0, 0, 5}}},
    {{{1, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0},
      {2, 1, 0, 5, 0, 0}, {0, 1, 1, 0, 5, 0}, {2, 3, 1, 0, 0, 5}}},
}};

constexpr std::array<Rows, 3> kGrams{{
    {{{7, 3, 3, 5, 10, 5}, {3, 6, 2, 5, 0, 10}, {3, 2, 3, 0, 5, 5},
      {5, 5, 0, 25, 0, 0}, {10, 0, 5, 0, 25, 0}, {5, 10, 5, 0, 0, 25}}},
    {{{14, 8, 3, 10, 0, 15}, {8, 7, 3, 5, 5, 10}, {3, 3, 3, 0, 5, 5},
      {10, 5, 0, 25, 0, 0}, {0, 5, 5, 0, 25, 0}, {15, 10, 5, 0, 0, 25}}},
    {{{9, 8, 2, 10, 0, 10}, {8, 12, 4, 5, 5, 15}, {2, 4, 3, 0, 5, 5},
      {10, 5, 0, 25, 0, 0}, {0, 5, 5, 0, 25, 0}, {10, 15, 5, 0, 0, 25}}},
}};

constexpr std::array<std::uint64_t, 47> kTable{
    1,   0,   0,   2,   2,   2,   2,   10,  8,   4,   12,  16,  22,  18,  20,  32,
    30,  34,  46,  52,  48,  28,  78,  102, 54,  70,  68,  120, 124, 64,  104, 124,
    160, 112, 110, 184, 108, 162, 230, 164, 200, 132, 220, 366, 202, 170, 236};

const Rows& pick(const std::array<Rows, 3>& table, int i) {
  if (i < 1 || i > 3) throw std::out_of_range("corpus: index must be 1, 2 or 3");
  return table[static_cast<std::size_t>(i - 1)];
}

IntMatrix to_matrix(const Rows& rows) {
  IntMatrix m(6, 6);
  for (int r = 0; r < 6; ++r)
    for (int c = 0; c < 6; ++c) m(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
  return m;
}

IntVector vec(std::initializer_list<int> entries) {
  IntVector v(static_cast<Eigen::Index>(entries.size()));
  Eigen::Index i = 0;
  for (int e : entries) v(i++) = e;
  return v;
}

}  // namespace

IntMatrix basis(int i) { return to_matrix(pick(kBases, i)); }

Lattice lattice(int i) { return Lattice(to_rat(basis(i))); }

IntMatrix gram_matrix(int i) { return to_matrix(pick(kGrams, i)); }

GramForm form(int i) { return GramForm(to_rat(gram_matrix(i))); }

CodeMatrix code_generators(int i) {
  const IntMatrix a = basis(i);
  CodeMatrix g(3, 6);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 6; ++c) g(r, c) = static_cast<int>(a(c, r).get_si());
  return g;
}

std::vector<std::pair<int, std::uint64_t>> doubled_table() {
  std::vector<std::pair<int, std::uint64_t>> out;
  for (std::size_t i = 0; i < kTable.size(); ++i) out.emplace_back(static_cast<int>(2 * i), kTable[i]);
  return out;
}

Rat quoted_lambda() { return Rat(263, 400); }

std::vector<Rat> quoted_caps() {
  return {Rat(5600, 263), Rat(2800, 263), Rat(1200, 263), Rat(10000, 263), Rat(10000, 263), Rat(10000, 263)};
}

std::vector<LadderStage> ladder() {
  return {
      {Rat(3), {vec({0, 0, 1, 0, 1, 1})}},
      {Rat(4), {vec({1, 0, -1, 1, 1, 0})}},
      {Rat(5), {vec({0, 1, -1, 1, -1, 1})}},
      {Rat(7), {vec({2, -1, 0, 1, -1, 0}), vec({1, -1, 1, 0, -2, 0})}},
      {Rat(8), {vec({0, 1, 1, 1, 1, -2})}},
      {Rat(10), {vec({2, 1, 1, -2, 0, 0})}},
  };
}

IntVector quoted_stage5_vector() { return vec({1, 0, 1, 2, 1, -1}); }

}  // namespace isotori::corpus
