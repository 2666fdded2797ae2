#pragma once

// Small fixed-capacity matrices over F_p for the hot loops of code
// canonicalization and search.  Entries are bytes, so p < 256 and k * n <= 64.

#include <algorithm>
#include <array>
#include <cstdint>
#include <span>

namespace isotori::detail {

constexpr int kMaxEntries = 64;

struct SmallCode {
  int k = 0;
  int n = 0;
  std::array<std::uint8_t, kMaxEntries> a{};

  std::uint8_t& at(int r, int c) { return a[static_cast<std::size_t>(r * n + c)]; }
  std::uint8_t at(int r, int c) const { return a[static_cast<std::size_t>(r * n + c)]; }
  std::span<std::uint8_t> entries() { return {a.data(), static_cast<std::size_t>(k * n)}; }
  std::span<const std::uint8_t> entries() const { return {a.data(), static_cast<std::size_t>(k * n)}; }

  friend bool operator<(const SmallCode& x, const SmallCode& y) {
    const auto ex = x.entries();
    const auto ey = y.entries();
    return std::lexicographical_compare(ex.begin(), ex.end(), ey.begin(), ey.end());
  }
};

struct FieldTables {
  int p;
  std::array<std::uint8_t, 256> inv{};

  explicit FieldTables(int prime) : p(prime) {
    for (int x = 1; x < p; ++x)
      for (int y = 1; y < p; ++y)
        if (x * y % p == 1) inv[static_cast<std::size_t>(x)] = static_cast<std::uint8_t>(y);
  }
};

/// In-place reduced row echelon form; returns the rank.
inline int rref(SmallCode& m, const FieldTables& f) {
  const int p = f.p;
  int r = 0;
  for (int c = 0; c < m.n && r < m.k; ++c) {
    int pivot = -1;
    for (int i = r; i < m.k; ++i)
      if (m.at(i, c) != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != r)
      for (int j = c; j < m.n; ++j) std::swap(m.at(pivot, j), m.at(r, j));
    const int s = f.inv[m.at(r, c)];
    if (s != 1)
      for (int j = c; j < m.n; ++j) m.at(r, j) = static_cast<std::uint8_t>(m.at(r, j) * s % p);
    for (int i = 0; i < m.k; ++i) {
      if (i == r || m.at(i, c) == 0) continue;
      const int t = p - m.at(i, c);
      for (int j = c; j < m.n; ++j)
        m.at(i, j) = static_cast<std::uint8_t>((m.at(i, j) + t * m.at(r, j)) % p);
    }
    ++r;
  }
  return r;
}

/// Column j of the image is signs[j] * column perm[j] of the source.
inline void apply_signed_permutation(const SmallCode& in, const int* perm, const int* signs, int p,
                                     SmallCode& out) {
  out.k = in.k;
  out.n = in.n;
  for (int r = 0; r < in.k; ++r)
    for (int j = 0; j < in.n; ++j) {
      const int v = in.at(r, perm[j]);
      out.at(r, j) = static_cast<std::uint8_t>(signs[j] > 0 || v == 0 ? v : p - v);
    }
}

}  // namespace isotori::detail
