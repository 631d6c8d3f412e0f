#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace bmmparse {

/// Square 0/1 matrix with rows packed into 64-bit words.
/// Indices are 1-based at the public interface.
class BooleanMatrix {
 public:
  explicit BooleanMatrix(std::size_t m)
      : m_(m), words_per_row_((m + 63) / 64), bits_(m * words_per_row_, 0) {
    if (m == 0) throw std::invalid_argument("BooleanMatrix: dimension must be >= 1");
  }

  std::size_t dim() const { return m_; }

  bool get(std::size_t i, std::size_t j) const {
    check_index(i, j);
    const std::size_t c = j - 1;
    return (row_word(i - 1, c / 64) >> (c % 64)) & 1u;
  }

  void set(std::size_t i, std::size_t j, bool value) {
    check_index(i, j);
    const std::size_t c = j - 1;
    std::uint64_t& w = bits_[(i - 1) * words_per_row_ + c / 64];
    const std::uint64_t mask = std::uint64_t{1} << (c % 64);
    w = value ? (w | mask) : (w & ~mask);
  }

  /// Number of 1-entries.
  std::size_t popcount() const {
    std::size_t total = 0;
    for (std::uint64_t w : bits_) total += static_cast<std::size_t>(__builtin_popcountll(w));
    return total;
  }

  bool all_zero() const {
    for (std::uint64_t w : bits_) {
      if (w != 0) return false;
    }
    return true;
  }

  std::size_t words_per_row() const { return words_per_row_; }
  std::uint64_t row_word(std::size_t row0, std::size_t word) const {
    return bits_[row0 * words_per_row_ + word];
  }
  std::uint64_t* row_data(std::size_t row0) { return bits_.data() + row0 * words_per_row_; }
  const std::uint64_t* row_data(std::size_t row0) const {
    return bits_.data() + row0 * words_per_row_;
  }

  friend bool operator==(const BooleanMatrix& a, const BooleanMatrix& b) {
    return a.m_ == b.m_ && a.bits_ == b.bits_;
  }

 private:
  void check_index(std::size_t i, std::size_t j) const {
    if (i < 1 || i > m_ || j < 1 || j > m_)
      throw std::out_of_range("BooleanMatrix: index out of range");
  }

  std::size_t m_;
  std::size_t words_per_row_;
  std::vector<std::uint64_t> bits_;
};

inline bool matrices_equal(const BooleanMatrix& a, const BooleanMatrix& b) { return a == b; }

namespace detail {
inline void require_same_dim(const BooleanMatrix& a, const BooleanMatrix& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("boolean product: dimension mismatch");
}
}  // namespace detail

/// Boolean product: c_ij = OR_k (a_ik AND b_kj).
/// Rows are combined word-parallel: whenever a_ik = 1, row k of b is OR-ed
/// into row i of the result, which is entrywise identical to the triple loop.
inline BooleanMatrix naive_bmm(const BooleanMatrix& a, const BooleanMatrix& b) {
  detail::require_same_dim(a, b);
  const std::size_t m = a.dim();
  const std::size_t wpr = a.words_per_row();
  BooleanMatrix c(m);
  for (std::size_t i = 0; i < m; ++i) {
    std::uint64_t* out = c.row_data(i);
    for (std::size_t k = 0; k < m; ++k) {
      if ((a.row_word(i, k / 64) >> (k % 64)) & 1u) {
        const std::uint64_t* src = b.row_data(k);
        for (std::size_t w = 0; w < wpr; ++w) out[w] |= src[w];
      }
    }
  }
  return c;
}

/// Four-Russians Boolean product: the k-dimension is cut into blocks of
/// ceil(log2 m) rows of b, all 2^b subset-ORs of each block are tabulated,
/// and every result row is assembled with one table lookup per block.
inline BooleanMatrix four_russians_bmm(const BooleanMatrix& a, const BooleanMatrix& b) {
  detail::require_same_dim(a, b);
  const std::size_t m = a.dim();
  const std::size_t wpr = a.words_per_row();
  std::size_t block = 1;
  while ((std::size_t{1} << block) < m) ++block;  // ceil(log2 m), min 1
  if (block > 16) block = 16;                     // keep tables bounded for huge m

  BooleanMatrix c(m);
  std::vector<std::uint64_t> table((std::size_t{1} << block) * wpr, 0);

  for (std::size_t k0 = 0; k0 < m; k0 += block) {
    const std::size_t width = std::min(block, m - k0);
    const std::size_t combos = std::size_t{1} << width;
    // table[mask] = OR of b rows k0+t for every bit t set in mask,
    // built incrementally from table[mask without lowest bit].
    for (std::size_t mask = 1; mask < combos; ++mask) {
      const std::size_t low = static_cast<std::size_t>(__builtin_ctzll(mask));
      const std::uint64_t* prev = table.data() + (mask & (mask - 1)) * wpr;
      const std::uint64_t* row = b.row_data(k0 + low);
      std::uint64_t* dst = table.data() + mask * wpr;
      for (std::size_t w = 0; w < wpr; ++w) dst[w] = prev[w] | row[w];
    }
    for (std::size_t i = 0; i < m; ++i) {
      // bits k0..k0+width-1 of row i of a, straddling at most two words
      const std::size_t word = k0 / 64, off = k0 % 64;
      std::uint64_t mask = a.row_word(i, word) >> off;
      if (off + width > 64 && word + 1 < wpr)
        mask |= a.row_word(i, word + 1) << (64 - off);
      mask &= (width == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << width) - 1);
      if (mask == 0) continue;
      const std::uint64_t* src = table.data() + mask * wpr;
      std::uint64_t* out = c.row_data(i);
      for (std::size_t w = 0; w < wpr; ++w) out[w] |= src[w];
    }
  }
  return c;
}

/// Seeded random matrix; an entry is 1 with probability `density`.
/// Uses raw mt19937_64 output so results are identical across platforms.
inline BooleanMatrix random_matrix(std::size_t m, double density, std::uint64_t seed) {
  if (density < 0.0 || density > 1.0)
    throw std::invalid_argument("random_matrix: density must be in [0,1]");
  BooleanMatrix out(m);
  std::mt19937_64 rng(seed);
  for (std::size_t i = 1; i <= m; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      if (u < density) out.set(i, j, true);
    }
  }
  return out;
}

}  // namespace bmmparse
