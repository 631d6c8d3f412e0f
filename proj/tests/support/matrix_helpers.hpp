#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "bmmparse/bool_matrix.hpp"

namespace test_support {

/// Matrix literal from row strings, e.g. make_matrix({"10", "01"}).
inline bmmparse::BooleanMatrix make_matrix(const std::vector<std::string>& rows) {
  bmmparse::BooleanMatrix out(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) throw std::invalid_argument("make_matrix: not square");
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      if (rows[i][j] == '1') out.set(i + 1, j + 1, true);
    }
  }
  return out;
}

/// Independent reference product: scalar triple loop over the public 1-based
/// interface, no packed-word shortcuts. The library multiplies word-parallel;
/// this deliberately does not.
inline bmmparse::BooleanMatrix scalar_bmm(const bmmparse::BooleanMatrix& a,
                                          const bmmparse::BooleanMatrix& b) {
  const std::size_t m = a.dim();
  if (b.dim() != m) throw std::invalid_argument("scalar_bmm: dimension mismatch");
  bmmparse::BooleanMatrix c(m);
  for (std::size_t i = 1; i <= m; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      bool any = false;
      for (std::size_t k = 1; k <= m && !any; ++k) {
        if (a.get(i, k) && b.get(k, j)) any = true;
      }
      if (any) c.set(i, j, true);
    }
  }
  return c;
}

inline bmmparse::BooleanMatrix identity(std::size_t m) {
  bmmparse::BooleanMatrix out(m);
  for (std::size_t i = 1; i <= m; ++i) out.set(i, i, true);
  return out;
}

inline bmmparse::BooleanMatrix all_ones(std::size_t m) {
  bmmparse::BooleanMatrix out(m);
  for (std::size_t i = 1; i <= m; ++i) {
    for (std::size_t j = 1; j <= m; ++j) out.set(i, j, true);
  }
  return out;
}

}  // namespace test_support
