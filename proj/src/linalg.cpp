#include "jetforge/linalg.hpp"

#include <stdexcept>

namespace jetforge {

int polyMatrixRank(std::vector<std::vector<Poly>> m) {
  if (m.empty()) return 0;
  size_t rows = m.size(), cols = m[0].size();
  Poly prev(mpq_class(1));
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    // pick the smallest nonzero pivot in this column to keep entries tame
    size_t best = rows;
    for (size_t i = r; i < rows; ++i) {
      if (m[i][c].isZero()) continue;
      if (best == rows || m[i][c].size() < m[best][c].size()) best = i;
    }
    if (best == rows) continue;
    std::swap(m[r], m[best]);
    for (size_t i = r + 1; i < rows; ++i) {
      for (size_t j = c + 1; j < cols; ++j) {
        Poly num = m[r][c] * m[i][j] - m[i][c] * m[r][j];
        auto q = polyDivExact(num, prev);
        if (!q) throw std::logic_error("Bareiss division failed");
        m[i][j] = std::move(*q);
      }
      m[i][c] = Poly();
    }
    prev = m[r][c];
    ++r;
  }
  return static_cast<int>(r);
}

int quadMatrixRank(std::vector<std::vector<QuadVal>> m) {
  if (m.empty()) return 0;
  size_t rows = m.size(), cols = m[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = rows;
    for (size_t i = r; i < rows; ++i)
      if (!m[i][c].isZero()) {
        piv = i;
        break;
      }
    if (piv == rows) continue;
    std::swap(m[r], m[piv]);
    QuadVal inv = m[r][c].inverse();
    for (size_t i = r + 1; i < rows; ++i) {
      if (m[i][c].isZero()) continue;
      QuadVal f = m[i][c] * inv;
      for (size_t j = c; j < cols; ++j) m[i][j] = m[i][j] - f * m[r][j];
    }
    ++r;
  }
  return static_cast<int>(r);
}

}  // namespace jetforge
