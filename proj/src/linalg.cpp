#include "braidforge/linalg.hpp"

#include <utility>

namespace braidforge {

Vector zero_vector(std::size_t d, ScalarMode mode) { return Vector(d, Scalar::zero(mode)); }

Vector basis_vector(std::size_t d, std::size_t i, ScalarMode mode) {
  Vector v = zero_vector(d, mode);
  v.at(i) = Scalar::one(mode);
  return v;
}

bool is_zero_vector(const Vector& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

bool equal_vectors(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

std::vector<std::size_t> row_reduce(DenseMatrix& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
    std::size_t best = m.size();
    for (std::size_t r = row; r < m.size(); ++r) {
      if (m[r][c].is_zero()) continue;
      if (best == m.size() || m[r][c].abs() > m[best][c].abs()) best = r;
      if (m[r][c].is_exact()) break;
    }
    if (best == m.size()) continue;
    std::swap(m[row], m[best]);
    const Scalar p = m[row][c];
    for (auto& x : m[row]) x /= p;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][c].is_zero()) continue;
      const Scalar f = m[r][c];
      for (std::size_t k = 0; k < cols; ++k) m[r][k] -= f * m[row][k];
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

std::size_t rank(DenseMatrix m, std::size_t cols) { return row_reduce(m, cols).size(); }

std::vector<Vector> null_space(DenseMatrix m, std::size_t cols) {
  const ScalarMode mode = (!m.empty() && !m[0].empty()) ? m[0][0].mode() : ScalarMode::exact;
  const auto pivots = row_reduce(m, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vector v = basis_vector(cols, free, mode);
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace braidforge
