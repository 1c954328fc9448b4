#include "phasekit/linalg.hpp"

#include <stdexcept>

namespace phasekit {

void GaussMatrix::append_row(const std::vector<GaussQ>& row) {
  if (rows_ == 0 && cols_ == 0) cols_ = row.size();
  if (row.size() != cols_) throw std::invalid_argument("append_row: width mismatch");
  data_.insert(data_.end(), row.begin(), row.end());
  ++rows_;
}

std::vector<std::size_t> GaussMatrix::rref() {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
    std::size_t p = r;
    while (p < rows_ && (*this)(p, c).is_zero()) ++p;
    if (p == rows_) continue;
    if (p != r) {
      for (std::size_t k = 0; k < cols_; ++k) std::swap((*this)(p, k), (*this)(r, k));
    }
    const GaussQ inv = (*this)(r, c).inverse();
    for (std::size_t k = c; k < cols_; ++k) (*this)(r, k) *= inv;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r || (*this)(i, c).is_zero()) continue;
      const GaussQ f = (*this)(i, c);
      for (std::size_t k = c; k < cols_; ++k) {
        if (!(*this)(r, k).is_zero()) (*this)(i, k) -= f * (*this)(r, k);
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t GaussMatrix::rank() const {
  GaussMatrix m = *this;
  return m.rref().size();
}

std::vector<std::vector<GaussQ>> GaussMatrix::nullspace() const {
  GaussMatrix m = *this;
  const auto pivots = m.rref();
  std::vector<bool> is_pivot(cols_, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<GaussQ>> basis;
  for (std::size_t f = 0; f < cols_; ++f) {
    if (is_pivot[f]) continue;
    std::vector<GaussQ> v(cols_);
    v[f] = GaussQ(1);
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -m(k, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

GaussQ GaussMatrix::determinant() const {
  if (rows_ != cols_) throw std::invalid_argument("determinant of non-square matrix");
  GaussMatrix m = *this;
  GaussQ det(1);
  for (std::size_t c = 0; c < cols_; ++c) {
    std::size_t p = c;
    while (p < rows_ && m(p, c).is_zero()) ++p;
    if (p == rows_) return GaussQ(0);
    if (p != c) {
      for (std::size_t k = 0; k < cols_; ++k) std::swap(m(p, k), m(c, k));
      det = -det;
    }
    det *= m(c, c);
    const GaussQ inv = m(c, c).inverse();
    for (std::size_t i = c + 1; i < rows_; ++i) {
      if (m(i, c).is_zero()) continue;
      const GaussQ f = m(i, c) * inv;
      for (std::size_t k = c; k < cols_; ++k) m(i, k) -= f * m(c, k);
    }
  }
  return det;
}

}  // namespace phasekit
