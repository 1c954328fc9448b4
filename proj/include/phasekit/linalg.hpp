#pragma once

#include <cstddef>
#include <vector>

#include "phasekit/gaussian.hpp"

namespace phasekit {

/// Dense matrix over Q(i), row-major.
class GaussMatrix {
 public:
  GaussMatrix() = default;
  GaussMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  GaussQ& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const GaussQ& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  void append_row(const std::vector<GaussQ>& row);

  /// Reduced row echelon form in place; returns pivot columns.
  std::vector<std::size_t> rref();
  std::size_t rank() const;
  /// Basis of the right nullspace, one vector per free column.
  std::vector<std::vector<GaussQ>> nullspace() const;
  GaussQ determinant() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<GaussQ> data_;
};

}  // namespace phasekit
