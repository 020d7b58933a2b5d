// Apache License, Version 2.0, refer to LICENSE.txt
#ifndef ADDIVORTES_MATRIX_HPP
#define ADDIVORTES_MATRIX_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace addivortes {

/// Dense row-major matrix of doubles; rows are observations, columns covariates.
struct Matrix {
  std::vector<double> values;
  int rows = 0;
  int cols = 0;

  Matrix() = default;
  Matrix(int r, int c) : values(static_cast<std::size_t>(r) * c, 0.0), rows(r), cols(c) {}

  double operator()(int i, int j) const {
    return values[static_cast<std::size_t>(i) * cols + j];
  }
  double& operator()(int i, int j) {
    return values[static_cast<std::size_t>(i) * cols + j];
  }

  std::span<const double> row(int i) const {
    return {values.data() + static_cast<std::size_t>(i) * cols, static_cast<std::size_t>(cols)};
  }
  std::span<double> row(int i) {
    return {values.data() + static_cast<std::size_t>(i) * cols, static_cast<std::size_t>(cols)};
  }

  bool empty() const { return rows == 0; }
};

}  // namespace addivortes

#endif
