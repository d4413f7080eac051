// include/vcwarp/matrix.h

// Copyright 2026  vcwarp authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef VCWARP_MATRIX_H_
#define VCWARP_MATRIX_H_

#include <cassert>
#include <cstddef>
#include <span>
#include <vector>

namespace vcwarp {

// Dense row-major matrix of doubles. Just enough for feature frames and the
// warp matrices; anything heavier belongs in a real linear algebra library.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols),
        data_(static_cast<size_t>(rows) * cols, fill) {
    assert(rows >= 0 && cols >= 0);
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  double &operator()(int r, int c) {
    assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
    return data_[static_cast<size_t>(r) * cols_ + c];
  }
  double operator()(int r, int c) const {
    assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
    return data_[static_cast<size_t>(r) * cols_ + c];
  }

  std::span<double> row(int r) {
    assert(r >= 0 && r < rows_);
    return {data_.data() + static_cast<size_t>(r) * cols_,
            static_cast<size_t>(cols_)};
  }
  std::span<const double> row(int r) const {
    assert(r >= 0 && r < rows_);
    return {data_.data() + static_cast<size_t>(r) * cols_,
            static_cast<size_t>(cols_)};
  }

  std::vector<double> &data() { return data_; }
  const std::vector<double> &data() const { return data_; }

  // y = this * x, x has cols() entries.
  std::vector<double> MatVec(std::span<const double> x) const {
    assert(static_cast<int>(x.size()) == cols_);
    std::vector<double> y(rows_, 0.0);
    for (int r = 0; r < rows_; ++r) {
      const double *p = data_.data() + static_cast<size_t>(r) * cols_;
      double acc = 0.0;
      for (int c = 0; c < cols_; ++c) acc += p[c] * x[c];
      y[r] = acc;
    }
    return y;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

}  // namespace vcwarp

#endif  // VCWARP_MATRIX_H_
