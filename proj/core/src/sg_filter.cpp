// Copyright (c) 2026 The logmppi authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "logmppi/sg_filter.hpp"

#include <stdexcept>

namespace logmppi {

SavitzkyGolay::SavitzkyGolay(int poly_order, int window) : order_(poly_order) {
  if (window < 3 || window % 2 == 0) {
    throw std::invalid_argument("SavitzkyGolay: window must be odd and >= 3");
  }
  if (poly_order < 0 || poly_order >= window) {
    throw std::invalid_argument(
        "SavitzkyGolay: polynomial order must be in [0, window)");
  }
  half_ = window / 2;
  // Least-squares design matrix over scaled offsets t = i / half, which keeps
  // the normal equations well conditioned for wide windows.
  Eigen::MatrixXd design(window, poly_order + 1);
  for (int i = 0; i < window; ++i) {
    const double t = static_cast<double>(i - half_) / half_;
    double power = 1.0;
    for (int j = 0; j <= poly_order; ++j) {
      design(i, j) = power;
      power *= t;
    }
  }
  // The smoothed center value is the fitted constant coefficient, a linear
  // functional of the window samples: kernel = A (A^T A)^{-1} e0.
  const Eigen::MatrixXd normal = design.transpose() * design;
  Eigen::VectorXd e0 = Eigen::VectorXd::Zero(poly_order + 1);
  e0[0] = 1.0;
  kernel_ = design * normal.ldlt().solve(e0);
}

void SavitzkyGolay::smooth_in_place(Eigen::Ref<Eigen::MatrixXd> sequence) const {
  const int n = static_cast<int>(sequence.rows());
  if (n <= half_) {
    throw std::invalid_argument(
        "SavitzkyGolay: sequence too short for mirror padding");
  }
  const auto reflect = [n](int j) {
    if (j < 0) return -j;
    if (j >= n) return 2 * (n - 1) - j;
    return j;
  };
  Eigen::MatrixXd out(n, sequence.cols());
  for (int c = 0; c < sequence.cols(); ++c) {
    for (int k = 0; k < n; ++k) {
      double acc = 0.0;
      for (int d = -half_; d <= half_; ++d) {
        acc += kernel_[d + half_] * sequence(reflect(k + d), c);
      }
      out(k, c) = acc;
    }
  }
  sequence = out;
}

Eigen::MatrixXd SavitzkyGolay::smoothed(const Eigen::MatrixXd& sequence) const {
  Eigen::MatrixXd copy = sequence;
  smooth_in_place(copy);
  return copy;
}

}  // namespace logmppi
