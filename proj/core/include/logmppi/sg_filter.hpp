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

#pragma once

#include <Eigen/Dense>

namespace logmppi {

/**
 * Savitzky-Golay smoother: replaces each sample by the center value of a
 * least-squares polynomial fit over a sliding window.
 *
 * Ends are handled with mirror padding: index -j reads sample j and index
 * n-1+j reads sample n-1-j, so the edge samples act as reflection pivots and
 * are not duplicated. That requires sequences longer than half the window.
 */
class SavitzkyGolay {
 public:
  /// Throws std::invalid_argument unless window is odd, at least 3, and
  /// strictly larger than poly_order >= 0.
  SavitzkyGolay(int poly_order, int window);

  int order() const { return order_; }
  int window() const { return 2 * half_ + 1; }

  /// Convolution kernel over window offsets [-half, half]. Coefficients sum
  /// to one and are symmetric, so constants and straight lines pass through
  /// unchanged away from the ends.
  const Eigen::VectorXd& kernel() const { return kernel_; }

  /// Smooths each column independently. Throws std::invalid_argument when
  /// the sequence is too short for mirror padding (rows <= window / 2).
  void smooth_in_place(Eigen::Ref<Eigen::MatrixXd> sequence) const;

  Eigen::MatrixXd smoothed(const Eigen::MatrixXd& sequence) const;

 private:
  int order_;
  int half_;
  Eigen::VectorXd kernel_;
};

}  // namespace logmppi
