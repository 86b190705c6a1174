/*
   Copyright 2026 The rpwf Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace rpwf {

using Vector = std::vector<double>;

// Left-to-right sum; the simplex-closure checks use this exact order.
double simplex_sum(std::span<const double> x);

// Throws kNotOnSimplex unless x_i >= -tol and |sum - 1| <= tol.
void validate_simplex(std::span<const double> x, double tol,
                      const char* what = "point");

// Clamp negatives to zero, renormalize, then nudge the largest component so
// that simplex_sum() returns exactly 1.
void project_to_simplex(std::span<double> x);

// Time series of simplex points stored one column per component.
class SimplexSeries {
 public:
  SimplexSeries() = default;
  explicit SimplexSeries(std::size_t k) : columns_(k) {}

  std::size_t dim() const { return columns_.size(); }
  std::size_t size() const { return columns_.empty() ? 0 : columns_[0].size(); }

  void reserve(std::size_t n) {
    for (auto& c : columns_) c.reserve(n);
  }
  void push_back(std::span<const double> x);

  double at(std::size_t row, std::size_t component) const {
    return columns_[component][row];
  }
  Vector row(std::size_t i) const;
  const std::vector<double>& column(std::size_t component) const {
    return columns_[component];
  }

 private:
  std::vector<std::vector<double>> columns_;
};

// Runs body(i) for i in [0, n) on `workers` threads (0 = hardware
// concurrency). Work is split into contiguous blocks; callers write results
// by index so the outcome does not depend on the worker count.
void parallel_for(std::size_t n, unsigned workers,
                  const std::function<void(std::size_t)>& body);

unsigned resolve_workers(unsigned workers);

}  // namespace rpwf
