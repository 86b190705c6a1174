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

#include "core/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "core/error.hpp"

namespace rpwf {

double simplex_sum(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v;
  return s;
}

void validate_simplex(std::span<const double> x, double tol, const char* what) {
  if (x.empty()) fail(ErrorCode::kNotOnSimplex, std::string(what) + " is empty");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] >= -tol) || !std::isfinite(x[i])) {
      std::ostringstream os;
      os << what << " component " << i + 1 << " = " << x[i] << " is negative";
      fail(ErrorCode::kNotOnSimplex, os.str());
    }
  }
  const double s = simplex_sum(x);
  if (!(std::abs(s - 1.0) <= tol)) {
    std::ostringstream os;
    os.precision(17);
    os << what << " sums to " << s << ", not 1";
    fail(ErrorCode::kNotOnSimplex, os.str());
  }
}

void project_to_simplex(std::span<double> x) {
  double s = 0.0;
  for (double& v : x) {
    if (!(v > 0.0)) v = 0.0;
    s += v;
  }
  if (!(s > 0.0)) fail(ErrorCode::kDomain, "cannot project the zero vector onto the simplex");
  for (double& v : x) v /= s;
  const auto largest = std::max_element(x.begin(), x.end());
  for (int iter = 0; iter < 8; ++iter) {
    const double total = simplex_sum(x);
    if (total == 1.0) break;
    *largest += 1.0 - total;
  }
}

void SimplexSeries::push_back(std::span<const double> x) {
  if (x.size() != columns_.size()) {
    fail(ErrorCode::kDimensionMismatch, "series dimension mismatch");
  }
  for (std::size_t i = 0; i < x.size(); ++i) columns_[i].push_back(x[i]);
}

Vector SimplexSeries::row(std::size_t i) const {
  Vector out(columns_.size());
  for (std::size_t c = 0; c < columns_.size(); ++c) out[c] = columns_[c][i];
  return out;
}

unsigned resolve_workers(unsigned workers) {
  if (workers != 0) return workers;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void parallel_for(std::size_t n, unsigned workers,
                  const std::function<void(std::size_t)>& body) {
  const std::size_t threads = std::min<std::size_t>(resolve_workers(workers), n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    const std::size_t begin = n * t / threads;
    const std::size_t end = n * (t + 1) / threads;
    pool.emplace_back([&, begin, end] {
      try {
        for (std::size_t i = begin; i < end; ++i) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace rpwf
