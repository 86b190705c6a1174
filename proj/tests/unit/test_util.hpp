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

#include <algorithm>
#include <cmath>
#include <vector>

#include "core/rng.hpp"
#include "core/simplex.hpp"

namespace rpwf::testing {

// Uniform point on the (k-1)-simplex from normalized exponentials.
inline Vector random_simplex_point(Rng& rng, std::size_t k) {
  Vector x(k);
  double s = 0.0;
  for (double& v : x) {
    v = -std::log(1.0 - rng.uniform());
    s += v;
  }
  for (double& v : x) v /= s;
  return x;
}

inline double max_abs_diff(const Vector& a, const Vector& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace rpwf::testing
