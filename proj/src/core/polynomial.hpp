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
#include <cstddef>
#include <map>
#include <span>
#include <type_traits>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "core/error.hpp"

namespace rpwf {

using Rational = boost::multiprecision::cpp_rational;

// Exponent vector of a monomial y_1^e_1 ... y_d^e_d.
using Exponent = std::vector<int>;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline double to_double(double v) { return v; }

// Sparse multivariate polynomial over T^{k-1} (d = k - 1 variables). Zero
// coefficients are never stored.
template <class Scalar>
class Polynomial {
 public:
  using Terms = std::map<Exponent, Scalar>;

  Polynomial() = default;
  explicit Polynomial(std::size_t dim) : dim_(dim) {}

  static Polynomial constant(std::size_t dim, const Scalar& c) {
    Polynomial p(dim);
    p.add_term(Exponent(dim, 0), c);
    return p;
  }
  static Polynomial monomial(std::size_t dim, Exponent e, const Scalar& c) {
    Polynomial p(dim);
    p.add_term(std::move(e), c);
    return p;
  }
  static Polynomial variable(std::size_t dim, std::size_t i) {
    Exponent e(dim, 0);
    e[i] = 1;
    return monomial(dim, std::move(e), Scalar(1));
  }

  std::size_t dim() const { return dim_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(Exponent e, const Scalar& c) {
    if (e.size() != dim_) fail(ErrorCode::kDimensionMismatch, "monomial dimension mismatch");
    if (c == Scalar(0)) return;
    auto [it, inserted] = terms_.try_emplace(std::move(e), c);
    if (!inserted) {
      it->second += c;
      if (it->second == Scalar(0)) terms_.erase(it);
    }
  }

  Scalar coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  int degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) {
      int s = 0;
      for (int v : e) s += v;
      d = std::max(d, s);
    }
    return d;
  }

  Polynomial& operator+=(const Polynomial& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  Polynomial& operator*=(const Scalar& s) {
    if (s == Scalar(0)) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Scalar& s) { return a *= s; }
  friend Polynomial operator*(const Scalar& s, Polynomial a) { return a *= s; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check(b);
    Polynomial out(a.dim_);
    Exponent e(a.dim_);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        out.add_term(e, ca * cb);
      }
    }
    return out;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }

  Polynomial derivative(std::size_t i) const {
    Polynomial out(dim_);
    for (const auto& [e, c] : terms_) {
      if (e[i] == 0) continue;
      Exponent d = e;
      --d[i];
      out.add_term(std::move(d), c * Scalar(e[i]));
    }
    return out;
  }

  double evaluate(std::span<const double> y) const {
    if (y.size() != dim_) fail(ErrorCode::kDimensionMismatch, "evaluation point dimension");
    double total = 0.0;
    for (const auto& [e, c] : terms_) {
      double m = to_double(c);
      for (std::size_t i = 0; i < dim_; ++i) {
        for (int p = 0; p < e[i]; ++p) m *= y[i];
      }
      total += m;
    }
    return total;
  }

  template <class Other>
  Polynomial<Other> cast() const {
    Polynomial<Other> out(dim_);
    for (const auto& [e, c] : terms_) {
      if constexpr (std::is_same_v<Other, double>) out.add_term(e, to_double(c));
      else out.add_term(e, Other(c));
    }
    return out;
  }

  // Largest |coefficient| (as double).
  double max_abs_coefficient() const {
    double m = 0.0;
    for (const auto& [e, c] : terms_) m = std::max(m, std::abs(to_double(c)));
    return m;
  }

 private:
  void check(const Polynomial& o) const {
    if (o.dim_ != dim_) fail(ErrorCode::kDimensionMismatch, "polynomial dimension mismatch");
  }

  std::size_t dim_ = 0;
  Terms terms_;
};

template <class Scalar>
Polynomial<Scalar> pow(const Polynomial<Scalar>& base, int n) {
  Polynomial<Scalar> out = Polynomial<Scalar>::constant(base.dim(), Scalar(1));
  for (int i = 0; i < n; ++i) out = out * base;
  return out;
}

}  // namespace rpwf
