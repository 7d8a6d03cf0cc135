#pragma once

#include "torsionlab/numeric.hpp"

#include <complex>
#include <map>
#include <string>
#include <vector>

namespace torsionlab {

/// Integer Laurent polynomial in one variable t.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  explicit LaurentPoly(Int constant) {
    if (constant != 0) coeffs_.emplace(0, std::move(constant));
  }
  static LaurentPoly monomial(long deg, Int coeff = 1) {
    LaurentPoly p;
    if (coeff != 0) p.coeffs_.emplace(deg, std::move(coeff));
    return p;
  }

  const std::map<long, Int>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  long min_degree() const { return is_zero() ? 0 : coeffs_.begin()->first; }
  long max_degree() const { return is_zero() ? 0 : coeffs_.rbegin()->first; }

  LaurentPoly operator+(const LaurentPoly& rhs) const {
    LaurentPoly out = *this;
    for (const auto& [d, c] : rhs.coeffs_) out.add(d, c);
    return out;
  }
  LaurentPoly operator-(const LaurentPoly& rhs) const {
    LaurentPoly out = *this;
    for (const auto& [d, c] : rhs.coeffs_) out.add(d, -c);
    return out;
  }
  LaurentPoly operator-() const {
    LaurentPoly out;
    for (const auto& [d, c] : coeffs_) out.coeffs_.emplace(d, -c);
    return out;
  }
  LaurentPoly operator*(const LaurentPoly& rhs) const {
    LaurentPoly out;
    for (const auto& [d1, c1] : coeffs_)
      for (const auto& [d2, c2] : rhs.coeffs_) out.add(d1 + d2, c1 * c2);
    return out;
  }
  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  /// Canonical representative of the +-t^k equivalence class: lowest degree
  /// shifted to 0, leading coefficient positive.
  LaurentPoly normalized() const {
    if (is_zero()) return {};
    LaurentPoly out;
    const long shift = min_degree();
    const bool flip = coeffs_.rbegin()->second < 0;
    for (const auto& [d, c] : coeffs_) out.coeffs_.emplace(d - shift, flip ? Int(-c) : c);
    return out;
  }

  /// Ordinary coefficient vector c_0..c_d of t^{-min_degree} * this.
  std::vector<Int> shifted_coeffs() const {
    std::vector<Int> v(static_cast<size_t>(max_degree() - min_degree() + 1), Int(0));
    for (const auto& [d, c] : coeffs_) v[static_cast<size_t>(d - min_degree())] = c;
    return v;
  }

  Int eval(const Int& x) const {
    if (is_zero()) return 0;
    if (min_degree() < 0 && abs(x) != 1)
      throw Error("LaurentPoly::eval: negative degrees need |x| = 1");
    Int s = 0;
    for (const auto& [d, c] : coeffs_) {
      if (x == 1) {
        s += c;
      } else if (x == -1) {
        s += (d % 2 == 0) ? c : Int(-c);
      } else {
        Int p;
        mpz_pow_ui(p.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(d));
        s += c * p;
      }
    }
    return s;
  }

  std::complex<double> eval(std::complex<double> z) const {
    std::complex<double> s = 0.0;
    for (const auto& [d, c] : coeffs_) s += c.get_d() * std::pow(z, d);
    return s;
  }

  std::string str() const {
    if (is_zero()) return "0";
    std::string s;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      const auto& [d, c] = *it;
      Int a = abs(c);
      if (s.empty()) {
        if (c < 0) s += "-";
      } else {
        s += c < 0 ? " - " : " + ";
      }
      if (a != 1 || d == 0) s += a.get_str();
      if (d != 0) {
        s += "t";
        if (d != 1) s += "^" + std::to_string(d);
      }
    }
    return s;
  }

 private:
  void add(long d, const Int& c) {
    if (c == 0) return;
    auto it = coeffs_.find(d);
    if (it == coeffs_.end()) {
      coeffs_.emplace(d, c);
    } else {
      it->second += c;
      if (it->second == 0) coeffs_.erase(it);
    }
  }
  std::map<long, Int> coeffs_;
};

}  // namespace torsionlab
