#pragma once

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gridatlas {

/// Integer Laurent polynomial in one formal variable.
///
/// Stored densely as a lowest exponent plus a coefficient run; the run never
/// has zero coefficients at either end, and the zero polynomial has an empty
/// run. Arithmetic is exact over 64-bit integers.
class LaurentPolynomial {
 public:
  using Coefficient = std::int64_t;

  LaurentPolynomial() = default;
  LaurentPolynomial(Coefficient constant) {  // NOLINT(google-explicit-constructor)
    if (constant != 0) coeffs_.push_back(constant);
  }

  static LaurentPolynomial monomial(Coefficient coefficient, int exponent) {
    LaurentPolynomial p;
    if (coefficient != 0) {
      p.low_ = exponent;
      p.coeffs_.push_back(coefficient);
    }
    return p;
  }

  /// Builds from (exponent, coefficient) pairs; repeated exponents add up.
  static LaurentPolynomial from_terms(const std::vector<std::pair<int, Coefficient>>& terms) {
    LaurentPolynomial p;
    for (auto [e, c] : terms) p += monomial(c, e);
    return p;
  }

  bool is_zero() const { return coeffs_.empty(); }
  int min_degree() const { return low_; }
  int max_degree() const { return low_ + static_cast<int>(coeffs_.size()) - 1; }

  Coefficient coefficient(int exponent) const {
    if (is_zero() || exponent < low_ || exponent > max_degree()) return 0;
    return coeffs_[static_cast<std::size_t>(exponent - low_)];
  }

  /// Nonzero terms in ascending exponent order.
  std::vector<std::pair<int, Coefficient>> terms() const {
    std::vector<std::pair<int, Coefficient>> out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i] != 0) out.emplace_back(low_ + static_cast<int>(i), coeffs_[i]);
    }
    return out;
  }

  LaurentPolynomial& operator+=(const LaurentPolynomial& other) {
    if (other.is_zero()) return *this;
    if (is_zero()) return *this = other;
    int lo = std::min(low_, other.low_);
    int hi = std::max(max_degree(), other.max_degree());
    std::vector<Coefficient> merged(static_cast<std::size_t>(hi - lo + 1), 0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) merged[i + static_cast<std::size_t>(low_ - lo)] += coeffs_[i];
    for (std::size_t i = 0; i < other.coeffs_.size(); ++i)
      merged[i + static_cast<std::size_t>(other.low_ - lo)] += other.coeffs_[i];
    low_ = lo;
    coeffs_ = std::move(merged);
    normalize();
    return *this;
  }

  LaurentPolynomial& operator-=(const LaurentPolynomial& other) { return *this += -other; }

  LaurentPolynomial operator-() const {
    LaurentPolynomial p = *this;
    for (auto& c : p.coeffs_) c = -c;
    return p;
  }

  friend LaurentPolynomial operator+(LaurentPolynomial a, const LaurentPolynomial& b) { return a += b; }
  friend LaurentPolynomial operator-(LaurentPolynomial a, const LaurentPolynomial& b) { return a -= b; }

  friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    LaurentPolynomial p;
    if (a.is_zero() || b.is_zero()) return p;
    p.low_ = a.low_ + b.low_;
    p.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) p.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    p.normalize();
    return p;
  }

  LaurentPolynomial& operator*=(const LaurentPolynomial& other) { return *this = *this * other; }

  /// Multiplies by x^k.
  LaurentPolynomial shifted(int k) const {
    LaurentPolynomial p = *this;
    if (!p.is_zero()) p.low_ += k;
    return p;
  }

  /// Substitutes x -> x^-1.
  LaurentPolynomial inverted() const {
    LaurentPolynomial p;
    if (is_zero()) return p;
    p.low_ = -max_degree();
    p.coeffs_.assign(coeffs_.rbegin(), coeffs_.rend());
    return p;
  }

  /// Substitutes x -> x^k for a nonzero integer k.
  LaurentPolynomial substituted_power(int k) const {
    if (k == 0) throw std::invalid_argument("substituted_power: zero power");
    LaurentPolynomial p;
    for (auto [e, c] : terms()) p += monomial(c, e * k);
    return p;
  }

  /// Exact evaluation at an integer point; x must be +-1 when negative powers occur.
  Coefficient evaluate(Coefficient x) const {
    if (min_degree() < 0 && x != 1 && x != -1 && !is_zero())
      throw std::domain_error("evaluate: negative powers at a non-unit point");
    Coefficient total = 0;
    for (auto [e, c] : terms()) {
      Coefficient term = c;
      int magnitude = e < 0 ? -e : e;
      for (int i = 0; i < magnitude; ++i) term *= x;
      total += term;
    }
    return total;
  }

  /// Exact quotient by a divisor whose extreme coefficients are +-1.
  /// Throws std::domain_error when the division leaves a remainder.
  LaurentPolynomial divided_exactly_by(const LaurentPolynomial& divisor) const {
    if (divisor.is_zero()) throw std::domain_error("division by zero polynomial");
    Coefficient lead = divisor.coeffs_.back();
    if (lead != 1 && lead != -1) throw std::domain_error("divisor leading coefficient must be a unit");
    LaurentPolynomial rem = *this;
    LaurentPolynomial quotient;
    while (!rem.is_zero() && rem.max_degree() - divisor.max_degree() >= min_degree() - divisor.min_degree()) {
      int e = rem.max_degree() - divisor.max_degree();
      Coefficient c = rem.coeffs_.back() * lead;
      LaurentPolynomial step = monomial(c, e);
      quotient += step;
      rem -= step * divisor;
    }
    if (!rem.is_zero()) throw std::domain_error("inexact polynomial division");
    return quotient;
  }

  friend bool operator==(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    return a.coeffs_ == b.coeffs_ && (a.is_zero() || a.low_ == b.low_);
  }
  friend bool operator!=(const LaurentPolynomial& a, const LaurentPolynomial& b) { return !(a == b); }

  /// Total order on term lists; used for sorting and as a map key.
  friend bool operator<(const LaurentPolynomial& a, const LaurentPolynomial& b) { return a.terms() < b.terms(); }

  /// Human-readable form in ascending powers, e.g. "2+z^2" or "-t^-4+t^-3+t^-1".
  std::string to_string(std::string_view variable = "x") const {
    if (is_zero()) return "0";
    std::string out;
    bool first = true;
    for (auto [e, c] : terms()) {
      Coefficient magnitude = c < 0 ? -c : c;
      if (c < 0) out += "-";
      else if (!first) out += "+";
      first = false;
      if (e == 0) {
        out += std::to_string(magnitude);
        continue;
      }
      if (magnitude != 1) out += std::to_string(magnitude);
      out += variable;
      if (e != 1) out += "^" + std::to_string(e);
    }
    return out;
  }

  /// Compact "exponent:coefficient" pairs separated by spaces; "0" pairs list is empty.
  std::string to_pairs() const {
    std::string out;
    for (auto [e, c] : terms()) {
      if (!out.empty()) out += ' ';
      out += std::to_string(e) + ":" + std::to_string(c);
    }
    return out;
  }

  static LaurentPolynomial from_pairs(std::string_view text) {
    LaurentPolynomial p;
    std::istringstream in{std::string(text)};
    std::string token;
    while (in >> token) {
      auto colon = token.find(':');
      if (colon == std::string::npos) throw std::invalid_argument("bad exponent:coefficient pair '" + token + "'");
      std::size_t used_e = 0;
      std::size_t used_c = 0;
      int e = std::stoi(token.substr(0, colon), &used_e);
      long long c = std::stoll(token.substr(colon + 1), &used_c);
      if (used_e != colon || used_c != token.size() - colon - 1)
        throw std::invalid_argument("bad exponent:coefficient pair '" + token + "'");
      p += monomial(c, e);
    }
    return p;
  }

 private:
  void normalize() {
    std::size_t first = 0;
    while (first < coeffs_.size() && coeffs_[first] == 0) ++first;
    if (first == coeffs_.size()) {
      coeffs_.clear();
      low_ = 0;
      return;
    }
    std::size_t last = coeffs_.size();
    while (coeffs_[last - 1] == 0) --last;
    coeffs_ = std::vector<Coefficient>(coeffs_.begin() + static_cast<std::ptrdiff_t>(first),
                                       coeffs_.begin() + static_cast<std::ptrdiff_t>(last));
    low_ += static_cast<int>(first);
  }

  int low_ = 0;
  std::vector<Coefficient> coeffs_;
};

}  // namespace gridatlas
