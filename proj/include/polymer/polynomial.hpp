#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace polymer {

// Exact Laurent polynomial sum_k c_k x^k with big-integer coefficients.
// Invariant: coefficients are trimmed, so the zero polynomial has no terms
// and equal polynomials have equal representations.
class LaurentPoly {
 public:
  using Coeff = boost::multiprecision::cpp_int;
  using Ratio = boost::multiprecision::cpp_rational;

  LaurentPoly() = default;
  LaurentPoly(long long c) : LaurentPoly(Coeff(c)) {}  // NOLINT: implicit constant
  LaurentPoly(const Coeff& c) {                         // NOLINT: implicit constant
    if (c != 0) coeffs_.push_back(c);
  }

  static LaurentPoly monomial(int exponent, const Coeff& c = 1) {
    LaurentPoly p(c);
    if (!p.zero()) p.low_ = exponent;
    return p;
  }
  // sum_k coeffs[k] x^{low + k}
  static LaurentPoly from_coeffs(int low, std::vector<Coeff> coeffs) {
    LaurentPoly p;
    p.low_ = low;
    p.coeffs_ = std::move(coeffs);
    p.trim();
    return p;
  }

  bool zero() const { return coeffs_.empty(); }
  int low() const { return low_; }
  int high() const { return low_ + static_cast<int>(coeffs_.size()) - 1; }
  Coeff coeff(int exponent) const {
    if (zero() || exponent < low_ || exponent > high()) return 0;
    return coeffs_[static_cast<std::size_t>(exponent - low_)];
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    if (o.zero()) return *this;
    if (zero()) return *this = o;
    const int lo = std::min(low_, o.low_);
    const int hi = std::max(high(), o.high());
    std::vector<Coeff> out(static_cast<std::size_t>(hi - lo + 1));
    for (int e = lo; e <= hi; ++e) out[static_cast<std::size_t>(e - lo)] = coeff(e) + o.coeff(e);
    low_ = lo;
    coeffs_ = std::move(out);
    trim();
    return *this;
  }
  LaurentPoly operator-() const {
    LaurentPoly p = *this;
    for (auto& c : p.coeffs_) c = -c;
    return p;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) { return *this += -o; }
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.zero() || b.zero()) return {};
    std::vector<Coeff> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return from_coeffs(a.low_ + b.low_, std::move(out));
  }
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.coeffs_ == b.coeffs_ && (a.zero() || a.low_ == b.low_);
  }

  Ratio eval(const Ratio& x) const {
    Ratio acc = 0;
    for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * x + Ratio(coeffs_[k]);
    if (low_ >= 0) {
      for (int i = 0; i < low_; ++i) acc *= x;
    } else {
      for (int i = 0; i < -low_; ++i) acc /= x;
    }
    return acc;
  }

  // log of the value at x = e^beta; requires non-negative coefficients.
  double log_eval_exp(double beta) const {
    double top = -std::numeric_limits<double>::infinity();
    std::vector<double> terms;
    terms.reserve(coeffs_.size());
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      if (coeffs_[k] < 0) throw std::domain_error("negative-coefficient");
      const double t = coeffs_[k] == 0 ? -std::numeric_limits<double>::infinity()
                                       : log_coeff(coeffs_[k]) + beta * (low_ + static_cast<double>(k));
      terms.push_back(t);
      top = std::max(top, t);
    }
    if (!std::isfinite(top)) return top;
    double s = 0.0;
    for (double t : terms) s += std::exp(t - top);
    return top + std::log(s);
  }

  std::string str() const {
    if (zero()) return "0";
    std::string out;
    for (std::size_t k = coeffs_.size(); k-- > 0;) {
      if (coeffs_[k] == 0) continue;
      if (!out.empty()) out += coeffs_[k] < 0 ? " - " : " + ";
      else if (coeffs_[k] < 0) out += "-";
      out += Coeff(abs(coeffs_[k])).str() + "x^" + std::to_string(low_ + static_cast<int>(k));
    }
    return out;
  }

 private:
  static double log_coeff(const Coeff& c) {
    // Split off high bits so huge counts stay within double range.
    const std::size_t bits = boost::multiprecision::msb(c) + 1;
    if (bits <= 60) return std::log(c.convert_to<double>());
    const std::size_t shift = bits - 60;
    return std::log(Coeff(c >> shift).convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
  }
  void trim() {
    std::size_t lead = 0;
    while (lead < coeffs_.size() && coeffs_[lead] == 0) ++lead;
    if (lead == coeffs_.size()) {
      coeffs_.clear();
      low_ = 0;
      return;
    }
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
    low_ += static_cast<int>(lead);
    while (coeffs_.back() == 0) coeffs_.pop_back();
  }

  int low_ = 0;
  std::vector<Coeff> coeffs_;
};

}  // namespace polymer
