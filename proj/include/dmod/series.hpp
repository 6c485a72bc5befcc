#pragma once
/**
 * @file series.hpp
 * @brief Truncated Puiseux series in x = θ - η with coefficients at a tower level.
 * Exponents are multiples of 1/den; every series carries an absolute precision.
 */

#include <numeric>
#include <string>
#include <vector>

#include "dmod/hfield.hpp"

namespace dmod {

/// Small exact rational, normalized with positive denominator.
struct Rat {
  i64 num = 0, den = 1;
  Rat() = default;
  Rat(i64 n, i64 d = 1) : num(n), den(d) {
    if (den < 0) { num = -num; den = -den; }
    i64 g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
  }
  bool operator<(const Rat& o) const { return (__int128)num * o.den < (__int128)o.num * den; }
  bool operator<=(const Rat& o) const { return !(o < *this); }
  bool operator>(const Rat& o) const { return o < *this; }
  bool operator>=(const Rat& o) const { return !(*this < o); }
  bool operator==(const Rat& o) const { return num == o.num && den == o.den; }
  Rat operator+(const Rat& o) const { return Rat(num * o.den + o.num * den, den * o.den); }
  Rat operator-(const Rat& o) const { return Rat(num * o.den - o.num * den, den * o.den); }
  Rat operator*(i64 k) const { return Rat(num * k, den); }
  i64 floor() const { return num >= 0 ? num / den : -((-num + den - 1) / den); }
  std::string str() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }
};

class Series {
 public:
  Series() = default;
  /// Σ c[i] x^{(v+i)/den} + O(x^{prec/den}); prec in units of 1/den.
  Series(const Context* ctx, u32 level, i64 den, i64 v, std::vector<u32> c, i64 prec);

  static Series zero(const Context* ctx, i64 prec);
  static Series constant(const Context* ctx, u32 c, i64 prec, u32 level = 1);
  /// x^k (= (θ - η)^k) with a coefficient.
  static Series monomial(const Context* ctx, i64 k, u32 c, i64 prec, u32 level = 1);
  /// Expansion of an H element at θ = η, absolute precision prec.
  static Series embed(const HElem& h, i64 prec);

  const Context* ctx() const { return ctx_; }
  u32 level() const { return level_; }
  i64 den() const { return den_; }
  i64 v_raw() const { return v_; }
  const std::vector<u32>& coeffs() const { return c_; }
  /// Coefficient of x^{k/den}.
  u32 coeff(i64 k) const { return (k >= v_ && k - v_ < i64(c_.size())) ? c_[std::size_t(k - v_)] : 0; }
  /// Exact valuation; for a series that is zero to its precision this is the precision.
  Rat valuation() const { return Rat(v_, den_); }
  Rat precision() const { return Rat(prec_, den_); }
  bool is_zero() const { return c_.empty(); }

  Series operator+(const Series& o) const;
  Series operator-(const Series& o) const;
  Series operator-() const;
  Series operator*(const Series& o) const;
  Series operator/(const Series& o) const { return *this * o.inv(); }
  Series& operator+=(const Series& o) { return *this = *this + o; }
  Series& operator*=(const Series& o) { return *this = *this * o; }
  Series inv() const;
  Series pow(i64 e) const;
  /// x ↦ x^{q^k}
  Series frob(long k) const;
  /// The (q-1)-th root whose leading coefficient is the smallest-encoding root.
  Series root_q_minus_1() const;
  /// Reduce to absolute precision at most p.
  Series truncated(Rat p) const;
  /// Same value on a finer grid / bigger field.
  Series lifted(i64 den, u32 level) const;
  /// True when v(this - o) ≥ floor.
  bool agrees(const Series& o, Rat floor) const { return (*this - o).valuation() >= floor; }
  std::string str(std::size_t max_terms = 8) const;

 private:
  void normalize();
  const Context* ctx_ = nullptr;
  u32 level_ = 1;
  i64 den_ = 1, v_ = 0, prec_ = 0;
  std::vector<u32> c_;
};

}  // namespace dmod
