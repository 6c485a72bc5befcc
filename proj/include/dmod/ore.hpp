#pragma once
/**
 * @file ore.hpp
 * @brief Twisted polynomials Σ a_i τ^i with τ a = a^q τ, over a field K with frob_q.
 */

#include <string>
#include <vector>

#include "dmod/ring.hpp"

namespace dmod {

template <class K>
class OrePoly {
 public:
  explicit OrePoly(K zero) : z_(zero_like(zero)) {}
  OrePoly(std::vector<K> c, K zero) : z_(zero_like(zero)), c_(std::move(c)) { trim(); }
  static OrePoly constant(const K& a) { return OrePoly(std::vector<K>{a}, a); }
  /// a τ^n
  static OrePoly monomial(std::size_t n, const K& a) {
    std::vector<K> c(n + 1, zero_like(a));
    c[n] = a;
    return OrePoly(std::move(c), a);
  }
  /// τ - a
  static OrePoly tau_minus(const K& a) { return OrePoly(std::vector<K>{-a, one_like(a)}, a); }

  long deg() const { return long(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<K>& coeffs() const { return c_; }
  K operator[](std::size_t i) const { return i < c_.size() ? c_[i] : z_; }
  const K& zero() const { return z_; }
  /// Leading coefficient.
  const K& lt() const {
    if (c_.empty()) throw DomainError("leading coefficient of the zero twisted polynomial");
    return c_.back();
  }
  /// Constant term ∂.
  K d() const { return (*this)[0]; }

  OrePoly operator+(const OrePoly& o) const {
    std::vector<K> r(std::max(c_.size(), o.c_.size()), z_);
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] = r[i] + o.c_[i];
    return OrePoly(std::move(r), z_);
  }
  OrePoly operator-() const {
    std::vector<K> r = c_;
    for (auto& x : r) x = -x;
    return OrePoly(std::move(r), z_);
  }
  OrePoly operator-(const OrePoly& o) const { return *this + (-o); }
  OrePoly operator*(const OrePoly& o) const {
    if (is_zero() || o.is_zero()) return OrePoly(z_);
    std::vector<K> r(c_.size() + o.c_.size() - 1, z_);
    for (std::size_t j = 0; j < o.c_.size(); ++j) {
      if (o.c_[j].is_zero()) continue;
      for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        r[i + j] = r[i + j] + c_[i] * frob_q(o.c_[j], long(i));
      }
    }
    return OrePoly(std::move(r), z_);
  }
  /// Left scalar multiplication s·P.
  OrePoly scaled(const K& s) const {
    std::vector<K> r = c_;
    for (auto& x : r) x = s * x;
    return OrePoly(std::move(r), z_);
  }
  OrePoly& operator+=(const OrePoly& o) { return *this = *this + o; }
  OrePoly& operator*=(const OrePoly& o) { return *this = *this * o; }
  bool operator==(const OrePoly& o) const {
    if (c_.size() != o.c_.size()) return false;
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!(c_[i] == o.c_[i])) return false;
    return true;
  }
  bool operator!=(const OrePoly& o) const { return !(*this == o); }

  /// this = Q·B + R with deg R < deg B.
  void right_divrem(const OrePoly& B, OrePoly& Q, OrePoly& R) const {
    if (B.is_zero()) throw DomainError("twisted division by zero");
    R = *this;
    long m = B.deg();
    if (deg() < m) {
      Q = OrePoly(z_);
      return;
    }
    std::vector<K> qc(std::size_t(deg() - m + 1), z_);
    bool monic = B.lt() == one_like(z_);
    while (!R.is_zero() && R.deg() >= m) {
      long s = R.deg() - m;
      K c = monic ? R.lt() : R.lt() / frob_q(B.lt(), s);
      qc[std::size_t(s)] = c;
      std::vector<K> rc = R.c_;
      for (long i = 0; i < m; ++i) {
        auto& x = rc[std::size_t(i + s)];
        x = x - c * frob_q(B.c_[std::size_t(i)], s);
      }
      rc.pop_back();  // leading term cancels exactly
      R = OrePoly(std::move(rc), z_);
    }
    Q = OrePoly(std::move(qc), z_);
  }
  /// True when B right-divides this, i.e. this = Q·B.
  bool right_divisible_by(const OrePoly& B, OrePoly* quotient = nullptr) const {
    OrePoly Q(z_), R(z_);
    right_divrem(B, Q, R);
    if (quotient) *quotient = Q;
    return R.is_zero();
  }
  OrePoly monic() const {
    if (is_zero()) return *this;
    return scaled(one_like(z_) / lt());
  }
  /// c^{-1} · this · c = Σ a_i c^{q^i - 1} τ^i
  OrePoly conjugated(const K& c) const {
    std::vector<K> r = c_;
    for (std::size_t i = 0; i < r.size(); ++i)
      if (i) r[i] = r[i] * frob_q(c, long(i)) / c;
    return OrePoly(std::move(r), z_);
  }
  template <class Map>
  OrePoly map(Map m) const {
    std::vector<K> r;
    r.reserve(c_.size());
    for (auto& x : c_) r.push_back(m(x));
    return OrePoly(std::move(r), z_);
  }
  /// Σ m(a_i) x^{q^i} in a ring E supporting frob_q.
  template <class E, class Map>
  E apply(const E& x, Map m) const {
    E acc = m(c_.empty() ? z_ : c_[0]) * x;
    E xp = x;
    for (std::size_t i = 1; i < c_.size(); ++i) {
      xp = frob_q(xp, 1);
      if (!c_[i].is_zero()) acc = acc + m(c_[i]) * xp;
    }
    return acc;
  }
  std::string str() const {
    if (c_.empty()) return "0";
    std::string s;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (c_[i].is_zero()) continue;
      if (!first) s += " + ";
      first = false;
      s += "(" + c_[i].str() + ")";
      if (i) s += "*τ" + (i > 1 ? "^" + std::to_string(i) : std::string());
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  K z_;
  std::vector<K> c_;
};

/// Greatest common right divisor, monic.
template <class K>
OrePoly<K> gcrd(OrePoly<K> a, OrePoly<K> b) {
  if (a.deg() < b.deg()) std::swap(a, b);
  b = b.monic();
  while (!b.is_zero()) {
    OrePoly<K> Q(a.zero()), R(a.zero());
    a.right_divrem(b, Q, R);
    a = std::move(b);
    b = R.monic();
  }
  return a.monic();
}

}  // namespace dmod
