#pragma once
/**
 * @file poly.hpp
 * @brief Dense polynomials in t over an exact field K (HElem, FElem, RatFunc, ...).
 */

#include <stdexcept>
#include <string>
#include <vector>

#include "dmod/ring.hpp"

namespace dmod {

template <class K>
class Poly {
 public:
  explicit Poly(K zero) : z_(zero_like(zero)) {}
  Poly(std::vector<K> c, K zero) : z_(zero_like(zero)), c_(std::move(c)) { trim(); }
  static Poly constant(const K& a) { return Poly(std::vector<K>{a}, a); }
  /// t - a
  static Poly linear(const K& a) { return Poly(std::vector<K>{-a, one_like(a)}, a); }
  static Poly monomial(std::size_t n, const K& a) {
    std::vector<K> c(n + 1, zero_like(a));
    c[n] = a;
    return Poly(std::move(c), a);
  }

  long deg() const { return long(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<K>& coeffs() const { return c_; }
  K operator[](std::size_t i) const { return i < c_.size() ? c_[i] : z_; }
  const K& lc() const {
    if (c_.empty()) throw DomainError("leading coefficient of the zero polynomial");
    return c_.back();
  }
  const K& zero() const { return z_; }
  K one() const { return one_like(z_); }

  Poly operator+(const Poly& o) const {
    std::vector<K> r(std::max(c_.size(), o.c_.size()), z_);
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] = r[i] + o.c_[i];
    return Poly(std::move(r), z_);
  }
  Poly operator-() const {
    std::vector<K> r = c_;
    for (auto& x : r) x = -x;
    return Poly(std::move(r), z_);
  }
  Poly operator-(const Poly& o) const { return *this + (-o); }
  Poly operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly(z_);
    std::vector<K> r(c_.size() + o.c_.size() - 1, z_);
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < o.c_.size(); ++j)
        if (!o.c_[j].is_zero()) r[i + j] = r[i + j] + c_[i] * o.c_[j];
    }
    return Poly(std::move(r), z_);
  }
  Poly operator*(const K& s) const {
    std::vector<K> r = c_;
    for (auto& x : r) x = x * s;
    return Poly(std::move(r), z_);
  }
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly pow(unsigned e) const {
    Poly r = constant(one());
    for (unsigned i = 0; i < e; ++i) r = r * *this;
    return r;
  }

  /// Euclidean division by a nonzero divisor.
  void divrem(const Poly& b, Poly& q, Poly& r) const {
    if (b.is_zero()) throw DomainError("polynomial division by zero");
    r = *this;
    if (deg() < b.deg()) {
      q = Poly(z_);
      return;
    }
    std::vector<K> qc(std::size_t(deg() - b.deg() + 1), z_);
    K il = one_like(z_) / b.lc();
    for (long i = deg(); i >= b.deg(); --i) {
      if (long(r.c_.size()) <= i) continue;
      K c = r.c_[std::size_t(i)] * il;
      if (c.is_zero()) continue;
      qc[std::size_t(i - b.deg())] = c;
      for (long j = 0; j <= b.deg(); ++j) {
        auto& x = r.c_[std::size_t(i - b.deg() + j)];
        x = x - c * b.c_[std::size_t(j)];
      }
      r.trim();
    }
    q = Poly(std::move(qc), z_);
  }
  Poly operator%(const Poly& b) const {
    Poly q(z_), r(z_);
    divrem(b, q, r);
    return r;
  }

  K eval(const K& x) const {
    K acc = z_;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }
  /// Evaluate at a point of another ring E given a coefficient map K → E.
  template <class E, class Map>
  E eval_in(const E& x, const E& zero, Map m) const {
    E acc = zero;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + m(c_[i]);
    return acc;
  }
  /// Divide by (t - a) exactly when a is a root; returns false otherwise.
  bool divide_linear(const K& a, Poly* quotient) const {
    if (is_zero()) {
      if (quotient) *quotient = *this;
      return true;
    }
    std::vector<K> q(c_.size() - 1, z_);
    K acc = z_;
    for (std::size_t i = c_.size(); i-- > 0;) {
      acc = acc * a + c_[i];
      if (i > 0) q[i - 1] = acc;
    }
    if (!acc.is_zero()) return false;
    if (quotient) *quotient = Poly(std::move(q), z_);
    return true;
  }
  /// First n Taylor coefficients at a: Σ c_k (t-a)^k.
  std::vector<K> taylor(const K& a, std::size_t n) const {
    std::vector<K> out;
    std::vector<K> cur = c_;
    for (std::size_t k = 0; k < n; ++k) {
      if (cur.empty()) {
        out.push_back(z_);
        continue;
      }
      std::vector<K> q(cur.size() - 1, z_);
      K acc = z_;
      for (std::size_t i = cur.size(); i-- > 0;) {
        acc = acc * a + cur[i];
        if (i > 0) q[i - 1] = acc;
      }
      out.push_back(acc);
      cur = std::move(q);
    }
    return out;
  }
  /// Apply a map to every coefficient (σ, Frobenius, embeddings).
  template <class Map>
  Poly map(Map m) const {
    std::vector<K> r;
    r.reserve(c_.size());
    for (auto& x : c_) r.push_back(m(x));
    return Poly(std::move(r), z_);
  }
  Poly deriv() const {
    if (c_.size() <= 1) return Poly(z_);
    std::vector<K> r;
    for (std::size_t i = 1; i < c_.size(); ++i) {
      K s = z_;
      for (std::size_t k = 0; k < i; ++k) s = s + c_[i];
      r.push_back(s);
    }
    return Poly(std::move(r), z_);
  }
  bool operator==(const Poly& o) const {
    if (c_.size() != o.c_.size()) return false;
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!(c_[i] == o.c_[i])) return false;
    return true;
  }
  bool operator!=(const Poly& o) const { return !(*this == o); }
  std::string str(const std::string& var = "t") const {
    if (c_.empty()) return "0";
    std::string s;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (c_[i].is_zero()) continue;
      if (!first) s += " + ";
      first = false;
      s += "(" + c_[i].str() + ")";
      if (i) s += "*" + var + (i > 1 ? "^" + std::to_string(i) : "");
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

/// gcd by the Euclidean algorithm, made monic.
template <class K>
Poly<K> gcd(Poly<K> a, Poly<K> b) {
  while (!b.is_zero()) {
    Poly<K> r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return a * (one_like(a.lc()) / a.lc());
}

}  // namespace dmod
