#pragma once
/**
 * @file ratfunc.hpp
 * @brief Rational functions num/den in one variable over an exact field K, with
 * residues, twists and equality by cross-multiplication. Reduction is explicit.
 */

#include "dmod/poly.hpp"

namespace dmod {

template <class K>
class RatFunc {
 public:
  explicit RatFunc(const Poly<K>& num) : num_(num), den_(Poly<K>::constant(num.one())) {}
  RatFunc(const Poly<K>& num, const Poly<K>& den) : num_(num), den_(den) {
    if (den_.is_zero()) throw DomainError("rational function with zero denominator");
  }
  static RatFunc constant(const K& a) { return RatFunc(Poly<K>::constant(a)); }
  /// 1/(t - a)
  static RatFunc pole(const K& a) { return RatFunc(Poly<K>::constant(one_like(a)), Poly<K>::linear(a)); }

  const Poly<K>& num() const { return num_; }
  const Poly<K>& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  RatFunc operator+(const RatFunc& o) const {
    if (den_ == o.den_) return RatFunc(num_ + o.num_, den_);
    return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  }
  RatFunc operator-() const { return RatFunc(-num_, den_); }
  RatFunc operator-(const RatFunc& o) const { return *this + (-o); }
  RatFunc operator*(const RatFunc& o) const { return RatFunc(num_ * o.num_, den_ * o.den_); }
  RatFunc operator*(const K& s) const { return RatFunc(num_ * s, den_); }
  RatFunc operator/(const RatFunc& o) const {
    if (o.is_zero()) throw DomainError("division by the zero rational function");
    return RatFunc(num_ * o.den_, den_ * o.num_);
  }
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc inv() const { return constant(num_.one()) / *this; }
  RatFunc pow(long e) const {
    RatFunc b = e < 0 ? inv() : *this;
    RatFunc r = constant(num_.one());
    for (long i = 0; i < (e < 0 ? -e : e); ++i) r = r * b;
    return r;
  }
  bool operator==(const RatFunc& o) const { return (num_ * o.den_ - o.num_ * den_).is_zero(); }
  bool operator!=(const RatFunc& o) const { return !(*this == o); }

  /// Value at x; throws at a pole.
  K eval(const K& x) const {
    K d = den_.eval(x);
    if (d.is_zero()) {
      RatFunc r = reduced();
      K d2 = r.den_.eval(x);
      if (d2.is_zero()) throw DomainError("evaluation at a pole");
      return r.num_.eval(x) / d2;
    }
    return num_.eval(x) / d;
  }
  /// Order of vanishing at t = a (negative at poles).
  long order_at(const K& a) const {
    if (is_zero()) throw DomainError("order of the zero function");
    return mult(num_, a) - mult(den_, a);
  }
  /// Residue of r dt at t = a.
  K residue_at(const K& a) const {
    Poly<K> d = den_;
    long m = 0;
    Poly<K> qd(den_.zero());
    while (d.divide_linear(a, &qd)) {
      d = qd;
      ++m;
    }
    if (m == 0) return num_.zero();
    // coefficient of (t-a)^{m-1} in num / d expanded at a
    std::vector<K> nt = num_.taylor(a, std::size_t(m)), dt = d.taylor(a, std::size_t(m));
    std::vector<K> g(std::size_t(m), num_.zero());
    K id = one_like(dt[0]) / dt[0];
    for (std::size_t k = 0; k < std::size_t(m); ++k) {
      K s = nt[k];
      for (std::size_t i = 1; i <= k; ++i)
        if (!dt[i].is_zero() && !g[k - i].is_zero()) s = s - dt[i] * g[k - i];
      g[k] = s * id;
    }
    return g[std::size_t(m - 1)];
  }
  /// Residue of r dt at t = ∞.
  K residue_at_infinity() const {
    long n = num_.deg(), d = den_.deg();
    if (is_zero()) return num_.zero();
    long k = n - d + 1;
    if (k < 0) return num_.zero();
    // num_rev / den_rev to k+1 terms
    auto rev = [](const Poly<K>& p, long deg, std::size_t i) { return i <= std::size_t(deg) ? p[std::size_t(deg) - i] : p.zero(); };
    std::vector<K> g(std::size_t(k) + 1, num_.zero());
    K id = one_like(den_.lc()) / den_.lc();
    for (std::size_t j = 0; j <= std::size_t(k); ++j) {
      K s = rev(num_, n, j);
      for (std::size_t i = 1; i <= j; ++i) s = s - rev(den_, d, i) * g[j - i];
      g[j] = s * id;
    }
    return -g[std::size_t(k)];
  }
  /// Apply a coefficient map to numerator and denominator.
  template <class Map>
  RatFunc map(Map m) const {
    return RatFunc(num_.map(m), den_.map(m));
  }
  /// Coefficientwise x ↦ x^{q^k}.
  RatFunc twist(long k) const {
    return map([k](const K& x) { return frob_q(x, k); });
  }
  /// Cancel the gcd and make the denominator monic.
  RatFunc reduced() const {
    if (is_zero()) return RatFunc(num_, Poly<K>::constant(num_.one()));
    Poly<K> g = gcd(num_, den_);
    Poly<K> n(num_.zero()), d(num_.zero()), r(num_.zero());
    num_.divrem(g, n, r);
    den_.divrem(g, d, r);
    K il = one_like(d.lc()) / d.lc();
    return RatFunc(n * il, d * il);
  }
  std::string str() const { return "(" + num_.str() + ")/(" + den_.str() + ")"; }

 private:
  static long mult(const Poly<K>& p, const K& a) {
    long m = 0;
    Poly<K> cur = p, q(p.zero());
    while (!cur.is_zero() && cur.divide_linear(a, &q)) {
      cur = q;
      ++m;
    }
    return m;
  }
  Poly<K> num_, den_;
};

template <class K>
RatFunc<K> zero_like(const RatFunc<K>& x) {
  return RatFunc<K>(Poly<K>(x.num().zero()));
}
template <class K>
RatFunc<K> one_like(const RatFunc<K>& x) {
  return RatFunc<K>::constant(x.num().one());
}
/// Twists coefficients only; the variable is fixed.
template <class K>
RatFunc<K> frob_q(const RatFunc<K>& x, long k) {
  return x.twist(k);
}

}  // namespace dmod
