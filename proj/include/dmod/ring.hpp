#pragma once
/**
 * @file ring.hpp
 * @brief Element adapters used by the generic templates: zero_like, one_like and
 * frob_q (x ↦ x^{q^k}) found by argument-dependent lookup.
 */

#include "dmod/hfield.hpp"
#include "dmod/series.hpp"

namespace dmod {

/// Finite-field element with its field attached; lets the templates run over F_{q^N}.
struct FElem {
  const GField* F = nullptr;
  u32 v = 0;
  u32 q = 0;  // size of the constant field for frob_q

  FElem operator+(const FElem& o) const { return {F, F->add(v, o.v), q}; }
  FElem operator-(const FElem& o) const { return {F, F->sub(v, o.v), q}; }
  FElem operator-() const { return {F, F->neg(v), q}; }
  FElem operator*(const FElem& o) const { return {F, F->mul(v, o.v), q}; }
  FElem operator/(const FElem& o) const { return {F, F->div(v, o.v), q}; }
  FElem& operator+=(const FElem& o) { return *this = *this + o; }
  FElem& operator-=(const FElem& o) { return *this = *this - o; }
  FElem& operator*=(const FElem& o) { return *this = *this * o; }
  FElem inv() const { return {F, F->inv(v), q}; }
  bool is_zero() const { return v == 0; }
  bool operator==(const FElem& o) const { return v == o.v; }
  bool operator!=(const FElem& o) const { return v != o.v; }
  std::string str() const { return std::to_string(v); }
};

inline FElem zero_like(const FElem& x) { return {x.F, 0, x.q}; }
inline FElem one_like(const FElem& x) { return {x.F, 1, x.q}; }
inline FElem frob_q(const FElem& x, long k) {
  u32 e = 0, t = x.q;
  while (t > 1) { t /= x.F->p(); ++e; }
  return {x.F, x.F->frob(x.v, long(e) * k), x.q};
}

inline HElem zero_like(const HElem& x) { return x.ctx()->zero(); }
inline HElem one_like(const HElem& x) { return x.ctx()->one(); }
inline HElem frob_q(const HElem& x, long k) { return x.frob(k); }

/// Exact zero: its precision is effectively unbounded.
inline Series zero_like(const Series& x) { return Series::zero(x.ctx(), i64(1) << 30); }
inline Series frob_q(const Series& x, long k) { return x.frob(k); }

}  // namespace dmod
