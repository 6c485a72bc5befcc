#pragma once
/**
 * @file fpoly.hpp
 * @brief Dense univariate polynomials over a GField. Large products go through
 * Kronecker substitution into GMP integers.
 */

#include <cstddef>
#include <vector>

#include "dmod/gf.hpp"

namespace dmod {

/// Coefficients low to high, no trailing zeros. The zero polynomial is empty.
struct FPoly {
  std::vector<u32> c;

  FPoly() = default;
  explicit FPoly(std::vector<u32> v) : c(std::move(v)) { trim(); }
  static FPoly constant(u32 a) { return a ? FPoly(std::vector<u32>{a}) : FPoly(); }
  static FPoly monomial(std::size_t n, u32 a) {
    FPoly r;
    if (a) { r.c.assign(n + 1, 0); r.c[n] = a; }
    return r;
  }

  bool is_zero() const { return c.empty(); }
  long deg() const { return long(c.size()) - 1; }
  u32 lc() const { return c.empty() ? 0 : c.back(); }
  u32 operator[](std::size_t i) const { return i < c.size() ? c[i] : 0; }
  void trim() { while (!c.empty() && c.back() == 0) c.pop_back(); }
  std::size_t nnz() const;
  bool operator==(const FPoly& o) const { return c == o.c; }
  std::size_t hash() const;
};

namespace fp {

FPoly add(const GField& F, const FPoly& a, const FPoly& b);
FPoly sub(const GField& F, const FPoly& a, const FPoly& b);
FPoly neg(const GField& F, const FPoly& a);
FPoly scale(const GField& F, const FPoly& a, u32 s);
FPoly mul(const GField& F, const FPoly& a, const FPoly& b);
/// Product of many factors, smallest first.
FPoly product(const GField& F, std::vector<FPoly> fs);
/// a mod x^n.
FPoly truncate(const FPoly& a, std::size_t n);
/// Long division a = q b + r.
void divrem(const GField& F, const FPoly& a, const FPoly& b, FPoly& q, FPoly& r);
/// Quotient when b divides a exactly, otherwise nullopt-like false.
bool divides(const GField& F, const FPoly& b, const FPoly& a, FPoly* quotient);
u32 eval(const GField& F, const FPoly& a, u32 x);
FPoly monic(const GField& F, const FPoly& a);
/// a(θ)^(p^j): coefficients raised to p^j, exponents spread by p^j.
FPoly frob_spread(const GField& F, const FPoly& a, unsigned j);
/// Coefficientwise Frobenius a ↦ Σ c_i^(p^j) θ^i.
FPoly frob_coeffs(const GField& F, const FPoly& a, long j);
/// a^e for e ≥ 0 using base-p digits of e.
FPoly pow(const GField& F, const FPoly& a, unsigned long long e);
/// Largest j such that a is a polynomial in θ^(p^j).
unsigned pth_power_depth(const FPoly& a, u32 p);
/// Derivative.
FPoly deriv(const GField& F, const FPoly& a);
/// Order of vanishing of a at x.
long ord_at(const GField& F, const FPoly& a, u32 x);
/// a(x + s) as a polynomial in s.
FPoly taylor_shift(const GField& F, const FPoly& a, u32 x);

}  // namespace fp
}  // namespace dmod
