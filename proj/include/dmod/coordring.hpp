#pragma once
/**
 * @file coordring.hpp
 * @brief The ring A of functions on P^1 regular away from the closed point ρ = 0.
 * Elements are p(t)/ρ^m with deg p ≤ N m; generators T_i = t^i/ρ.
 */

#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "dmod/hfield.hpp"
#include "dmod/series.hpp"

namespace dmod {

class AElem {
 public:
  AElem() = default;
  /// p/ρ^m with p over F_q (level-0 encodings).
  AElem(const Context* ctx, FPoly p, u32 m);
  static AElem constant(const Context* ctx, u32 c);
  /// T_i = t^i/ρ, 0 ≤ i < N.
  static AElem T(const Context* ctx, u32 i);
  static AElem random(const Context* ctx, u32 max_m, std::mt19937& rng);

  const Context* ctx() const { return ctx_; }
  const FPoly& p() const { return p_; }
  u32 m() const { return m_; }
  bool is_zero() const { return p_.is_zero(); }
  /// deg a = N · (pole order at ρ).
  i64 deg() const { return i64(ctx_->N()) * m_; }

  AElem operator+(const AElem& o) const;
  AElem operator-(const AElem& o) const;
  AElem operator-() const;
  AElem operator*(const AElem& o) const;
  AElem operator*(u32 c) const;
  bool operator==(const AElem& o) const { return m_ == o.m_ && p_ == o.p_; }
  AElem pow(unsigned e) const;

  /// a(θ) ∈ H
  HElem at_theta() const;
  /// a(θ^{q^k}) = a(θ)^{q^k}
  HElem at_theta_frob(long k) const { return at_theta().frob(k); }
  /// a(z) for an H element z (throws at ρ(z) = 0).
  HElem eval(const HElem& z) const;
  /// a(z) for a series point z.
  Series eval(const Series& z) const;
  /// Sgn_{η^{(k)}}(a) = p(η^{(k)}) for a in lowest terms; 0 for a = 0.
  u32 sign(long k = 0) const;
  /// Coefficients in the F_q-basis 1 and T_i T_0^e: returns constant and map (i, e) ↦ c.
  std::pair<u32, std::map<std::pair<u32, u32>, u32>> basis() const;
  std::string str() const;

 private:
  void normalize();
  const Context* ctx_ = nullptr;
  FPoly p_;
  u32 m_ = 0;
};

/// b_0..b_{N-1} ∈ F_{q^N} with Σ b_i T_i = 1/(t - η): the coefficients of ρ/(t - η).
std::vector<u32> b_coeffs(const Context& C);

/// Generators of I_∞ = (T_0, …, T_{N-1}).
std::vector<AElem> ideal_inf(const Context* C);
/// Generators of I_0 = (T_0 - 1/ρ(0), T_1, …, T_{N-1}).
std::vector<AElem> ideal_zero(const Context* C);
/// Generators of I_0^n I_∞^{j-n}: all products of one generator from each factor.
std::vector<AElem> ideal_power(const Context* C, u32 n, u32 j);

/// Polynomial in t over F_q → polynomial over F_{q^N}.
FPoly lift(const Context& C, const FPoly& p);

}  // namespace dmod
