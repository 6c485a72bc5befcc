#pragma once
/**
 * @file hplus.hpp
 * @brief H⁺ = H(u) with u^{W_N} = (-Θ)^{γ_N}, and its Galois group generated by
 * σ_∞ (u ↦ (θ-η)^{q-1}u^q) and M_μ (u ↦ μu, μ^{W_N} = 1).
 */

#include <string>
#include <vector>

#include "dmod/ring.hpp"

namespace dmod {

class HPlus {
 public:
  HPlus() = default;
  /// Σ a_i u^i, 0 ≤ i < W_N.
  HPlus(const Context* ctx, std::vector<HElem> a);
  static HPlus from(const HElem& h);
  static HPlus u(const Context* ctx);
  /// u^n for any integer n.
  static HPlus u_pow(const Context* ctx, i64 n);
  /// u^{W_N}
  static HElem u_power_W(const Context* ctx);
  static i64 W(const Context* ctx);

  const Context* ctx() const { return ctx_; }
  const std::vector<HElem>& coeffs() const { return a_; }
  bool is_zero() const;
  /// Lies in H (only the u^0 coefficient is nonzero).
  bool in_H() const;

  HPlus operator+(const HPlus& o) const;
  HPlus operator-(const HPlus& o) const;
  HPlus operator-() const;
  HPlus operator*(const HPlus& o) const;
  HPlus operator*(const HElem& s) const;
  HPlus operator/(const HPlus& o) const { return *this * o.inv(); }
  HPlus& operator+=(const HPlus& o) { return *this = *this + o; }
  HPlus& operator*=(const HPlus& o) { return *this = *this * o; }
  HPlus inv() const;
  HPlus pow(i64 e) const;
  /// x ↦ x^{q^k}
  HPlus frob(long k) const;
  /// The automorphism σ_∞^k M_μ: σ^k on H, u ↦ μ^{q^k} Θ^{(1-q)γ_k} u^{q^k}.
  HPlus galois(long k, u32 mu) const;
  /// M_μ alone.
  HPlus mult_mu(u32 mu) const { return galois(0, mu); }
  /// Norm to H: Π over μ^{W} = 1 of M_μ(x).
  HElem norm() const;
  bool operator==(const HPlus& o) const;
  bool operator!=(const HPlus& o) const { return !(*this == o); }
  std::string str() const;

 private:
  /// h·u^n reduced into the basis.
  void add_term(std::vector<HElem>& acc, const HElem& h, i64 n) const;
  const Context* ctx_ = nullptr;
  std::vector<HElem> a_;
};

inline HPlus zero_like(const HPlus& x) { return HPlus::from(x.ctx()->zero()); }
inline HPlus one_like(const HPlus& x) { return HPlus::from(x.ctx()->one()); }
inline HPlus frob_q(const HPlus& x, long k) { return x.frob(k); }

/// The W_N-th roots of unity μ in F_{q^N}, ascending by encoding.
std::vector<u32> roots_of_unity_W(const Context& C);
/// η_* = η^{(1-q)/q}; the unique W_N-th root of unity with σ_0 = σ_∞ M_{η_*}.
u32 eta_star(const Context& C);

}  // namespace dmod
