#pragma once
/**
 * @file hfield.hpp
 * @brief The field H = F_{q^N}(θ) and the shared context that owns the tower,
 * the parameters (q, ρ), the root η and the registry of polynomial atoms.
 *
 * An HElem is c · Π a_i^{e_i} with c ∈ F_{q^N}^*, a_i registered monic polynomials
 * in θ and e_i ∈ Z. Products, inverses, q-powers and σ-twists never expand
 * anything; sums expand only the cofactors above the common part.
 */

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dmod/fpoly.hpp"
#include "dmod/gf.hpp"
#include "dmod/sigma.hpp"

namespace dmod {

class Context;

struct Atom {
  FPoly poly;       // monic, degree ≥ 1, over F_{q^N}
  long ord_eta = 0; // order of vanishing at θ = η
  long sigma = -1;  // id of the σ-image, filled lazily
  bool linear = false;
  u32 root = 0;     // when linear: poly = θ - root
};

class HElem {
 public:
  using Factors = std::vector<std::pair<u32, i64>>;

  HElem() = default;
  HElem(const Context* c, u32 unit, Factors f = {}) : ctx_(c), unit_(unit), f_(unit ? std::move(f) : Factors{}) {}

  const Context* ctx() const { return ctx_; }
  u32 unit() const { return unit_; }
  const Factors& factors() const { return f_; }
  bool is_zero() const { return unit_ == 0; }
  bool is_one() const { return unit_ == 1 && f_.empty(); }
  /// True when the element lies in F_{q^N}.
  bool is_constant() const { return f_.empty(); }

  HElem operator*(const HElem& o) const;
  HElem operator/(const HElem& o) const;
  HElem operator+(const HElem& o) const;
  HElem operator-(const HElem& o) const;
  HElem operator-() const;
  HElem& operator*=(const HElem& o) { return *this = *this * o; }
  HElem& operator+=(const HElem& o) { return *this = *this + o; }
  HElem& operator-=(const HElem& o) { return *this = *this - o; }
  HElem inv() const;
  HElem pow(i64 e) const;
  /// x ↦ x^{q^k}, k ≥ 0.
  HElem frob(long k) const;
  /// σ^k: acts on F_{q^N} by x ↦ x^{q^k}, fixes θ.
  HElem sigma(long k) const;
  /// Exact equality (via subtraction unless the factorizations agree).
  bool operator==(const HElem& o) const;
  bool operator!=(const HElem& o) const { return !(*this == o); }
  /// Valuation at θ = η.
  i64 v_eta() const;
  /// Degree in θ (numerator minus denominator).
  i64 degree() const;
  /// Expanded numerator (including the unit) and monic denominator.
  FPoly numerator() const;
  FPoly denominator() const;
  std::string str() const;

 private:
  const Context* ctx_ = nullptr;
  u32 unit_ = 0;
  Factors f_;
};

/// Shared, read-mostly context. The atom registry is an internal cache guarded by a mutex.
class Context {
 public:
  /// rho: coefficients low→high, each an F_q element (digit encoding), monic and irreducible, degree ≥ 2.
  static std::shared_ptr<const Context> make(u32 q, const std::vector<u32>& rho);

  const Tower& tower() const { return *tower_; }
  const GField& F() const { return tower_->level(1); }
  const GField& Fq() const { return tower_->level(0); }
  u32 q() const { return q_; }
  u32 N() const { return N_; }
  u32 p() const { return tower_->p(); }
  u32 e() const { return tower_->e(); }
  const std::vector<u32>& rho() const { return rho_; }
  /// ρ with coefficients embedded in F_{q^N}.
  const FPoly& rho1() const { return rho1_; }
  u32 eta() const { return eta_[0]; }
  /// η^{(k)} = η^{q^k}, any integer k.
  u32 eta_k(long k) const { return eta_[std::size_t(((k % long(N_)) + long(N_)) % long(N_))]; }
  /// x ↦ x^{q^k} on F_{q^N}.
  u32 frobq(u32 x, long k) const { return F().frob(x, long(e()) * k); }
  u32 from_fq(u32 a) const { return tower_->embed(a, 0, 1); }

  HElem zero() const { return HElem(this, 0); }
  HElem one() const { return HElem(this, 1); }
  HElem constant(u32 c) const { return HElem(this, c); }
  HElem theta() const;
  /// Θ^{σ^k} = 1/(θ - η^{(k)})
  HElem Theta(long k = 0) const;
  /// Θ^{Σ a_k σ^k}
  HElem Theta_pow(const SigmaExp& s) const;
  /// θ - c
  HElem theta_minus(u32 c) const;
  HElem from_poly(const FPoly& p) const;
  HElem from_int(i64 n) const { return constant(F().from_int(n)); }

  /// Coordinates of x ∈ F_{q^N} in the basis 1, η, …, η^{N-1} over F_q.
  std::vector<u32> eta_coords(u32 x) const;
  std::string fq_str(u32 x) const;

  // atom registry
  u32 atom_id(const FPoly& monic_poly) const;
  const Atom& atom(u32 id) const;
  u32 atom_sigma(u32 id) const;
  std::size_t atom_count() const;
  /// Factor a nonzero polynomial into unit · registered atoms; strips θ and θ - η^{(k)} factors.
  HElem factor_in(const FPoly& p, const HElem::Factors* try_first = nullptr) const;
  /// a^e for an atom, e ≥ 0, cached for repeated sums.
  FPoly atom_power(u32 id, i64 e) const;
  /// Cached Taylor unit of an atom at η (used by series embedding); empty if absent.
  FPoly cached_unit(u32 id) const;
  void store_unit(u32 id, const FPoly& u) const;

 private:
  Context() = default;
  std::unique_ptr<Tower> tower_;
  u32 q_ = 0, N_ = 0;
  std::vector<u32> rho_;
  FPoly rho1_;
  std::vector<u32> eta_;
  u32 theta_atom_ = 0;
  std::vector<u32> eta_atoms_;

  mutable std::mutex mu_;
  mutable std::vector<std::unique_ptr<Atom>> atoms_;
  mutable std::unordered_map<std::size_t, std::vector<u32>> index_;
  mutable std::vector<std::vector<u32>> coords_;
  mutable std::unordered_map<unsigned long long, FPoly> pow_cache_;
  mutable std::unordered_map<u32, FPoly> unit_cache_;
  mutable std::size_t pow_cache_bytes_ = 0;
};

using ContextPtr = std::shared_ptr<const Context>;

inline HElem operator*(const HElem& a, i64 n) { return a * a.ctx()->from_int(n); }

}  // namespace dmod
