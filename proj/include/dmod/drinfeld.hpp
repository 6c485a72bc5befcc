#pragma once
/**
 * @file drinfeld.hpp
 * @brief Rank-one Drinfeld A-modules: the standard module Ψ over H and its twists,
 * the Hayes modules ψ^{u_{k,μ}} over H⁺, annihilators of I_0^n I_∞^{j-n}, and
 * the isogenies Ψ^{(i)} → Ψ^{(j)}.
 */

#include <string>
#include <vector>

#include "dmod/coordring.hpp"
#include "dmod/hplus.hpp"
#include "dmod/ore.hpp"

namespace dmod {

using HOre = OrePoly<HElem>;
using HPOre = OrePoly<HPlus>;

/// Image of a ∈ A from the generator images, via the basis {1, T_i T_0^e}.
template <class K>
OrePoly<K> image_from_generators(const std::vector<OrePoly<K>>& gens, const AElem& a, const K& one) {
  auto [c0, terms] = a.basis();
  const Context& C = *a.ctx();
  auto scal = [&](u32 c) { return one * C.constant(C.from_fq(c)); };
  OrePoly<K> acc(one);
  if (c0) acc = OrePoly<K>::constant(scal(c0));
  std::vector<OrePoly<K>> t0pow{OrePoly<K>::constant(one)};
  for (auto& [ie, c] : terms) {
    while (t0pow.size() <= ie.second) t0pow.push_back(t0pow.back() * gens[0]);
    acc = acc + (gens[ie.first] * t0pow[ie.second]).scaled(scal(c));
  }
  return acc;
}

struct DrinfeldModule {
  const Context* ctx = nullptr;
  long twist = 0;
  std::string route;
  std::vector<HOre> images;  // Ψ_{T_0}, …, Ψ_{T_{N-1}}
  HOre image(const AElem& a) const { return image_from_generators(images, a, ctx->one()); }
};

struct HayesModule {
  const Context* ctx = nullptr;
  long k = 0;
  u32 mu = 1;
  std::string route;
  std::vector<HPOre> images;
  HPOre image(const AElem& a) const { return image_from_generators(images, a, HPlus::from(ctx->one())); }
};

/// ⟨Θ⟩^i_l ∈ H.
HElem theta_bracket(const Context& C, long i, long l);
/// Π_{i<j} (τ + ⟨Θ⟩^i_{j-n}), leftmost factor i = j-1: the closed-form Ψ_{I_0^n I_∞^{j-n}}.
HOre annihilator_closed(const Context& C, long n, long j);

/// Ψ^{(k)} from the residue formula.
DrinfeldModule psi_via_residue(const Context& C, long twist = 0);
/// Ψ^{(k)} from the factorization into linear τ-factors.
DrinfeldModule psi_via_factorization(const Context& C, long twist = 0);
/// Ψ^{(k)} from the greedy s-basis expansion of T_i(t).
DrinfeldModule psi_via_expansion(const Context& C, long twist = 0);
/// σ^k applied to every coefficient.
DrinfeldModule twisted(const DrinfeldModule& M, long k);

/// Monic gcrd of Ψ_a over the generators a of I_0^n I_∞^{j-n}. Stops once the running
/// gcrd reaches degree j and `witness` right-divides every remaining image.
HOre annihilator_gcrd(const DrinfeldModule& M, long n, long j, const HOre* witness = nullptr);

/// u_{k,μ} = σ_∞^k M_μ(u).
HPlus u_km(const Context& C, long k, u32 mu);
/// δ(y) = (θ/η_y) y for y = u_{k',μ'}, whose η_y is η^{(k')}.
HPlus delta(const Context& C, long kprime, const HPlus& y);
/// ψ^{u_{k,μ}}_{j,S} with S ⊆ {0..j-1} given as a bit mask.
HPOre psi_jS(const Context& C, long k, u32 mu, long j, unsigned S);

/// ψ^{u_{k,μ}} from the factorization η_x^{n/q} ψ_{N,S}.
HayesModule hayes_module(const Context& C, long k, u32 mu);
/// σ_∞^k M_μ applied coefficientwise to ψ^u.
HayesModule hayes_via_galois(const Context& C, long k, u32 mu);
/// ψ^u = ℓ Ψ ℓ^{-1} with ℓ^{1-q} = -Θ/u.
HayesModule hayes_via_conjugation(const DrinfeldModule& Psi);

/// Ψ written out term by term for N = 2 and N = 3 (any q); DomainError otherwise.
DrinfeldModule standard_module_closed(const Context& C);
/// ψ^u written out term by term for N = 2 and N = 3 (any q); DomainError otherwise.
HayesModule hayes_module_closed(const Context& C);

/// Coefficientwise Galois action on a twisted polynomial over H⁺.
HPOre galois_apply(const HPOre& P, long k, u32 mu);
/// ℓ^{q^j} P ℓ^{-1} for P of degree j over H, a twisted polynomial over H⁺.
HPOre transport(const HOre& P, long j);
/// Embed H-coefficients into H⁺.
HPOre to_hplus(const HOre& P);

/// λ = C_{i,j} λ0 with C_{i,j}^{q-1} = c_pow ∈ H.
struct Isogeny {
  long i = 0, j = 0;
  HOre lambda0;
  HElem c_pow;
};
Isogeny isogeny(const Context& C, long i, long j);
/// λ Ψ^{(i)}_{T_n} = Ψ^{(j)}_{T_n} λ for every generator, checked after conjugating by C_{i,j}.
bool check_isogeny(const Isogeny& iso, const DrinfeldModule& Pi, const DrinfeldModule& Pj);

}  // namespace dmod
