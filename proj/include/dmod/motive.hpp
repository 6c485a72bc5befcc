#pragma once
/**
 * @file motive.hpp
 * @brief The shtuka function f, the basis s_i = f f^{(1)} ... f^{(i-1)} of A_L, the
 * differentials ω^{(j)}, and the two ways of turning an element of A into Ore
 * coefficients: greedy expansion in the s-basis and the residue formula.
 */

#include <vector>

#include "dmod/coordring.hpp"
#include "dmod/ratfunc.hpp"

namespace dmod {

using HPoly = Poly<HElem>;
using HRat = RatFunc<HElem>;

/// f^{(i)}(t) = 1/(t - η^{(i)}) - Θ^{q^i}, i ≥ 0.
HRat shtuka(const Context& C, long i);
/// s_i(t) in the closed form Θ^{W_i} Π_{k<i}(θ^{q^k} - t) / Π_{k<i}(t - η^{(k)}).
HRat s_basis(const Context& C, long i);
/// h^{(j)}(t) with ω^{(j)} = h^{(j)} dt, j ≥ 1.
HRat omega_h(const Context& C, long j);

/// A rational function c · P(t) · Π (t - α)^{e_α}, kept factored so residues stay cheap.
struct FactoredRat {
  HElem scalar;
  HPoly num;
  std::vector<std::pair<HElem, long>> factors;
  /// Residue of the form times dt at t = β; β must be one of the α with e_α < 0.
  HElem residue_at(const HElem& beta) const;
};

/// The integrand z(t) ω^{(k+1)} / (f^{(0)} ... f^{(k)}) of the residue formula, factored.
FactoredRat residue_integrand(const AElem& z, long k);

/// Coefficients of Ψ_z from -Res_{P_ρ} of the integrands, k = 0..deg z.
std::vector<HElem> residue_coeffs(const AElem& z);

/// (-1)^j / L_j as Res_{t=θ} ω^{(j+1)} / (f^{(0)} ... f^{(j)}).
HElem residue_log_coeff(const Context& C, long j);

/// Coefficients c_i with g = Σ c_i s_i, by deepest-pole elimination. Throws when g has a
/// pole outside {η^{(k)}} or is not regular at t = ∞.
std::vector<HElem> expand_in_s_basis(const Context& C, const HRat& g);

/// z(t) as a rational function over H.
HRat as_ratfunc(const AElem& z);

/// Checks z(t) = Σ_k c_k s_k(t) exactly, with c_k from the residue formula.
bool verify_motive_identity(const AElem& z);

}  // namespace dmod
