#pragma once
/**
 * @file period.hpp
 * @brief Carlitz-period partial products: Γ_{d,k}, the finite-d ratio identity for
 * L_{Nd+1}^{σ²}/L_{Nd+1-j}^{q^jσ²}, the periods π̃ and π̃_Φ, the isogeny constants
 * C_{i,j} as series, and valuation certificates for period-lattice points.
 *
 * Branch convention. Every (q-1)-th root is taken through Series::root_q_minus_1 of
 * a single radicand, and composite radicals are split as
 *   (-Θ^{σ²})^{1/(q-1)} := (-Θ)^{1/(q-1)} · (Θ^{σ²-1})^{1/(q-1)},
 *   C_{i,j} := (Θ^{σ^j-σ^i})^{1/(q-1)} · Θ^{σ^i(γ_{j-i} - W_{j-i})},
 * so π̃ = π̃_Φ C_{0,2} holds on the nose. Identities that mix radicals are first
 * checked on (q-1)-th powers in H, where no branch enters.
 */

#include <string>
#include <vector>

#include "dmod/coordring.hpp"
#include "dmod/series.hpp"

namespace dmod {

/// Γ_{d,k} = Π_{j=1}^d (1 - ⟨N(j-1)+k⟩/⟨Nj+k⟩); Γ_{0,k} = 1.
HElem gamma_product(const Context& C, long d, long k);
/// ⟨N⟩^{q^k(q^{Nd}-1)/(q^N-1)} / Π_{j=1}^d ⟨Nj+k⟩
HElem gamma_closed(const Context& C, long d, long k);
/// ⟨1⟩···⟨N-1⟩ Θ^{(q-q^N)/(q-1)} (1 - Θ^{1-q^N})^{(q^{Nd}-1)/(q-1)} Π_{k=1}^{N(d+1)-1} Θ^{q^k}/⟨k⟩
HElem gamma_all_closed(const Context& C, long d);

/// True when the finite-d ratio identity is stated for (d, j): Nd ≥ j-1 and no Γ_{-1} occurs.
bool ratio_identity_defined(const Context& C, long d, long j);
/// L_{Nd+1}^{σ²} / L_{Nd+1-j}^{q^j σ²}
HElem ratio_lhs(const Context& C, long d, long j);
/// The Γ-product side: (⟨1⟩···⟨N-1⟩)^{1-q^j} ⟨N⟩^{W_j} Θ^{ζ_j} (Γ-numerator)^{q^j}/(Γ-denominator).
HElem ratio_rhs(const Context& C, long d, long j);

/// Θ^{q^k}/⟨k⟩, a 1-unit at η for k ≥ 1.
HElem pi_factor(const Context& C, long k);
/// Π_{k=1}^K Θ^{q^k}/⟨k⟩
HElem pi_product(const Context& C, long K);
/// π̃_K^{q-1} = -Θ^{σ²} (Θ^σ Π_{k≤K})^{q-1}, branch-free.
HElem pi_tilde_power(const Context& C, long K);
/// π̃_{Φ,K}^{q-1} = -Θ (Θ Π_{k≤K})^{q-1}.
HElem pi_phi_power(const Context& C, long K);
/// min_{k>K} v(Θ^{q^k}/⟨k⟩ - 1) = q^{K+1} - [N | K+1]: the relative tail gap after K factors.
i64 pi_tail_gap(const Context& C, long K);

/// h^{1/(q-1)} at η, through the fixed root of the leading coefficient.
Series radical(const HElem& h, i64 prec);

/// A truncated period-type constant with a certificate v(true - value) ≥ floor.
struct PeriodApprox {
  std::string target;  // "pi_tilde", "pi_phi", "C_i_j"
  long K = 0;
  Series value;
  Rat floor;
};

/// π̃_K = (-Θ^{σ²})^{1/(q-1)} Θ^σ Π_{k=1}^K Θ^{q^k}/⟨k⟩. Throws DomainError for K < 1.
PeriodApprox pi_tilde(const Context& C, long K, i64 prec);
/// π̃_{Φ,K} = (-Θ)^{1/(q-1)} Θ Π_{k=1}^K Θ^{q^k}/⟨k⟩.
PeriodApprox pi_phi(const Context& C, long K, i64 prec);
/// C_{i,j} as a series (exact up to prec).
Series isogeny_constant(const Context& C, long i, long j, i64 prec);
/// (Θ^{σ^j - σ^i})^{1/(q-1)} Θ^{Σ_{l=i}^{j-1} σ^l}: the scaling in the twisted-exponential relation.
Series twist_scale(const Context& C, long i, long j, i64 prec);

/// If a/b is a constant c with c^{q-1} = 1 to relative precision `gap`, returns c at the
/// coefficient level of the quotient; otherwise 0.
u32 branch_ratio(const Series& a, const Series& b, Rat gap);

/// Valuation certificate for exp_{(j+2)} at the lattice point
/// π̃_K Θ^{Σ_{l=2}^{j+1}σ^l} (Θ^{σ^{j+2}-σ²})^{1/(q-1)} a(θ), a ∈ A ⊂ I_∞^{-j}.
struct LatticeCert {
  long j = 0;
  long K = 0;
  i64 prec = 0;
  std::string target;
  Rat valuation;  // v_η of the computed exponential
  Rat floor;      // predicted v_η(point) + tail gap
  bool pass = false;
};
/// Precision is raised internally to floor + margin; `prec` is a lower bound.
LatticeCert lattice_check(const Context& C, long j, const AElem& a, long K, i64 prec, i64 margin = 8);

}  // namespace dmod
