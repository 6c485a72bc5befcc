#pragma once
/**
 * @file explog.hpp
 * @brief Exponential and logarithm coefficients of Ψ^{(j)}: D_i, L_j, their closed
 * forms, formal q-series composition, truncated evaluation at series points, and E_k.
 *
 * exp_{(j)}(ξ) = Σ ξ^{q^i}/D_i^{σ^j},  log_{(0)}(ξ) = Σ (-1)^j ξ^{q^j}/L_j.
 */

#include <functional>
#include <vector>

#include "dmod/coordring.hpp"
#include "dmod/series.hpp"

namespace dmod {

/// ⟨k⟩ = Θ^{q^k} - Θ^{σ^k} = -f^{(k)}(θ)
HElem bracket(const Context& C, long k);
/// θ - θ^{q^k}
HElem theta_diff(const Context& C, long k);

/// D_0..D_n by D_i = D_{i-1}^q (θ - θ^{q^i}) / ((θ^{q^i} - η)(θ - η)).
std::vector<HElem> d_coeffs(const Context& C, long n);
/// Θ^{W_i + q^i Σ_k ⌊(i+k)/N⌋ σ^k} Π_{m<i} (θ^{q^m} - θ^{q^i})
HElem d_closed(const Context& C, long i);
/// s_i(θ^{q^i}) from the s-basis of the motive.
HElem d_from_s_basis(const Context& C, long i);
/// D_n^{σ^j} through the product formula in D_n (not by applying σ^j).
HElem d_twisted(const Context& C, const HElem& Dn, long n, long j);
/// v_η(D_i), from v(D_i) = q v(D_{i-1}) - q^i [N | i] - [N ∤ i].
i64 d_valuation(const Context& C, long i);

/// L_0..L_n by the recurrence.
std::vector<HElem> l_coeffs(const Context& C, long n);
/// (θ - θ^q)···(θ - θ^{q^j}) Θ^{W_j + q^j σ^{N-1} + Σ_k ⌊(j+N-k-2)/N⌋ σ^k}
HElem l_closed(const Context& C, long j);
/// ⟨1⟩···⟨j⟩ Θ^{q^j(σ^{N-1} - 1) - σ^j - σ^{j-1} + 2}
HElem l_bracket(const Context& C, long j);
/// ⟨1⟩···⟨j⟩ Θ^{(q^j - 1)(σ - 1) + W_j(σ² - 1)}, which equals σ²(L_j).
HElem l_bracket_sigma2(const Context& C, long j);
/// L_j from (-1)^j / L_j = Res_{t=θ} ω^{(j+1)}/(f^{(0)}···f^{(j)}).
HElem l_residue(const Context& C, long j);

/// Σ_{j=0}^n (-1)^{n-j} / (D_j L_{n-j}^{q^j}); zero for n ≥ 1.
HElem convolution_sum(const std::vector<HElem>& D, const std::vector<HElem>& L, long n);

/// A q-power series Σ c_i ξ^{q^i}, truncated after c.size() terms.
struct QSeries {
  std::vector<HElem> c;
  long size() const { return long(c.size()); }
};
/// exp_{(j)} coefficients 1/D_i^{σ^j}, i ≤ n.
QSeries exp_series(const std::vector<HElem>& D, long j);
/// log_{(0)} coefficients (-1)^i/L_i.
QSeries log_series(const std::vector<HElem>& L);
/// (a∘b)_k = Σ_{i+l=k} a_i b_l^{q^i}, up to min length.
QSeries compose(const QSeries& a, const QSeries& b);

/// Coefficients of E_k(z) = -L_{Nk+1} Ψ-coefficient: (-1)^j L_{Nk+1}/(D_j L_{Nk+1-j}^{q^j}).
std::vector<HElem> e_k_coeffs(const Context& C, long k, const std::vector<HElem>& D, const std::vector<HElem>& L);
/// Σ c_i z^{q^i} in H.
HElem eval_qpoly(const std::vector<HElem>& c, const HElem& z);
/// The nonzero a ∈ A with deg a ≤ d, up to F_q-scaling, for testing.
std::vector<AElem> elements_up_to_degree(const Context* C, i64 d);

/// Result of a truncated series evaluation: value plus a valuation floor for the error.
struct SeriesEval {
  Series value;
  Rat floor;   // v(true - value) ≥ floor
  long terms;  // number of q-power terms summed
};

/// Σ_{n<terms} ξ^{q^n} c(n) where c(n) is produced lazily and `vc(n)` bounds v(c(n)) from
/// below. Terms are added while q^n v(ξ) + vc(n) < prec; the first skipped term sets the floor.
SeriesEval eval_q_series(const Series& xi, const std::function<Series(long)>& coeff,
                         const std::function<Rat(long)>& vc, i64 prec, long max_terms = 40);

/// exp_{(j)}(ξ) at a series point.
SeriesEval eval_exp(const Context& C, long j, const Series& xi, i64 prec);
/// exp_{(j)} through D_i^{σ^j}, with the tail cut from v(D_i^{σ^j}).
i64 d_twisted_valuation(const Context& C, long i, long j);

/// Ψ_a(x) = Σ c_k x^{q^k} at a series point.
Series apply_ore(const std::vector<HElem>& coeffs, const Series& x, i64 prec);

}  // namespace dmod
