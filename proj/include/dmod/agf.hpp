#pragma once
/**
 * @file agf.hpp
 * @brief The Anderson–Thakur function ω_f, the generating functions G, H and Log,
 * the dual module Φ, the exponential action ▷, and sample points in the domain D.
 *
 * Functions of 𝔱 are exact RatFunc<HElem> whenever both sides of an identity are
 * rational at finite truncation; otherwise they are evaluated at Puiseux-series points
 * z ∈ D and compared against a valuation floor built from the term valuations.
 * ω_K = (-Θ)^{1/(q-1)} R_K with R_K = Π_{k<K} (𝔱 - η^{(k)})/(𝔱 - θ^{q^k}); the radical
 * is kept outside and every operator is conjugated through it (τ ↦ -Θτ).
 */

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "dmod/drinfeld.hpp"
#include "dmod/explog.hpp"
#include "dmod/motive.hpp"
#include "dmod/ore.hpp"

namespace dmod {

using RatOre = OrePoly<HRat>;

// ---------------------------------------------------------------- ω_f, exact part

/// R_K(𝔱) = Π_{k<K} (𝔱 - η^{(k)})/(𝔱 - θ^{q^k}), so ω_K = (-Θ)^{1/(q-1)} R_K.
HRat omega_ratio(const Context& C, long K);
/// (ω_K^{(1)} - f ω_K)/(-Θ)^{1/(q-1)} = -Θ R_K^{(1)} - f R_K, computed by twisting.
HRat omega_defect(const Context& C, long K);
/// The predicted tail: f (θ - η)^{q^K}/(𝔱 - θ^{q^K}) R_K.
HRat omega_defect_closed(const Context& C, long K);
/// omega_defect == omega_defect_closed as a polynomial identity after clearing denominators.
bool omega_defect_identity(const Context& C, long K);
/// ω_K^{(1)}/(f ω_K) by twisting, and its closed form (𝔱 - η^{(K)})/(𝔱 - θ^{q^K}).
HRat omega_step_ratio(const Context& C, long K);
HRat omega_step_ratio_closed(const Context& C, long K);
/// Res_{𝔱=θ} R_K d(1/(𝔱-η)), through the generic rational-function residue.
HElem omega_residue(const Context& C, long K);
/// -Θ Π_{k=1}^{K-1} Θ^{q^k}/⟨k⟩, i.e. -π̃_{Φ,K-1} divided by (-Θ)^{1/(q-1)}.
HElem omega_residue_closed(const Context& C, long K);

/// Σ a_k τ^k acting on functions of 𝔱 by g ↦ Σ a_k g^{(k)}.
HRat apply_rat_ore(const RatOre& P, const HRat& g);
/// Σ c_k τ^k ↦ Σ c_k (-Θ)^{W_k} τ^k: the operator seen on g when it acts on (-Θ)^{1/(q-1)} g.
RatOre conjugate_by_radical(const HOre& P);
/// ∇_{T_i}-defects of ω_K divided by the radical, i = 0..N-1.
std::vector<HRat> nabla_defects(const DrinfeldModule& Psi, long K);

/// Exact checks relating ∇^f and the ∇_{T_i} on ω_K.
struct NablaCheck {
  bool b_combination = false;  // Σ b_i Ψ_{T_i} = τ + Θ and Σ b_i T_i = 1/(𝔱 - η)
  bool defect_sum = false;     // Σ b_i D_i = ∇^f-defect
  bool division = false;       // Ψ_{T_i} - T_i = Q_i (τ - f) with zero remainder, and D_i = Q_i(defect)
};
NablaCheck check_nabla(const DrinfeldModule& Psi, long K);

// ---------------------------------------------------------------- samples and evaluation

/// A sample point for 𝔱, stored exactly as a Laurent polynomial in x = θ - η.
struct Sample {
  std::string label;
  Series z;               // exact (huge precision); use at(p) before inverting
  std::vector<Rat> cert;  // v(1/(z - η^{(j)})), j = 0..N-1
  bool in_domain = false; // all cert entries ≥ 0
  Series at(i64 prec) const { return z.truncated(Rat(prec)); }
};
/// Builds a sample and its domain certificate.
Sample make_sample(const Context& C, const std::string& label, const Series& z);
/// Parses "0", "x^k", "eta+x^k", "eta^(j)+x^k", "eta^(j)-x^k", "eta^(j)".
Sample parse_sample(const Context& C, const std::string& spec);
/// z = η + 1/x, z = η^{(1)} + 1/x and z = 0.
std::vector<Sample> default_samples(const Context& C);
/// Membership through |T_j(z)|_η ≤ 1 for all j.
bool in_domain_via_T(const Context& C, const Series& z, i64 prec);
/// A random Laurent polynomial, biased towards the boundary cases of D.
Series random_point(const Context& C, std::mt19937& rng);

/// g(z) for a rational function over H at a series point.
Series eval_rat(const HRat& g, const Series& z, i64 prec);
/// θ^{q^k} = η^{(k)} + x^{q^k}, exactly.
Series theta_frob_series(const Context& C, long k);
/// ω_K(z) = (-Θ)^{1/(q-1)} R_K(z).
Series omega_at(const Context& C, long K, const Series& z, i64 prec);

/// Σ ξ^{q^n} c_n with exact c_n ∈ H; terms stop when q^n v(ξ) + v(c_n) ≥ prec.
SeriesEval eval_h_series(const Series& xi, const std::function<HElem(long)>& c, i64 prec);

// ---------------------------------------------------------------- Φ

/// C_{0,2}^{q-1} = Θ^{σ²-1} Θ^{(q-1)(σ-1)}.
HElem c02_power(const Context& C);
/// D_n^Φ = (θ-η)/(θ-η^{(1)}) D_n Θ^{2q^n} (θ^{q^n} - η)(θ^{q^n} - η^{(1)}).
HElem d_phi(const Context& C, long n);
/// D_n^{σ²}/(C_{0,2}^{q-1})^{W_n}, from exp_Φ(U) = C_{0,2}^{-1} exp_{(2)}(C_{0,2}U).
HElem d_phi_from_twist(const Context& C, long n);
/// Φ_a = C_{0,2}^{-1} Ψ^{(2)}_a C_{0,2}: coefficient k is (Ψ^{(2)}_a)_k (C_{0,2}^{q-1})^{W_k}.
DrinfeldModule phi_module(const DrinfeldModule& Psi);
/// The closed N = 2 form of Φ_{T_0}, Φ_{T_1}.
std::vector<HOre> phi_closed_n2(const Context& C);
/// exp_Φ(U).
SeriesEval exp_phi(const Context& C, const Series& U, i64 prec);

// ---------------------------------------------------------------- G

/// G^{(s)}(U; z) = Σ U^{q^{n+s}}/(D_n^{q^s} Q_n^{(s)}(z)). Requires z ∈ D.
SeriesEval g_at(const Context& C, long s, const Series& U, const Series& z, i64 prec);
/// f(z) = 1/(z - η) - Θ
Series shtuka_at(const Context& C, long k, const Series& z, i64 prec);

// ---------------------------------------------------------------- H and ▷_Φ

/// Υ_k(t): Π_{i=-1}^{k-1}(t - η^{(-i)}) for k ≥ 0, (t - η^{(1)}) Π_{i=k}^{-1} 1/(t - η^{(-i)}) for k < 0.
HRat upsilon(const Context& C, long k);
/// Υ_k ▷_Φ U through Σ (U/Θ²)^{q^n} Υ_k(θ^{q^n}) / (D_n (θ^{q^n}-η)(θ^{q^n}-η^{(1)})).
SeriesEval upsilon_action_spectral(const Context& C, long k, const Series& U, i64 prec);
/// Υ_k ▷_Φ U = Θ^{1-σ} r_k^{-1} exp_{(1-k)}(Θ^{σ-1} r_k Υ_k(θ) U), r_k = (Θ^{σ^{1-k}-1})^{1/(q-1)}.
SeriesEval upsilon_action_exp(const Context& C, long k, const Series& U, i64 prec);

/// Truncated H(U; z) with the number of Υ_k terms used.
struct HEval {
  Series value;
  Rat floor;
  long k_terms = 0;
};
HEval h_at(const Context& C, const Series& U, const Series& z, i64 prec, long k_max = 4000);

/// Σ_{l=1}^m (B_l - (t-η)/(𝔱-η) B_{l-1}) = (σ̄^m η - η)/(𝔱-η) B_m at t = θ^1..θ^{m+1},
/// with σ̄ = σ^{dir}, dir = ±1, exactly in 𝔱.
bool telescoping_identity(const Context& C, long m, long dir);

// ---------------------------------------------------------------- Log

/// Log(ξ; z) = ξ + Σ ξ^{q^n}/(f^{(1)}(z)···f^{(n)}(z)), z ∈ D.
SeriesEval log_at(const Context& C, const Series& xi, const Series& z, i64 prec);
/// 1/(f^{(1)}(θ)···f^{(n)}(θ))
HElem log_theta_coeff(const Context& C, long n);
/// (-1)^n (C_{0,2}^{q-1})^{W_n}/L_n^{σ²}: the log_Φ coefficient from log_{(0)}.
HElem log_phi_coeff(const Context& C, long n);
/// 1/(f^{(1)}(𝔱)···f^{(n)}(𝔱)) as a rational function.
HRat log_coeff_rat(const Context& C, long n);
/// Coefficient of ξ^{q^m} on both sides of Log(Φ_{T_i}ξ; 𝔱) = T_i(𝔱)Log(ξ; 𝔱) - f(𝔱)(…)
/// for N = 2, with Φ from the closed form. Returns true when they agree exactly.
bool log2_identity(const Context& C, unsigned i, long m);

// ---------------------------------------------------------------- exponential action

/// g = (1/a) Σ b_i ⊗ l_i with a, b_i ∈ A and l_i ∈ H.
struct AFrac {
  AElem a;
  std::vector<std::pair<AElem, HElem>> terms;
};
AFrac afrac_constant(const Context& C, const HElem& l);
AFrac afrac_from(const AElem& b);
/// 1/(t - η^{(k)}) = Σ_i b_i^{q^k} T_i
AFrac afrac_inverse_linear(const Context& C, long k);
AFrac operator*(const AFrac& x, const AFrac& y);
AFrac operator+(const AFrac& x, const AFrac& y);
/// g(t) as a rational function over H.
HRat afrac_ratfunc(const AFrac& g);

/// A Drinfeld module together with its exponential coefficients.
struct ExpModule {
  const Context* ctx = nullptr;
  std::vector<HOre> images;
  std::function<HElem(long)> d;  // D_n^M
};
ExpModule exp_module_psi(const DrinfeldModule& Psi);  // D_n^{σ^j}, j = Psi.twist
ExpModule exp_module_phi(const DrinfeldModule& Psi);  // Φ built from Psi
SeriesEval exp_of(const ExpModule& M, const Series& U, i64 prec);
/// Σ l_i M_{b_i}(exp_M(U/a(θ))).
SeriesEval action_definitional(const ExpModule& M, const AFrac& g, const Series& U, i64 prec);
/// Σ U^{q^n} g(θ^{q^n})/D_n^M.
SeriesEval action_spectral(const ExpModule& M, const HRat& g, const Series& U, i64 prec);

// ---------------------------------------------------------------- reports

struct AGFSample {
  std::string z;
  std::string check;  // which identity the row certifies
  Rat value_valuation;
  Rat defect_valuation;
  Rat floor;
  bool pass = false;
};
struct AGFReport {
  std::string which;  // "omega_f", "G", "H", "Log"
  long trunc = 0;     // K for ω_f, number of q-power terms otherwise
  std::vector<AGFSample> samples;
  bool has_residue = false;
  std::string residue_partial;
  bool residue_matches = false;
  bool pass() const;
};

/// ω_K at each sample: Cauchy step v(ω_{K+1} - ω_K) against v(ω_K) + q^K, plus the residue.
AGFReport report_omega(const DrinfeldModule& Psi, long K, const std::vector<Sample>& S, i64 prec);
/// G(π̃_{Φ,K}; z): ∇^f-defect G^{(1)} - fG - exp_Φ(U) and the distance to ω_K(z).
AGFReport report_g(const DrinfeldModule& Psi, long K, const std::vector<Sample>& S, i64 prec);
/// H(U; z) against G(U; z) for U = π̃_{Φ,K}.
AGFReport report_h(const DrinfeldModule& Psi, long K, const std::vector<Sample>& S, i64 prec);
/// Log(exp_Φ U; z) against -f(z)G(U; z) for U = x (θ - η).
AGFReport report_log(const DrinfeldModule& Psi, long K, const std::vector<Sample>& S, i64 prec);

}  // namespace dmod
