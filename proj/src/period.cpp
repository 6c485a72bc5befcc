#include "dmod/period.hpp"

#include <algorithm>

#include "dmod/explog.hpp"

namespace dmod {

namespace {

HElem brackets_below_N(const Context& C) {
  HElem r = C.one();
  for (long k = 1; k < long(C.N()); ++k) r = r * bracket(C, k);
  return r;
}

SigmaExp zeta(const Context& C, long i) {
  unsigned N = C.N();
  return (SigmaExp::mono(N, 1) - SigmaExp::scalar(N, 1)) * (ipow(C.q(), unsigned(i)) - 1) +
         (SigmaExp::mono(N, 2) - SigmaExp::scalar(N, 1)) * W(C.q(), unsigned(i));
}

/// Nd+1-j = N(d-l) + i with 0 ≤ i < N; returns {d-l, i}.
std::pair<long, long> split(const Context& C, long d, long j) {
  long m = long(C.N()) * d + 1 - j, N = long(C.N());
  return {m / N, m % N};
}

}  // namespace

HElem gamma_product(const Context& C, long d, long k) {
  if (d < 0 || k < 0 || k >= long(C.N())) throw DomainError("Γ_{d,k} needs d ≥ 0 and 0 ≤ k < N");
  long N = long(C.N());
  HElem r = C.one();
  for (long j = 1; j <= d; ++j) r = r * (C.one() - bracket(C, N * (j - 1) + k) / bracket(C, N * j + k));
  return r;
}

HElem gamma_closed(const Context& C, long d, long k) {
  if (d < 0 || k < 0 || k >= long(C.N())) throw DomainError("Γ_{d,k} needs d ≥ 0 and 0 ≤ k < N");
  long N = long(C.N());
  i64 qN = ipow(C.q(), unsigned(N));
  i64 e = ipow(C.q(), unsigned(k)) * ((ipow(qN, unsigned(d)) - 1) / (qN - 1));
  HElem r = bracket(C, N).pow(e);
  for (long j = 1; j <= d; ++j) r = r / bracket(C, N * j + k);
  return r;
}

HElem gamma_all_closed(const Context& C, long d) {
  long N = long(C.N());
  i64 q = C.q(), qN = ipow(q, unsigned(N));
  HElem r = brackets_below_N(C) * C.Theta().pow((q - qN) / (q - 1));
  r = r * (C.one() - C.Theta().pow(1 - qN)).pow((ipow(qN, unsigned(d)) - 1) / (q - 1));
  for (long k = 1; k <= N * (d + 1) - 1; ++k) r = r * pi_factor(C, k);
  return r;
}

bool ratio_identity_defined(const Context& C, long d, long j) {
  long N = long(C.N());
  if (d < 1 || j < 1 || N * d < j - 1) return false;
  auto [dl, i] = split(C, d, j);
  return !(dl == 0 && i < N - 1);
}

HElem ratio_lhs(const Context& C, long d, long j) {
  long N = long(C.N());
  return l_bracket_sigma2(C, N * d + 1) / l_bracket_sigma2(C, N * d + 1 - j).frob(j);
}

HElem ratio_rhs(const Context& C, long d, long j) {
  if (!ratio_identity_defined(C, d, j)) throw DomainError("ratio identity needs d ≥ 1, Nd ≥ j-1 and no Γ_{-1}");
  long N = long(C.N());
  auto [dl, i] = split(C, d, j);
  i64 qj = ipow(C.q(), unsigned(j));
  HElem num = C.one(), den = gamma_closed(C, d, 0) * gamma_closed(C, d, 1);
  for (long k = 0; k <= i; ++k) num = num * gamma_closed(C, dl, k);
  for (long k = i + 1; k < N; ++k) num = num * gamma_closed(C, dl - 1, k);
  for (long k = 2; k < N; ++k) den = den * gamma_closed(C, d - 1, k);
  HElem r = brackets_below_N(C).pow(1 - qj) * bracket(C, N).pow(W(C.q(), unsigned(j))) * C.Theta_pow(zeta(C, j));
  return r * num.frob(j) / den;
}

HElem pi_factor(const Context& C, long k) { return C.Theta().frob(k) / bracket(C, k); }

HElem pi_product(const Context& C, long K) {
  HElem r = C.one();
  for (long k = 1; k <= K; ++k) r = r * pi_factor(C, k);
  return r;
}

HElem pi_tilde_power(const Context& C, long K) {
  return -C.Theta(2) * (C.Theta(1) * pi_product(C, K)).pow(i64(C.q()) - 1);
}

HElem pi_phi_power(const Context& C, long K) {
  return -C.Theta() * (C.Theta() * pi_product(C, K)).pow(i64(C.q()) - 1);
}

i64 pi_tail_gap(const Context& C, long K) {
  return ipow(C.q(), unsigned(K + 1)) - ((K + 1) % long(C.N()) == 0 ? 1 : 0);
}

Series radical(const HElem& h, i64 prec) {
  if (h.is_one()) return Series::constant(h.ctx(), 1, prec);
  return Series::embed(h, prec).root_q_minus_1();
}

namespace {

PeriodApprox period_series(const Context& C, const char* target, long K, i64 prec, const HElem& radicand_a,
                           const HElem& radicand_b, const HElem& rest) {
  if (K < 1) throw DomainError("period partial product needs K ≥ 1");
  i64 work = prec + 4;
  Series v = radical(radicand_a, work) * radical(radicand_b, work) * Series::embed(rest * pi_product(C, K), work);
  Series t = v.truncated(Rat(prec));
  if (t.is_zero()) throw DomainError("precision too small for the period partial product");
  return {target, K, t, t.valuation() + Rat(pi_tail_gap(C, K))};
}

}  // namespace

PeriodApprox pi_tilde(const Context& C, long K, i64 prec) {
  return period_series(C, "pi_tilde", K, prec, -C.Theta(), C.Theta_pow(SigmaExp::mono(C.N(), 2) - SigmaExp::scalar(C.N(), 1)),
                       C.Theta(1));
}

PeriodApprox pi_phi(const Context& C, long K, i64 prec) {
  return period_series(C, "pi_phi", K, prec, -C.Theta(), C.one(), C.Theta());
}

Series isogeny_constant(const Context& C, long i, long j, i64 prec) {
  unsigned N = C.N();
  long m = j - i;
  if (m <= 0) throw DomainError("C_{i,j} needs j > i");
  SigmaExp f = (gamma(N, C.q(), unsigned(m)) - SigmaExp::scalar(N, W(C.q(), unsigned(m)))).shift(i);
  return radical(C.Theta_pow(SigmaExp::mono(N, j) - SigmaExp::mono(N, i)), prec) * Series::embed(C.Theta_pow(f), prec);
}

Series twist_scale(const Context& C, long i, long j, i64 prec) {
  unsigned N = C.N();
  return radical(C.Theta_pow(SigmaExp::mono(N, j) - SigmaExp::mono(N, i)), prec) *
         Series::embed(C.Theta_pow(sigma_run(N, i, j)), prec);
}

u32 branch_ratio(const Series& a, const Series& b, Rat gap) {
  if (a.is_zero() || b.is_zero()) return 0;
  Series c = a / b;
  if (!(c.valuation() == Rat(0))) return 0;
  u32 c0 = c.coeff(0);
  const GField& F = c.ctx()->tower().level(c.level());
  if (F.pow(c0, i64(c.ctx()->q()) - 1) != 1) return 0;
  Series d = c - Series::constant(c.ctx(), c0, c.precision().floor() + 1, c.level());
  return d.valuation() >= gap ? c0 : 0;
}

LatticeCert lattice_check(const Context& C, long j, const AElem& a, long K, i64 prec, i64 margin) {
  if (j < 0) throw DomainError("lattice check needs j ≥ 0");
  unsigned N = C.N();
  LatticeCert cert;
  cert.j = j;
  cert.K = K;
  cert.target = "exp_" + std::to_string(j + 2) + "(pi_tilde_K*a)";
  HElem at = a.at_theta();
  HElem rest = at * C.Theta_pow(sigma_run(N, 2, j + 2));
  if (at.is_zero()) {
    cert.prec = prec;
    cert.valuation = cert.floor = Rat(prec);
    cert.pass = eval_exp(C, j + 2, Series::zero(&C, prec), prec).value.is_zero();
    return cert;
  }
  // the lattice point's valuation is known before any series work
  auto point = [&](i64 p) {
    Series s = pi_tilde(C, K, p).value * Series::embed(rest, p + 4);
    if (j > 0) s = s * radical(C.Theta_pow(SigmaExp::mono(N, j + 2) - SigmaExp::mono(N, 2)), p + 4);
    return s.truncated(Rat(p));
  };
  Rat v0 = point(16).valuation();
  cert.floor = v0 + Rat(pi_tail_gap(C, K));
  cert.prec = std::max(prec, cert.floor.floor() + margin);
  SeriesEval e = eval_exp(C, j + 2, point(cert.prec + 4), cert.prec);
  cert.valuation = e.value.valuation();
  cert.pass = cert.valuation >= cert.floor && e.floor >= cert.floor;
  return cert;
}

}  // namespace dmod
