#include "dmod/explog.hpp"

#include <algorithm>

#include "dmod/motive.hpp"

namespace dmod {

HElem bracket(const Context& C, long k) { return C.Theta().frob(k) - C.Theta(k); }

HElem theta_diff(const Context& C, long k) { return C.theta() - C.theta().frob(k); }

namespace {

std::vector<HElem> theta_diffs(const Context& C, long n) {
  std::vector<HElem> r{C.zero()};
  for (long k = 1; k <= n; ++k) r.push_back(theta_diff(C, k));
  return r;
}

SigmaExp d_exponent(const Context& C, long i) {
  unsigned N = C.N();
  i64 qi = ipow(C.q(), unsigned(i));
  SigmaExp s = SigmaExp::scalar(N, W(C.q(), unsigned(i)));
  for (unsigned k = 0; k < N; ++k) s[k] += qi * ((i + long(k)) / long(N));
  return s;
}

}  // namespace

std::vector<HElem> d_coeffs(const Context& C, long n) {
  std::vector<HElem> D{C.one()};
  HElem th = C.theta(), eta = C.constant(C.eta()), t_eta = C.theta_minus(C.eta());
  for (long i = 1; i <= n; ++i) {
    HElem thi = th.frob(i);
    D.push_back(D.back().frob(1) * (th - thi) / ((thi - eta) * t_eta));
  }
  return D;
}

HElem d_closed(const Context& C, long i) {
  HElem r = C.Theta_pow(d_exponent(C, i));
  auto td = theta_diffs(C, i);
  // θ^{q^m} - θ^{q^i} = (θ - θ^{q^{i-m}})^{q^m}
  for (long m = 0; m < i; ++m) r = r * td[std::size_t(i - m)].frob(m);
  return r;
}

HElem d_from_s_basis(const Context& C, long i) { return s_basis(C, i).eval(C.theta().frob(i)); }

HElem d_twisted(const Context& C, const HElem& Dn, long n, long j) {
  unsigned N = C.N();
  i64 qn = ipow(C.q(), unsigned(n));
  // Π_{l<j} (θ - η^{(l)}) = Θ^{-Σ_{l<j} σ^l}, raised to q^n σ^{-n} - q^n
  SigmaExp run = sigma_run(N, 0, j) * i64(-1);
  SigmaExp e = run * (SigmaExp::mono(N, -n, qn) - SigmaExp::scalar(N, qn));
  e = e + (SigmaExp::mono(N, j) - SigmaExp::scalar(N, 1)) * W(C.q(), unsigned(n));
  return Dn * C.Theta_pow(e);
}

i64 d_twisted_valuation(const Context& C, long i, long j) {
  long N = long(C.N());
  SigmaExp e = d_exponent(C, i);
  // σ^j moves Θ^{σ^k} to Θ^{σ^{k+j}}; only Θ itself has a pole at η.
  i64 v = -e[std::size_t(((-j % N) + N) % N)];
  for (long m = 0; m < i; ++m)
    if ((i - m) % N == 0) v += ipow(C.q(), unsigned(m));
  return v;
}

i64 d_valuation(const Context& C, long i) {
  long N = long(C.N());
  i64 v = 0;
  for (long k = 1; k <= i; ++k) v = i64(C.q()) * v - (k % N == 0 ? ipow(C.q(), unsigned(k)) : 1);
  return v;
}

std::vector<HElem> l_coeffs(const Context& C, long n) {
  std::vector<HElem> L{C.one()};
  HElem th = C.theta();
  for (long j = 1; j <= n; ++j) {
    i64 a = ipow(C.q(), unsigned(j - 1)), b = ipow(C.q(), unsigned(j)) - a;
    HElem den = C.theta_minus(C.eta_k(j - 2)) * C.theta_minus(C.eta()).pow(a) * C.theta_minus(C.eta_k(-1)).pow(b);
    L.push_back(L.back() * (th - th.frob(j)) / den);
  }
  return L;
}

HElem l_closed(const Context& C, long j) {
  unsigned N = C.N();
  SigmaExp s = SigmaExp::scalar(N, W(C.q(), unsigned(j))) + SigmaExp::mono(N, long(N) - 1, ipow(C.q(), unsigned(j)));
  for (unsigned k = 0; k < N; ++k) s[k] += (j + long(N) - long(k) - 2) / long(N);
  HElem r = C.Theta_pow(s);
  for (long m = 1; m <= j; ++m) r = r * theta_diff(C, m);
  return r;
}

namespace {
HElem bracket_product(const Context& C, long j) {
  HElem r = C.one();
  for (long k = 1; k <= j; ++k) r = r * bracket(C, k);
  return r;
}
}  // namespace

HElem l_bracket(const Context& C, long j) {
  unsigned N = C.N();
  i64 qj = ipow(C.q(), unsigned(j));
  SigmaExp s = SigmaExp::mono(N, long(N) - 1, qj) - SigmaExp::scalar(N, qj) - SigmaExp::mono(N, j) -
               SigmaExp::mono(N, j - 1) + SigmaExp::scalar(N, 2);
  return bracket_product(C, j) * C.Theta_pow(s);
}

HElem l_bracket_sigma2(const Context& C, long j) {
  unsigned N = C.N();
  i64 qj = ipow(C.q(), unsigned(j));
  SigmaExp s = (SigmaExp::mono(N, 1) - SigmaExp::scalar(N, 1)) * (qj - 1) +
               (SigmaExp::mono(N, 2) - SigmaExp::scalar(N, 1)) * W(C.q(), unsigned(j));
  return bracket_product(C, j) * C.Theta_pow(s);
}

HElem l_residue(const Context& C, long j) {
  HElem r = residue_log_coeff(C, j);
  return (j % 2 ? -C.one() : C.one()) / r;
}

HElem convolution_sum(const std::vector<HElem>& D, const std::vector<HElem>& L, long n) {
  const Context& C = *D[0].ctx();
  HElem s = C.zero();
  for (long j = 0; j <= n; ++j) {
    HElem t = (D[std::size_t(j)] * L[std::size_t(n - j)].frob(j)).inv();
    s = (n - j) % 2 ? s - t : s + t;
  }
  return s;
}

QSeries exp_series(const std::vector<HElem>& D, long j) {
  QSeries r;
  for (auto& d : D) r.c.push_back(d.sigma(j).inv());
  return r;
}

QSeries log_series(const std::vector<HElem>& L) {
  QSeries r;
  for (std::size_t i = 0; i < L.size(); ++i) r.c.push_back(i % 2 ? -L[i].inv() : L[i].inv());
  return r;
}

QSeries compose(const QSeries& a, const QSeries& b) {
  long n = std::min(a.size(), b.size());
  const Context& C = *a.c[0].ctx();
  QSeries r;
  for (long k = 0; k < n; ++k) {
    HElem s = C.zero();
    for (long i = 0; i <= k; ++i) s = s + a.c[std::size_t(i)] * b.c[std::size_t(k - i)].frob(i);
    r.c.push_back(s);
  }
  return r;
}

std::vector<HElem> e_k_coeffs(const Context& C, long k, const std::vector<HElem>& D, const std::vector<HElem>& L) {
  long M = long(C.N()) * k + 1;
  if (long(D.size()) <= M || long(L.size()) <= M) throw DomainError("E_k needs D and L up to index Nk+1");
  std::vector<HElem> c;
  for (long j = 0; j <= M; ++j) {
    HElem t = L[std::size_t(M)] / (D[std::size_t(j)] * L[std::size_t(M - j)].frob(j));
    c.push_back(j % 2 ? -t : t);
  }
  return c;
}

HElem eval_qpoly(const std::vector<HElem>& c, const HElem& z) {
  HElem s = z.ctx()->zero();
  for (std::size_t i = 0; i < c.size(); ++i) s = s + c[i] * z.frob(long(i));
  return s;
}

std::vector<AElem> elements_up_to_degree(const Context* C, i64 d) {
  u32 q = C->q(), N = C->N();
  std::vector<AElem> out;
  for (u32 m = 0; i64(N) * m <= d; ++m) {
    std::size_t len = std::size_t(N * m + 1);
    std::vector<u32> c(len, 0);
    // odometer over coefficient vectors; keep those whose reduced form has pole order m
    while (true) {
      std::size_t i = 0;
      while (i < len && ++c[i] == q) c[i++] = 0;
      if (i == len) break;
      AElem a(C, FPoly(c), m);
      if (a.m() == m) out.push_back(a);
    }
  }
  return out;
}

SeriesEval eval_q_series(const Series& xi, const std::function<Series(long)>& coeff,
                         const std::function<Rat(long)>& vc, i64 prec, long max_terms) {
  const Context* C = xi.ctx();
  Rat P(prec);
  Series acc = Series::zero(C, prec);
  if (xi.is_zero()) return {acc, xi.precision(), 0};
  Rat vx = xi.valuation();
  long n = 0;
  Rat tail = P;
  for (; n < max_terms; ++n) {
    i64 qn = ipow(C->q(), unsigned(n));
    Rat bound = vx * qn + vc(n);
    if (bound >= P) {
      tail = bound;
      break;
    }
    acc = acc + xi.frob(n) * coeff(n);
  }
  if (n == max_terms) throw DomainError("series tail did not reach the requested precision");
  Rat floor = std::min(acc.precision(), std::min(tail, P));
  return {acc.truncated(P), floor, n};
}

SeriesEval eval_exp(const Context& C, long j, const Series& xi, i64 prec) {
  std::vector<HElem> D{C.one()};
  Rat vx = xi.valuation();
  auto coeff = [&](long n) {
    while (long(D.size()) <= n) D.push_back(d_closed(C, long(D.size())));
    i64 qn = ipow(C.q(), unsigned(n));
    i64 need = prec - (vx * qn).floor() + 1;
    return Series::embed(D[std::size_t(n)].sigma(j).inv(), need);
  };
  auto vc = [&](long n) { return Rat(-d_twisted_valuation(C, n, j)); };
  return eval_q_series(xi, coeff, vc, prec);
}

Series apply_ore(const std::vector<HElem>& coeffs, const Series& x, i64 prec) {
  const Context* C = x.ctx();
  Series acc = Series::zero(C, prec);
  if (x.is_zero()) return acc;
  Rat vx = x.valuation();
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k].is_zero()) continue;
    i64 qk = ipow(C->q(), unsigned(k));
    Series xk = x.frob(long(k));
    i64 need = prec - (vx * qk).floor() + 1;
    acc = acc + xk * Series::embed(coeffs[k], need);
  }
  return acc;
}

}  // namespace dmod
