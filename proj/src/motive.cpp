#include "dmod/motive.hpp"

#include <algorithm>
#include <map>

namespace dmod {

namespace {

HPoly lift_poly(const Context& C, const FPoly& p) {
  std::vector<HElem> c;
  for (u32 x : lift(C, p).c) c.push_back(C.constant(x));
  return HPoly(std::move(c), C.zero());
}

/// Π_{k<i} (θ^{q^k} - t)
HPoly theta_orbit_poly(const Context& C, long i) {
  HPoly r = HPoly::constant(C.one());
  for (long k = 0; k < i; ++k) r = r * (-HPoly::linear(C.theta().frob(k)));
  return r;
}

/// (t - η^{(j)})^e
HPoly eta_power(const Context& C, long j, long e) {
  return HPoly::linear(C.constant(C.eta_k(j))).pow(unsigned(e));
}

using Trunc = std::vector<HElem>;

Trunc trunc_mul(const Trunc& a, const Trunc& b, std::size_t n, const HElem& zero) {
  Trunc r(n, zero);
  for (std::size_t i = 0; i < n && i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; i + j < n && j < b.size(); ++j)
      if (!b[j].is_zero()) r[i + j] = r[i + j] + a[i] * b[j];
  }
  return r;
}

/// (c + s)^e truncated to n terms in s.
Trunc binomial_series(const HElem& c, long e, std::size_t n) {
  const HElem zero = zero_like(c);
  Trunc base(n, zero);
  if (e >= 0) {
    base[0] = c;
    if (n > 1) base[1] = one_like(c);
  } else {
    // 1/(c + s) = Σ (-1)^i s^i / c^{i+1}
    HElem ic = c.inv(), term = ic;
    for (std::size_t i = 0; i < n; ++i) {
      base[i] = term;
      term = -(term * ic);
    }
  }
  Trunc r(n, zero);
  r[0] = one_like(c);
  for (long k = 0; k < (e < 0 ? -e : e); ++k) r = trunc_mul(r, base, n, zero);
  return r;
}

}  // namespace

HRat shtuka(const Context& C, long i) {
  HElem th = C.Theta().pow(ipow(C.q(), unsigned(i)));
  HElem ei = C.constant(C.eta_k(i));
  HPoly num(std::vector<HElem>{C.one() + th * ei, -th}, C.zero());
  return HRat(num, HPoly::linear(ei));
}

HRat s_basis(const Context& C, long i) {
  HPoly den = HPoly::constant(C.one());
  for (long k = 0; k < i; ++k) den = den * HPoly::linear(C.constant(C.eta_k(k)));
  return HRat(theta_orbit_poly(C, i) * C.Theta().pow(W(C.q(), unsigned(i))), den);
}

HRat omega_h(const Context& C, long j) {
  if (j < 1) throw DomainError("ω^{(j)} is defined over H only for j ≥ 1");
  HElem s = -(C.theta_minus(C.eta_k(-1)).frob(j - 1) * C.Theta().pow(ipow(C.q(), unsigned(j - 1))));
  HPoly den = HPoly::linear(C.constant(C.eta_k(j - 2))) * HPoly::linear(C.constant(C.eta_k(j - 1)));
  return HRat(HPoly::constant(s), den);
}

HElem FactoredRat::residue_at(const HElem& beta) const {
  long M = 0;
  for (auto& [a, e] : factors)
    if (a == beta) M -= e;
  if (M <= 0) return zero_like(scalar);
  std::size_t n = std::size_t(M);
  Trunc acc = num.taylor(beta, n);
  for (auto& [a, e] : factors) {
    if (e == 0 || a == beta) continue;
    acc = trunc_mul(acc, binomial_series(beta - a, e, n), n, zero_like(scalar));
  }
  return scalar * acc[n - 1];
}

FactoredRat residue_integrand(const AElem& z, long k) {
  const Context& C = *z.ctx();
  long N = long(C.N());
  std::vector<long> eta_exp(std::size_t(N), -long(z.m()));
  auto at = [&](long j) -> long& { return eta_exp[std::size_t(((j % N) + N) % N)]; };
  at(k - 1) -= 1;
  at(k) -= 1;
  HElem scalar = -(C.theta_minus(C.eta_k(-1)).frob(k) * C.Theta().pow(ipow(C.q(), unsigned(k))));
  FactoredRat r{C.one(), lift_poly(C, z.p()), {}};
  for (long i = 0; i <= k; ++i) {
    at(i) += 1;
    scalar = scalar * -C.Theta().pow(-ipow(C.q(), unsigned(i)));
    r.factors.push_back({C.theta().frob(i), -1});
  }
  r.scalar = scalar;
  for (long j = 0; j < N; ++j)
    if (eta_exp[std::size_t(j)]) r.factors.push_back({C.constant(C.eta_k(j)), eta_exp[std::size_t(j)]});
  return r;
}

std::vector<HElem> residue_coeffs(const AElem& z) {
  const Context& C = *z.ctx();
  std::vector<HElem> out;
  for (long k = 0; k <= z.deg(); ++k) {
    FactoredRat R = residue_integrand(z, k);
    HElem s = C.zero();
    for (long j = 0; j < long(C.N()); ++j) s = s + R.residue_at(C.constant(C.eta_k(j)));
    out.push_back(-s);
  }
  return out;
}

HElem residue_log_coeff(const Context& C, long j) {
  return residue_integrand(AElem::constant(&C, 1), j).residue_at(C.theta());
}

std::vector<HElem> expand_in_s_basis(const Context& C, const HRat& g) {
  long N = long(C.N());
  HPoly num = g.num(), den = g.den(), qt(C.zero());
  std::vector<long> e(std::size_t(N), 0);
  for (long j = 0; j < N; ++j) {
    HElem ej = C.constant(C.eta_k(j));
    while (den.divide_linear(ej, &qt)) {
      den = qt;
      ++e[std::size_t(j)];
    }
  }
  if (den.deg() != 0) throw DomainError("pole outside the places over ρ");
  num = num * den.lc().inv();
  auto cancel = [&] {
    for (long j = 0; j < N; ++j) {
      HElem ej = C.constant(C.eta_k(j));
      while (e[std::size_t(j)] > 0 && num.divide_linear(ej, &qt)) {
        num = qt;
        --e[std::size_t(j)];
      }
    }
  };
  cancel();
  long total = 0;
  for (long x : e) total += x;
  if (num.deg() > total) throw DomainError("not regular at t = ∞");

  std::map<long, HElem> coeffs;
  long guard = 0;
  while (true) {
    long istar = -1, jstar = -1;
    for (long j = 0; j < N; ++j)
      if (e[std::size_t(j)] > 0 && j + (e[std::size_t(j)] - 1) * N + 1 > istar) {
        istar = j + (e[std::size_t(j)] - 1) * N + 1;
        jstar = j;
      }
    if (istar < 0) {
      if (!num.is_zero()) coeffs[0] = num[0];
      break;
    }
    if (++guard > 10000) throw std::logic_error("s-basis elimination did not terminate");
    const GField& F = C.F();
    u32 ej = C.eta_k(jstar);
    // leading Laurent coefficient of g at η^{(j*)}
    HElem lg = num.eval(C.constant(ej));
    for (long j = 0; j < N; ++j)
      if (j != jstar) lg = lg / C.constant(F.pow(F.sub(ej, C.eta_k(j)), e[std::size_t(j)]));
    // … and of s_{i*}
    HElem ls = C.Theta().pow(W(C.q(), unsigned(istar)));
    u32 lsc = 1;
    for (long k = 0; k < istar; ++k) {
      ls = ls * C.theta_minus(C.eta_k(jstar - k)).frob(k);
      if (((k - jstar) % N + N) % N) lsc = F.mul(lsc, F.sub(ej, C.eta_k(k)));
    }
    ls = ls / C.constant(lsc);
    HElem c = lg / ls;
    coeffs[istar] = c;
    HPoly sub = theta_orbit_poly(C, istar) * (c * C.Theta().pow(W(C.q(), unsigned(istar))));
    for (long j = 0; j < N; ++j) {
      long ordj = istar > j ? (istar - j + N - 1) / N : 0;
      if (ordj > e[std::size_t(j)]) {
        // s_{i*} may have a pole where g has none; widen the common denominator
        num = num * eta_power(C, j, ordj - e[std::size_t(j)]);
        e[std::size_t(j)] = ordj;
      }
      sub = sub * eta_power(C, j, e[std::size_t(j)] - ordj);
    }
    num = num - sub;
    cancel();
  }
  long top = coeffs.empty() ? 0 : coeffs.rbegin()->first;
  std::vector<HElem> out(std::size_t(top + 1), C.zero());
  for (auto& [i, c] : coeffs) out[std::size_t(i)] = c;
  return out;
}

HRat as_ratfunc(const AElem& z) {
  const Context& C = *z.ctx();
  HPoly den = HPoly::constant(C.one());
  for (u32 i = 0; i < z.m(); ++i) den = den * lift_poly(C, FPoly(C.rho()));
  return HRat(lift_poly(C, z.p()), den);
}

bool verify_motive_identity(const AElem& z) {
  const Context& C = *z.ctx();
  long N = long(C.N());
  std::vector<HElem> c = residue_coeffs(z);
  long K = long(c.size()) - 1;
  // common denominator Π (t - η^{(j)})^{E_j}, E_j = ⌈(K - j)/N⌉
  std::vector<long> E(static_cast<std::size_t>(N));
  for (long j = 0; j < N; ++j) E[std::size_t(j)] = K > j ? (K - j + N - 1) / N : 0;
  HPoly lhs = lift_poly(C, z.p());
  for (long j = 0; j < N; ++j) {
    if (E[std::size_t(j)] < long(z.m())) return false;
    lhs = lhs * eta_power(C, j, E[std::size_t(j)] - long(z.m()));
  }
  HPoly rhs(C.zero());
  for (long k = 0; k <= K; ++k) {
    if (c[std::size_t(k)].is_zero()) continue;
    HPoly term = theta_orbit_poly(C, k) * (c[std::size_t(k)] * C.Theta().pow(W(C.q(), unsigned(k))));
    for (long j = 0; j < N; ++j) {
      long ordj = k > j ? (k - j + N - 1) / N : 0;
      term = term * eta_power(C, j, E[std::size_t(j)] - ordj);
    }
    rhs = rhs + term;
  }
  return lhs == rhs;
}

}  // namespace dmod
