#include "dmod/drinfeld.hpp"

#include "dmod/motive.hpp"

namespace dmod {

namespace {

HOre tau_plus(const HElem& b) { return HOre(std::vector<HElem>{b, one_like(b)}, b); }
HPOre tau_minus(const HPlus& x) { return HPOre::tau_minus(x); }

/// (η^n)^{q^{k-1}}, i.e. σ^k(η^{n/q}).
u32 eta_n_over_q(const Context& C, long n, long k) { return C.frobq(C.F().pow(C.eta(), n), k - 1); }

/// Products of `size` factors drawn with repetition from `gens`, one per multiset.
std::vector<HOre> multiset_products(const std::vector<HOre>& gens, std::size_t size, const HElem& one) {
  std::vector<HOre> cur{HOre::constant(one)};
  std::vector<std::size_t> last{0};
  for (std::size_t s = 0; s < size; ++s) {
    std::vector<HOre> nxt;
    std::vector<std::size_t> nlast;
    for (std::size_t r = 0; r < cur.size(); ++r)
      for (std::size_t g = last[r]; g < gens.size(); ++g) {
        nxt.push_back(cur[r] * gens[g]);
        nlast.push_back(g);
      }
    cur = std::move(nxt);
    last = std::move(nlast);
  }
  return cur;
}

HPlus minus_theta_pow(const Context& C, i64 e) { return HPlus::from((-C.Theta()).pow(e)); }

}  // namespace

HElem theta_bracket(const Context& C, long i, long l) {
  i64 q = C.q();
  HElem r = C.Theta_pow(gamma(C.N(), q, unsigned(i)) * (1 - q)) * C.Theta().pow(ipow(q, unsigned(i)));
  if (i < l) return r;
  i64 e = i == l ? -ipow(q, unsigned(i)) : ipow(q, unsigned(i - 1)) * (1 - q) * (i - l) - ipow(q, unsigned(i));
  return r * C.theta() * C.constant(C.F().pow(C.eta(), e));
}

HOre annihilator_closed(const Context& C, long n, long j) {
  HOre acc = HOre::constant(C.one());
  for (long i = j - 1; i >= 0; --i) acc = acc * tau_plus(theta_bracket(C, i, j - n));
  return acc;
}

DrinfeldModule twisted(const DrinfeldModule& M, long k) {
  DrinfeldModule r = M;
  r.twist = M.twist + k;
  for (auto& P : r.images) P = P.map([k](const HElem& x) { return x.sigma(k); });
  return r;
}

DrinfeldModule psi_via_factorization(const Context& C, long twist) {
  DrinfeldModule M{&C, 0, "factorization", {}};
  long N = long(C.N());
  HElem lead = C.Theta_pow(gamma(C.N(), C.q(), C.N()) - SigmaExp::scalar(C.N(), W(C.q(), C.N())));
  for (long n = 0; n < N; ++n)
    M.images.push_back(annihilator_closed(C, n, N).scaled(lead * C.constant(eta_n_over_q(C, n, 0))));
  return twist ? twisted(M, twist) : M;
}

DrinfeldModule psi_via_residue(const Context& C, long twist) {
  DrinfeldModule M{&C, 0, "residue", {}};
  for (u32 n = 0; n < C.N(); ++n) M.images.push_back(HOre(residue_coeffs(AElem::T(&C, n)), C.zero()));
  return twist ? twisted(M, twist) : M;
}

DrinfeldModule psi_via_expansion(const Context& C, long twist) {
  DrinfeldModule M{&C, 0, "expansion", {}};
  for (u32 n = 0; n < C.N(); ++n)
    M.images.push_back(HOre(expand_in_s_basis(C, as_ratfunc(AElem::T(&C, n))), C.zero()));
  return twist ? twisted(M, twist) : M;
}

HOre annihilator_gcrd(const DrinfeldModule& M, long n, long j, const HOre* witness) {
  const Context& C = *M.ctx;
  // images of the generators of I_0 and I_∞
  std::vector<HOre> g_inf = M.images, g_zero = M.images;
  g_zero[0] = g_zero[0] - HOre::constant(C.constant(C.from_fq(C.Fq().inv(C.rho()[0]))));
  // products over multisets: n factors from I_0, j - n from I_∞ (the images commute)
  std::vector<HOre> prods;
  for (auto& P : multiset_products(g_zero, std::size_t(n), C.one()))
    for (auto& Q : multiset_products(g_inf, std::size_t(j - n), C.one())) prods.push_back(P * Q);
  if (j == 0) return HOre::constant(C.one());
  HOre g = prods[0].monic();
  for (std::size_t i = 1; i < prods.size(); ++i) {
    if (witness && g.deg() == j) {
      bool all = true;
      for (std::size_t r = i; r < prods.size() && all; ++r) all = prods[r].right_divisible_by(*witness);
      if (all) return g;
    }
    g = gcrd(g, prods[i]);
  }
  return g;
}

HPlus u_km(const Context& C, long k, u32 mu) { return HPlus::u(&C).galois(k, mu); }

HPlus delta(const Context& C, long kprime, const HPlus& y) {
  return y * (C.theta() / C.constant(C.eta_k(kprime)));
}

HPOre psi_jS(const Context& C, long k, u32 mu, long j, unsigned S) {
  const GField& F = C.F();
  u32 es = eta_star(C);
  HPOre acc = HPOre::constant(HPlus::from(C.one()));
  for (long i = j - 1; i >= 0; --i) {
    unsigned below = S & ((1u << i) - 1u);
    long cnt = __builtin_popcount(below);
    HPlus x = u_km(C, k + i, F.mul(mu, F.pow(es, cnt)));
    if (S >> i & 1u) x = delta(C, k + i, x);
    acc = acc * tau_minus(x);
  }
  return acc;
}

HayesModule hayes_module(const Context& C, long k, u32 mu) {
  HayesModule M{&C, k, mu, "factorization", {}};
  long N = long(C.N());
  for (long n = 0; n < N; ++n) {
    unsigned S = 0;
    for (long i = N - n; i < N; ++i) S |= 1u << i;
    HPlus lead = HPlus::from(C.constant(eta_n_over_q(C, n, k)));
    M.images.push_back(psi_jS(C, k, mu, N, S).scaled(lead));
  }
  return M;
}

HPOre galois_apply(const HPOre& P, long k, u32 mu) {
  return P.map([k, mu](const HPlus& x) { return x.galois(k, mu); });
}

HayesModule hayes_via_galois(const Context& C, long k, u32 mu) {
  HayesModule base = hayes_module(C, 0, 1);
  HayesModule M{&C, k, mu, "galois", {}};
  for (auto& P : base.images) M.images.push_back(galois_apply(P, k, mu));
  return M;
}

HPOre to_hplus(const HOre& P) {
  std::vector<HPlus> c;
  for (auto& x : P.coeffs()) c.push_back(HPlus::from(x));
  return HPOre(std::move(c), HPlus::from(P.zero()));
}

HayesModule hayes_via_conjugation(const DrinfeldModule& Psi) {
  const Context& C = *Psi.ctx;
  HayesModule M{&C, 0, 1, "conjugation", {}};
  for (auto& P : Psi.images) {
    std::vector<HPlus> c;
    for (std::size_t i = 0; i < P.coeffs().size(); ++i) {
      i64 w = W(C.q(), unsigned(i));
      c.push_back(HPlus::u_pow(&C, -w) * minus_theta_pow(C, w) * P.coeffs()[i]);
    }
    M.images.push_back(HPOre(std::move(c), HPlus::from(C.zero())));
  }
  return M;
}

HPOre transport(const HOre& P, long j) {
  const Context& C = *P.zero().ctx();
  std::vector<HPlus> c;
  i64 wj = W(C.q(), unsigned(j));
  for (std::size_t i = 0; i < P.coeffs().size(); ++i) {
    i64 e = wj - W(C.q(), unsigned(i));
    c.push_back(HPlus::u_pow(&C, e) * minus_theta_pow(C, -e) * P.coeffs()[i]);
  }
  return HPOre(std::move(c), HPlus::from(C.zero()));
}

Isogeny isogeny(const Context& C, long i, long j) {
  if (j <= i) throw DomainError("isogeny Ψ^{(i)} → Ψ^{(j)} needs j > i");
  unsigned N = C.N();
  long m = j - i;
  Isogeny iso{i, j, HOre::constant(C.one()), C.one()};
  for (long r = m - 1; r >= 0; --r) iso.lambda0 = iso.lambda0 * tau_plus(theta_bracket(C, r, m).sigma(i));
  SigmaExp e = SigmaExp::mono(N, j) - SigmaExp::mono(N, i);
  SigmaExp f = (gamma(N, C.q(), unsigned(m)) - SigmaExp::scalar(N, W(C.q(), unsigned(m)))).shift(i);
  iso.c_pow = C.Theta_pow(e + f * (i64(C.q()) - 1));
  return iso;
}

bool check_isogeny(const Isogeny& iso, const DrinfeldModule& Pi, const DrinfeldModule& Pj) {
  const Context& C = *Pi.ctx;
  for (std::size_t n = 0; n < Pi.images.size(); ++n) {
    const HOre& B = Pj.images[n];
    std::vector<HElem> c;
    for (std::size_t k = 0; k < B.coeffs().size(); ++k) c.push_back(B.coeffs()[k] * iso.c_pow.pow(W(C.q(), unsigned(k))));
    HOre conj(std::move(c), C.zero());
    if (!(iso.lambda0 * Pi.images[n] == conj * iso.lambda0)) return false;
  }
  return true;
}

namespace {

HElem theta_mono(const Context& C, std::vector<i64> a) {
  SigmaExp s(C.N());
  for (std::size_t i = 0; i < a.size(); ++i) s[i] = a[i];
  return C.Theta_pow(s);
}

}  // namespace

DrinfeldModule standard_module_closed(const Context& C) {
  const GField& F = C.F();
  i64 q = C.q();
  HElem th = C.theta(), thq = th.frob(1);
  auto ore = [&](std::vector<HElem> c) { return HOre(std::move(c), C.zero()); };
  DrinfeldModule M{&C, 0, "closed_form", {}};
  if (C.N() == 2) {
    HElem e1 = C.constant(C.eta_k(1));
    HElem c0 = theta_mono(C, {1, 1}), c1a = theta_mono(C, {0, 1}), c1b = theta_mono(C, {q - 1, 1}),
          c2 = theta_mono(C, {-1, 1});
    M.images = {ore({c0, c1a + c1b, c2}), ore({th * c0, th * c1a + e1 * c1b, e1 * c2})};
    return M;
  }
  if (C.N() == 3) {
    HElem X3 = theta_mono(C, {-q - 1, q, 1});
    HElem A = theta_mono(C, {q * q - q - 1, q, 1}), B = theta_mono(C, {-1, q, 1}), Cc = theta_mono(C, {-1, 1, 1});
    HElem D = theta_mono(C, {q - 1, q, 1}), E = theta_mono(C, {q - 1, 1, 1}), Fh = theta_mono(C, {0, 1, 1}),
          G = theta_mono(C, {1, 1, 1});
    // η^{q²} and η^{2q²}
    HElem e2 = C.constant(C.eta_k(2)), e22 = C.constant(C.frobq(F.pow(C.eta(), 2), 2)), e1 = C.constant(C.eta_k(1));
    M.images = {ore({G, D + E + Fh, A + B + Cc, X3}),
                ore({th * G, e2 * D + th * E + th * Fh, e2 * A + e2 * B + th * Cc, e2 * X3}),
                ore({th * th * G, e2 * thq * D + e1 * th * E + th * th * Fh, e22 * A + e2 * thq * B + e1 * th * Cc,
                     e22 * X3})};
    return M;
  }
  throw DomainError("closed-form standard module is available for N = 2 and N = 3 only");
}

HayesModule hayes_module_closed(const Context& C) {
  const GField& F = C.F();
  i64 q = C.q();
  HElem th = C.theta(), thq = th.frob(1);
  auto P = [](const HElem& h) { return HPlus::from(h); };
  auto U = [&](i64 n) { return HPlus::u_pow(&C, n); };
  auto pore = [&](std::vector<HPlus> c) { return HPOre(std::move(c), P(C.zero())); };
  HayesModule h{&C, 0, 1, "closed_form", {}};
  if (C.N() == 2) {
    HElem T11 = theta_mono(C, {1, 1}), e1 = C.constant(C.eta_k(1));
    h.images = {pore({P(T11), -(U(-1) * T11 + U(q)), P(C.one())}),
                pore({P(th * T11), -(U(-1) * (th * T11) + U(q) * e1), P(e1)})};
    return h;
  }
  if (C.N() == 3) {
    HElem Pp = theta_mono(C, {q, q, 1}), Q = theta_mono(C, {q, 1, 1}), R = theta_mono(C, {1, 1, 1});
    HElem e2 = C.constant(C.eta_k(2)), e22 = C.constant(C.frobq(F.pow(C.eta(), 2), 2)), e1 = C.constant(C.eta_k(1));
    HPlus inv_u = U(-1), inv_u1q = U(-1 - q), uw = U(W(q, 3));
    h.images = {pore({P(R), -(inv_u * (Pp + Q + R)), inv_u1q * (-uw + P(Pp + Q)), P(C.one())}),
                pore({P(th * R), -(inv_u * (e2 * Pp + th * Q + th * R)), inv_u1q * (-(uw * e2) + P(e2 * Pp + th * Q)),
                      P(e2)}),
                pore({P(th * th * R), -(inv_u * (e2 * thq * Pp + e1 * th * Q + th * th * R)),
                      inv_u1q * (-(uw * e22) + P(e2 * thq * Pp + e1 * th * Q)), P(e22)})};
    return h;
  }
  throw DomainError("closed-form Hayes module is available for N = 2 and N = 3 only");
}

}  // namespace dmod
