#include <gtest/gtest.h>

#include <chrono>
#include <random>

#include "dmod/drinfeld.hpp"
#include "dmod/motive.hpp"

using namespace dmod;

namespace {

struct Params {
  u32 q;
  std::vector<u32> rho;
};
const std::vector<Params> kAll = {{2, {1, 1, 1}}, {3, {1, 0, 1}}, {2, {1, 1, 0, 1}}};

HElem Th(const Context& C, std::vector<i64> a) {
  SigmaExp s(C.N());
  for (std::size_t i = 0; i < a.size(); ++i) s[i] = a[i];
  return C.Theta_pow(s);
}
HElem E(const Context& C, u32 x) { return C.constant(x); }
HOre ore(const Context& C, std::vector<HElem> c) { return HOre(std::move(c), C.zero()); }
HPlus U(const Context& C, i64 n) { return HPlus::u_pow(&C, n); }
HPlus P(const HElem& h) { return HPlus::from(h); }
HPOre pore(const Context& C, std::vector<HPlus> c) { return HPOre(std::move(c), P(C.zero())); }

}  // namespace

TEST(StandardModule, ResidueFactorizationAndExpansionAgree) {
  for (auto& p : kAll) {
    auto C = Context::make(p.q, p.rho);
    auto t0 = std::chrono::steady_clock::now();
    DrinfeldModule a = psi_via_residue(*C), b = psi_via_factorization(*C), c = psi_via_expansion(*C);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    EXPECT_LT(secs, 10.0);
    for (u32 n = 0; n < C->N(); ++n) {
      EXPECT_TRUE(a.images[n] == b.images[n]) << "q=" << p.q << " n=" << n << "\n" << a.images[n].str() << "\n" << b.images[n].str();
      EXPECT_TRUE(a.images[n] == c.images[n]);
    }
    // twisting commutes with the construction and has period N
    EXPECT_TRUE(twisted(a, 1).images[0] == psi_via_factorization(*C, 1).images[0]);
    EXPECT_TRUE(twisted(a, long(C->N())).images[1] == a.images[1]);
  }
}

TEST(StandardModule, ExplicitNTwo) {
  for (u32 q : {2u, 3u}) {
    auto C = Context::make(q, q == 2 ? std::vector<u32>{1, 1, 1} : std::vector<u32>{1, 0, 1});
    const Context& c = *C;
    i64 Q = q;
    DrinfeldModule M = psi_via_factorization(c);
    HElem e1 = E(c, c.eta_k(1));
    EXPECT_TRUE(M.images[0] == ore(c, {Th(c, {1, 1}), Th(c, {0, 1}) + Th(c, {Q - 1, 1}), Th(c, {-1, 1})}));
    EXPECT_TRUE(M.images[1] == ore(c, {c.theta() * Th(c, {1, 1}), c.theta() * Th(c, {0, 1}) + e1 * Th(c, {Q - 1, 1}),
                                       e1 * Th(c, {-1, 1})}));
  }
}

TEST(StandardModule, ExplicitNThree) {
  auto C = Context::make(2, {1, 1, 0, 1});
  const Context& c = *C;
  const GField& F = c.F();
  i64 q = 2;
  HElem X3 = Th(c, {-q - 1, q, 1});
  HElem A = Th(c, {q * q - q - 1, q, 1}), B = Th(c, {-1, q, 1}), Cc = Th(c, {-1, 1, 1});
  HElem D = Th(c, {q - 1, q, 1}), Ee = Th(c, {q - 1, 1, 1}), Fh = Th(c, {0, 1, 1}), G = Th(c, {1, 1, 1});
  HElem th = c.theta(), thq = th.frob(1);
  HElem e2 = E(c, c.eta_k(2)), e22 = E(c, c.frobq(F.pow(c.eta(), 2), 2)), e1 = E(c, c.eta_k(1));
  DrinfeldModule M = psi_via_residue(c);
  EXPECT_TRUE(M.images[0] == ore(c, {G, D + Ee + Fh, A + B + Cc, X3}));
  EXPECT_TRUE(M.images[1] == ore(c, {th * G, e2 * D + th * Ee + th * Fh, e2 * A + e2 * B + th * Cc, e2 * X3}));
  EXPECT_TRUE(M.images[2] == ore(c, {th * th * G, e2 * thq * D + e1 * th * Ee + th * th * Fh,
                                     e22 * A + e2 * thq * B + e1 * th * Cc, e22 * X3}));
}

TEST(StandardModule, Axioms) {
  for (auto& p : kAll) {
    auto C = Context::make(p.q, p.rho);
    DrinfeldModule M = psi_via_factorization(*C);
    u32 N = C->N();
    for (u32 i = 0; i < N; ++i) {
      AElem Ti = AElem::T(C.get(), i);
      EXPECT_EQ(M.images[i].deg(), long(N));
      EXPECT_TRUE(M.images[i].d() == Ti.at_theta());
      for (u32 j = 0; j < N; ++j) {
        EXPECT_TRUE(M.images[i] * M.images[j] == M.images[j] * M.images[i]);
        // the product re-expanded in the basis {1, T_k T_0^e}
        EXPECT_TRUE(M.images[i] * M.images[j] == M.image(Ti * AElem::T(C.get(), j)));
      }
    }
    // type η^{(-1)}
    const GField& F = C->F();
    EXPECT_TRUE(M.images[1].lt() / M.images[0].lt() == E(*C, C->eta_k(-1)));
  }
}

TEST(Annihilator, DegreeOneClosedForms) {
  auto C = Context::make(2, {1, 1, 1});
  DrinfeldModule M = psi_via_factorization(*C);
  HOre inf = annihilator_gcrd(M, 0, 1), zero = annihilator_gcrd(M, 1, 1);
  EXPECT_TRUE(inf == ore(*C, {C->Theta(), C->one()}));
  EXPECT_TRUE(zero == ore(*C, {C->theta() / E(*C, C->eta()) * C->Theta(), C->one()}));
  for (auto& a : M.images) EXPECT_TRUE(a.right_divisible_by(inf));
}

TEST(Annihilator, GcrdMatchesClosedForm) {
  for (auto& p : kAll) {
    auto C = Context::make(p.q, p.rho);
    DrinfeldModule M = psi_via_factorization(*C);
    for (long j = 1; j <= 4; ++j)
      for (long n = 0; n <= j; ++n) {
        HOre closed = annihilator_closed(*C, n, j);
        EXPECT_TRUE(annihilator_gcrd(M, n, j) == closed) << "q=" << p.q << " j=" << j << " n=" << n;
      }
  }
}

TEST(Isogeny, StandardTwists) {
  for (auto& p : kAll) {
    auto C = Context::make(p.q, p.rho);
    DrinfeldModule M = psi_via_factorization(*C);
    for (auto [i, j] : std::vector<std::pair<long, long>>{{0, 1}, {0, 2}, {1, 3}, {0, long(C->N())}}) {
      Isogeny iso = isogeny(*C, i, j);
      EXPECT_TRUE(check_isogeny(iso, twisted(M, i), twisted(M, j))) << "q=" << p.q << " " << i << "→" << j;
      // a wrong target fails
      if (j % long(C->N()) != (j + 1) % long(C->N()))
        EXPECT_FALSE(check_isogeny(iso, twisted(M, i), twisted(M, j + 1)));
    }
  }
}

TEST(Hayes, ExplicitNTwo) {
  auto C = Context::make(2, {1, 1, 1});
  const Context& c = *C;
  HayesModule h = hayes_module(c, 0, 1);
  HElem T11 = Th(c, {1, 1});
  HElem e1 = E(c, c.eta_k(1));
  EXPECT_TRUE(h.images[0] == pore(c, {P(T11), -(U(c, -1) * T11 + U(c, 2)), P(c.one())}));
  EXPECT_TRUE(h.images[1] == pore(c, {P(c.theta() * T11), -(U(c, -1) * (c.theta() * T11) + U(c, 2) * e1), P(e1)}));
}

TEST(Hayes, ExplicitNThree) {
  auto C = Context::make(2, {1, 1, 0, 1});
  const Context& c = *C;
  const GField& F = c.F();
  i64 q = 2;
  HElem Pp = Th(c, {q, q, 1}), Q = Th(c, {q, 1, 1}), R = Th(c, {1, 1, 1});
  HElem th = c.theta(), thq = th.frob(1);
  HElem e2 = E(c, c.eta_k(2)), e22 = E(c, c.frobq(F.pow(c.eta(), 2), 2)), e1 = E(c, c.eta_k(1));
  i64 w3 = W(q, 3);
  HPlus inv_u = U(c, -1), inv_u1q = U(c, -1 - q);
  HayesModule h = hayes_module(c, 0, 1);
  EXPECT_TRUE(h.images[0] == pore(c, {P(R), -(inv_u * (Pp + Q + R)), inv_u1q * (-U(c, w3) + P(Pp + Q)), P(c.one())}));
  EXPECT_TRUE(h.images[1] == pore(c, {P(th * R), -(inv_u * (e2 * Pp + th * Q + th * R)),
                                      inv_u1q * (-(U(c, w3) * e2) + P(e2 * Pp + th * Q)), P(e2)}));
  EXPECT_TRUE(h.images[2] == pore(c, {P(th * th * R), -(inv_u * (e2 * thq * Pp + e1 * th * Q + th * th * R)),
                                      inv_u1q * (-(U(c, w3) * e22) + P(e2 * thq * Pp + e1 * th * Q)), P(e22)}));
}

TEST(Hayes, RoutesAgreeAndAnnihilatorOfInfinity) {
  for (auto& p : kAll) {
    auto C = Context::make(p.q, p.rho);
    HayesModule base = hayes_module(*C, 0, 1);
    HayesModule conj = hayes_via_conjugation(psi_via_factorization(*C));
    for (u32 n = 0; n < C->N(); ++n) EXPECT_TRUE(base.images[n] == conj.images[n]);
    auto mus = roots_of_unity_W(*C);
    for (auto [k, mu] : std::vector<std::pair<long, u32>>{{1, 1}, {0, mus.back()}, {2, mus[1]}}) {
      HayesModule a = hayes_module(*C, k, mu), b = hayes_via_galois(*C, k, mu);
      for (u32 n = 0; n < C->N(); ++n) EXPECT_TRUE(a.images[n] == b.images[n]) << "k=" << k << " mu=" << mu;
      HPOre g = a.images[0];
      for (auto& im : a.images) g = gcrd(g, im);
      EXPECT_TRUE(g == HPOre::tau_minus(u_km(*C, k, mu))) << "q=" << p.q << " N=" << C->N() << " k=" << k << " mu=" << mu << "\n" << g.str() << "\n" << u_km(*C, k, mu).str();
    }
  }
}

TEST(Hayes, SubsetIndependenceAndTransport) {
  for (auto& p : kAll) {
    auto C = Context::make(p.q, p.rho);
    DrinfeldModule M = psi_via_factorization(*C);
    for (long j = 1; j <= 4; ++j)
      for (long n = 0; n <= j; ++n) {
        HPOre ref = transport(annihilator_gcrd(M, n, j), j);
        for (unsigned S = 0; S < (1u << j); ++S) {
          if (__builtin_popcount(S) != n) continue;
          EXPECT_TRUE(psi_jS(*C, 0, 1, j, S) == ref) << "q=" << p.q << " j=" << j << " S=" << S;
        }
      }
  }
}

TEST(Hayes, SignNormalisationAndIdealIsogeny) {
  for (auto& p : kAll) {
    auto C = Context::make(p.q, p.rho);
    std::mt19937 rng(5);
    for (long k : {0L, 1L}) {
      HayesModule h = hayes_module(*C, k, 1), h1 = hayes_module(*C, k + 1, 1);
      for (int t = 0; t < 4; ++t) {
        AElem a = AElem::random(C.get(), 1, rng);
        if (a.is_zero()) continue;
        HPOre img = h.image(a);
        ASSERT_TRUE(img.lt().in_H());
        EXPECT_TRUE(img.lt().coeffs()[0] == E(*C, a.sign(k - 1)));
      }
      HPOre iso = HPOre::tau_minus(u_km(*C, k, 1));
      for (u32 n = 0; n < C->N(); ++n) EXPECT_TRUE(iso * h.images[n] == h1.images[n] * iso);
      for (u32 i = 0; i < C->N(); ++i)
        for (u32 j = i + 1; j < C->N(); ++j) EXPECT_TRUE(h.images[i] * h.images[j] == h.images[j] * h.images[i]);
    }
  }
}
