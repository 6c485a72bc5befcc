#include <gtest/gtest.h>

#include "dmod/coordring.hpp"
#include "dmod/hplus.hpp"

using namespace dmod;

namespace {
struct Params {
  u32 q;
  std::vector<u32> rho;
};
const Params kParams[] = {{2, {1, 1, 1}}, {3, {1, 0, 1}}, {2, {1, 1, 0, 1}}};
}  // namespace

TEST(HPlus, DefiningRelationAndInverse) {
  for (auto& P : kParams) {
    auto C = Context::make(P.q, P.rho);
    HPlus u = HPlus::u(C.get());
    i64 w = HPlus::W(C.get());
    // u^{W_N} = (-Θ)^{γ_N}, built here from the generator directly
    HElem rhs = (-C->Theta()).pow(1);
    SigmaExp g = gamma(C->N(), C->q(), C->N());
    HElem target = C->one();
    for (u32 k = 0; k < C->N(); ++k) target = target * (-C->Theta(k)).pow(g[k]);
    EXPECT_TRUE(u.pow(w) == HPlus::from(target));
    (void)rhs;
    HPlus x = u + HPlus::from(C->theta());
    EXPECT_TRUE(x * x.inv() == HPlus::from(C->one()));
    EXPECT_TRUE(HPlus::u_pow(C.get(), -1) * u == HPlus::from(C->one()));
  }
}

TEST(HPlus, GaloisActionIsAHomomorphismOfOrderN) {
  for (auto& P : kParams) {
    auto C = Context::make(P.q, P.rho);
    HPlus u = HPlus::u(C.get());
    HPlus x = u * u + HPlus::from(C->Theta(1)) * u + HPlus::from(C->theta());
    HPlus y = u + HPlus::from(C->constant(C->eta()));
    for (u32 mu : roots_of_unity_W(*C)) {
      EXPECT_TRUE((x * y).galois(1, mu) == x.galois(1, mu) * y.galois(1, mu));
      EXPECT_TRUE((x + y).galois(1, mu) == x.galois(1, mu) + y.galois(1, mu));
    }
    // σ_∞^N = id
    HPlus z = x;
    for (u32 k = 0; k < C->N(); ++k) z = z.galois(1, 1);
    EXPECT_TRUE(z == x);
    // M_μ^{W_N} = id for a generator μ
    u32 mu = C->F().gen_pow(C->q() - 1);
    z = x;
    for (i64 k = 0; k < HPlus::W(C.get()); ++k) z = z.mult_mu(mu);
    EXPECT_TRUE(z == x);
  }
}

TEST(HPlus, SigmaZeroMatchesClosedForm) {
  for (auto& P : kParams) {
    auto C = Context::make(P.q, P.rho);
    const GField& F = C->F();
    u32 es = eta_star(*C);
    EXPECT_EQ(F.pow(es, HPlus::W(C.get())), 1u);
    HPlus u = HPlus::u(C.get());
    for (long k = 0; k < long(C->N()); ++k) {
      HPlus ukm = u.galois(k, 1);
      u32 ek = C->eta_k(k);
      // σ_0(x) = ((θ - η_x)/η_x)^{q-1} x^q
      HElem f = ((C->theta() - C->constant(ek)) / C->constant(ek)).pow(C->q() - 1);
      EXPECT_TRUE(ukm.galois(1, es) == ukm.frob(1) * f);
      // σ_0 u_{k,1} = u_{k+1, η_*}
      EXPECT_TRUE(ukm.galois(1, es) == u.galois(k + 1, es));
    }
  }
}

TEST(CoordRing, BasisDecompositionRebuildsElement) {
  auto C = Context::make(3, {1, 2, 0, 1});
  std::mt19937 rng(3);
  for (int t = 0; t < 20; ++t) {
    AElem a = AElem::random(C.get(), 3, rng);
    auto [c0, m] = a.basis();
    AElem r = AElem::constant(C.get(), c0);
    for (auto& [ie, c] : m) r = r + AElem::T(C.get(), ie.first) * AElem::T(C.get(), 0).pow(ie.second) * c;
    EXPECT_TRUE(r == a);
  }
}

TEST(CoordRing, BCoefficientsGiveSimplePole) {
  auto C = Context::make(2, {1, 1, 0, 1});
  auto b = b_coeffs(*C);
  HElem s = C->zero();
  for (u32 i = 0; i < C->N(); ++i) s = s + C->constant(b[i]) * AElem::T(C.get(), i).at_theta();
  EXPECT_TRUE(s == C->Theta());
  // T_i generate the principal ideals I_0^i I_∞^{N-i}: signs are η^i
  for (u32 i = 0; i < C->N(); ++i) EXPECT_EQ(AElem::T(C.get(), i).sign(), C->F().pow(C->eta(), i));
}
