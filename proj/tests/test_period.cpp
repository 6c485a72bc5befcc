#include <gtest/gtest.h>

#include "dmod/drinfeld.hpp"
#include "dmod/explog.hpp"
#include "dmod/period.hpp"

using namespace dmod;

namespace {

struct Params {
  u32 q;
  std::vector<u32> rho;
  long dmax;  // largest d for the finite-d ratio identity
};
const std::vector<Params> kAll = {{2, {1, 1, 1}, 3}, {3, {1, 0, 1}, 2}, {2, {1, 1, 0, 1}, 3}};

std::vector<long> lattice_Ks(const Context& C) { return C.q() == 2 ? std::vector<long>{4, 6, 8} : std::vector<long>{2, 3, 4}; }

/// λ0 conjugated past a scalar c with c^{q-1} = cp: coefficient k picks up cp^{W_k}.
HOre conj_by(const HOre& P, const HElem& cp) {
  const Context& C = *cp.ctx();
  std::vector<HElem> c;
  for (std::size_t k = 0; k < P.coeffs().size(); ++k) c.push_back(P.coeffs()[k] * cp.pow(W(C.q(), unsigned(k))));
  return HOre(std::move(c), C.zero());
}

}  // namespace

TEST(Gamma, ProductMatchesClosedForm) {
  for (auto& p : kAll) {
    auto C = Context::make(p.q, p.rho);
    long N = long(C->N());
    for (long k = 0; k < N; ++k) {
      EXPECT_TRUE(gamma_product(*C, 0, k) == C->one());
      EXPECT_TRUE(gamma_closed(*C, 0, k) == C->one());
      EXPECT_TRUE(gamma_closed(*C, 1, k) == C->one() - bracket(*C, k) / bracket(*C, N + k));
      EXPECT_TRUE(gamma_closed(*C, 1, k) == bracket(*C, N).pow(ipow(C->q(), unsigned(k))) / bracket(*C, N + k));
      for (long d = 1; d <= 3; ++d) EXPECT_TRUE(gamma_product(*C, d, k) == gamma_closed(*C, d, k)) << "d=" << d << " k=" << k;
    }
    EXPECT_THROW(gamma_closed(*C, 1, N), DomainError);
  }
}

TEST(Gamma, ProductOverResiduesMatchesClosedForm) {
  for (auto& p : kAll) {
    auto C = Context::make(p.q, p.rho);
    for (long d = 0; d <= 3; ++d) {
      HElem prod = C->one();
      for (long k = 0; k < long(C->N()); ++k) prod = prod * gamma_closed(*C, d, k);
      EXPECT_TRUE(prod == gamma_all_closed(*C, d)) << "q=" << p.q << " d=" << d;
    }
  }
}

TEST(Gamma, ConsecutiveRatiosWitnessConvergence) {
  for (auto& p : kAll) {
    auto C = Context::make(p.q, p.rho);
    long N = long(C->N());
    for (long d = 1; d <= 3; ++d)
      for (long k = 0; k < N; ++k) {
        if (d == 1 && k == 0) continue;  // ⟨0⟩ = 0, so Γ_{1,0} = 1
        HElem r = gamma_closed(*C, d, k) / gamma_closed(*C, d - 1, k) - C->one();
        EXPECT_EQ(r.v_eta(), ipow(C->q(), unsigned(N * d + k)) - ipow(C->q(), unsigned(N * (d - 1) + k)));
      }
  }
}

TEST(RatioIdentity, ExactAtFiniteD) {
  for (auto& p : kAll) {
    auto C = Context::make(p.q, p.rho);
    long N = long(C->N());
    EXPECT_FALSE(ratio_identity_defined(*C, 1, N + 1));
    for (long d = 1; d <= p.dmax; ++d)
      for (long j = 1; j <= N + 1; ++j) {
        if (!ratio_identity_defined(*C, d, j)) {
          EXPECT_THROW(ratio_rhs(*C, d, j), DomainError);
          continue;
        }
        EXPECT_TRUE(ratio_lhs(*C, d, j) == ratio_rhs(*C, d, j)) << "q=" << p.q << " d=" << d << " j=" << j;
      }
  }
}

TEST(PiTilde, ExtractionIsIndependentOfJ) {
  // ((-1)^j L_{Nd+1}^{σ²}/L_{Nd+1-j}^{q^jσ²}) approaches π̃^{q^j-1}; both j=1 and j=2 land on the same π̃.
  for (auto& p : kAll) {
    auto C = Context::make(p.q, p.rho);
    long N = long(C->N()), K = 8;
    HElem base = pi_tilde_power(*C, K);
    for (long j = 1; j <= 2; ++j) {
      HElem target = base.pow(W(C->q(), unsigned(j)));
      i64 prev = -1;
      for (long d = 1; d <= p.dmax; ++d) {
        if (!ratio_identity_defined(*C, d, j)) continue;
        HElem r = ratio_lhs(*C, d, j);
        if (j % 2) r = -r;
        i64 rel = (r - target).v_eta() - target.v_eta();
        EXPECT_GE(rel, std::min(pi_tail_gap(*C, K), ipow(C->q(), unsigned(N * d)))) << "d=" << d << " j=" << j;
        EXPECT_GT(rel, prev);
        prev = rel;
      }
    }
  }
}

TEST(PiTilde, ValuationAndTailCertificate) {
  for (auto& p : kAll) {
    auto C = Context::make(p.q, p.rho);
    const i64 prec = 120;
    Rat expect = C->N() == 2 ? Rat(-1, i64(C->q()) - 1) : Rat(0);
    auto far = pi_tilde(*C, 7, prec);
    for (long K = 1; K <= 4; ++K) {
      auto a = pi_tilde(*C, K, prec);
      EXPECT_EQ(a.value.valuation(), expect);
      EXPECT_EQ(a.floor, expect + Rat(pi_tail_gap(*C, K)));
      if (a.floor < Rat(prec)) EXPECT_EQ((a.value - far.value).valuation(), a.floor) << "K=" << K;
      // the branch-free (q-1)-th power is an element of H
      Series pw = a.value.pow(i64(C->q()) - 1);
      EXPECT_GE((pw - Series::embed(pi_tilde_power(*C, K), prec)).valuation(), Rat(prec - 4));
    }
    EXPECT_THROW(pi_tilde(*C, 0, prec), DomainError);
  }
}

TEST(PiTilde, FactorsThroughPhiPeriodAndC02) {
  for (auto& p : kAll) {
    auto C = Context::make(p.q, p.rho);
    Isogeny iso = isogeny(*C, 0, 2);
    for (long K = 1; K <= 5; ++K) EXPECT_TRUE(pi_tilde_power(*C, K) == pi_phi_power(*C, K) * iso.c_pow);
    const i64 prec = 60;
    auto a = pi_tilde(*C, 5, prec), b = pi_phi(*C, 5, prec);
    Series c02 = isogeny_constant(*C, 0, 2, prec + 4);
    EXPECT_GE((c02.pow(i64(C->q()) - 1) - Series::embed(iso.c_pow, prec)).valuation(), Rat(prec - 2));
    // the aligned branches agree exactly, no root of unity in between
    EXPECT_EQ(branch_ratio(a.value, b.value * c02, Rat(prec - 8)), 1u);
  }
}

TEST(Isogeny, ConstantsFormATwistedCocycle) {
  for (auto& p : kAll) {
    auto C = Context::make(p.q, p.rho);
    Isogeny i01 = isogeny(*C, 0, 1), i12 = isogeny(*C, 1, 2), i02 = isogeny(*C, 0, 2);
    HOre X = conj_by(i12.lambda0, i01.c_pow) * i01.lambda0;
    ASSERT_EQ(X.deg(), i02.lambda0.deg());
    HElem kappa = X.lt() / i02.lambda0.lt();
    EXPECT_TRUE(X == HOre::constant(kappa) * i02.lambda0);
    // branch-free form: (C_{0,1} C_{1,2} κ)^{q-1} = C_{0,2}^{q-1}
    EXPECT_TRUE(i01.c_pow * i12.c_pow * kappa.pow(i64(C->q()) - 1) == i02.c_pow);
    // aligned branches
    const i64 prec = 40;
    Series lhs = isogeny_constant(*C, 0, 1, prec) * isogeny_constant(*C, 1, 2, prec) * Series::embed(kappa, prec);
    EXPECT_NE(branch_ratio(isogeny_constant(*C, 0, 2, prec), lhs, Rat(prec - 8)), 0u);
  }
}

TEST(TwistedExponential, ScalesAcrossTwists) {
  // exp_{(j)}(s_{i,j} U) = C_{i,j} λ0(exp_{(i)}(U))
  for (auto& p : kAll) {
    auto C = Context::make(p.q, p.rho);
    const i64 prec = 48;
    std::vector<Series> Us{Series::monomial(C.get(), 1, 1, prec + 16), Series::embed(C->theta(), prec + 16),
                           Series::embed(C->Theta(1) + C->theta(), prec + 16)};
    for (auto [i, j] : std::vector<std::pair<long, long>>{{0, 1}, {0, 2}, {1, 2}}) {
      Isogeny iso = isogeny(*C, i, j);
      Series s = twist_scale(*C, i, j, prec + 16), c = isogeny_constant(*C, i, j, prec + 16);
      for (auto& U : Us) {
        SeriesEval in = eval_exp(*C, i, U, prec + 12);
        SeriesEval out = eval_exp(*C, j, s * U, prec);
        Series rhs = c * apply_ore(iso.lambda0.coeffs(), in.value, prec + 4);
        Rat f = Rat(prec + 4);
        for (std::size_t k = 0; k < iso.lambda0.coeffs().size(); ++k)
          f = std::min(f, Rat(iso.lambda0.coeffs()[k].v_eta()) + in.floor * ipow(C->q(), unsigned(k)));
        Rat floor = std::min(out.floor, f + c.valuation());
        EXPECT_GT(floor, Rat(prec / 2));
        EXPECT_GE((out.value - rhs).valuation(), floor) << "q=" << p.q << " (" << i << "," << j << ")";
      }
    }
  }
}

TEST(Lattice, FloorsIncreaseWithK) {
  for (auto& p : kAll) {
    auto C = Context::make(p.q, p.rho);
    std::vector<AElem> as{AElem::T(C.get(), 0), AElem::T(C.get(), 1),
                          AElem::T(C.get(), 0) * AElem::T(C.get(), 1) + AElem::constant(C.get(), 1)};
    for (auto& a : as) {
      Rat prev(-1000);
      for (long K : lattice_Ks(*C)) {
        LatticeCert cert = lattice_check(*C, 0, a, K, 64);
        EXPECT_TRUE(cert.pass) << "q=" << p.q << " K=" << K << " a=" << a.str() << " v=" << cert.valuation.str()
                               << " floor=" << cert.floor.str();
        EXPECT_GT(cert.floor, prev);
        prev = cert.floor;
      }
    }
    EXPECT_TRUE(lattice_check(*C, 0, AElem::constant(C.get(), 0), 4, 64).pass);
    // a shifted twist: the lattice of exp_{(3)}
    EXPECT_TRUE(lattice_check(*C, 1, AElem::T(C.get(), 0), lattice_Ks(*C)[0], 64).pass);
  }
}

TEST(Lattice, PerturbedPointFailsFloor) {
  auto C = Context::make(2, {1, 1, 1});
  // a point off the lattice: π̃_K θ is not an A-multiple of π̃
  AElem one = AElem::constant(C.get(), 1);
  LatticeCert good = lattice_check(*C, 0, one, 6, 64);
  EXPECT_TRUE(good.pass);
  SeriesEval e = eval_exp(*C, 2, pi_tilde(*C, 6, 140).value * Series::embed(C->theta(), 140), 130);
  EXPECT_LT(e.value.valuation(), good.floor);
}

TEST(SeriesEmbedding, IndependentOfEarlierContexts) {
  // embeddings cache Taylor data per context; a context created after another is destroyed
  // must not see the old data
  std::string fresh;
  {
    auto C = Context::make(3, {1, 0, 1});
    fresh = Series::embed(C->Theta(1) + C->theta(), 30).str(40);
  }
  for (int rep = 0; rep < 3; ++rep) {
    {
      auto D = Context::make(2, {1, 1, 1});
      (void)Series::embed(D->Theta(1) + D->theta(), 60);
    }
    auto C = Context::make(3, {1, 0, 1});
    EXPECT_EQ(Series::embed(C->Theta(1) + C->theta(), 30).str(40), fresh);
  }
}
