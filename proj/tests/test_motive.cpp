#include <gtest/gtest.h>

#include <random>

#include "dmod/motive.hpp"

using namespace dmod;

namespace {
HElem Th(const Context& C, std::vector<i64> a) {
  SigmaExp s(C.N());
  for (std::size_t i = 0; i < a.size(); ++i) s[i] = a[i];
  return C.Theta_pow(s);
}
}  // namespace

TEST(Shtuka, DivisorAndProducts) {
  auto C = Context::make(2, {1, 1, 1});
  HRat f = shtuka(*C, 0);
  EXPECT_EQ(f.order_at(C->theta()), 1);
  EXPECT_EQ(f.order_at(C->constant(C->eta())), -1);
  HRat prod = HRat::constant(C->one());
  for (long i = 0; i < 4; ++i) {
    EXPECT_TRUE(s_basis(*C, i) == prod) << i;
    prod = prod * shtuka(*C, i);
  }
  // f^{(N)} has its pole back at η and its zero at θ^{q^N}
  HRat fN = shtuka(*C, 2);
  EXPECT_EQ(fN.order_at(C->constant(C->eta())), -1);
  EXPECT_EQ(fN.order_at(C->theta().frob(2)), 1);
  EXPECT_TRUE(f.twist(1) == shtuka(*C, 1));
}

TEST(Shtuka, BracketIsMinusShtukaAtTheta) {
  auto C = Context::make(3, {1, 0, 1});
  for (long k = 0; k < 4; ++k) {
    HElem br = C->Theta().pow(ipow(3, unsigned(k))) - C->Theta(k);
    EXPECT_TRUE(br == -shtuka(*C, k).eval(C->theta()));
  }
}

TEST(Residue, FirstDifferentialNormalisation) {
  for (auto [q, rho] : std::vector<std::pair<u32, std::vector<u32>>>{{2, {1, 1, 1}}, {3, {1, 0, 1}}, {2, {1, 1, 0, 1}}}) {
    auto C = Context::make(q, rho);
    HRat r = omega_h(*C, 1) / shtuka(*C, 0);
    EXPECT_TRUE(r.residue_at(C->theta()) == C->one());
  }
}

TEST(Residue, FactoredMatchesGenericLaurentExpansion) {
  for (auto [q, rho] : std::vector<std::pair<u32, std::vector<u32>>>{{2, {1, 1, 1}}, {3, {1, 0, 1}}, {2, {1, 1, 0, 1}}}) {
    auto C = Context::make(q, rho);
    AElem z = AElem::T(C.get(), 1) * AElem::T(C.get(), 0);
    for (long k = 0; k <= 2 * long(C->N()); ++k) {
      HRat R = as_ratfunc(z) * omega_h(*C, k + 1);
      for (long i = 0; i <= k; ++i) R = R / shtuka(*C, i);
      FactoredRat F = residue_integrand(z, k);
      for (u32 j = 0; j < C->N(); ++j) {
        HElem e = C->constant(C->eta_k(j));
        EXPECT_TRUE(F.residue_at(e) == R.residue_at(e)) << "q=" << q << " k=" << k << " j=" << j;
      }
    }
  }
}

TEST(Residue, SumOverAllPlacesVanishes) {
  auto C = Context::make(3, {1, 0, 1});
  const GField& F = C->F();
  std::mt19937 rng(11);
  auto fe = [&](u32 v) { return FElem{&F, v, C->q()}; };
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<FElem> nc;
    for (int i = 0; i < 6; ++i) nc.push_back(fe(rng() % F.size()));
    Poly<FElem> num(nc, fe(0));
    Poly<FElem> den = Poly<FElem>::constant(fe(1));
    std::vector<u32> roots;
    for (int i = 0; i < 4; ++i) {
      u32 r = u32(rng() % F.size());
      roots.push_back(r);
      den = den * Poly<FElem>::linear(fe(r));
    }
    RatFunc<FElem> R(num, den);
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    FElem s = R.residue_at_infinity();
    for (u32 r : roots) s = s + R.residue_at(fe(r));
    EXPECT_TRUE(s.is_zero());
  }
}

TEST(SBasis, SimplePoleAndConstant) {
  auto C = Context::make(2, {1, 1, 1});
  auto c = expand_in_s_basis(*C, HRat::pole(C->constant(C->eta())));
  ASSERT_EQ(c.size(), 2u);
  EXPECT_TRUE(c[0] == C->Theta());
  EXPECT_TRUE(c[1] == C->one());
  auto one = expand_in_s_basis(*C, HRat::constant(C->one()));
  ASSERT_EQ(one.size(), 1u);
  EXPECT_TRUE(one[0] == C->one());
  EXPECT_THROW(expand_in_s_basis(*C, HRat::pole(C->theta())), DomainError);
}

TEST(SBasis, ExplicitTZeroExpansionForNTwo) {
  auto C = Context::make(2, {1, 1, 1});
  auto c = expand_in_s_basis(*C, as_ratfunc(AElem::T(C.get(), 0)));
  ASSERT_EQ(c.size(), 3u);
  EXPECT_TRUE(c[0] == Th(*C, {1, 1}));
  EXPECT_TRUE(c[1] == Th(*C, {0, 1}) + Th(*C, {1, 1}));  // Θ^σ + Θ^{q-1+σ}, q = 2
  EXPECT_TRUE(c[2] == Th(*C, {-1, 1}));
}

TEST(SBasis, TauShiftCompatibility) {
  auto C = Context::make(3, {1, 0, 1});
  HRat g = as_ratfunc(AElem::T(C.get(), 1) * AElem::T(C.get(), 1));
  auto c = expand_in_s_basis(*C, g);
  auto c1 = expand_in_s_basis(*C, g.twist(1) * shtuka(*C, 0));
  ASSERT_EQ(c1.size(), c.size() + 1);
  EXPECT_TRUE(c1[0].is_zero());
  for (std::size_t i = 0; i < c.size(); ++i) EXPECT_TRUE(c1[i + 1] == c[i].frob(1)) << i;
}

TEST(SBasis, ResidueFormulaAgreesWithExpansion) {
  for (auto [q, rho] : std::vector<std::pair<u32, std::vector<u32>>>{{2, {1, 1, 1}}, {3, {1, 0, 1}}, {2, {1, 1, 0, 1}}}) {
    auto C = Context::make(q, rho);
    std::vector<AElem> zs{AElem::constant(C.get(), 1), AElem::T(C.get(), 0), AElem::T(C.get(), 1),
                          AElem::T(C.get(), 1) * AElem::T(C.get(), 0)};
    for (auto& z : zs) {
      auto a = residue_coeffs(z);
      auto b = expand_in_s_basis(*C, as_ratfunc(z));
      ASSERT_EQ(a.size(), b.size()) << z.str();
      for (std::size_t i = 0; i < a.size(); ++i) EXPECT_TRUE(a[i] == b[i]) << z.str() << " i=" << i;
      EXPECT_TRUE(verify_motive_identity(z));
    }
  }
}
