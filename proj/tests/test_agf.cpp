#include <gtest/gtest.h>

#include <random>

#include "dmod/agf.hpp"
#include "dmod/period.hpp"

using namespace dmod;

namespace {

constexpr i64 kPrec = 64;
constexpr i64 kExactPrec = i64(1) << 30;

struct Params {
  u32 q;
  std::vector<u32> rho;
  long kmax;  // largest K for exact ω_f identities
};
const std::vector<Params> kAll = {{2, {1, 1, 1}, 12}, {3, {1, 0, 1}, 7}, {2, {1, 1, 0, 1}, 12}};

Rat diff_valuation(const Series& a, const Series& b, Rat cap) {
  Series d = a - b;
  return d.is_zero() ? cap : std::min(cap, d.valuation());
}

std::vector<Series> test_points(const Context& C) {
  return {Series::monomial(&C, 1, 1, kExactPrec),
          Series::monomial(&C, 2, C.F().gen_pow(1), kExactPrec) + Series::monomial(&C, 3, 1, kExactPrec),
          Series::monomial(&C, 1, 1, kExactPrec) + Series::monomial(&C, 4, C.F().gen_pow(2), kExactPrec)};
}

}  // namespace

TEST(OmegaF, ExactIdentitiesInH) {
  for (auto& p : kAll) {
    auto C = Context::make(p.q, p.rho);
    for (long K = 1; K <= p.kmax; ++K) {
      EXPECT_TRUE(omega_residue(*C, K) == omega_residue_closed(*C, K)) << "q=" << p.q << " K=" << K;
      EXPECT_TRUE(omega_defect_identity(*C, K)) << "q=" << p.q << " K=" << K;
      if (K <= 6) EXPECT_TRUE(omega_defect(*C, K) == omega_defect_closed(*C, K)) << "q=" << p.q << " K=" << K;
      EXPECT_TRUE(omega_step_ratio(*C, K) == omega_step_ratio_closed(*C, K)) << "q=" << p.q << " K=" << K;
    }
  }
}

TEST(OmegaF, NablaDefectDecomposes) {
  for (auto& p : kAll) {
    auto C = Context::make(p.q, p.rho);
    auto Psi = psi_via_factorization(*C);
    for (long K = 1; K <= std::min(p.kmax, 4L); ++K) {
      NablaCheck n = check_nabla(Psi, K);
      EXPECT_TRUE(n.b_combination) << "q=" << p.q << " K=" << K;
      EXPECT_TRUE(n.defect_sum) << "q=" << p.q << " K=" << K;
      EXPECT_TRUE(n.division) << "q=" << p.q << " K=" << K;
    }
  }
}

TEST(OmegaF, ResidueMatchesPeriodPartialProducts) {
  auto C = Context::make(2, {1, 1, 1});
  auto Psi = psi_via_factorization(*C);
  auto S = default_samples(*C);
  for (long K = 1; K <= 12; ++K) {
    AGFReport r = report_omega(Psi, K, S, kPrec);
    ASSERT_TRUE(r.has_residue);
    EXPECT_TRUE(r.residue_matches) << "K=" << K;
  }
}

TEST(OmegaF, CauchyFloorsAtDefaultSamples) {
  for (auto& p : kAll) {
    auto C = Context::make(p.q, p.rho);
    auto Psi = psi_via_factorization(*C);
    long K = p.q == 2 ? 8 : 4;
    AGFReport r = report_omega(Psi, K, default_samples(*C), kPrec);
    EXPECT_TRUE(r.pass()) << "q=" << p.q;
    for (auto& s : r.samples) {
      EXPECT_EQ(s.check, "cauchy");
      EXPECT_GE(s.defect_valuation, s.floor) << s.z;
    }
  }
}

TEST(Samples, ParseGrammar) {
  auto C = Context::make(2, {1, 1, 1});
  EXPECT_TRUE(parse_sample(*C, "0").in_domain);
  EXPECT_TRUE(parse_sample(*C, "eta+x^-1").in_domain);
  EXPECT_TRUE(parse_sample(*C, "eta^(1)-x^-2").in_domain);
  EXPECT_TRUE(parse_sample(*C, "x^-3").in_domain);
  EXPECT_FALSE(parse_sample(*C, "eta").in_domain);
  EXPECT_FALSE(parse_sample(*C, "eta+x^2").in_domain);
  EXPECT_FALSE(parse_sample(*C, "eta^(1)").in_domain);
  for (const char* bad : {"", "y", "eta+", "eta^(", "x^", "eta^(1)+x^a", "1+2"})
    EXPECT_THROW(parse_sample(*C, bad), std::invalid_argument) << bad;
}

TEST(Samples, DomainCertificateAgreesWithPolynomialTest) {
  for (auto& p : kAll) {
    auto C = Context::make(p.q, p.rho);
    std::mt19937 rng(7);
    int inside = 0;
    for (int i = 0; i < 100; ++i) {
      Series z = random_point(*C, rng);
      Sample s = make_sample(*C, "random", z);
      EXPECT_EQ(in_domain_via_T(*C, z, kPrec), s.in_domain) << "q=" << p.q << " i=" << i;
      inside += s.in_domain;
    }
    // the generator must exercise both sides
    EXPECT_GT(inside, 10);
    EXPECT_LT(inside, 90);
  }
}

TEST(Samples, OutsideDomainIsRejected) {
  auto C = Context::make(2, {1, 1, 1});
  Sample s = parse_sample(*C, "eta+x^2");
  EXPECT_THROW(omega_at(*C, 2, s.z, kPrec), DomainError);
  auto Psi = psi_via_factorization(*C);
  AGFReport r = report_g(Psi, 4, {s}, kPrec);
  ASSERT_FALSE(r.samples.empty());
  EXPECT_FALSE(r.samples[0].pass);
  EXPECT_FALSE(r.pass());
}

TEST(Phi, CoefficientsAndLogarithm) {
  for (auto& p : kAll) {
    auto C = Context::make(p.q, p.rho);
    for (long n = 0; n <= 6; ++n) {
      EXPECT_TRUE(d_phi(*C, n) == d_phi_from_twist(*C, n)) << "q=" << p.q << " n=" << n;
      EXPECT_TRUE(log_theta_coeff(*C, n) == log_phi_coeff(*C, n)) << "q=" << p.q << " n=" << n;
    }
  }
}

TEST(Phi, ClosedFormForNEqualsTwo) {
  for (auto& p : kAll) {
    auto C = Context::make(p.q, p.rho);
    if (C->N() != 2) {
      EXPECT_THROW(phi_closed_n2(*C), DomainError);
      continue;
    }
    auto Phi = phi_module(psi_via_factorization(*C));
    auto P = phi_closed_n2(*C);
    ASSERT_EQ(P.size(), 2u);
    EXPECT_TRUE(P[0] == Phi.images[0]);
    EXPECT_TRUE(P[1] == Phi.images[1]);
  }
}

TEST(GFunction, FrobeniusDefectAndOmegaMatch) {
  for (auto& p : kAll) {
    auto C = Context::make(p.q, p.rho);
    auto Psi = psi_via_factorization(*C);
    AGFReport r = report_g(Psi, 12, default_samples(*C), kPrec);
    EXPECT_TRUE(r.pass()) << "q=" << p.q;
    EXPECT_EQ(r.samples.size(), 2 * default_samples(*C).size());
  }
}

TEST(GFunction, SpectralSeriesEqualsG) {
  for (auto& p : kAll) {
    auto C = Context::make(p.q, p.rho);
    auto Psi = psi_via_factorization(*C);
    AGFReport r = report_h(Psi, 12, default_samples(*C), kPrec);
    EXPECT_TRUE(r.pass()) << "q=" << p.q;
  }
}

TEST(GFunction, TelescopingIdentity) {
  for (auto& p : kAll) {
    auto C = Context::make(p.q, p.rho);
    for (long m = 1; m <= 10; ++m) {
      EXPECT_TRUE(telescoping_identity(*C, m, -1)) << "q=" << p.q << " m=" << m;
      EXPECT_TRUE(telescoping_identity(*C, m, 1)) << "q=" << p.q << " m=" << m;
    }
  }
}

TEST(Upsilon, SpectralEqualsTwistedExponential) {
  for (auto& p : kAll) {
    auto C = Context::make(p.q, p.rho);
    for (long k = -3; k <= 6; ++k)
      for (auto& U : test_points(*C)) {
        SeriesEval a = upsilon_action_spectral(*C, k, U, kPrec), b = upsilon_action_exp(*C, k, U, kPrec);
        Rat floor = std::min(a.floor, b.floor);
        EXPECT_GE(diff_valuation(a.value, b.value, Rat(kPrec)), floor) << "q=" << p.q << " k=" << k;
        EXPECT_GE(floor, Rat(kPrec - 2));
      }
  }
}

TEST(Upsilon, NegativeIndicesKillThePeriodLattice) {
  for (auto& p : kAll) {
    auto C = Context::make(p.q, p.rho);
    PeriodApprox pp = pi_phi(*C, 8, kPrec + 16);
    for (auto& a : elements_up_to_degree(C.get(), i64(C->N()))) {
      Series U = pp.value * Series::embed(a.at_theta(), kPrec + 16);
      for (long k = -3; k <= -1; ++k) {
        SeriesEval e = upsilon_action_spectral(*C, k, U.truncated(Rat(kPrec + 8)), kPrec);
        EXPECT_GE(diff_valuation(e.value, Series::zero(C.get(), kPrec), Rat(kPrec)), e.floor)
            << "q=" << p.q << " k=" << k;
      }
    }
    // a nonnegative index does not kill the period
    EXPECT_FALSE(upsilon_action_spectral(*C, 0, pp.value.truncated(Rat(kPrec + 8)), kPrec).value.is_zero());
  }
}

TEST(LogFunction, MatchesMinusFG) {
  for (auto& p : kAll) {
    auto C = Context::make(p.q, p.rho);
    auto Psi = psi_via_factorization(*C);
    AGFReport r = report_log(Psi, 12, default_samples(*C), kPrec);
    EXPECT_TRUE(r.pass()) << "q=" << p.q;
  }
}

TEST(LogFunction, TwoVariableIdentitiesForNEqualsTwo) {
  for (auto& p : kAll) {
    auto C = Context::make(p.q, p.rho);
    if (C->N() != 2) continue;
    for (unsigned i = 0; i < 2; ++i)
      for (long m = 0; m <= 4; ++m) EXPECT_TRUE(log2_identity(*C, i, m)) << "q=" << p.q << " i=" << i << " m=" << m;
  }
}

TEST(ExpAction, DefinitionalMatchesSpectral) {
  for (auto& p : kAll) {
    auto C = Context::make(p.q, p.rho);
    auto Psi = psi_via_factorization(*C);
    std::vector<ExpModule> mods = {exp_module_psi(Psi), exp_module_phi(Psi), exp_module_psi(psi_via_factorization(*C, 2))};
    std::vector<AFrac> gs = {afrac_constant(*C, C->one()), afrac_inverse_linear(*C, 0),
                             afrac_inverse_linear(*C, 0) * afrac_inverse_linear(*C, 1),
                             afrac_from(AElem::T(C.get(), 0)) + afrac_inverse_linear(*C, 1)};
    for (std::size_t m = 0; m < mods.size(); ++m)
      for (std::size_t gi = 0; gi < gs.size(); ++gi)
        for (auto& U : test_points(*C)) {
          SeriesEval a = action_definitional(mods[m], gs[gi], U, kPrec);
          SeriesEval b = action_spectral(mods[m], afrac_ratfunc(gs[gi]), U, kPrec);
          EXPECT_GE(diff_valuation(a.value, b.value, Rat(kPrec)), std::min(a.floor, b.floor))
              << "q=" << p.q << " module=" << m << " g=" << gi;
        }
  }
}

TEST(ExpAction, UnitActsAsExponential) {
  for (auto& p : kAll) {
    auto C = Context::make(p.q, p.rho);
    ExpModule M = exp_module_psi(psi_via_factorization(*C));
    for (auto& U : test_points(*C)) {
      SeriesEval a = action_spectral(M, afrac_ratfunc(afrac_constant(*C, C->one())), U, kPrec);
      SeriesEval e = eval_exp(*C, 0, U, kPrec);
      EXPECT_GE(diff_valuation(a.value, e.value, Rat(kPrec)), std::min(a.floor, e.floor));
    }
  }
}

TEST(ExpAction, InverseLinearPairIsTwistedSquare) {
  // 1/((t-η)(t-η^{(1)})) acts as Θ^{σ-1} (τ + Θ)² on exp_{(0)}
  for (auto& p : kAll) {
    auto C = Context::make(p.q, p.rho);
    ExpModule M = exp_module_psi(psi_via_factorization(*C));
    HOre step(std::vector<HElem>{C->Theta(), C->one()}, C->zero());
    HOre sq = step * step;
    HElem pre = C->Theta(1) / C->Theta();
    HRat g = afrac_ratfunc(afrac_inverse_linear(*C, 0) * afrac_inverse_linear(*C, 1));
    for (auto& U : test_points(*C)) {
      SeriesEval e = exp_of(M, U, kPrec + 16);
      Series lhs = apply_ore(sq.coeffs(), e.value, kPrec + 8) * Series::embed(pre, kPrec + 8);
      SeriesEval b = action_spectral(M, g, U, kPrec);
      EXPECT_GE(diff_valuation(lhs.truncated(Rat(kPrec)), b.value, Rat(kPrec)), b.floor) << "q=" << p.q;
    }
  }
}

TEST(Reports, SerialisedFieldsAreConsistent) {
  auto C = Context::make(2, {1, 1, 1});
  auto Psi = psi_via_factorization(*C);
  auto S = default_samples(*C);
  for (auto& r : {report_omega(Psi, 4, S, kPrec), report_g(Psi, 4, S, kPrec), report_h(Psi, 4, S, kPrec),
                  report_log(Psi, 4, S, kPrec)}) {
    EXPECT_EQ(r.has_residue, r.which == "omega_f");
    for (auto& s : r.samples) {
      EXPECT_FALSE(s.check.empty());
      EXPECT_EQ(s.pass, s.defect_valuation >= s.floor && s.floor > s.value_valuation) << r.which << " " << s.z;
    }
  }
}
