#include <gtest/gtest.h>

#include <chrono>
#include <random>

#include "dmod/drinfeld.hpp"
#include "dmod/explog.hpp"

using namespace dmod;

namespace {

struct Params {
  u32 q;
  std::vector<u32> rho;
  long n;  // index range exercised
};
const std::vector<Params> kAll = {{2, {1, 1, 1}, 8}, {3, {1, 0, 1}, 4}, {2, {1, 1, 0, 1}, 6}};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

TEST(ExpCoeffs, RecursionClosedFormAndSBasisAgree) {
  for (auto& p : kAll) {
    auto C = Context::make(p.q, p.rho);
    auto D = d_coeffs(*C, p.n);
    EXPECT_TRUE(D[0] == C->one());
    HElem th = C->theta(), eta = C->constant(C->eta());
    EXPECT_TRUE(D[1] == (th - th.frob(1)) / ((th.frob(1) - eta) * (th - eta)));
    for (long i = 0; i <= p.n; ++i) {
      EXPECT_TRUE(D[std::size_t(i)] == d_closed(*C, i)) << "q=" << p.q << " i=" << i;
      EXPECT_TRUE(D[std::size_t(i)] == d_from_s_basis(*C, i)) << "q=" << p.q << " i=" << i;
      EXPECT_EQ(D[std::size_t(i)].v_eta(), d_valuation(*C, i));
      for (long j = 0; j <= long(C->N()) + 1; ++j) {
        HElem tw = D[std::size_t(i)].sigma(j);
        EXPECT_TRUE(d_twisted(*C, D[std::size_t(i)], i, j) == tw) << "i=" << i << " j=" << j;
        EXPECT_EQ(tw.v_eta(), d_twisted_valuation(*C, i, j));
      }
    }
  }
}

TEST(LogCoeffs, RecurrenceClosedBracketAndResidueAgree) {
  for (auto& p : kAll) {
    auto C = Context::make(p.q, p.rho);
    auto L = l_coeffs(*C, p.n);
    auto D = d_coeffs(*C, 1);
    EXPECT_TRUE(L[0] == C->one());
    EXPECT_TRUE(L[1] == D[1]);
    for (long j = 1; j <= p.n; ++j) {
      HElem Lj = L[std::size_t(j)];
      EXPECT_TRUE(Lj == l_closed(*C, j)) << "j=" << j;
      EXPECT_TRUE(Lj == l_bracket(*C, j)) << "j=" << j;
      EXPECT_TRUE(Lj.sigma(2) == l_bracket_sigma2(*C, j)) << "j=" << j;
      EXPECT_TRUE(Lj == l_residue(*C, j)) << "q=" << p.q << " j=" << j;
    }
  }
}

TEST(ExpLog, ConvolutionIdentityAndFormalInverse) {
  for (auto& p : kAll) {
    auto C = Context::make(p.q, p.rho);
    long n = p.q == 2 && C->N() == 2 ? 12 : p.n;
    auto t0 = std::chrono::steady_clock::now();
    auto D = d_coeffs(*C, n);
    auto L = l_coeffs(*C, n);
    for (long k = 1; k <= n; ++k) EXPECT_TRUE(convolution_sum(D, L, k).is_zero()) << "q=" << p.q << " n=" << k;
    EXPECT_LT(seconds_since(t0), 30.0);
    long m = std::min(n, 8L);
    std::vector<HElem> Dm(D.begin(), D.begin() + m + 1), Lm(L.begin(), L.begin() + m + 1);
    QSeries le = compose(log_series(Lm), exp_series(Dm, 0)), el = compose(exp_series(Dm, 0), log_series(Lm));
    for (long k = 0; k <= m; ++k) {
      EXPECT_TRUE(le.c[std::size_t(k)] == (k ? C->zero() : C->one()));
      EXPECT_TRUE(el.c[std::size_t(k)] == (k ? C->zero() : C->one()));
    }
  }
}

TEST(ExpLog, EkVanishesExactlyOnLowDegreeElements) {
  for (auto& p : kAll) {
    auto C = Context::make(p.q, p.rho);
    long kmax = p.q == 2 && C->N() == 2 ? 2 : 1;
    long M = long(C->N()) * kmax + 1;
    auto D = d_coeffs(*C, M);
    auto L = l_coeffs(*C, M);
    std::mt19937 rng(11);
    for (long k = 0; k <= kmax; ++k) {
      auto E = e_k_coeffs(*C, k, D, L);
      EXPECT_TRUE(E[0] == C->one());
      auto elems = elements_up_to_degree(C.get(), long(C->N()) * k);
      std::shuffle(elems.begin(), elems.end(), rng);
      if (elems.size() > 10) elems.resize(10);
      for (auto& a : elems) EXPECT_TRUE(eval_qpoly(E, a.at_theta()).is_zero()) << a.str();
      // an element of the next degree is not a root
      AElem b = AElem::T(C.get(), 0).pow(unsigned(k + 1));
      EXPECT_FALSE(eval_qpoly(E, b.at_theta()).is_zero());
    }
  }
}

TEST(ExpLog, FunctionalEquationAtSeriesPoints) {
  for (auto& p : kAll) {
    auto C = Context::make(p.q, p.rho);
    const i64 prec = 64;
    DrinfeldModule M = psi_via_factorization(*C);
    std::vector<Series> pts{Series::monomial(C.get(), 1, 1, prec), Series::embed(C->theta(), prec),
                            Series::embed(C->Theta(), prec)};
    EXPECT_TRUE(eval_exp(*C, 0, Series::zero(C.get(), prec), prec).value.is_zero());
    for (u32 i = 0; i < C->N(); ++i) {
      AElem a = AElem::T(C.get(), i);
      HElem at = a.at_theta();
      for (auto& xi : pts) {
        SeriesEval e = eval_exp(*C, 0, xi, prec + 16);
        SeriesEval r = eval_exp(*C, 0, xi * Series::embed(at, prec + 16), prec);
        Series lhs = apply_ore(M.images[i].coeffs(), e.value, prec);
        // error of Ψ_a applied to a value known to e.floor
        Rat lf = Rat(prec);
        for (std::size_t k = 0; k < M.images[i].coeffs().size(); ++k)
          lf = std::min(lf, Rat(M.images[i].coeffs()[k].v_eta()) + e.floor * ipow(C->q(), unsigned(k)));
        Rat floor = std::min(lf, r.floor);
        EXPECT_GE((lhs - r.value).valuation(), floor);
        EXPECT_GT(floor, Rat(20));
      }
    }
  }
}
