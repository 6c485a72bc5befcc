#include "dmod/agf.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "dmod/period.hpp"

namespace dmod {

namespace {

constexpr i64 kExact = i64(1) << 30;

HPoly lin(const HElem& a) { return HPoly::linear(a); }
HElem cst(const Context& C, u32 c) { return C.constant(c); }
HRat rat(const HElem& h) { return HRat::constant(h); }

SigmaExp mono(const Context& C, long k) { return SigmaExp::mono(C.N(), k); }
SigmaExp scal(const Context& C, i64 c) { return SigmaExp::scalar(C.N(), c); }

/// Θ^{σ-1} = (θ - η)/(θ - η^{(1)})
HElem theta_sigma_minus_one(const Context& C) { return C.Theta_pow(mono(C, 1) - scal(C, 1)); }

Series const_series(const Context& C, u32 c, i64 prec) { return Series::constant(&C, c, prec); }

Rat rmin(Rat a, Rat b) { return a < b ? a : b; }

i64 ceil_rat(Rat r) { return -Rat(-r.num, r.den).floor(); }

/// -Θ as a radicand for ω_f and π̃_Φ.
Series radical_minus_theta(const Context& C, i64 prec) { return radical(-C.Theta(), prec); }

void require_domain(const Context& C, const Series& z) {
  for (long j = 0; j < long(C.N()); ++j) {
    Series d = z - const_series(C, C.eta_k(j), kExact);
    if (d.is_zero() || d.valuation() > Rat(0)) throw DomainError("sample point outside the domain D");
  }
}

}  // namespace

// ---------------------------------------------------------------- ω_f, exact part

HRat omega_ratio(const Context& C, long K) {
  if (K < 0) throw DomainError("ω_f partial product needs K ≥ 0");
  HPoly num = HPoly::constant(C.one()), den = HPoly::constant(C.one());
  for (long k = 0; k < K; ++k) {
    num = num * lin(cst(C, C.eta_k(k)));
    den = den * lin(C.theta().frob(k));
  }
  return HRat(num, den);
}

HRat omega_defect(const Context& C, long K) {
  HRat R = omega_ratio(C, K);
  return rat(-C.Theta()) * R.twist(1) - shtuka(C, 0) * R;
}

HRat omega_defect_closed(const Context& C, long K) {
  i64 qK = ipow(C.q(), unsigned(K));
  HRat tail(HPoly::constant(C.Theta().pow(-qK)), lin(C.theta().frob(K)));
  return shtuka(C, 0) * tail * omega_ratio(C, K);
}

bool omega_defect_identity(const Context& C, long K) {
  if (K < 0) throw DomainError("ω_f partial product needs K ≥ 0");
  // multiply both sides by (𝔱-η)(𝔱-θ^{q^K}) Π_{k<K}(𝔱-θ^{q^k}); f(𝔱-η) = 1 - Θ(𝔱-η)
  HPoly num = HPoly::constant(C.one()), num1 = HPoly::constant(C.one());
  for (long k = 0; k < K; ++k) {
    num = num * lin(cst(C, C.eta_k(k)));
    num1 = num1 * lin(cst(C, C.eta_k(k + 1)));
  }
  HPoly e = lin(cst(C, C.eta())), fe = HPoly::constant(C.one()) - e * C.Theta();
  HPoly lhs = num1 * lin(C.theta()) * e * (-C.Theta()) - fe * num * lin(C.theta().frob(K));
  HPoly rhs = fe * num * C.Theta().pow(-ipow(C.q(), unsigned(K)));
  return lhs == rhs;
}

HRat omega_step_ratio(const Context& C, long K) {
  HRat R = omega_ratio(C, K);
  return rat(-C.Theta()) * R.twist(1) / (shtuka(C, 0) * R);
}

HRat omega_step_ratio_closed(const Context& C, long K) {
  return HRat(lin(cst(C, C.eta_k(K))), lin(C.theta().frob(K)));
}

HElem omega_residue(const Context& C, long K) {
  HPoly e = lin(cst(C, C.eta()));
  // d(1/(𝔱-η)) = -d𝔱/(𝔱-η)²
  HRat g = omega_ratio(C, K) * HRat(HPoly::constant(-C.one()), e * e);
  return g.residue_at(C.theta());
}

HElem omega_residue_closed(const Context& C, long K) { return -C.Theta() * pi_product(C, K - 1); }

HRat apply_rat_ore(const RatOre& P, const HRat& g) {
  HRat acc = zero_like(g);
  for (std::size_t k = 0; k < P.coeffs().size(); ++k)
    if (!P.coeffs()[k].is_zero()) acc = acc + P.coeffs()[k] * g.twist(long(k));
  return acc;
}

RatOre conjugate_by_radical(const HOre& P) {
  const Context& C = *P.zero().ctx();
  std::vector<HRat> c;
  for (std::size_t k = 0; k < P.coeffs().size(); ++k)
    c.push_back(rat(P.coeffs()[k] * (-C.Theta()).pow(W(C.q(), unsigned(k)))));
  return RatOre(std::move(c), rat(C.zero()));
}

std::vector<HRat> nabla_defects(const DrinfeldModule& Psi, long K) {
  const Context& C = *Psi.ctx;
  HRat R = omega_ratio(C, K);
  std::vector<HRat> out;
  for (u32 i = 0; i < C.N(); ++i)
    out.push_back(apply_rat_ore(conjugate_by_radical(Psi.images[i]), R) - as_ratfunc(AElem::T(&C, i)) * R);
  return out;
}

NablaCheck check_nabla(const DrinfeldModule& Psi, long K) {
  const Context& C = *Psi.ctx;
  NablaCheck r;
  std::vector<u32> b = b_coeffs(C);
  HOre sumPsi(C.zero());
  HRat sumT = rat(C.zero());
  for (u32 i = 0; i < C.N(); ++i) {
    sumPsi = sumPsi + Psi.images[i].scaled(cst(C, b[i]));
    sumT = sumT + as_ratfunc(AElem::T(&C, i)) * cst(C, b[i]);
  }
  r.b_combination = sumPsi == HOre(std::vector<HElem>{C.Theta(), C.one()}, C.zero()) && sumT == HRat::pole(cst(C, C.eta()));

  std::vector<HRat> D = nabla_defects(Psi, K);
  HRat defect = omega_defect(C, K);
  HRat s = rat(C.zero());
  for (u32 i = 0; i < C.N(); ++i) s = s + D[i] * cst(C, b[i]);
  r.defect_sum = s == defect;

  // τ - f conjugated through the radical: -Θτ - f
  RatOre B(std::vector<HRat>{-shtuka(C, 0), rat(-C.Theta())}, rat(C.zero()));
  r.division = true;
  for (u32 i = 0; i < C.N(); ++i) {
    RatOre P = conjugate_by_radical(Psi.images[i]) - RatOre::constant(as_ratfunc(AElem::T(&C, i)));
    RatOre Q(rat(C.zero())), Rm(rat(C.zero()));
    P.right_divrem(B, Q, Rm);
    if (!Rm.is_zero() || apply_rat_ore(Q, defect) != D[i]) r.division = false;
  }
  return r;
}

// ---------------------------------------------------------------- samples and evaluation

Sample make_sample(const Context& C, const std::string& label, const Series& z) {
  Sample s{label, z, {}, true};
  for (long j = 0; j < long(C.N()); ++j) {
    Series d = z - const_series(C, C.eta_k(j), kExact);
    Rat v = d.is_zero() ? Rat(kExact) : d.valuation();
    s.cert.push_back(Rat(-v.num, v.den));
    if (v > Rat(0)) s.in_domain = false;
  }
  return s;
}

Sample parse_sample(const Context& C, const std::string& spec) {
  std::string t;
  for (char ch : spec)
    if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
  auto bad = [&]() { return std::invalid_argument("malformed sample point '" + spec + "'"); };
  if (t.empty()) throw bad();
  if (t == "0") return make_sample(C, spec, Series::zero(&C, kExact));
  std::size_t pos = 0;
  Series z = Series::zero(&C, kExact);
  auto read_int = [&](long& out) {
    std::size_t start = pos;
    if (pos < t.size() && t[pos] == '-') ++pos;
    while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos]))) ++pos;
    if (pos == start || (pos == start + 1 && t[start] == '-')) throw bad();
    out = std::stol(t.substr(start, pos - start));
  };
  if (t.compare(0, 3, "eta") == 0) {
    pos = 3;
    long j = 0;
    if (t.compare(pos, 2, "^(") == 0) {
      pos += 2;
      read_int(j);
      if (pos >= t.size() || t[pos] != ')') throw bad();
      ++pos;
    }
    z = const_series(C, C.eta_k(j), kExact);
  }
  if (pos < t.size()) {
    bool neg = false;
    if (t[pos] == '+' || t[pos] == '-') {
      neg = t[pos] == '-';
      ++pos;
    } else if (pos != 0) {
      throw bad();
    }
    if (t.compare(pos, 2, "x^") != 0) throw bad();
    pos += 2;
    long k = 0;
    read_int(k);
    if (pos != t.size()) throw bad();
    Series m = Series::monomial(&C, k, 1, kExact);
    z = neg ? z - m : z + m;
  }
  return make_sample(C, spec, z);
}

std::vector<Sample> default_samples(const Context& C) {
  return {parse_sample(C, "eta+x^-1"), parse_sample(C, "eta^(1)+x^-1"), parse_sample(C, "0")};
}

bool in_domain_via_T(const Context& C, const Series& z, i64 prec) {
  Series zp = z.truncated(Rat(prec));
  for (u32 j = 0; j < C.N(); ++j) {
    Series T;
    try {
      T = AElem::T(&C, j).eval(zp);
    } catch (const DomainError&) {
      return false;  // ρ(z) = 0 to the working precision: T_j has a pole there
    }
    if (!T.is_zero() && T.valuation() < Rat(0)) return false;
  }
  return true;
}

Series random_point(const Context& C, std::mt19937& rng) {
  u32 Q = ipow(C.q(), C.N());
  std::uniform_int_distribution<u32> coef(1, Q - 1), kind(0, 3), jj(0, C.N() - 1);
  std::uniform_int_distribution<int> ex(-3, 3);
  u32 c = C.F().gen_pow(coef(rng));
  switch (kind(rng)) {
    case 0: {
      i64 e = ex(rng);
      return Series::monomial(&C, e, c, kExact) + Series::monomial(&C, e + 1, C.F().gen_pow(coef(rng)), kExact);
    }
    case 1:
      return const_series(C, C.eta_k(long(jj(rng))), kExact) + Series::monomial(&C, ex(rng), c, kExact);
    case 2:
      return const_series(C, c, kExact);
    default:
      return const_series(C, C.eta_k(long(jj(rng))), kExact);
  }
}

Series eval_rat(const HRat& g, const Series& z, i64 prec) {
  const Context* C = g.num().zero().ctx();
  i64 deg = std::max(g.num().deg(), g.den().deg());
  i64 vz = z.is_zero() ? 0 : std::min<i64>(0, z.valuation().floor());
  i64 work = prec + 8 - vz * deg;
  for (auto* p : {&g.num(), &g.den()})
    for (auto& c : p->coeffs())
      if (!c.is_zero()) work = std::max(work, prec + 8 - 2 * c.v_eta() - vz * deg);
  Series zp = z.truncated(Rat(work));
  auto emb = [&](const HElem& h) { return Series::embed(h, work); };
  Series zero = Series::zero(C, work);
  Series n = g.num().eval_in(zp, zero, emb), d = g.den().eval_in(zp, zero, emb);
  return (n / d).truncated(Rat(prec));
}

Series theta_frob_series(const Context& C, long k) {
  return const_series(C, C.eta_k(k), kExact) + Series::monomial(&C, ipow(C.q(), unsigned(k)), 1, kExact);
}

Series omega_at(const Context& C, long K, const Series& z, i64 prec) {
  require_domain(C, z);
  i64 work = prec + 8;
  Series zp = z.truncated(Rat(work - std::min<i64>(0, z.is_zero() ? 0 : z.valuation().floor())));
  Series acc = radical_minus_theta(C, work);
  for (long k = 0; k < K; ++k)
    acc = acc * (zp - const_series(C, C.eta_k(k), kExact)) / (zp - theta_frob_series(C, k));
  return acc.truncated(Rat(prec));
}

SeriesEval eval_h_series(const Series& xi, const std::function<HElem(long)>& c, i64 prec) {
  const Context* C = xi.ctx();
  std::vector<HElem> cache;
  auto get = [&](long n) -> const HElem& {
    while (long(cache.size()) <= n) cache.push_back(c(long(cache.size())));
    return cache[std::size_t(n)];
  };
  Rat vx = xi.is_zero() ? Rat(0) : xi.valuation();
  auto coeff = [&](long n) {
    i64 need = prec - (vx * ipow(C->q(), unsigned(n))).floor() + 1;
    return Series::embed(get(n), need);
  };
  auto vc = [&](long n) { return get(n).is_zero() ? Rat(kExact) : Rat(get(n).v_eta()); };
  return eval_q_series(xi, coeff, vc, prec);
}

// ---------------------------------------------------------------- Φ

HElem c02_power(const Context& C) {
  return C.Theta_pow(mono(C, 2) - scal(C, 1) + (mono(C, 1) - scal(C, 1)) * (i64(C.q()) - 1));
}

HElem d_phi(const Context& C, long n) {
  HElem thn = C.theta().frob(n);
  return theta_sigma_minus_one(C) * d_closed(C, n) * C.Theta().pow(2 * ipow(C.q(), unsigned(n))) *
         (thn - cst(C, C.eta())) * (thn - cst(C, C.eta_k(1)));
}

HElem d_phi_from_twist(const Context& C, long n) {
  return d_coeffs(C, n)[std::size_t(n)].sigma(2) / c02_power(C).pow(W(C.q(), unsigned(n)));
}

DrinfeldModule phi_module(const DrinfeldModule& Psi) {
  const Context& C = *Psi.ctx;
  DrinfeldModule P = twisted(Psi, 2);
  P.route = "phi";
  HElem c = c02_power(C);
  for (auto& img : P.images) {
    std::vector<HElem> co = img.coeffs();
    for (std::size_t k = 0; k < co.size(); ++k) co[k] = co[k] * c.pow(W(C.q(), unsigned(k)));
    img = HOre(std::move(co), C.zero());
  }
  return P;
}

std::vector<HOre> phi_closed_n2(const Context& C) {
  if (C.N() != 2) throw DomainError("the closed form of Φ is stated for N = 2");
  i64 q = C.q();
  HElem t1 = theta_sigma_minus_one(C), T = C.Theta(), th = C.theta();
  HElem e1 = cst(C, C.eta_k(1));
  HElem top = t1.pow(q * q), lead = C.Theta_pow(scal(C, 1) + mono(C, 1));
  HOre P0(std::vector<HElem>{lead, (T + T.pow(q)) * t1.pow(q), top}, C.zero());
  HOre P1(std::vector<HElem>{th * lead, (th * T + e1 * T.pow(q)) * t1.pow(q), e1 * top}, C.zero());
  return {P0, P1};
}

SeriesEval exp_phi(const Context& C, const Series& U, i64 prec) {
  return eval_h_series(U, [&](long n) { return d_phi(C, n).inv(); }, prec);
}

// ---------------------------------------------------------------- G

Series shtuka_at(const Context& C, long k, const Series& z, i64 prec) {
  require_domain(C, z);
  i64 work = prec + 8 - std::min<i64>(0, z.is_zero() ? 0 : z.valuation().floor());
  Series zp = z.truncated(Rat(work));
  Series r = (zp - const_series(C, C.eta_k(k), kExact)).inv() - Series::monomial(&C, -ipow(C.q(), unsigned(k)), 1, kExact);
  return r.truncated(Rat(prec));
}

SeriesEval g_at(const Context& C, long s, const Series& U, const Series& z, i64 prec) {
  require_domain(C, z);
  std::vector<HElem> base;
  auto get = [&](long n) -> const HElem& {
    while (long(base.size()) <= n) {
      long m = long(base.size());
      i64 qns = ipow(C.q(), unsigned(m + s));
      HElem thn = C.theta().frob(m + s);
      base.push_back(C.Theta().pow(-2 * qns) / (d_closed(C, m).frob(s) * (thn - cst(C, C.eta_k(s)))));
    }
    return base[std::size_t(n)];
  };
  Series xi = U.frob(s);
  Rat vx = xi.is_zero() ? Rat(0) : xi.valuation();
  Series zs = z - const_series(C, C.eta_k(s), kExact);
  i64 vz = z.is_zero() ? 0 : std::min<i64>(0, z.valuation().floor());
  auto coeff = [&](long n) {
    i64 need = prec - (vx * ipow(C.q(), unsigned(n))).floor() + 1;
    i64 work = need - 2 * vz + 4;
    // (z - η^{(s)})/(z - θ^{q^{n+s}}) has valuation 0 on D
    Series ratio = zs.truncated(Rat(work)) / (z.truncated(Rat(work)) - theta_frob_series(C, n + s));
    return Series::embed(get(n), need) * ratio;
  };
  auto vc = [&](long n) { return Rat(get(n).v_eta()); };
  return eval_q_series(xi, coeff, vc, prec);
}

// ---------------------------------------------------------------- H and ▷_Φ

HRat upsilon(const Context& C, long k) {
  if (k >= 0) {
    HPoly p = HPoly::constant(C.one());
    for (long i = -1; i <= k - 1; ++i) p = p * lin(cst(C, C.eta_k(-i)));
    return HRat(p);
  }
  HPoly d = HPoly::constant(C.one());
  for (long i = k; i <= -1; ++i) d = d * lin(cst(C, C.eta_k(-i)));
  return HRat(lin(cst(C, C.eta_k(1))), d);
}

namespace {

HElem upsilon_at(const Context& C, long k, const HElem& t) {
  HElem r = C.one();
  if (k >= 0) {
    for (long i = -1; i <= k - 1; ++i) r = r * (t - cst(C, C.eta_k(-i)));
    return r;
  }
  r = t - cst(C, C.eta_k(1));
  for (long i = k; i <= -1; ++i) r = r / (t - cst(C, C.eta_k(-i)));
  return r;
}

}  // namespace

SeriesEval upsilon_action_spectral(const Context& C, long k, const Series& U, i64 prec) {
  HElem pre = C.Theta_pow(scal(C, 1) - mono(C, 1));  // (θ-η^{(1)})/(θ-η), valuation -1
  Series xi = U * Series::monomial(&C, 2, 1, kExact);
  SeriesEval e = eval_h_series(
      xi,
      [&](long n) {
        HElem thn = C.theta().frob(n);
        return upsilon_at(C, k, thn) / (d_closed(C, n) * (thn - cst(C, C.eta())) * (thn - cst(C, C.eta_k(1))));
      },
      prec + 1);
  Series v = e.value * Series::embed(pre, prec + 2);
  return {v.truncated(Rat(prec)), rmin(e.floor - Rat(1), Rat(prec)), e.terms};
}

SeriesEval upsilon_action_exp(const Context& C, long k, const Series& U, i64 prec) {
  long j = 1 - k;
  HElem rad = C.Theta_pow(mono(C, j) - scal(C, 1));
  Rat vr = Rat(rad.v_eta(), i64(C.q()) - 1);
  i64 work = prec + 4 + std::max<i64>(0, ceil_rat(vr));
  Series rk = radical(rad, work);
  Series arg = Series::embed(theta_sigma_minus_one(C) * upsilon_at(C, k, C.theta()), work) * rk * U;
  SeriesEval e = eval_exp(C, j, arg.truncated(Rat(work)), work);
  Series out = e.value * Series::embed(C.Theta_pow(scal(C, 1) - mono(C, 1)), work) / rk;
  Rat fl = e.floor - Rat(1) - vr;
  return {out.truncated(Rat(prec)), rmin(fl, rmin(out.precision(), Rat(prec))), e.terms};
}

HEval h_at(const Context& C, const Series& U, const Series& z, i64 prec, long k_max) {
  require_domain(C, z);
  long N = long(C.N());
  i64 q = C.q();
  Series xi = U * Series::monomial(&C, 2, 1, kExact);
  Rat vx = xi.is_zero() ? Rat(kExact) : xi.valuation();
  Rat P(prec);
  if (xi.is_zero()) return {Series::zero(&C, prec), P, 0};

  // a_n = 1/(D_n (θ^{q^n} - η)); the n-th spectral term of S_k is ξ^{q^n} a_n Π_{i<k}(θ^{q^n} - η^{(-i)}).
  std::vector<HElem> a;
  std::vector<Rat> base;  // q^n v(ξ) + v(a_n)
  for (long n = 0;; ++n) {
    if (n > 40) throw DomainError("H: spectral tail did not reach the requested precision");
    HElem thn = C.theta().frob(n);
    a.push_back((d_closed(C, n) * (thn - cst(C, C.eta()))).inv());
    base.push_back(vx * ipow(q, unsigned(n)) + Rat(a.back().v_eta()));
    if (base.back() >= P) break;
  }
  long nstop = long(a.size()) - 1;  // first index whose bound reaches P
  Rat nfloor = base.back();
  Rat vmin = *std::min_element(base.begin(), base.end());
  i64 work = prec + 8 + std::max<i64>(0, -vmin.floor());

  std::vector<Series> X, Pk;
  Series zp = z.truncated(Rat(work + 8));
  for (long n = 0; n < nstop; ++n) {
    i64 qn = ipow(q, unsigned(n));
    X.push_back(xi.frob(n) * Series::embed(a[std::size_t(n)], work - (vx * qn).floor() + 1));
    Pk.push_back(Series::constant(&C, 1, work));
  }
  // valuation of Π_{i<k}(θ^{q^n} - η^{(-i)}): q^n for each i ≡ -n (mod N)
  std::vector<Rat> vP(std::size_t(nstop), Rat(0));
  Series w = Series::constant(&C, 1, work);
  Rat vw(0);
  Series acc = Series::zero(&C, work);
  long k = 0;
  Rat kfloor = P;
  for (;; ++k) {
    if (k > k_max) throw DomainError("H: Υ-expansion did not reach the requested precision");
    Rat lb = nfloor;
    for (long n = 0; n < nstop; ++n) lb = rmin(lb, base[std::size_t(n)] + vP[std::size_t(n)]);
    if (lb + vw >= P) {
      kfloor = lb + vw;
      break;
    }
    for (long n = 0; n < nstop; ++n)
      if (base[std::size_t(n)] + vP[std::size_t(n)] + vw < P) acc = acc + X[std::size_t(n)] * Pk[std::size_t(n)] * w;
    // advance to k + 1
    for (long n = 0; n < nstop; ++n) {
      Pk[std::size_t(n)] = (Pk[std::size_t(n)] * (theta_frob_series(C, n) - const_series(C, C.eta_k(-k), kExact))).truncated(Rat(work));
      if (((k + n) % N) == 0) vP[std::size_t(n)] = vP[std::size_t(n)] + Rat(ipow(q, unsigned(n)));
    }
    Series step = (zp - const_series(C, C.eta_k(-(k + 1)), kExact)).inv();
    vw = vw + step.valuation();
    w = (w * step).truncated(Rat(work));
  }
  Rat fl = rmin(rmin(P, nfloor), rmin(kfloor, acc.precision()));
  return {acc.truncated(P), fl, k};
}

bool telescoping_identity(const Context& C, long m, long dir) {
  HRat eta_pole = HRat::pole(cst(C, C.eta()));
  for (long j = 1; j <= m + 1; ++j) {
    HElem tv = C.theta().pow(j);
    std::vector<HRat> B{rat(C.one())};
    for (long l = 1; l <= m; ++l) {
      HElem c = tv - cst(C, C.eta_k(dir * (l - 1)));
      B.push_back(B.back() * HRat(HPoly::constant(c), lin(cst(C, C.eta_k(dir * l)))));
    }
    HRat lhs = rat(C.zero());
    HRat factor = eta_pole * (tv - cst(C, C.eta()));
    for (long l = 1; l <= m; ++l) lhs = lhs + B[std::size_t(l)] - factor * B[std::size_t(l - 1)];
    HRat rhs = eta_pole * (cst(C, C.eta_k(dir * m)) - cst(C, C.eta())) * B[std::size_t(m)];
    if (lhs != rhs) return false;
  }
  return true;
}

// ---------------------------------------------------------------- Log

SeriesEval log_at(const Context& C, const Series& xi, const Series& z, i64 prec) {
  require_domain(C, z);
  i64 q = C.q();
  Rat vx = xi.is_zero() ? Rat(0) : xi.valuation();
  i64 vz = z.is_zero() ? 0 : std::min<i64>(0, z.valuation().floor());
  auto vc = [&](long n) {
    i64 s = 0;
    for (long k = 1; k <= n; ++k) s += ipow(q, unsigned(k));
    return Rat(s);
  };
  auto coeff = [&](long n) {
    i64 need = prec - (vx * ipow(q, unsigned(n))).floor() + 1;
    i64 work = std::max<i64>(need - vc(n).floor(), 8) + 8 - 2 * vz;
    Series zp = z.truncated(Rat(work));
    Series F = Series::constant(&C, 1, kExact);
    for (long k = 1; k <= n; ++k)
      F = F * ((zp - const_series(C, C.eta_k(k), kExact)).inv() - Series::monomial(&C, -ipow(q, unsigned(k)), 1, kExact));
    return F.inv();
  };
  return eval_q_series(xi, coeff, vc, prec);
}

HElem log_theta_coeff(const Context& C, long n) {
  HElem r = C.one();
  for (long k = 1; k <= n; ++k) r = r * shtuka(C, k).eval(C.theta());
  return r.inv();
}

HElem log_phi_coeff(const Context& C, long n) {
  HElem L = l_coeffs(C, n)[std::size_t(n)].sigma(2);
  HElem r = c02_power(C).pow(W(C.q(), unsigned(n))) / L;
  return n % 2 ? -r : r;
}

HRat log_coeff_rat(const Context& C, long n) {
  HRat r = rat(C.one());
  for (long k = 1; k <= n; ++k) r = r * shtuka(C, k);
  return r.inv();
}

bool log2_identity(const Context& C, unsigned i, long m) {
  if (C.N() != 2 || i > 1) throw DomainError("the extended logarithmic identities are stated for N = 2");
  HOre P = phi_closed_n2(C)[i];
  HRat lhs = rat(C.zero());
  for (long k = 0; k <= std::min<long>(P.deg(), m); ++k) lhs = lhs + rat(P[std::size_t(k)].frob(m - k)) * log_coeff_rat(C, m - k);
  HRat rhs = as_ratfunc(AElem::T(&C, i)) * log_coeff_rat(C, m);
  HElem th = C.theta(), e0 = cst(C, C.eta()), e1 = cst(C, C.eta_k(1));
  HElem ts = theta_sigma_minus_one(C);
  if (m == 0) {
    HElem a = i == 0 ? C.one() : th, b = i == 0 ? C.one() : e1;
    HRat extra = rat(a * C.Theta(1)) + HRat::pole(e1) * (b * ts);
    rhs = rhs - shtuka(C, 0) * extra;
  } else if (m == 1) {
    HElem a = i == 0 ? C.one() : e0;
    rhs = rhs - shtuka(C, 0) * rat(a * ts.pow(C.q()));
  }
  return lhs == rhs;
}

// ---------------------------------------------------------------- exponential action

AFrac afrac_constant(const Context& C, const HElem& l) { return {AElem::constant(&C, 1), {{AElem::constant(&C, 1), l}}}; }

AFrac afrac_from(const AElem& b) { return {AElem::constant(b.ctx(), 1), {{b, b.ctx()->one()}}}; }

AFrac afrac_inverse_linear(const Context& C, long k) {
  std::vector<u32> b = b_coeffs(C);
  AFrac r{AElem::constant(&C, 1), {}};
  for (u32 i = 0; i < C.N(); ++i) r.terms.push_back({AElem::T(&C, i), cst(C, C.frobq(b[i], k))});
  return r;
}

AFrac operator*(const AFrac& x, const AFrac& y) {
  AFrac r{x.a * y.a, {}};
  for (auto& [b1, l1] : x.terms)
    for (auto& [b2, l2] : y.terms) r.terms.push_back({b1 * b2, l1 * l2});
  return r;
}

AFrac operator+(const AFrac& x, const AFrac& y) {
  AFrac r{x.a * y.a, {}};
  for (auto& [b, l] : x.terms) r.terms.push_back({b * y.a, l});
  for (auto& [b, l] : y.terms) r.terms.push_back({b * x.a, l});
  return r;
}

HRat afrac_ratfunc(const AFrac& g) {
  const Context& C = *g.a.ctx();
  HRat s = rat(C.zero());
  for (auto& [b, l] : g.terms) s = s + as_ratfunc(b) * l;
  return s / as_ratfunc(g.a);
}

ExpModule exp_module_psi(const DrinfeldModule& Psi) {
  const Context* C = Psi.ctx;
  long j = Psi.twist;
  return {C, Psi.images, [C, j](long n) { return d_closed(*C, n).sigma(j); }};
}

ExpModule exp_module_phi(const DrinfeldModule& Psi) {
  const Context* C = Psi.ctx;
  return {C, phi_module(Psi).images, [C](long n) { return d_phi(*C, n); }};
}

SeriesEval exp_of(const ExpModule& M, const Series& U, i64 prec) {
  return eval_h_series(U, [&](long n) { return M.d(n).inv(); }, prec);
}

SeriesEval action_definitional(const ExpModule& M, const AFrac& g, const Series& U, i64 prec) {
  const Context& C = *M.ctx;
  DrinfeldModule D{&C, 0, "action", M.images};
  std::vector<HOre> imgs;
  i64 margin = 8;
  for (auto& [b, l] : g.terms) {
    imgs.push_back(D.image(b));
    const auto& co = imgs.back().coeffs();
    for (auto& c : co)
      if (!c.is_zero()) margin = std::max<i64>(margin, 8 - c.v_eta());
    if (!l.is_zero()) margin += std::max<i64>(0, -l.v_eta());
  }
  i64 work = prec + margin;
  HElem at = g.a.at_theta();
  Series V = U * Series::embed(at.inv(), work - (U.is_zero() ? 0 : U.valuation().floor()) + 2);
  SeriesEval E = exp_of(M, V.truncated(Rat(work)), work);
  Series acc = Series::zero(&C, work);
  Rat fl = Rat(prec);
  Rat vE = E.value.is_zero() ? E.floor : E.value.valuation();
  for (std::size_t i = 0; i < g.terms.size(); ++i) {
    const HElem& l = g.terms[i].second;
    if (l.is_zero()) continue;
    Series part = apply_ore(imgs[i].coeffs(), E.value, work) * Series::embed(l, work + 8);
    acc = acc + part;
    const auto& co = imgs[i].coeffs();
    for (std::size_t k = 0; k < co.size(); ++k) {
      if (co[k].is_zero()) continue;
      i64 qk = ipow(C.q(), unsigned(k));
      // an error δ in exp_M with v(δ) ≥ floor changes c_k x^{q^k} by at least this much
      Rat err = Rat(co[k].v_eta() + l.v_eta()) + rmin(E.floor * qk, E.floor + vE * (qk - 1));
      fl = rmin(fl, err);
    }
  }
  fl = rmin(fl, acc.precision());
  return {acc.truncated(Rat(prec)), fl, E.terms};
}

SeriesEval action_spectral(const ExpModule& M, const HRat& g, const Series& U, i64 prec) {
  const Context& C = *M.ctx;
  return eval_h_series(U, [&](long n) { return g.eval(C.theta().frob(n)) / M.d(n); }, prec);
}

// ---------------------------------------------------------------- reports

bool AGFReport::pass() const {
  if (has_residue && !residue_matches) return false;
  for (auto& s : samples)
    if (!s.pass) return false;
  return !samples.empty();
}

namespace {

Rat val_or(const Series& s, Rat fallback) { return s.is_zero() ? fallback : s.valuation(); }

AGFSample compare(const std::string& z, const std::string& check, const Series& value, const Series& diff, Rat floor) {
  AGFSample r;
  r.z = z;
  r.check = check;
  r.value_valuation = val_or(value, value.precision());
  r.defect_valuation = val_or(diff, diff.precision());
  r.floor = floor;
  // the floor must certify something beyond the leading term of the value
  r.pass = r.defect_valuation >= floor && floor > r.value_valuation;
  return r;
}

AGFSample outside(const Sample& s, const std::string& check) {
  AGFSample r;
  r.z = s.label;
  r.check = check + ":outside_domain";  // no certificate off D
  r.pass = false;
  return r;
}

}  // namespace

AGFReport report_omega(const DrinfeldModule& Psi, long K, const std::vector<Sample>& S, i64 prec) {
  const Context& C = *Psi.ctx;
  if (K < 1) throw DomainError("ω_f needs K ≥ 1 factors");
  AGFReport rep{"omega_f", K, {}, true, "", false};
  i64 qK = ipow(C.q(), unsigned(K));
  for (auto& s : S) {
    if (!s.in_domain) {
      rep.samples.push_back(outside(s, "cauchy"));
      continue;
    }
    // v(ω_K(z)) does not depend on K on D; probe it cheaply first
    Rat v0 = omega_at(C, 1, s.z, 16).valuation();
    i64 work = std::max<i64>(prec, ceil_rat(v0) + qK + 8);
    Series w = omega_at(C, K, s.z, work), w1 = omega_at(C, K + 1, s.z, work);
    rep.samples.push_back(compare(s.label, "cauchy", w, w1 - w, rmin(w.valuation() + Rat(qK), Rat(work))));
  }
  HElem res = omega_residue(C, K);
  bool exact = res == omega_residue_closed(C, K);
  Series rs = radical_minus_theta(C, prec + 4) * Series::embed(res, prec + 4);
  rep.residue_partial = rs.truncated(Rat(prec)).str(4);
  bool series_ok = true;
  if (K >= 2) {
    PeriodApprox pp = pi_phi(C, K - 1, prec);
    series_ok = (rs + pp.value).valuation() >= rmin(pp.value.precision(), rs.precision());
  }
  rep.residue_matches = exact && series_ok;
  return rep;
}

AGFReport report_g(const DrinfeldModule& Psi, long K, const std::vector<Sample>& S, i64 prec) {
  const Context& C = *Psi.ctx;
  AGFReport rep{"G", K, {}, false, "", false};
  PeriodApprox U = pi_phi(C, K, prec + 8);
  Rat Uf = rmin(U.floor, U.value.precision());
  i64 qK = ipow(C.q(), unsigned(K));
  SeriesEval E = exp_phi(C, U.value, prec);
  for (auto& s : S) {
    if (!s.in_domain) {
      rep.samples.push_back(outside(s, "frobenius_defect"));
      rep.samples.push_back(outside(s, "omega_match"));
      continue;
    }
    SeriesEval G = g_at(C, 0, U.value, s.z, prec), G1 = g_at(C, 1, U.value, s.z, prec);
    Series f = shtuka_at(C, 0, s.z, prec + 2);
    Series def = G1.value - f * G.value - E.value;
    Rat fl = rmin(rmin(G1.floor, G.floor - Rat(1)), rmin(E.floor, def.precision()));
    rep.samples.push_back(compare(s.label, "frobenius_defect", G.value, def, fl));

    Series w = omega_at(C, K, s.z, prec);
    Rat fo = rmin(rmin(Uf + Rat(1), w.valuation() + Rat(qK)), rmin(G.floor, w.precision()));
    rep.samples.push_back(compare(s.label, "omega_match", G.value, G.value - w, fo));
  }
  return rep;
}

AGFReport report_h(const DrinfeldModule& Psi, long K, const std::vector<Sample>& S, i64 prec) {
  const Context& C = *Psi.ctx;
  AGFReport rep{"H", K, {}, false, "", false};
  PeriodApprox U = pi_phi(C, K, prec + 8);
  for (auto& s : S) {
    if (!s.in_domain) {
      rep.samples.push_back(outside(s, "g_match"));
      continue;
    }
    HEval H = h_at(C, U.value, s.z, prec);
    SeriesEval G = g_at(C, 0, U.value, s.z, prec);
    rep.samples.push_back(compare(s.label, "g_match", H.value, H.value - G.value, rmin(H.floor, G.floor)));
  }
  return rep;
}

AGFReport report_log(const DrinfeldModule& Psi, long K, const std::vector<Sample>& S, i64 prec) {
  const Context& C = *Psi.ctx;
  AGFReport rep{"Log", K, {}, false, "", false};
  Series U = Series::monomial(&C, 1, 1, prec + 8);
  SeriesEval xi = exp_phi(C, U, prec + 4);
  for (auto& s : S) {
    if (!s.in_domain) {
      rep.samples.push_back(outside(s, "log_match"));
      continue;
    }
    SeriesEval L = log_at(C, xi.value, s.z, prec);
    SeriesEval G = g_at(C, 0, U, s.z, prec);
    Series f = shtuka_at(C, 0, s.z, prec + 2);
    Series rhs = -(f * G.value);
    Rat fl = rmin(rmin(L.floor, xi.floor), rmin(G.floor - Rat(1), rhs.precision()));
    rep.samples.push_back(compare(s.label, "log_match", L.value, L.value - rhs, fl));
  }
  return rep;
}

}  // namespace dmod
