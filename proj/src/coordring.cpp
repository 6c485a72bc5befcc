#include "dmod/coordring.hpp"

namespace dmod {

namespace {

FPoly rho_pow(const Context& C, u32 m) {
  const GField& F0 = C.Fq();
  FPoly r = FPoly::constant(1), rho(C.rho());
  for (u32 i = 0; i < m; ++i) r = fp::mul(F0, r, rho);
  return r;
}

}  // namespace

FPoly lift(const Context& C, const FPoly& p) {
  std::vector<u32> c;
  for (u32 x : p.c) c.push_back(C.from_fq(x));
  return FPoly(std::move(c));
}

AElem::AElem(const Context* ctx, FPoly p, u32 m) : ctx_(ctx), p_(std::move(p)), m_(m) {
  if (p_.deg() > long(ctx->N() * m_)) throw DomainError("p/ρ^m is not regular at infinity");
  normalize();
}

AElem AElem::constant(const Context* ctx, u32 c) { return AElem(ctx, FPoly::constant(c), 0); }

AElem AElem::T(const Context* ctx, u32 i) {
  if (i >= ctx->N()) throw DomainError("T_i needs 0 ≤ i < N");
  return AElem(ctx, FPoly::monomial(i, 1), 1);
}

AElem AElem::random(const Context* ctx, u32 max_m, std::mt19937& rng) {
  u32 m = u32(rng() % (max_m + 1));
  std::vector<u32> c(ctx->N() * m + 1);
  for (auto& x : c) x = u32(rng() % ctx->q());
  return AElem(ctx, FPoly(c), m);
}

void AElem::normalize() {
  if (p_.is_zero()) {
    m_ = 0;
    return;
  }
  const GField& F0 = ctx_->Fq();
  FPoly rho(ctx_->rho()), q;
  while (m_ > 0 && fp::divides(F0, rho, p_, &q)) {
    p_ = q;
    --m_;
  }
}

AElem AElem::operator+(const AElem& o) const {
  const GField& F0 = ctx_->Fq();
  u32 m = std::max(m_, o.m_);
  FPoly a = fp::mul(F0, p_, rho_pow(*ctx_, m - m_));
  FPoly b = fp::mul(F0, o.p_, rho_pow(*ctx_, m - o.m_));
  return AElem(ctx_, fp::add(F0, a, b), m);
}

AElem AElem::operator-() const { return AElem(ctx_, fp::neg(ctx_->Fq(), p_), m_); }
AElem AElem::operator-(const AElem& o) const { return *this + (-o); }

AElem AElem::operator*(const AElem& o) const {
  return AElem(ctx_, fp::mul(ctx_->Fq(), p_, o.p_), m_ + o.m_);
}

AElem AElem::operator*(u32 c) const { return AElem(ctx_, fp::scale(ctx_->Fq(), p_, c), m_); }

AElem AElem::pow(unsigned e) const {
  AElem r = constant(ctx_, 1);
  for (unsigned i = 0; i < e; ++i) r = r * *this;
  return r;
}

HElem AElem::at_theta() const { return eval(ctx_->theta()); }

HElem AElem::eval(const HElem& z) const {
  const Context& C = *ctx_;
  FPoly pl = lift(C, p_);
  HElem num = C.zero();
  for (std::size_t i = pl.c.size(); i-- > 0;) num = num * z + C.constant(pl.c[i]);
  if (m_ == 0) return num;
  HElem r = C.zero();
  for (std::size_t i = C.rho1().c.size(); i-- > 0;) r = r * z + C.constant(C.rho1().c[i]);
  if (r.is_zero()) throw DomainError("A element evaluated at a root of ρ");
  return num / r.pow(m_);
}

Series AElem::eval(const Series& z) const {
  const Context& C = *ctx_;
  FPoly pl = lift(C, p_);
  i64 big = i64(1) << 30;
  Series num = Series::zero(&C, big);
  for (std::size_t i = pl.c.size(); i-- > 0;) num = num * z + Series::constant(&C, pl.c[i], big);
  if (m_ == 0) return num;
  Series r = Series::zero(&C, big);
  for (std::size_t i = C.rho1().c.size(); i-- > 0;) r = r * z + Series::constant(&C, C.rho1().c[i], big);
  return num * r.pow(-i64(m_));
}

u32 AElem::sign(long k) const {
  if (p_.is_zero()) return 0;
  return fp::eval(ctx_->F(), lift(*ctx_, p_), ctx_->eta_k(k));
}

std::pair<u32, std::map<std::pair<u32, u32>, u32>> AElem::basis() const {
  const GField& F0 = ctx_->Fq();
  FPoly rho(ctx_->rho());
  // ρ-adic digits of p
  std::vector<FPoly> digits;
  FPoly cur = p_;
  for (u32 l = 0; l <= m_; ++l) {
    FPoly q, r;
    fp::divrem(F0, cur, rho, q, r);
    digits.push_back(r);
    cur = q;
  }
  std::map<std::pair<u32, u32>, u32> out;
  u32 c0 = digits.size() > m_ ? digits[m_][0] : 0;
  for (u32 l = 0; l < m_; ++l)
    for (u32 i = 0; i < ctx_->N(); ++i)
      if (digits[l][i]) out[{i, m_ - l - 1}] = digits[l][i];
  return {c0, out};
}

std::string AElem::str() const {
  std::string s;
  for (std::size_t i = p_.c.size(); i-- > 0;) {
    if (!p_.c[i]) continue;
    if (!s.empty()) s += " + ";
    s += std::to_string(p_.c[i]);
    if (i) s += "*t" + (i > 1 ? "^" + std::to_string(i) : std::string());
  }
  if (s.empty()) s = "0";
  if (m_) s = "(" + s + ")/ρ" + (m_ > 1 ? "^" + std::to_string(m_) : std::string());
  return s;
}

std::vector<u32> b_coeffs(const Context& C) {
  const GField& F = C.F();
  FPoly q, r;
  fp::divrem(F, C.rho1(), FPoly(std::vector<u32>{F.neg(C.eta()), 1}), q, r);
  std::vector<u32> b(C.N(), 0);
  for (u32 i = 0; i < C.N(); ++i) b[i] = q[i];
  return b;
}

std::vector<AElem> ideal_inf(const Context* C) {
  std::vector<AElem> g;
  for (u32 i = 0; i < C->N(); ++i) g.push_back(AElem::T(C, i));
  return g;
}

std::vector<AElem> ideal_zero(const Context* C) {
  const GField& F0 = C->Fq();
  std::vector<AElem> g = ideal_inf(C);
  g[0] = g[0] - AElem::constant(C, F0.inv(C->rho()[0]));
  return g;
}

std::vector<AElem> ideal_power(const Context* C, u32 n, u32 j) {
  if (n > j) throw DomainError("ideal power needs n ≤ j");
  std::vector<AElem> cur{AElem::constant(C, 1)};
  for (u32 k = 0; k < j; ++k) {
    std::vector<AElem> gens = k < n ? ideal_zero(C) : ideal_inf(C), next;
    for (auto& a : cur)
      for (auto& b : gens) next.push_back(a * b);
    cur = std::move(next);
  }
  return cur;
}

}  // namespace dmod
