#include "dmod/hplus.hpp"

#include <algorithm>

namespace dmod {

i64 HPlus::W(const Context* ctx) { return dmod::W(ctx->q(), ctx->N()); }

HElem HPlus::u_power_W(const Context* ctx) {
  // (-Θ)^{γ_N}; the sign is (-1)^{W_N}
  HElem t = ctx->Theta_pow(gamma(ctx->N(), ctx->q(), ctx->N()));
  return (W(ctx) % 2) ? -t : t;
}

HPlus::HPlus(const Context* ctx, std::vector<HElem> a) : ctx_(ctx), a_(std::move(a)) {
  std::size_t w = std::size_t(W(ctx));
  if (a_.size() > w) throw DomainError("H⁺ element with too many coefficients");
  a_.resize(w, ctx->zero());
}

HPlus HPlus::from(const HElem& h) { return HPlus(h.ctx(), {h}); }

HPlus HPlus::u(const Context* ctx) {
  if (W(ctx) == 1) return from(u_power_W(ctx));
  return HPlus(ctx, {ctx->zero(), ctx->one()});
}

HPlus HPlus::u_pow(const Context* ctx, i64 n) {
  i64 w = W(ctx);
  i64 qt = n >= 0 ? n / w : -((-n + w - 1) / w);
  i64 r = n - qt * w;
  std::vector<HElem> a(std::size_t(w), ctx->zero());
  a[std::size_t(r)] = u_power_W(ctx).pow(qt);
  return HPlus(ctx, std::move(a));
}

bool HPlus::is_zero() const {
  for (auto& x : a_)
    if (!x.is_zero()) return false;
  return true;
}

bool HPlus::in_H() const {
  for (std::size_t i = 1; i < a_.size(); ++i)
    if (!a_[i].is_zero()) return false;
  return true;
}

void HPlus::add_term(std::vector<HElem>& acc, const HElem& h, i64 n) const {
  if (h.is_zero()) return;
  i64 w = W(ctx_);
  i64 qt = n / w, r = n % w;
  HElem t = qt ? h * u_power_W(ctx_).pow(qt) : h;
  acc[std::size_t(r)] = acc[std::size_t(r)] + t;
}

HPlus HPlus::operator+(const HPlus& o) const {
  std::vector<HElem> r = a_;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = r[i] + o.a_[i];
  return HPlus(ctx_, std::move(r));
}

HPlus HPlus::operator-() const {
  std::vector<HElem> r = a_;
  for (auto& x : r) x = -x;
  return HPlus(ctx_, std::move(r));
}

HPlus HPlus::operator-(const HPlus& o) const { return *this + (-o); }

HPlus HPlus::operator*(const HPlus& o) const {
  std::vector<HElem> acc(a_.size(), ctx_->zero());
  for (std::size_t i = 0; i < a_.size(); ++i) {
    if (a_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.a_.size(); ++j)
      if (!o.a_[j].is_zero()) add_term(acc, a_[i] * o.a_[j], i64(i + j));
  }
  return HPlus(ctx_, std::move(acc));
}

HPlus HPlus::operator*(const HElem& s) const {
  std::vector<HElem> r = a_;
  for (auto& x : r) x = x * s;
  return HPlus(ctx_, std::move(r));
}

HPlus HPlus::galois(long k, u32 mu) const {
  long N = long(ctx_->N());
  if (k < 0) k = ((k % N) + N) % N;
  std::vector<HElem> acc(a_.size(), ctx_->zero());
  i64 qk = ipow(ctx_->q(), unsigned(k));
  // image of u divided by u^{q^k}
  HElem c = ctx_->constant(ctx_->frobq(mu, k)) * ctx_->Theta_pow(gamma(ctx_->N(), ctx_->q(), unsigned(k)) * (1 - i64(ctx_->q())));
  for (std::size_t i = 0; i < a_.size(); ++i) {
    if (a_[i].is_zero()) continue;
    add_term(acc, a_[i].sigma(k) * c.pow(i64(i)), i64(i) * qk);
  }
  return HPlus(ctx_, std::move(acc));
}

HPlus HPlus::frob(long k) const {
  std::vector<HElem> acc(a_.size(), ctx_->zero());
  i64 qk = ipow(ctx_->q(), unsigned(k));
  for (std::size_t i = 0; i < a_.size(); ++i)
    if (!a_[i].is_zero()) add_term(acc, a_[i].frob(k), i64(i) * qk);
  return HPlus(ctx_, std::move(acc));
}

HPlus HPlus::pow(i64 e) const {
  if (e < 0) return inv().pow(-e);
  HPlus r = one_like(*this), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

HElem HPlus::norm() const {
  HPlus prod = one_like(*this);
  for (u32 mu : roots_of_unity_W(*ctx_)) prod = prod * mult_mu(mu);
  if (!prod.in_H()) throw DomainError("norm did not land in H");
  return prod.a_[0];
}

HPlus HPlus::inv() const {
  if (is_zero()) throw DomainError("inverse of zero in H⁺");
  if (in_H()) return from(a_[0].inv());
  HPlus co = one_like(*this);
  for (u32 mu : roots_of_unity_W(*ctx_))
    if (mu != 1) co = co * mult_mu(mu);
  HPlus n = *this * co;
  if (!n.in_H()) throw DomainError("norm did not land in H");
  return co * n.a_[0].inv();
}

bool HPlus::operator==(const HPlus& o) const {
  for (std::size_t i = 0; i < a_.size(); ++i)
    if (!(a_[i] == o.a_[i])) return false;
  return true;
}

std::string HPlus::str() const {
  std::string s;
  for (std::size_t i = a_.size(); i-- > 0;) {
    if (a_[i].is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += "(" + a_[i].str() + ")";
    if (i) s += "*u" + (i > 1 ? "^" + std::to_string(i) : std::string());
  }
  return s.empty() ? "0" : s;
}

std::vector<u32> roots_of_unity_W(const Context& C) {
  const GField& F = C.F();
  std::vector<u32> r;
  i64 w = dmod::W(C.q(), C.N());
  for (i64 j = 0; j < w; ++j) r.push_back(F.gen_pow(j * (C.q() - 1)));
  std::sort(r.begin(), r.end());
  return r;
}

u32 eta_star(const Context& C) {
  const GField& F = C.F();
  return C.frobq(F.pow(C.eta(), 1 - i64(C.q())), long(C.N()) - 1);
}

}  // namespace dmod
