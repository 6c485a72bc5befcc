#include "dmod/series.hpp"

#include <algorithm>
#include <sstream>

namespace dmod {

namespace {

FPoly mul_trunc(const GField& F, const FPoly& a, const FPoly& b, std::size_t n) {
  return fp::truncate(fp::mul(F, fp::truncate(a, n), fp::truncate(b, n)), n);
}

// 1/u mod x^n, u(0) ≠ 0.
FPoly inv_trunc(const GField& F, const FPoly& u, std::size_t n) {
  if (u.is_zero() || u.c[0] == 0) throw DomainError("series inverse of a non-unit");
  FPoly y = FPoly::constant(F.inv(u.c[0]));
  std::size_t k = 1;
  while (k < n) {
    k = std::min(2 * k, n);
    // y ← y (2 - u y)
    FPoly uy = mul_trunc(F, u, y, k);
    FPoly two_minus = fp::neg(F, uy);
    if (two_minus.c.empty()) two_minus.c.push_back(0);
    two_minus.c[0] = F.add(two_minus.c[0], F.from_int(2));
    two_minus.trim();
    y = mul_trunc(F, y, two_minus, k);
  }
  return fp::truncate(y, n);
}

// u^(p^j) mod x^n
FPoly spread_trunc(const GField& F, const FPoly& u, unsigned j, std::size_t n) {
  std::size_t pj = 1;
  for (unsigned i = 0; i < j && pj < n; ++i) pj *= F.p();
  std::vector<u32> r(std::min(n, (u.c.size() - 1) * pj + 1), 0);
  for (std::size_t i = 0; i < u.c.size() && i * pj < r.size(); ++i) r[i * pj] = F.frob(u.c[i], j);
  return FPoly(std::move(r));
}

FPoly pow_trunc(const GField& F, const FPoly& u, i64 e, std::size_t n) {
  if (e < 0) return pow_trunc(F, inv_trunc(F, u, n), -e, n);
  FPoly r = FPoly::constant(1);
  unsigned j = 0;
  while (e) {
    unsigned d = unsigned(e % F.p());
    e /= F.p();
    if (d) {
      FPoly s = spread_trunc(F, u, j, n);
      for (unsigned t = 0; t < d; ++t) r = mul_trunc(F, r, s, n);
    }
    ++j;
  }
  return r;
}

// n-th root of w with w(0) = 1, n invertible mod p, to R terms.
FPoly root_trunc(const GField& F, const FPoly& w, u32 n, std::size_t R) {
  FPoly r = FPoly::constant(1);
  u32 ninv = F.inv(F.from_int(n));
  for (int it = 0; it < 80; ++it) {
    FPoly rn1 = pow_trunc(F, r, i64(n) - 1, R);
    FPoly rn = mul_trunc(F, rn1, r, R);
    FPoly diff = fp::sub(F, rn, fp::truncate(w, R));
    if (diff.is_zero()) break;
    FPoly step = mul_trunc(F, diff, inv_trunc(F, fp::scale(F, rn1, F.from_int(n)), R), R);
    (void)ninv;
    r = fp::sub(F, r, step);
  }
  return r;
}

// First R coefficients of a(η + x)/x^{ord}.
FPoly atom_unit(const Context& C, u32 id, std::size_t R) {
  FPoly hit = C.cached_unit(id);
  if (hit.c.size() >= R) return fp::truncate(hit, R);
  const Atom& a = C.atom(id);
  const GField& F = C.F();
  u32 eta = C.eta();
  std::vector<u32> cur = a.poly.c, out;
  // Repeated synthetic division yields Taylor coefficients at η.
  std::size_t want = R + std::size_t(a.ord_eta);
  for (std::size_t k = 0; k < want && !cur.empty(); ++k) {
    std::size_t m = cur.size();
    std::vector<u32> q(m - 1);
    u32 acc = 0;
    for (std::size_t i = m; i-- > 0;) {
      acc = F.add(F.mul(acc, eta), cur[i]);
      if (i > 0) q[i - 1] = acc;
    }
    out.push_back(acc);
    cur = std::move(q);
  }
  out.erase(out.begin(), out.begin() + std::min<long>(a.ord_eta, long(out.size())));
  FPoly u{std::vector<u32>(out)};
  // the polynomial may be shorter than R: the remaining coefficients are zero
  C.store_unit(id, u);
  return fp::truncate(u, R);
}

i64 lcm64(i64 a, i64 b) { return a / std::gcd(a, b) * b; }

}  // namespace

Series::Series(const Context* ctx, u32 level, i64 den, i64 v, std::vector<u32> c, i64 prec)
    : ctx_(ctx), level_(level), den_(den), v_(v), prec_(prec), c_(std::move(c)) {
  normalize();
}

void Series::normalize() {
  if (v_ + i64(c_.size()) > prec_) c_.resize(std::size_t(std::max<i64>(0, prec_ - v_)));
  std::size_t lead = 0;
  while (lead < c_.size() && c_[lead] == 0) ++lead;
  if (lead) {
    c_.erase(c_.begin(), c_.begin() + long(lead));
    v_ += i64(lead);
  }
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
  if (c_.empty()) v_ = prec_;
  if (den_ > 1) {
    i64 g = std::gcd(den_, std::gcd(v_ < 0 ? -v_ : v_, prec_ < 0 ? -prec_ : prec_));
    for (std::size_t i = 0; i < c_.size() && g > 1; ++i)
      if (c_[i]) g = std::gcd(g, i64(i));
    if (g > 1) {
      std::vector<u32> nc;
      for (std::size_t i = 0; i < c_.size(); i += std::size_t(g)) nc.push_back(c_[i]);
      c_ = std::move(nc);
      den_ /= g;
      v_ /= g;
      prec_ /= g;
    }
  }
}

Series Series::zero(const Context* ctx, i64 prec) { return Series(ctx, 1, 1, prec, {}, prec); }

Series Series::constant(const Context* ctx, u32 c, i64 prec, u32 level) {
  return Series(ctx, level, 1, 0, {c}, prec);
}

Series Series::monomial(const Context* ctx, i64 k, u32 c, i64 prec, u32 level) {
  return Series(ctx, level, 1, k, {c}, prec);
}

Series Series::embed(const HElem& h, i64 prec) {
  const Context& C = *h.ctx();
  if (h.is_zero()) return zero(&C, prec);
  i64 V = h.v_eta();
  if (prec <= V) return zero(&C, prec);
  std::size_t R = std::size_t(prec - V);
  const GField& F = C.F();
  FPoly acc = FPoly::constant(h.unit());
  for (auto [id, e] : h.factors()) {
    FPoly u = atom_unit(C, id, R);
    acc = mul_trunc(F, acc, pow_trunc(F, u, e, R), R);
  }
  return Series(&C, 1, 1, V, acc.c, prec);
}

Series Series::lifted(i64 den, u32 level) const {
  if (den % den_ != 0 || level % level_ != 0) throw DomainError("series lift to an incompatible grid or level");
  i64 f = den / den_;
  std::vector<u32> c(c_.empty() ? 0 : (c_.size() - 1) * std::size_t(f) + 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) c[i * std::size_t(f)] = ctx_->tower().embed(c_[i], level_, level);
  Series r;
  r.ctx_ = ctx_;
  r.level_ = level;
  r.den_ = den;
  r.v_ = v_ * f;
  r.prec_ = prec_ * f;
  r.c_ = std::move(c);
  return r;
}

namespace {
std::pair<Series, Series> align(const Series& a, const Series& b) {
  i64 d = lcm64(a.den(), b.den());
  u32 l = u32(lcm64(a.level(), b.level()));
  return {a.lifted(d, l), b.lifted(d, l)};
}
}  // namespace

Series Series::operator+(const Series& o) const {
  auto [a, b] = align(*this, o);
  const GField& F = ctx_->tower().level(a.level_);
  i64 prec = std::min(a.prec_, b.prec_);
  // an empty operand has v_ = prec_; it must not widen the coefficient range
  if (a.c_.empty() || b.c_.empty()) {
    Series r = a.c_.empty() ? b : a;
    return r.truncated(Rat(prec, a.den_));
  }
  i64 v = std::min(a.v_, b.v_);
  i64 end = std::min(prec, std::max(a.v_ + i64(a.c_.size()), b.v_ + i64(b.c_.size())));
  std::vector<u32> c(std::size_t(std::max<i64>(0, end - v)), 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    i64 k = a.v_ + i64(i) - v;
    if (k < i64(c.size())) c[std::size_t(k)] = a.c_[i];
  }
  for (std::size_t i = 0; i < b.c_.size(); ++i) {
    i64 k = b.v_ + i64(i) - v;
    if (k < i64(c.size())) c[std::size_t(k)] = F.add(c[std::size_t(k)], b.c_[i]);
  }
  return Series(ctx_, a.level_, a.den_, v, std::move(c), prec);
}

Series Series::operator-() const {
  Series r = *this;
  const GField& F = ctx_->tower().level(level_);
  for (auto& x : r.c_) x = F.neg(x);
  return r;
}

Series Series::operator-(const Series& o) const { return *this + (-o); }

Series Series::operator*(const Series& o) const {
  auto [a, b] = align(*this, o);
  const GField& F = ctx_->tower().level(a.level_);
  i64 v = a.v_ + b.v_;
  i64 prec = std::min(a.prec_ + b.v_, b.prec_ + a.v_);
  if (prec <= v || a.c_.empty() || b.c_.empty()) return Series(ctx_, a.level_, a.den_, prec, {}, prec);
  std::size_t n = std::size_t(prec - v);
  FPoly r = mul_trunc(F, FPoly(a.c_), FPoly(b.c_), n);
  return Series(ctx_, a.level_, a.den_, v, std::move(r.c), prec);
}

Series Series::inv() const {
  if (c_.empty()) throw DomainError("inverse of a series that vanishes to its precision");
  const GField& F = ctx_->tower().level(level_);
  std::size_t R = std::size_t(prec_ - v_);
  FPoly y = inv_trunc(F, FPoly(c_), R);
  return Series(ctx_, level_, den_, -v_, std::move(y.c), -v_ + i64(R));
}

Series Series::pow(i64 e) const {
  if (e < 0) return inv().pow(-e);
  if (e == 0) return constant(ctx_, 1, prec_ - v_, level_);
  if (c_.empty()) {
    return Series(ctx_, level_, den_, prec_ * e, {}, prec_ * e);
  }
  const GField& F = ctx_->tower().level(level_);
  Series r;
  bool first = true;
  unsigned j = 0;
  i64 pj = 1;
  while (e) {
    unsigned d = unsigned(e % F.p());
    e /= F.p();
    if (d) {
      // this^(p^j): exact spread
      std::vector<u32> c((c_.size() - 1) * std::size_t(pj) + 1, 0);
      for (std::size_t i = 0; i < c_.size(); ++i) c[i * std::size_t(pj)] = F.frob(c_[i], j);
      Series s(ctx_, level_, den_, v_ * pj, std::move(c), prec_ * pj);
      for (unsigned t = 0; t < d; ++t) {
        r = first ? s : r * s;
        first = false;
      }
    }
    ++j;
    pj *= F.p();
  }
  return r;
}

Series Series::frob(long k) const { return pow(ipow(ctx_->q(), unsigned(k))); }

Series Series::root_q_minus_1() const {
  u32 n = ctx_->q() - 1;
  if (n == 1) return *this;
  if (c_.empty()) throw DomainError("root of a series that vanishes to its precision");
  u32 L = 0;
  u32 r0 = ctx_->tower().root_q_minus_1(c_[0], level_, &L);
  Series s = lifted(den_, L);
  const GField& F = ctx_->tower().level(L);
  std::size_t R = std::size_t(prec_ - v_);
  FPoly w = fp::scale(F, FPoly(s.c_), F.inv(s.c_[0]));
  FPoly om = root_trunc(F, w, n, R);
  std::vector<u32> c((R - 1) * n + 1, 0);
  for (std::size_t i = 0; i < om.c.size() && i < R; ++i) c[i * n] = F.mul(r0, om.c[i]);
  return Series(ctx_, L, den_ * n, v_, std::move(c), v_ + i64(R) * n);
}

Series Series::truncated(Rat p) const {
  // p ≥ precision: nothing to do
  Rat cur = precision();
  if (cur <= p) return *this;
  i64 d = lcm64(den_, p.den);
  Series r = lifted(d, level_);
  r.prec_ = p.num * (d / p.den);
  r.normalize();
  return r;
}

std::string Series::str(std::size_t max_terms) const {
  std::ostringstream os;
  std::size_t shown = 0;
  for (std::size_t i = 0; i < c_.size() && shown < max_terms; ++i) {
    if (!c_[i]) continue;
    if (shown++) os << " + ";
    os << "[" << c_[i] << "]x^" << Rat(v_ + i64(i), den_).str();
  }
  if (shown) os << " + ";
  os << "O(x^" << precision().str() << ")";
  return os.str();
}

}  // namespace dmod
