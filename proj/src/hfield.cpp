#include "dmod/hfield.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace dmod {

namespace {

HElem::Factors merge(const HElem::Factors& a, const HElem::Factors& b, i64 sb) {
  HElem::Factors r;
  r.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      r.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      r.emplace_back(b[j].first, sb * b[j].second);
      ++j;
    } else {
      i64 e = a[i].second + sb * b[j].second;
      if (e) r.emplace_back(a[i].first, e);
      ++i;
      ++j;
    }
  }
  return r;
}

void sort_factors(HElem::Factors& f) {
  std::sort(f.begin(), f.end());
  HElem::Factors r;
  for (auto& x : f) {
    if (!r.empty() && r.back().first == x.first)
      r.back().second += x.second;
    else
      r.push_back(x);
  }
  r.erase(std::remove_if(r.begin(), r.end(), [](auto& x) { return x.second == 0; }), r.end());
  f = std::move(r);
}

}  // namespace

// ---------------------------------------------------------------- Context

std::shared_ptr<const Context> Context::make(u32 q, const std::vector<u32>& rho) {
  if (rho.size() < 3) throw ParameterError("deg ρ must be at least 2");
  if (rho.back() != 1) throw ParameterError("ρ must be monic");
  std::shared_ptr<Context> c(new Context());
  c->tower_ = std::make_unique<Tower>(q, u32(rho.size() - 1));
  c->q_ = q;
  c->N_ = u32(rho.size() - 1);
  for (u32 x : rho)
    if (x >= q) throw ParameterError("coefficient of ρ outside F_q: " + std::to_string(x));
  c->rho_ = rho;
  const GField& F = c->F();
  std::vector<u32> r1;
  for (u32 x : rho) r1.push_back(c->from_fq(x));
  c->rho1_ = FPoly(r1);
  // ρ is irreducible iff it has N distinct roots in F_{q^N}, none in a proper subfield.
  std::vector<u32> roots;
  for (u32 x = 0; x < F.size(); ++x)
    if (fp::eval(F, c->rho1_, x) == 0) roots.push_back(x);
  bool ok = roots.size() == c->N_;
  for (u32 x : roots)
    for (u32 d = 1; d < c->N_ && ok; ++d)
      if (c->N_ % d == 0 && c->frobq(x, d) == x) ok = false;
  if (!ok) throw ParameterError("ρ must be irreducible over F_q");
  u32 eta = roots.front();
  for (u32 k = 0; k < c->N_; ++k) c->eta_.push_back(c->frobq(eta, k));
  c->theta_atom_ = c->atom_id(FPoly(std::vector<u32>{0, 1}));
  for (u32 k = 0; k < c->N_; ++k) c->eta_atoms_.push_back(c->atom_id(FPoly(std::vector<u32>{F.neg(c->eta_[k]), 1})));
  return c;
}

u32 Context::atom_id(const FPoly& poly) const {
  if (poly.deg() < 1 || poly.lc() != 1) throw DomainError("atoms must be monic and nonconstant");
  std::size_t h = poly.hash();
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = index_.find(h);
    if (it != index_.end())
      for (u32 id : it->second)
        if (atoms_[id]->poly == poly) return id;
  }
  auto a = std::make_unique<Atom>();
  a->poly = poly;
  a->linear = poly.deg() == 1;
  if (a->linear) a->root = F().neg(poly.c[0]);
  a->ord_eta = fp::ord_at(F(), poly, eta_.empty() ? 0 : eta_[0]);
  std::lock_guard<std::mutex> lk(mu_);
  auto& bucket = index_[h];
  for (u32 id : bucket)
    if (atoms_[id]->poly == poly) return id;
  u32 id = u32(atoms_.size());
  atoms_.push_back(std::move(a));
  bucket.push_back(id);
  return id;
}

const Atom& Context::atom(u32 id) const {
  std::lock_guard<std::mutex> lk(mu_);
  return *atoms_[id];
}

std::size_t Context::atom_count() const {
  std::lock_guard<std::mutex> lk(mu_);
  return atoms_.size();
}

u32 Context::atom_sigma(u32 id) const {
  const Atom& a = atom(id);
  {
    std::lock_guard<std::mutex> lk(mu_);
    if (a.sigma >= 0) return u32(a.sigma);
  }
  FPoly s = fp::frob_coeffs(F(), a.poly, long(e()));
  u32 sid = atom_id(s);
  std::lock_guard<std::mutex> lk(mu_);
  atoms_[id]->sigma = sid;
  return sid;
}

FPoly Context::cached_unit(u32 id) const {
  std::lock_guard<std::mutex> lk(mu_);
  auto it = unit_cache_.find(id);
  return it == unit_cache_.end() ? FPoly() : it->second;
}

void Context::store_unit(u32 id, const FPoly& u) const {
  std::lock_guard<std::mutex> lk(mu_);
  auto& slot = unit_cache_[id];
  if (slot.c.size() < u.c.size() || slot.is_zero()) slot = u;
}

FPoly Context::atom_power(u32 id, i64 e) const {
  if (e == 0) return FPoly::constant(1);
  const Atom& a = atom(id);
  if (e == 1) return a.poly;
  unsigned long long key = (static_cast<unsigned long long>(id) << 40) ^ static_cast<unsigned long long>(e);
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = pow_cache_.find(key);
    if (it != pow_cache_.end()) return it->second;
  }
  FPoly r = fp::pow(F(), a.poly, static_cast<unsigned long long>(e));
  std::lock_guard<std::mutex> lk(mu_);
  std::size_t bytes = r.c.size() * sizeof(u32);
  if (pow_cache_bytes_ + bytes > (std::size_t(256) << 20)) {
    pow_cache_.clear();
    pow_cache_bytes_ = 0;
  }
  pow_cache_bytes_ += bytes;
  pow_cache_.emplace(key, r);
  return r;
}

HElem Context::factor_in(const FPoly& p0, const HElem::Factors* try_first) const {
  if (p0.is_zero()) return zero();
  const GField& Fd = F();
  u32 unit = p0.lc();
  FPoly P = fp::monic(Fd, p0);
  HElem::Factors fs;
  if (P.deg() == 0) return HElem(this, unit);
  // θ^k
  std::size_t k = 0;
  while (k < P.c.size() && P.c[k] == 0) ++k;
  if (k) {
    fs.emplace_back(theta_atom_, i64(k));
    P.c.erase(P.c.begin(), P.c.begin() + long(k));
  }
  auto strip_linear = [&](u32 id, u32 root, i64 maxc) {
    i64 n = 0;
    while (P.deg() >= 1 && n < maxc) {
      std::size_t m = P.c.size();
      std::vector<u32> q(m - 1);
      u32 acc = 0;
      for (std::size_t i = m; i-- > 0;) {
        acc = Fd.add(Fd.mul(acc, root), P.c[i]);
        if (i > 0) q[i - 1] = acc;
      }
      if (acc) break;
      P = FPoly(std::move(q));
      ++n;
    }
    if (n) fs.emplace_back(id, n);
  };
  if (try_first) {
    for (auto [id, cnt] : *try_first) {
      if (P.deg() < 1) break;
      if (id == theta_atom_) continue;
      const Atom& a = atom(id);
      if (a.linear) {
        strip_linear(id, a.root, cnt);
        continue;
      }
      if (a.poly.deg() > P.deg()) continue;
      if (a.poly.nnz() > 16 && a.poly.deg() > 512) continue;
      i64 n = 0;
      FPoly quo;
      while (n < cnt && a.poly.deg() <= P.deg() && fp::divides(Fd, a.poly, P, &quo)) {
        P = std::move(quo);
        ++n;
      }
      if (n) fs.emplace_back(id, n);
    }
  }
  for (u32 j = 0; j < N_ && P.deg() >= 1; ++j) strip_linear(eta_atoms_[j], eta_[j], i64(1) << 60);
  if (P.deg() >= 1) {
    unsigned d = fp::pth_power_depth(P, p());
    i64 mult = 1;
    if (d) {
      std::size_t pd = 1;
      for (unsigned i = 0; i < d; ++i) pd *= p();
      std::vector<u32> r(std::size_t(P.deg()) / pd + 1);
      for (std::size_t i = 0; i < r.size(); ++i) r[i] = Fd.frob(P.c[i * pd], -long(d));
      P = FPoly(std::move(r));
      mult = i64(pd);
    }
    fs.emplace_back(atom_id(P), mult);
  }
  sort_factors(fs);
  return HElem(this, unit, std::move(fs));
}

HElem Context::theta() const { return HElem(this, 1, {{theta_atom_, 1}}); }

HElem Context::Theta(long k) const {
  return HElem(this, 1, {{eta_atoms_[std::size_t(((k % long(N_)) + long(N_)) % long(N_))], -1}});
}

HElem Context::Theta_pow(const SigmaExp& s) const {
  HElem::Factors fs;
  for (u32 k = 0; k < N_; ++k)
    if (s[k]) fs.emplace_back(eta_atoms_[k], -s[k]);
  sort_factors(fs);
  return HElem(this, 1, std::move(fs));
}

HElem Context::theta_minus(u32 c) const { return from_poly(FPoly(std::vector<u32>{F().neg(c), 1})); }

HElem Context::from_poly(const FPoly& p) const { return factor_in(p); }

std::vector<u32> Context::eta_coords(u32 x) const {
  std::lock_guard<std::mutex> lk(mu_);
  if (coords_.empty()) {
    const GField& Fd = tower_->level(1);
    coords_.assign(Fd.size(), {});
    std::vector<u32> c(N_, 0);
    for (u32 idx = 0; idx < Fd.size(); ++idx) {
      u32 t = idx, val = 0, pw = 1;
      for (u32 i = 0; i < N_; ++i) {
        c[i] = t % q_;
        t /= q_;
        val = Fd.add(val, Fd.mul(tower_->embed(c[i], 0, 1), pw));
        pw = Fd.mul(pw, eta_[0]);
      }
      coords_[val] = c;
    }
  }
  return coords_[x];
}

std::string Context::fq_str(u32 x) const {
  auto c = eta_coords(x);
  std::vector<std::string> terms;
  for (u32 i = 0; i < c.size(); ++i) {
    if (!c[i]) continue;
    std::string mon = i == 0 ? "" : (i == 1 ? "η" : "η^" + std::to_string(i));
    if (mon.empty())
      terms.push_back(std::to_string(c[i]));
    else if (c[i] == 1)
      terms.push_back(mon);
    else
      terms.push_back(std::to_string(c[i]) + "*" + mon);
  }
  if (terms.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < terms.size(); ++i) s += (i ? " + " : "") + terms[i];
  return terms.size() > 1 ? "(" + s + ")" : s;
}

// ---------------------------------------------------------------- HElem

HElem HElem::operator*(const HElem& o) const {
  if (is_zero() || o.is_zero()) return HElem(ctx_ ? ctx_ : o.ctx_, 0);
  const GField& F = ctx_->F();
  return HElem(ctx_, F.mul(unit_, o.unit_), merge(f_, o.f_, 1));
}

HElem HElem::inv() const {
  if (is_zero()) throw DomainError("inverse of zero in H");
  Factors f = f_;
  for (auto& x : f) x.second = -x.second;
  return HElem(ctx_, ctx_->F().inv(unit_), std::move(f));
}

HElem HElem::operator/(const HElem& o) const {
  if (o.is_zero()) throw DomainError("division by zero in H");
  if (is_zero()) return *this;
  const GField& F = ctx_->F();
  return HElem(ctx_, F.div(unit_, o.unit_), merge(f_, o.f_, -1));
}

HElem HElem::operator-() const {
  if (is_zero()) return *this;
  return HElem(ctx_, ctx_->F().neg(unit_), f_);
}

HElem HElem::pow(i64 e) const {
  if (is_zero()) {
    if (e < 0) throw DomainError("negative power of zero in H");
    return e == 0 ? ctx_->one() : *this;
  }
  Factors f = f_;
  for (auto& x : f) x.second *= e;
  if (e == 0) f.clear();
  return HElem(ctx_, ctx_->F().pow(unit_, e), std::move(f));
}

HElem HElem::frob(long k) const {
  if (k < 0) throw DomainError("negative Frobenius twist in H");
  if (is_zero() || k == 0) return *this;
  i64 qk = ipow(ctx_->q(), unsigned(k));
  Factors f = f_;
  for (auto& x : f) x.second *= qk;
  return HElem(ctx_, ctx_->frobq(unit_, k), std::move(f));
}

HElem HElem::sigma(long k) const {
  long N = long(ctx_->N());
  k = ((k % N) + N) % N;
  if (is_zero() || k == 0) return *this;
  Factors f;
  f.reserve(f_.size());
  for (auto [id, e] : f_) {
    u32 s = id;
    for (long i = 0; i < k; ++i) s = ctx_->atom_sigma(s);
    f.emplace_back(s, e);
  }
  sort_factors(f);
  return HElem(ctx_, ctx_->frobq(unit_, k), std::move(f));
}

HElem HElem::operator+(const HElem& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  const Context& C = *ctx_;
  const GField& F = C.F();
  Factors base, tries;
  std::vector<FPoly> ca{FPoly::constant(unit_)}, cb{FPoly::constant(o.unit_)};
  std::size_t i = 0, j = 0;
  while (i < f_.size() || j < o.f_.size()) {
    u32 id;
    i64 ea = 0, eb = 0;
    if (j == o.f_.size() || (i < f_.size() && f_[i].first < o.f_[j].first)) {
      id = f_[i].first;
      ea = f_[i++].second;
    } else if (i == f_.size() || o.f_[j].first < f_[i].first) {
      id = o.f_[j].first;
      eb = o.f_[j++].second;
    } else {
      id = f_[i].first;
      ea = f_[i++].second;
      eb = o.f_[j++].second;
    }
    i64 m = std::min(ea, eb);
    if (m) base.emplace_back(id, m);
    if (m < 0) tries.emplace_back(id, -m);
    if (ea > m) ca.push_back(C.atom_power(id, ea - m));
    if (eb > m) cb.push_back(C.atom_power(id, eb - m));
  }
  FPoly s = fp::add(F, fp::product(F, std::move(ca)), fp::product(F, std::move(cb)));
  if (s.is_zero()) return C.zero();
  // Denominator atoms first, smallest degree first.
  std::sort(tries.begin(), tries.end(), [&](auto& x, auto& y) {
    return C.atom(x.first).poly.deg() < C.atom(y.first).poly.deg();
  });
  HElem r = C.factor_in(s, &tries);
  return HElem(ctx_, r.unit_, merge(r.f_, base, 1));
}

HElem HElem::operator-(const HElem& o) const { return *this + (-o); }

bool HElem::operator==(const HElem& o) const {
  if (unit_ == o.unit_ && f_ == o.f_) return true;
  if (is_zero() || o.is_zero()) return false;
  return (*this - o).is_zero();
}

i64 HElem::v_eta() const {
  if (is_zero()) throw DomainError("valuation of zero");
  i64 v = 0;
  for (auto [id, e] : f_) v += e * ctx_->atom(id).ord_eta;
  return v;
}

i64 HElem::degree() const {
  if (is_zero()) throw DomainError("degree of zero");
  i64 d = 0;
  for (auto [id, e] : f_) d += e * ctx_->atom(id).poly.deg();
  return d;
}

FPoly HElem::numerator() const {
  if (is_zero()) return FPoly();
  std::vector<FPoly> fs{FPoly::constant(unit_)};
  for (auto [id, e] : f_)
    if (e > 0) fs.push_back(ctx_->atom_power(id, e));
  return fp::product(ctx_->F(), std::move(fs));
}

FPoly HElem::denominator() const {
  std::vector<FPoly> fs;
  for (auto [id, e] : f_)
    if (e < 0) fs.push_back(ctx_->atom_power(id, -e));
  return fp::product(ctx_->F(), std::move(fs));
}

namespace {

std::string poly_str(const Context& C, const FPoly& p) {
  std::string s;
  int terms = 0;
  for (std::size_t i = p.c.size(); i-- > 0;) {
    if (!p.c[i]) continue;
    std::string co = C.fq_str(p.c[i]);
    std::string mon = i == 0 ? "" : (i == 1 ? "θ" : "θ^" + std::to_string(i));
    std::string t;
    if (mon.empty())
      t = co;
    else if (co == "1")
      t = mon;
    else
      t = co + "*" + mon;
    s += (terms++ ? " + " : "") + t;
  }
  return terms > 1 ? "(" + s + ")" : s;
}

}  // namespace

std::string HElem::str() const {
  if (is_zero()) return "0";
  std::vector<std::pair<const FPoly*, i64>> fs;
  for (auto [id, e] : f_) fs.emplace_back(&ctx_->atom(id).poly, e);
  std::sort(fs.begin(), fs.end(), [](auto& a, auto& b) {
    if (a.first->c.size() != b.first->c.size()) return a.first->c.size() < b.first->c.size();
    return a.first->c < b.first->c;
  });
  std::string s;
  std::string u = ctx_->fq_str(unit_);
  if (u != "1" || fs.empty()) s = u;
  for (auto& [poly, e] : fs) {
    if (!s.empty()) s += "*";
    s += poly_str(*ctx_, *poly);
    if (e != 1) s += "^" + std::to_string(e);
  }
  return s;
}

}  // namespace dmod
