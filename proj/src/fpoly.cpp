#include "dmod/fpoly.hpp"

#include <gmp.h>

#include <algorithm>
#include <cstring>
#include <queue>

namespace dmod {

std::size_t FPoly::nnz() const {
  std::size_t n = 0;
  for (u32 x : c) n += x != 0;
  return n;
}

std::size_t FPoly::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (u32 x : c) h = (h ^ x) * 1099511628211ull;
  return h ^ c.size();
}

namespace fp {

FPoly add(const GField& F, const FPoly& a, const FPoly& b) {
  const FPoly& big = a.c.size() >= b.c.size() ? a : b;
  const FPoly& sml = a.c.size() >= b.c.size() ? b : a;
  FPoly r;
  r.c = big.c;
  for (std::size_t i = 0; i < sml.c.size(); ++i) r.c[i] = F.add(r.c[i], sml.c[i]);
  r.trim();
  return r;
}

FPoly neg(const GField& F, const FPoly& a) {
  if (F.p() == 2) return a;
  FPoly r = a;
  for (auto& x : r.c) x = F.neg(x);
  return r;
}

FPoly sub(const GField& F, const FPoly& a, const FPoly& b) { return add(F, a, neg(F, b)); }

FPoly scale(const GField& F, const FPoly& a, u32 s) {
  if (!s) return FPoly();
  if (s == 1) return a;
  FPoly r = a;
  for (auto& x : r.c) x = F.mul(x, s);
  return r;
}

namespace {

FPoly mul_school(const GField& F, const FPoly& a, const FPoly& b) {
  std::vector<u32> r(a.c.size() + b.c.size() - 1, 0);
  std::vector<u32> lb;
  std::vector<std::size_t> idx;
  for (std::size_t j = 0; j < b.c.size(); ++j)
    if (b.c[j]) { idx.push_back(j); lb.push_back(b.c[j]); }
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    u32 ai = a.c[i];
    if (!ai) continue;
    for (std::size_t t = 0; t < idx.size(); ++t) r[i + idx[t]] = F.add(r[i + idx[t]], F.mul(ai, lb[t]));
  }
  return FPoly(std::move(r));
}

unsigned bitlen(unsigned long long v) {
  unsigned b = 0;
  while (v) { ++b; v >>= 1; }
  return b;
}

// Pack digits of each coefficient into slots of width b bits, 2k-1 slots per coefficient.
void pack(const GField& F, const FPoly& a, unsigned b, std::vector<mp_limb_t>& out) {
  u32 k = F.degree(), p = F.p();
  std::size_t slots = a.c.size() * (2 * k - 1);
  std::size_t nbits = slots * b + 64;
  out.assign(nbits / 64 + 2, 0);
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    u32 x = a.c[i];
    for (u32 j = 0; j < k && x; ++j) {
      u32 d = x % p;
      x /= p;
      if (!d) continue;
      std::size_t off = (i * (2 * k - 1) + j) * b;
      std::size_t w = off / 64, s = off % 64;
      out[w] |= mp_limb_t(d) << s;
      if (s && s + bitlen(d) > 64) out[w + 1] |= mp_limb_t(d) >> (64 - s);
    }
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
}

FPoly mul_kronecker(const GField& F, const FPoly& a, const FPoly& b) {
  u32 k = F.degree(), p = F.p();
  unsigned long long maxv = (unsigned long long)std::min(a.c.size(), b.c.size()) * k * (p - 1) * (p - 1);
  unsigned bw = bitlen(maxv) + 0;
  if (bw < 1) bw = 1;
  std::vector<mp_limb_t> pa, pb;
  pack(F, a, bw, pa);
  pack(F, b, bw, pb);
  if (pa.empty() || pb.empty()) return FPoly();
  std::vector<mp_limb_t> pr(pa.size() + pb.size() + 1, 0);
  if (pa.size() >= pb.size())
    mpn_mul(pr.data(), pa.data(), mp_size_t(pa.size()), pb.data(), mp_size_t(pb.size()));
  else
    mpn_mul(pr.data(), pb.data(), mp_size_t(pb.size()), pa.data(), mp_size_t(pa.size()));
  std::size_t n = a.c.size() + b.c.size() - 1;
  std::vector<u32> r(n, 0);
  std::vector<u32> ypow(2 * k - 1, 0);
  for (u32 j = 0; j < 2 * k - 1; ++j) ypow[j] = F.gen_pow(j);
  std::vector<u32> pw(k, 1);
  for (u32 j = 1; j < k; ++j) pw[j] = pw[j - 1] * p;
  mp_limb_t mask = bw >= 64 ? ~mp_limb_t(0) : ((mp_limb_t(1) << bw) - 1);
  for (std::size_t i = 0; i < n; ++i) {
    u32 low = 0, acc = 0;
    for (u32 j = 0; j < 2 * k - 1; ++j) {
      std::size_t off = (i * (2 * k - 1) + j) * bw;
      std::size_t w = off / 64, s = off % 64;
      if (w >= pr.size()) break;
      mp_limb_t v = pr[w] >> s;
      if (s && s + bw > 64 && w + 1 < pr.size()) v |= pr[w + 1] << (64 - s);
      v &= mask;
      u32 d = u32(v % p);
      if (!d) continue;
      if (j < k)
        low += d * pw[j];
      else
        acc = F.add(acc, F.mul(F.from_int(d), ypow[j]));
    }
    r[i] = F.add(low, acc);
  }
  return FPoly(std::move(r));
}

}  // namespace

FPoly mul(const GField& F, const FPoly& a, const FPoly& b) {
  if (a.is_zero() || b.is_zero()) return FPoly();
  std::size_t na = a.nnz(), nb = b.nnz();
  if (std::min(na, nb) <= 24 || std::min(a.c.size(), b.c.size()) <= 48) return mul_school(F, a, b);
  return mul_kronecker(F, a, b);
}

FPoly product(const GField& F, std::vector<FPoly> fs) {
  if (fs.empty()) return FPoly::constant(1);
  auto cmp = [](const FPoly& x, const FPoly& y) { return x.c.size() > y.c.size(); };
  std::priority_queue<FPoly, std::vector<FPoly>, decltype(cmp)> pq(cmp);
  for (auto& f : fs) {
    if (f.is_zero()) return FPoly();
    pq.push(std::move(f));
  }
  while (pq.size() > 1) {
    FPoly x = pq.top();
    pq.pop();
    FPoly y = pq.top();
    pq.pop();
    pq.push(mul(F, x, y));
  }
  return pq.top();
}

FPoly truncate(const FPoly& a, std::size_t n) {
  if (a.c.size() <= n) return a;
  return FPoly(std::vector<u32>(a.c.begin(), a.c.begin() + long(n)));
}

void divrem(const GField& F, const FPoly& a, const FPoly& b, FPoly& q, FPoly& r) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  if (a.deg() < b.deg()) {
    q = FPoly();
    r = a;
    return;
  }
  std::vector<u32> rem = a.c;
  std::size_t db = b.c.size() - 1;
  std::vector<u32> quo(a.c.size() - db, 0);
  u32 il = F.inv(b.lc());
  std::vector<std::size_t> idx;
  for (std::size_t j = 0; j < db; ++j)
    if (b.c[j]) idx.push_back(j);
  for (std::size_t i = rem.size(); i-- > db;) {
    u32 c = rem[i];
    if (!c) continue;
    u32 t = F.mul(c, il);
    quo[i - db] = t;
    rem[i] = 0;
    u32 nt = F.neg(t);
    for (std::size_t j : idx) rem[i - db + j] = F.add(rem[i - db + j], F.mul(nt, b.c[j]));
  }
  rem.resize(db);
  q = FPoly(std::move(quo));
  r = FPoly(std::move(rem));
}

bool divides(const GField& F, const FPoly& b, const FPoly& a, FPoly* quotient) {
  FPoly q, r;
  divrem(F, a, b, q, r);
  if (!r.is_zero()) return false;
  if (quotient) *quotient = std::move(q);
  return true;
}

u32 eval(const GField& F, const FPoly& a, u32 x) {
  u32 acc = 0;
  for (std::size_t i = a.c.size(); i-- > 0;) acc = F.add(F.mul(acc, x), a.c[i]);
  return acc;
}

FPoly monic(const GField& F, const FPoly& a) {
  if (a.is_zero() || a.lc() == 1) return a;
  return scale(F, a, F.inv(a.lc()));
}

FPoly frob_spread(const GField& F, const FPoly& a, unsigned j) {
  if (a.is_zero() || j == 0) return a;
  std::size_t pj = 1;
  for (unsigned i = 0; i < j; ++i) pj *= F.p();
  std::vector<u32> r((a.c.size() - 1) * pj + 1, 0);
  for (std::size_t i = 0; i < a.c.size(); ++i)
    if (a.c[i]) r[i * pj] = F.frob(a.c[i], j);
  return FPoly(std::move(r));
}

FPoly frob_coeffs(const GField& F, const FPoly& a, long j) {
  FPoly r = a;
  for (auto& x : r.c) x = F.frob(x, j);
  return r;
}

FPoly pow(const GField& F, const FPoly& a, unsigned long long e) {
  std::vector<FPoly> fs;
  unsigned j = 0;
  while (e) {
    unsigned d = unsigned(e % F.p());
    e /= F.p();
    if (d) {
      FPoly s = frob_spread(F, a, j);
      for (unsigned t = 0; t < d; ++t) fs.push_back(s);
    }
    ++j;
  }
  return product(F, std::move(fs));
}

unsigned pth_power_depth(const FPoly& a, u32 p) {
  if (a.deg() <= 0) return 0;
  std::size_t g = 0;
  for (std::size_t i = 1; i < a.c.size(); ++i)
    if (a.c[i]) g = std::__gcd(g, i);
  unsigned j = 0;
  while (g % p == 0) { g /= p; ++j; }
  return j;
}

FPoly deriv(const GField& F, const FPoly& a) {
  if (a.c.size() <= 1) return FPoly();
  std::vector<u32> r(a.c.size() - 1);
  for (std::size_t i = 1; i < a.c.size(); ++i) r[i - 1] = F.mul(a.c[i], F.from_int(i64(i % F.p())));
  return FPoly(std::move(r));
}

long ord_at(const GField& F, const FPoly& a, u32 x) {
  if (a.is_zero()) throw DomainError("order of the zero polynomial");
  std::vector<u32> cur = a.c;
  long n = 0;
  for (;;) {
    // synthetic division by (θ - x)
    std::size_t m = cur.size();
    if (m <= 1) return n;
    std::vector<u32> q(m - 1);
    u32 acc = 0;
    for (std::size_t i = m; i-- > 0;) {
      acc = F.add(F.mul(acc, x), cur[i]);
      if (i > 0) q[i - 1] = acc;
    }
    if (acc) return n;
    ++n;
    cur = std::move(q);
  }
}

FPoly taylor_shift(const GField& F, const FPoly& a, u32 x) {
  std::vector<u32> c = a.c;
  std::size_t n = c.size();
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = n - 1; j > i; --j) c[j - 1] = F.add(c[j - 1], F.mul(x, c[j]));
  return FPoly(std::move(c));
}

}  // namespace fp
}  // namespace dmod
