#include "dmod/gf.hpp"

#include <numeric>

namespace dmod {

std::pair<u32, u32> prime_power(u32 q) {
  if (q < 2) throw ParameterError("q must be a prime power, got " + std::to_string(q));
  u32 p = 0;
  for (u32 d = 2; d * d <= q; ++d)
    if (q % d == 0) { p = d; break; }
  if (!p) return {q, 1};
  u32 e = 0, r = q;
  while (r % p == 0) { r /= p; ++e; }
  if (r != 1) throw ParameterError("q must be a prime power, got " + std::to_string(q));
  return {p, e};
}

namespace {

// Multiply the digit vector v (length k) by y modulo y^k + Σ m_j y^j.
void times_y(std::vector<u32>& v, const std::vector<u32>& m, u32 p) {
  u32 k = u32(v.size());
  u32 top = v[k - 1];
  for (u32 j = k - 1; j > 0; --j) v[j] = v[j - 1];
  v[0] = 0;
  if (top)
    for (u32 j = 0; j < k; ++j) v[j] = (v[j] + (p - (top * m[j]) % p)) % p;
}

u32 encode(const std::vector<u32>& v, u32 p) {
  u32 r = 0;
  for (u32 j = u32(v.size()); j-- > 0;) r = r * p + v[j];
  return r;
}

bool is_primitive(u32 p, u32 k, const std::vector<u32>& m, u32 size) {
  std::vector<u32> v(k, 0);
  if (k == 1) {
    // y = -m[0] in F_p
    u32 g = (p - m[0]) % p, cur = 1;
    for (u32 i = 1; i < size - 1; ++i) {
      cur = cur * g % p;
      if (cur == 1) return false;
    }
    return cur * g % p == 1;
  }
  v[0] = 1;
  for (u32 i = 1; i < size; ++i) {
    times_y(v, m, p);
    u32 enc = encode(v, p);
    if (enc == 1) return i == size - 1;
    if (enc == 0) return false;
  }
  return false;
}

}  // namespace

GField GField::primitive(u32 p, u32 k) {
  double sz = 1;
  for (u32 i = 0; i < k; ++i) sz *= p;
  if (sz > double(Tower::kMaxFieldSize))
    throw ParameterError("finite field of size " + std::to_string(p) + "^" + std::to_string(k) + " exceeds the table cap");
  u32 size = u32(sz);
  for (u32 c = 1; c < size; ++c) {
    std::vector<u32> m(k);
    u32 x = c;
    for (u32 j = 0; j < k; ++j) { m[j] = x % p; x /= p; }
    if (m[0] == 0) continue;
    if (is_primitive(p, k, m, size)) {
      m.push_back(1);
      return GField(p, k, m);
    }
  }
  if (size == 2) return GField(2, 1, {1, 1});
  throw ParameterError("no primitive modulus found");
}

GField::GField(u32 p, u32 k, std::vector<u32> mod) : p_(p), k_(k), mod_(std::move(mod)) {
  size_ = 1;
  for (u32 i = 0; i < k; ++i) size_ *= p;
  u32 n = size_ - 1;
  exp_.assign(2 * size_, 0);
  log_.assign(size_, 0);
  std::vector<u32> low(mod_.begin(), mod_.begin() + k);
  if (k == 1) {
    u32 g = (p - low[0]) % p, cur = 1;
    for (u32 i = 0; i < n; ++i) { exp_[i] = cur; log_[cur] = i; cur = cur * g % p; }
  } else {
    std::vector<u32> v(k, 0);
    v[0] = 1;
    for (u32 i = 0; i < n; ++i) {
      u32 enc = encode(v, p);
      exp_[i] = enc;
      log_[enc] = i;
      times_y(v, low, p);
    }
  }
  for (u32 i = n; i < 2 * size_; ++i) exp_[i] = exp_[i - n];
  if (p_ != 2) {
    // zech_[d] = log(1 + y^d), or -1 when 1 + y^d = 0.
    zech_.assign(n, -1);
    for (u32 d = 0; d < n; ++d) {
      u32 a = exp_[d], r = 0, mulp = 1;
      bool carry_one = true;
      for (u32 j = 0; j < k; ++j) {
        u32 dj = a % p + (carry_one ? 1 : 0);
        carry_one = false;
        a /= p;
        r += (dj % p) * mulp;
        mulp *= p;
      }
      zech_[d] = r ? i64(log_[r]) : -1;
    }
  }
}

u32 GField::pow(u32 a, i64 e) const {
  if (!a) {
    if (e == 0) return 1;
    if (e < 0) throw DomainError("negative power of zero");
    return 0;
  }
  i64 n = size_ - 1;
  i64 r = ((i64(log_[a]) * (e % n)) % n + n) % n;
  return exp_[r];
}

u32 GField::frob(u32 a, i64 j) const {
  if (!a) return 0;
  i64 k = k_;
  j = ((j % k) + k) % k;
  i64 n = size_ - 1, pj = 1;
  for (i64 i = 0; i < j; ++i) pj = (pj * p_) % n;
  return exp_[(i64(log_[a]) * pj) % n];
}

u32 GField::gen_pow(i64 e) const {
  i64 n = size_ - 1;
  return exp_[((e % n) + n) % n];
}

u32 GField::digit(u32 a, u32 j) const {
  for (u32 i = 0; i < j; ++i) a /= p_;
  return a % p_;
}

Tower::Tower(u32 q, u32 N) : q_(q), N_(N) {
  auto [p, e] = prime_power(q);
  p_ = p;
  e_ = e;
  if (N < 1) throw ParameterError("N must be positive");
  build(0);
  build(1);
}

void Tower::build(u32 m) const {
  // Caller holds no lock on first two builds (constructor); later calls come via level().
  if (levels_.count(m)) return;
  u32 k = m == 0 ? e_ : e_ * N_ * m;
  auto f = std::make_unique<GField>(GField::primitive(p_, k));
  const GField& L = *f;
  levels_[m] = std::move(f);
  if (m == 0) return;
  // Image of the level-0 generator: smallest root of its modulus (m = 1), else through level 1.
  const GField& F0 = *levels_.at(0);
  // Evaluate a polynomial with prime-field coefficients at x ∈ F.
  auto eval = [&](const std::vector<u32>& poly, u32 x, const GField& F, const GField&) {
    u32 acc = 0;
    for (u32 j = u32(poly.size()); j-- > 0;) acc = F.add(F.mul(acc, x), F.from_int(poly[j]));
    return acc;
  };
  if (m == 1) {
    gen_image_[1] = L.degree() == 1 ? L.gen_pow(1) : p_;  // y is encoded as p
    u32 r = 0;
    if (F0.degree() == 1) {
      r = L.from_int(F0.gen_pow(1));
    } else {
      for (u32 x = 1; x < L.size(); ++x)
        if (eval(F0.modulus(), x, L, F0) == 0) { r = x; break; }
    }
    q_gen_[1] = r;
    return;
  }
  // Level m: choose image s of the level-1 generator (smallest root of its modulus).
  const GField& L1 = *levels_.at(1);
  u32 s = 0;
  for (u32 x = 1; x < L.size(); ++x)
    if (eval(L1.modulus(), x, L, L1) == 0) { s = x; break; }
  if (!s) throw ParameterError("tower embedding failed");
  gen_image_[m] = s;
  // level-0 generator image = image of q_gen_[1] under level1->m
  u32 g1 = q_gen_[1];
  q_gen_[m] = g1 ? L.pow(s, L1.log(g1)) : 0;
}

const GField& Tower::level(u32 m) const {
  std::lock_guard<std::mutex> lk(mu_);
  build(m);
  return *levels_.at(m);
}

u32 Tower::embed(u32 x, u32 a, u32 b) const {
  if (a == b || x == 0) return x;
  const GField& A = level(a);
  const GField& B = level(b);
  if (a == 0) {
    if (A.degree() == 1) return B.from_int(x);
    u32 g;
    {
      std::lock_guard<std::mutex> lk(mu_);
      g = q_gen_.at(b);
    }
    return B.pow(g, A.log(x));
  }
  if (b % a != 0) throw DomainError("embedding between incompatible tower levels");
  u32 s;
  if (a == 1) {
    std::lock_guard<std::mutex> lk(mu_);
    s = gen_image_.at(b);
  } else {
    std::lock_guard<std::mutex> lk(mu_);
    auto key = std::make_pair(a, b);
    auto it = emb_cache_.find(key);
    if (it != emb_cache_.end()) {
      s = it->second[0];
    } else {
      s = 0;
      // Root of the level-a modulus compatible with the level-1 images.
      u32 y1a = gen_image_.at(a), y1b = gen_image_.at(b);
      const auto& moda = A.modulus();
      for (u32 x = 1; x < B.size() && !s; ++x) {
        u32 acc = 0;
        for (u32 j = u32(moda.size()); j-- > 0;) acc = B.add(B.mul(acc, x), B.from_int(moda[j]));
        if (acc) continue;
        if (B.pow(x, A.log(y1a)) == y1b) s = x;
      }
      if (!s) throw ParameterError("tower embedding failed");
      emb_cache_[key] = {s};
    }
  }
  return B.pow(s, A.log(x));
}

u32 Tower::root_level(u32 c, u32 m) const {
  if (!c) return m;
  for (u32 d = m;; d += m) {
    double sz = 1;
    for (u32 i = 0; i < e_ * N_ * d; ++i) sz *= p_;
    if (sz > double(kMaxFieldSize)) throw DomainError("(q-1)-th root needs a field beyond the table cap");
    const GField& L = level(d);
    u32 x = embed(c, m, d);
    if (L.log(x) % (q_ - 1) == 0) return d;
  }
}

u32 Tower::root_q_minus_1(u32 c, u32 m, u32* out_level) const {
  u32 d = root_level(c, m);
  if (out_level) *out_level = d;
  if (!c) return 0;
  const GField& L = level(d);
  u32 x = embed(c, m, d);
  u32 n = L.size() - 1, base = L.log(x) / (q_ - 1), step = n / (q_ - 1);
  u32 best = 0;
  for (u32 i = 0; i < q_ - 1; ++i) {
    u32 r = L.gen_pow(i64(base) + i64(i) * step);
    if (!best || r < best) best = r;
  }
  return best;
}

}  // namespace dmod
