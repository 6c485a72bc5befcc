#pragma once
/**
 * @file sigma.hpp
 * @brief Exponents in Z[σ]/(σ^N - 1), used for twisted powers Θ^{Σ a_k σ^k}.
 */

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace dmod {

class SigmaExp {
 public:
  SigmaExp() = default;
  explicit SigmaExp(unsigned N) : a_(N, 0) {}
  /// c·σ^k
  static SigmaExp mono(unsigned N, long k, std::int64_t c = 1) {
    SigmaExp s(N);
    s.a_[std::size_t(((k % long(N)) + long(N)) % long(N))] = c;
    return s;
  }
  static SigmaExp scalar(unsigned N, std::int64_t c) { return mono(N, 0, c); }

  unsigned N() const { return unsigned(a_.size()); }
  std::int64_t operator[](std::size_t k) const { return a_[k]; }
  std::int64_t& operator[](std::size_t k) { return a_[k]; }
  const std::vector<std::int64_t>& coeffs() const { return a_; }

  SigmaExp operator+(const SigmaExp& o) const {
    check(o);
    SigmaExp r = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
    return r;
  }
  SigmaExp operator-(const SigmaExp& o) const { return *this + o * std::int64_t(-1); }
  SigmaExp operator-() const { return *this * std::int64_t(-1); }
  SigmaExp operator*(std::int64_t c) const {
    SigmaExp r = *this;
    for (auto& x : r.a_) x *= c;
    return r;
  }
  SigmaExp operator*(const SigmaExp& o) const {
    check(o);
    unsigned n = N();
    SigmaExp r(n);
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = 0; j < n; ++j) r.a_[(i + j) % n] += a_[i] * o.a_[j];
    return r;
  }
  /// σ^k · this
  SigmaExp shift(long k) const { return *this * mono(N(), k); }
  bool operator==(const SigmaExp& o) const { return a_ == o.a_; }
  /// Value at σ = 1, i.e. the total degree of the twisted power.
  std::int64_t total() const {
    std::int64_t s = 0;
    for (auto x : a_) s += x;
    return s;
  }

 private:
  void check(const SigmaExp& o) const {
    if (o.a_.size() != a_.size()) throw std::invalid_argument("SigmaExp size mismatch");
  }
  std::vector<std::int64_t> a_;
};

inline std::int64_t ipow(std::int64_t b, unsigned e) {
  std::int64_t r = 1;
  while (e--) r *= b;
  return r;
}

/// W_i = (q^i - 1)/(q - 1); W_i for negative i is not used.
inline std::int64_t W(std::int64_t q, unsigned i) { return (ipow(q, i) - 1) / (q - 1); }

/// γ_k = Σ_{i<k} q^i σ^{k-1-i}
inline SigmaExp gamma(unsigned N, std::int64_t q, unsigned k) {
  SigmaExp s(N);
  for (unsigned i = 0; i < k; ++i) s = s + SigmaExp::mono(N, long(k) - 1 - long(i), ipow(q, i));
  return s;
}

/// Σ_{l=i}^{j-1} σ^l
inline SigmaExp sigma_run(unsigned N, long i, long j) {
  SigmaExp s(N);
  for (long l = i; l < j; ++l) s = s + SigmaExp::mono(N, l);
  return s;
}

}  // namespace dmod
