#pragma once
/**
 * @file gf.hpp
 * @brief Finite fields F_{p^k} with log/exp tables and the tower F_q ⊂ F_{q^N} ⊂ F_{q^{Nm}}.
 *
 * An element is stored as the integer Σ d_j p^j, where Σ d_j y^j is its residue
 * modulo the field's primitive modulus. Zero is 0 and one is 1.
 */

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace dmod {

using u32 = std::uint32_t;
using i64 = std::int64_t;

/// Thrown for invalid construction parameters (bad q, reducible ρ, ...).
struct ParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Thrown when an operation is outside its domain (division by zero, pole, ...).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

/// F_{p^k} built on a primitive modulus.
class GField {
 public:
  /// Smallest primitive modulus of degree k over F_p (lexicographic on digits).
  static GField primitive(u32 p, u32 k);

  u32 p() const { return p_; }
  u32 degree() const { return k_; }
  u32 size() const { return size_; }
  const std::vector<u32>& modulus() const { return mod_; }

  u32 add(u32 a, u32 b) const {
    if (p_ == 2) return a ^ b;
    if (!a) return b;
    if (!b) return a;
    u32 d = log_[b] >= log_[a] ? log_[b] - log_[a] : log_[b] + (size_ - 1) - log_[a];
    i64 z = zech_[d];
    if (z < 0) return 0;
    return exp_[log_[a] + u32(z)];
  }
  u32 neg(u32 a) const { return (p_ == 2 || !a) ? a : exp_[log_[a] + (size_ - 1) / 2]; }
  u32 sub(u32 a, u32 b) const { return add(a, neg(b)); }
  u32 mul(u32 a, u32 b) const { return (a && b) ? exp_[log_[a] + log_[b]] : 0; }
  u32 inv(u32 a) const {
    if (!a) throw DomainError("inverse of zero in finite field");
    return exp_[(size_ - 1 - log_[a]) % (size_ - 1)];
  }
  u32 div(u32 a, u32 b) const { return mul(a, inv(b)); }
  u32 pow(u32 a, i64 e) const;
  /// a^(p^j); j may be negative.
  u32 frob(u32 a, i64 j) const;
  u32 log(u32 a) const { return log_[a]; }
  u32 gen_pow(i64 e) const;
  /// Image of the integer n in the prime field.
  u32 from_int(i64 n) const { return u32(((n % i64(p_)) + p_) % p_); }
  u32 digit(u32 a, u32 j) const;
  /// True when a lies in the subfield of size p^d.
  bool in_subfield(u32 a, u32 d) const { return frob(a, d) == a; }

 private:
  GField(u32 p, u32 k, std::vector<u32> mod);
  u32 p_, k_, size_;
  std::vector<u32> mod_;
  std::vector<u32> exp_, log_;
  std::vector<i64> zech_;
};

/**
 * Tower over F_q with q = p^e. Level 0 is F_q, level m ≥ 1 is F_{q^{Nm}}.
 * Levels are built on demand; embeddings between levels are compatible.
 */
class Tower {
 public:
  Tower(u32 q, u32 N);

  u32 p() const { return p_; }
  u32 e() const { return e_; }
  u32 q() const { return q_; }
  u32 N() const { return N_; }

  const GField& level(u32 m) const;
  /// Embed x from level a into level b (a = 0, or a divides b).
  u32 embed(u32 x, u32 a, u32 b) const;
  /// Smallest d ≥ 1 with m | d such that c (at level m) has a (q-1)-th root at level d.
  u32 root_level(u32 c, u32 m) const;
  /// Smallest-encoding (q-1)-th root of c, at level root_level(c, m).
  u32 root_q_minus_1(u32 c, u32 m, u32* out_level = nullptr) const;
  /// Level whose field has size at most the cap.
  static constexpr u32 kMaxFieldSize = 1u << 22;

 private:
  void build(u32 m) const;
  u32 p_, e_, q_, N_;
  mutable std::mutex mu_;
  mutable std::map<u32, std::unique_ptr<GField>> levels_;
  // gen_image_[m] = image of the level-1 generator at level m (m ≥ 1); q_gen_[m] = image of level-0 generator.
  mutable std::map<u32, u32> gen_image_, q_gen_;
  mutable std::map<std::pair<u32, u32>, std::vector<u32>> emb_cache_;
};

/// Returns (p, e) with q = p^e or throws ParameterError.
std::pair<u32, u32> prime_power(u32 q);

}  // namespace dmod
