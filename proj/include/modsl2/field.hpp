#pragma once

// Word-sized arithmetic in the prime field GF(p), p an odd prime below 2^16.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <vector>

#include "modsl2/error.hpp"

namespace modsl2 {

inline constexpr std::uint32_t kMaxModulus = 1u << 16;

constexpr bool is_odd_prime(std::uint64_t p) {
  if (p < 3 || p % 2 == 0) return false;
  for (std::uint64_t d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

inline void require_modulus(std::uint32_t p) {
  if (!is_odd_prime(p) || p >= kMaxModulus)
    throw Error(Errc::InvalidModulus, "modulus must be an odd prime below 65536, got " + std::to_string(p));
}

/// Table of multiplicative inverses for GF(p); entry 0 is unused. Tables are
/// built once per modulus and live for the rest of the process.
inline const std::vector<std::uint32_t>& inverse_table(std::uint32_t p) {
  static std::mutex mu;
  static std::map<std::uint32_t, std::unique_ptr<const std::vector<std::uint32_t>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(p);
  if (it != cache.end()) return *it->second;
  require_modulus(p);
  auto table = std::make_unique<std::vector<std::uint32_t>>(p, 0);
  (*table)[1] = 1;
  for (std::uint32_t a = 2; a < p; ++a)
    (*table)[a] = static_cast<std::uint32_t>((p - static_cast<std::uint64_t>(p / a) * (*table)[p % a] % p) % p);
  auto& ref = *table;
  cache.emplace(p, std::move(table));
  return ref;
}

constexpr std::uint32_t reduce(long long v, std::uint32_t p) {
  long long r = v % static_cast<long long>(p);
  return static_cast<std::uint32_t>(r < 0 ? r + p : r);
}

constexpr std::uint32_t add_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  std::uint32_t s = a + b;
  return s >= p ? s - p : s;
}
constexpr std::uint32_t sub_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return a >= b ? a - b : a + p - b;
}
constexpr std::uint32_t neg_mod(std::uint32_t a, std::uint32_t p) { return a == 0 ? 0 : p - a; }
constexpr std::uint32_t mul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p);
}
constexpr std::uint32_t pow_mod(std::uint32_t a, std::uint64_t e, std::uint32_t p) {
  std::uint32_t r = 1 % p;
  while (e) {
    if (e & 1) r = mul_mod(r, a, p);
    a = mul_mod(a, a, p);
    e >>= 1;
  }
  return r;
}
inline std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  if (a % p == 0) throw Error(Errc::NotInvertible, "zero has no inverse");
  return inverse_table(p)[a % p];
}

/// An element of GF(p). The modulus travels with the value.
class Fp {
 public:
  Fp(long long value, std::uint32_t p) : v_(reduce(value, p)), p_(p) { require_modulus(p); }

  std::uint32_t value() const { return v_; }
  std::uint32_t modulus() const { return p_; }

  /// Representative in (-p/2, p/2].
  long long centered() const { return v_ > p_ / 2 ? static_cast<long long>(v_) - p_ : v_; }

  friend Fp operator+(Fp a, Fp b) { check(a, b); return raw(add_mod(a.v_, b.v_, a.p_), a.p_); }
  friend Fp operator-(Fp a, Fp b) { check(a, b); return raw(sub_mod(a.v_, b.v_, a.p_), a.p_); }
  friend Fp operator*(Fp a, Fp b) { check(a, b); return raw(mul_mod(a.v_, b.v_, a.p_), a.p_); }
  friend Fp operator/(Fp a, Fp b) { check(a, b); return raw(mul_mod(a.v_, inv_mod(b.v_, a.p_), a.p_), a.p_); }
  Fp operator-() const { return raw(neg_mod(v_, p_), p_); }
  Fp inverse() const { return raw(inv_mod(v_, p_), p_); }
  Fp pow(std::uint64_t e) const { return raw(pow_mod(v_, e, p_), p_); }

  friend bool operator==(Fp a, Fp b) { return a.v_ == b.v_ && a.p_ == b.p_; }
  friend std::ostream& operator<<(std::ostream& os, Fp a) { return os << a.v_; }

 private:
  struct RawTag {};
  Fp(std::uint32_t v, std::uint32_t p, RawTag) : v_(v), p_(p) {}
  static Fp raw(std::uint32_t v, std::uint32_t p) { return Fp(v, p, RawTag{}); }
  static void check(Fp a, Fp b) {
    if (a.p_ != b.p_) throw Error(Errc::ModulusMismatch, "field elements over different primes");
  }

  std::uint32_t v_;
  std::uint32_t p_;
};

}  // namespace modsl2
