#pragma once

// The quotient of U(sl2) by e^{p-1} and f^{p-1}, realized through its action
// on V(0) + V(1) + ... + V(p-2). Elements are tuples of blocks, one per V(d).

#include <cstdint>
#include <vector>

#include "modsl2/error.hpp"
#include "modsl2/field.hpp"
#include "modsl2/linalg.hpp"
#include "modsl2/matrix.hpp"
#include "modsl2/sl2_module.hpp"

namespace modsl2 {

/// f^a h^b e^c.
struct Monomial {
  int a = 0, b = 0, c = 0;
  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

inline Monomial sigma(const Monomial& m) { return {m.c, m.b, m.a}; }

/// Block-diagonal action on V(0) + ... + V(p-2), blocks in increasing d.
struct RegularImage {
  std::uint32_t p = 3;
  std::vector<FieldMatrix> blocks;

  /// Concatenated row-major blocks; length sum_{i=1}^{p-1} i^2.
  Vec flatten() const {
    Vec v;
    for (const auto& b : blocks) v.insert(v.end(), b.data().begin(), b.data().end());
    return v;
  }

  friend RegularImage operator+(const RegularImage& x, const RegularImage& y) { return zip(x, y, [](auto& a, auto& b) { return a + b; }); }
  friend RegularImage operator-(const RegularImage& x, const RegularImage& y) { return zip(x, y, [](auto& a, auto& b) { return a - b; }); }
  friend RegularImage operator*(const RegularImage& x, const RegularImage& y) { return zip(x, y, [](auto& a, auto& b) { return a * b; }); }
  RegularImage scaled_signed(long long s) const {
    RegularImage r{p, {}};
    for (const auto& b : blocks) r.blocks.push_back(b.scaled_signed(s));
    return r;
  }
  bool is_zero() const {
    for (const auto& b : blocks)
      if (!b.is_zero()) return false;
    return true;
  }
  friend bool operator==(const RegularImage&, const RegularImage&) = default;

 private:
  template <class Op>
  static RegularImage zip(const RegularImage& x, const RegularImage& y, Op op) {
    if (x.p != y.p || x.blocks.size() != y.blocks.size()) throw Error(Errc::ModulusMismatch, "images over different primes");
    RegularImage r{x.p, {}};
    for (std::size_t i = 0; i < x.blocks.size(); ++i) r.blocks.push_back(op(x.blocks[i], y.blocks[i]));
    return r;
  }
};

/// Caches powers of the generators on each V(d) for repeated monomial evaluation.
class RegularRealization {
 public:
  explicit RegularRealization(std::uint32_t p) : p_(p) {
    require_modulus(p);
    for (int d = 0; d + 2 <= static_cast<int>(p); ++d) modules_.push_back(simple_module(d, p));
  }

  std::uint32_t modulus() const { return p_; }

  /// Length of the flattened image vector.
  std::size_t vector_length() const {
    std::size_t n = 0;
    for (const auto& m : modules_) n += m.dim() * m.dim();
    return n;
  }

  RegularImage image(const Monomial& m) const {
    if (m.a < 0 || m.b < 0 || m.c < 0) throw Error(Errc::DimensionMismatch, "negative exponent");
    RegularImage r{p_, {}};
    for (const auto& mod : modules_) r.blocks.push_back(mod.F().pow(m.a) * mod.H().pow(m.b) * mod.E().pow(m.c));
    return r;
  }

  RegularImage e() const { return image({0, 0, 1}); }
  RegularImage h() const { return image({0, 1, 0}); }
  RegularImage f() const { return image({1, 0, 0}); }
  RegularImage one() const { return image({0, 0, 0}); }

  /// Rank of the span of the images of `ms`.
  std::size_t span_rank(const std::vector<Monomial>& ms) const {
    if (ms.empty()) return 0;
    FieldMatrix rows(ms.size(), vector_length(), p_);
    for (std::size_t i = 0; i < ms.size(); ++i) {
      const Vec v = image(ms[i]).flatten();
      for (std::size_t j = 0; j < v.size(); ++j) rows.set(i, j, v[j]);
    }
    return rank(rows);
  }

  /// Whether `x` lies in the span of the images of `ms`.
  bool in_span(const RegularImage& x, const std::vector<Monomial>& ms) const {
    const std::size_t r = span_rank(ms);
    FieldMatrix rows(ms.size() + 1, vector_length(), p_);
    for (std::size_t i = 0; i <= ms.size(); ++i) {
      const Vec v = i < ms.size() ? image(ms[i]).flatten() : x.flatten();
      for (std::size_t j = 0; j < v.size(); ++j) rows.set(i, j, v[j]);
    }
    return rank(rows) == r;
  }

 private:
  std::uint32_t p_;
  std::vector<Sl2Module> modules_;
};

inline RegularImage monomial_image(const Monomial& m, std::uint32_t p) { return RegularRealization(p).image(m); }

/// sum_{i=1}^{p-1} i^2.
constexpr std::uint64_t expected_dimension_of_A(std::uint64_t p) { return (p - 1) * p * (2 * p - 1) / 6; }

/// Rank of {f^a h^b e^c : a, c < p-1, b < B}, with B = 2p doubled until the
/// rank repeats.
inline std::size_t dimension_of_A(std::uint32_t p) {
  const RegularRealization real(p);
  const int top = static_cast<int>(p) - 1;
  auto rank_for = [&](int bmax) {
    std::vector<Monomial> ms;
    for (int a = 0; a < top; ++a)
      for (int b = 0; b < bmax; ++b)
        for (int c = 0; c < top; ++c) ms.push_back({a, b, c});
    return real.span_rank(ms);
  };
  int bmax = 2 * static_cast<int>(p);
  std::size_t prev = rank_for(bmax);
  while (true) {
    bmax *= 2;
    const std::size_t next = rank_for(bmax);
    if (next == prev) return next;
    prev = next;
  }
}

/// S = union over k <= p-2 of {f^a h^k e^c : a, c < p-1-k}.
inline std::vector<Monomial> basis_S(std::uint32_t p) {
  std::vector<Monomial> s;
  const int pm = static_cast<int>(p);
  for (int k = 0; k <= pm - 2; ++k)
    for (int a = 0; a < pm - 1 - k; ++a)
      for (int c = 0; c < pm - 1 - k; ++c) s.push_back({a, k, c});
  return s;
}

/// S is independent and spans the realization.
inline bool verify_basis_S(std::uint32_t p) {
  const auto s = basis_S(p);
  const RegularRealization real(p);
  const std::size_t r = real.span_rank(s);
  return r == s.size() && r == dimension_of_A(p);
}

/// For 1 <= k <= kmax:
///   [e^k, h] = -2k e^k,
///   [e^k, f] = k h e^{k-1} - k(k-1) e^{k-1},
///   [h^k, f] lies in span{f h^i : i < k}.
inline bool check_power_relations(std::uint32_t p, int kmax) {
  if (kmax >= static_cast<int>(p)) throw Error(Errc::DOutOfRange, "kmax must be below p");
  const RegularRealization real(p);
  const RegularImage e = real.e(), h = real.h(), f = real.f();
  for (int k = 1; k <= kmax; ++k) {
    const RegularImage ek = real.image({0, 0, k});
    const RegularImage ekm1 = real.image({0, 0, k - 1});
    const RegularImage hk = real.image({0, k, 0});
    if (!(ek * h - h * ek == ek.scaled_signed(-2LL * k))) return false;
    const RegularImage rhs = (h * ekm1).scaled_signed(k) - ekm1.scaled_signed(static_cast<long long>(k) * (k - 1));
    if (!(ek * f - f * ek == rhs)) return false;
    std::vector<Monomial> span;
    for (int i = 0; i < k; ++i) span.push_back({1, i, 0});
    if (!real.in_span(hk * f - f * hk, span)) return false;
  }
  return true;
}

}  // namespace modsl2
