#pragma once

// Matrix models of sl2-modules over GF(p): simples V(d), baby Vermas Z(d),
// duals and direct sums, together with Hom spaces and an isomorphism test.
//
// Convention: column j of an action matrix is the image of basis vector v_j.

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "modsl2/error.hpp"
#include "modsl2/field.hpp"
#include "modsl2/linalg.hpp"
#include "modsl2/matrix.hpp"
#include "modsl2/partition.hpp"

namespace modsl2 {

struct Sl2Triple {
  FieldMatrix e, h, f;

  std::uint32_t modulus() const { return e.modulus(); }
  std::size_t size() const { return e.rows(); }

  /// [h,e] = 2e, [h,f] = -2f, [e,f] = h.
  bool relations_hold() const {
    if (!e.square() || !(e.rows() == h.rows() && h.rows() == f.rows()) || !h.square() || !f.square()) return false;
    if (e.modulus() != h.modulus() || h.modulus() != f.modulus()) return false;
    return bracket(h, e) == e.scaled(2) && bracket(h, f) == f.scaled_signed(-2) && bracket(e, f) == h;
  }
  friend bool operator==(const Sl2Triple&, const Sl2Triple&) = default;
};

/// Conjugate every member of the triple by g.
inline Sl2Triple conjugate(const FieldMatrix& g, const Sl2Triple& t) {
  const FieldMatrix gi = inverse(g);
  return {g * t.e * gi, g * t.h * gi, g * t.f * gi};
}

class Sl2Module {
 public:
  /// Throws RelationsFail unless the actions satisfy the sl2 relations.
  Sl2Module(FieldMatrix e, FieldMatrix h, FieldMatrix f) : act_{std::move(e), std::move(h), std::move(f)} {
    if (!act_.relations_hold()) throw Error(Errc::RelationsFail, "actions do not satisfy the sl2 relations");
  }

  std::size_t dim() const { return act_.e.rows(); }
  std::uint32_t modulus() const { return act_.e.modulus(); }
  const FieldMatrix& E() const { return act_.e; }
  const FieldMatrix& H() const { return act_.h; }
  const FieldMatrix& F() const { return act_.f; }
  const Sl2Triple& actions() const { return act_; }

  friend bool operator==(const Sl2Module&, const Sl2Module&) = default;

 private:
  Sl2Triple act_;
};

/// The (d+1)-dimensional simple V(d), 0 <= d <= p-1. V(p-1) equals Z(p-1).
inline Sl2Module simple_module(int d, std::uint32_t p) {
  require_modulus(p);
  if (d < 0 || d > static_cast<int>(p) - 1)
    throw Error(Errc::DOutOfRange, "d must lie in [0, p-1], got " + std::to_string(d));
  const std::size_t n = static_cast<std::size_t>(d) + 1;
  FieldMatrix e(n, n, p), h(n, n, p), f(n, n, p);
  for (int i = 0; i <= d; ++i) {
    h.set_signed(i, i, d - 2 * i);
    if (i > 0) e.set_signed(i - 1, i, static_cast<long long>(i) * (d - i + 1));
    if (i < d) f.set(i + 1, i, 1);
  }
  return {std::move(e), std::move(h), std::move(f)};
}

/// The p-dimensional baby Verma module Z(d) with basis v_i = f^i (x) 1_d.
inline Sl2Module baby_verma(Fp d, std::uint32_t p) {
  require_modulus(p);
  if (d.modulus() != p) throw Error(Errc::ModulusMismatch, "highest weight over a different prime");
  const long long dv = d.value();
  FieldMatrix e(p, p, p), h(p, p, p), f(p, p, p);
  for (std::uint32_t i = 0; i < p; ++i) {
    h.set_signed(i, i, dv - 2 * static_cast<long long>(i));
    if (i > 0) e.set_signed(i - 1, i, static_cast<long long>(i) * (dv - i + 1));
    if (i + 1 < p) f.set(i + 1, i, 1);
  }
  return {std::move(e), std::move(h), std::move(f)};
}

inline Sl2Module direct_sum(std::span<const Sl2Module> ms) {
  if (ms.empty()) throw Error(Errc::DimensionMismatch, "direct sum of no modules");
  const std::uint32_t p = ms[0].modulus();
  std::vector<FieldMatrix> es, hs, fs;
  for (const auto& m : ms) {
    if (m.modulus() != p) throw Error(Errc::ModulusMismatch, "summands over different primes");
    es.push_back(m.E());
    hs.push_back(m.H());
    fs.push_back(m.F());
  }
  return {FieldMatrix::block_diagonal(es, p), FieldMatrix::block_diagonal(hs, p), FieldMatrix::block_diagonal(fs, p)};
}

inline Sl2Module direct_sum(std::initializer_list<Sl2Module> ms) {
  return direct_sum(std::span<const Sl2Module>(ms.begin(), ms.size()));
}

/// Actions X -> -X^T.
inline Sl2Module dual_module(const Sl2Module& m) {
  return {-m.E().transpose(), -m.H().transpose(), -m.F().transpose()};
}

/// Twist by the automorphism e -> f, h -> -h, f -> e.
inline Sl2Module sigma_twist(const Sl2Module& m) { return {m.F(), -m.H(), m.E()}; }

inline Sl2Module module_from_triple(const Sl2Triple& t) { return {t.e, t.h, t.f}; }

/// Sum of simples V(lambda_i - 1), one per part, in the order of the parts.
inline Sl2Module module_for_partition(const Partition& lambda, std::uint32_t p) {
  std::vector<Sl2Module> parts;
  for (int part : lambda.parts()) parts.push_back(simple_module(part - 1, p));
  return direct_sum(parts);
}

struct HomSpace {
  std::size_t source_dim = 0;
  std::size_t target_dim = 0;
  std::vector<FieldMatrix> basis;  ///< target_dim x source_dim intertwiners
  std::size_t dimension() const { return basis.size(); }
};

/// All phi with phi X_m = X_n phi for X in {E, H, F}.
inline HomSpace hom_space(const Sl2Module& m, const Sl2Module& n) {
  if (m.modulus() != n.modulus()) throw Error(Errc::ModulusMismatch, "modules over different primes");
  const std::uint32_t p = m.modulus();
  const FieldMatrix ops[] = {sylvester_operator(n.E(), m.E()), sylvester_operator(n.H(), m.H()),
                             sylvester_operator(n.F(), m.F())};
  HomSpace hs{m.dim(), n.dim(), {}};
  for (auto& v : kernel(vstack(ops))) hs.basis.push_back(unflatten(v, n.dim(), m.dim(), p));
  return hs;
}

struct IsoOptions {
  std::uint64_t seed = 0x5eed;
  std::uint64_t exhaustive_limit = 1'000'000;  ///< enumerate the Hom space outright below this many points
  std::uint64_t random_samples = 4096;
  std::uint64_t fallback_budget = 10'000'000;  ///< exhaustive points tried after random sampling fails
};

struct IsoResult {
  bool isomorphic = false;
  std::optional<FieldMatrix> witness;  ///< invertible intertwiner m -> n
  bool conclusive = true;              ///< false only if the search budget ran out
  std::string reason;
};

namespace detail {

inline FieldMatrix combine(const std::vector<FieldMatrix>& basis, const Vec& coeffs, std::uint32_t p) {
  FieldMatrix acc = FieldMatrix::zero(basis[0].rows(), basis[0].cols(), p);
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (coeffs[i]) acc = acc + basis[i].scaled(coeffs[i]);
  return acc;
}

inline bool next_coords(Vec& c, std::uint32_t p) {
  for (auto& x : c) {
    if (++x < p) return true;
    x = 0;
  }
  return false;
}

inline std::optional<Partition> nilpotent_type(const FieldMatrix& x) {
  if (!is_nilpotent(x)) return std::nullopt;
  return jordan_type(x);
}

}  // namespace detail

/// Search Hom(m, n) for an invertible element.
///
/// When an isomorphism exists, Hom(m, n) = phi_0 End(m), and the units of
/// End(m) occupy at least a fraction prod_j prod_{i>=1}(1 - p^-i) >= 0.56^t of
/// it, t the number of isotypic summands. Random sampling therefore fails with
/// probability at most (1 - 0.56^t)^samples; an exhaustive pass follows when
/// the sampling budget is spent.
inline IsoResult is_isomorphic(const Sl2Module& m, const Sl2Module& n, const IsoOptions& opt = {}) {
  if (m.modulus() != n.modulus()) throw Error(Errc::ModulusMismatch, "modules over different primes");
  const std::uint32_t p = m.modulus();
  IsoResult res;
  if (m.dim() != n.dim()) {
    res.reason = "dimensions differ";
    return res;
  }
  if (m == n) {
    res.isomorphic = true;
    res.witness = FieldMatrix::identity(m.dim(), p);
    return res;
  }
  for (auto [x, y, name] : {std::tuple{&m.E(), &n.E(), "E"}, std::tuple{&m.F(), &n.F(), "F"}}) {
    const auto tx = detail::nilpotent_type(*x);
    const auto ty = detail::nilpotent_type(*y);
    if (tx != ty) {
      res.reason = std::string("Jordan types of ") + name + " differ";
      return res;
    }
  }
  const HomSpace hmn = hom_space(m, n);
  const HomSpace hmm = hom_space(m, m);
  if (hmn.dimension() != hmm.dimension()) {
    res.reason = "dim Hom(m,n) != dim End(m)";
    return res;
  }
  const std::size_t k = hmn.dimension();
  if (k == 0) {
    res.reason = "no intertwiners";
    return res;
  }
  const std::uint64_t total = saturating_pow(p, k);

  auto try_coords = [&](const Vec& c) -> bool {
    FieldMatrix phi = detail::combine(hmn.basis, c, p);
    if (!is_invertible(phi)) return false;
    res.isomorphic = true;
    res.witness = std::move(phi);
    return true;
  };

  if (total <= opt.exhaustive_limit) {
    Vec c(k, 0);
    do {
      if (try_coords(c)) return res;
    } while (detail::next_coords(c, p));
    res.reason = "no invertible intertwiner (exhaustive)";
    return res;
  }
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<std::uint32_t> coin(0, p - 1);
  Vec c(k);
  for (std::uint64_t s = 0; s < opt.random_samples; ++s) {
    for (auto& x : c) x = coin(rng);
    if (try_coords(c)) return res;
  }
  std::fill(c.begin(), c.end(), 0);
  std::uint64_t tried = 0;
  do {
    if (try_coords(c)) return res;
    if (++tried >= opt.fallback_budget) {
      res.conclusive = false;
      res.reason = "search budget exhausted";
      return res;
    }
  } while (detail::next_coords(c, p));
  res.reason = "no invertible intertwiner (exhaustive fallback)";
  return res;
}

struct Decomposition {
  bool semisimple = false;
  std::vector<int> d_values;  ///< summand highest weights; on failure the rejected candidate
  std::string reason;
};

/// Candidate multiplicities s_d = m_{d+1}(jordan_type(E)), accepted iff m is
/// isomorphic to the corresponding sum of simples V(d), d <= p-2.
inline Decomposition decompose_restricted(const Sl2Module& m, const IsoOptions& opt = {}) {
  Decomposition out;
  const std::uint32_t p = m.modulus();
  if (!is_nilpotent(m.E())) {
    out.reason = "E is not nilpotent";
    return out;
  }
  const Partition lambda = jordan_type(m.E());
  for (int part : lambda.parts()) out.d_values.push_back(part - 1);
  if (lambda.largest() > static_cast<int>(p) - 1) {
    out.reason = "E has a Jordan block of size >= p";
    return out;
  }
  const IsoResult iso = is_isomorphic(m, module_for_partition(lambda, p), opt);
  out.semisimple = iso.isomorphic;
  if (!iso.isomorphic) out.reason = "candidate sum of simples is not isomorphic: " + iso.reason;
  return out;
}

/// Basis of the invariant bilinear forms: X^T G + G X = 0 for X in {E, H, F}.
inline std::vector<FieldMatrix> invariant_forms(const Sl2Module& m) {
  const std::uint32_t p = m.modulus();
  const FieldMatrix ops[] = {sylvester_operator(m.E().transpose(), -m.E()),
                             sylvester_operator(m.H().transpose(), -m.H()),
                             sylvester_operator(m.F().transpose(), -m.F())};
  std::vector<FieldMatrix> out;
  for (auto& v : kernel(vstack(ops))) out.push_back(unflatten(v, m.dim(), m.dim(), p));
  return out;
}

inline bool is_symmetric(const FieldMatrix& g) { return g == g.transpose(); }

inline bool is_alternating(const FieldMatrix& g) {
  if (!(g.transpose() == -g)) return false;
  for (std::size_t i = 0; i < g.rows(); ++i)
    if (g(i, i)) return false;
  return true;
}

}  // namespace modsl2
