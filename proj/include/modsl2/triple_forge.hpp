#pragma once

// Explicit sl2-triples in gl, sl, sp and so over GF(p): canonical triples per
// orbit label, nilpotent representatives, the baby-Verma counterexample,
// conjugacy decisions and the exponential sweep.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "modsl2/classical_group.hpp"
#include "modsl2/error.hpp"
#include "modsl2/field.hpp"
#include "modsl2/linalg.hpp"
#include "modsl2/matrix.hpp"
#include "modsl2/orbits.hpp"
#include "modsl2/partition.hpp"
#include "modsl2/sl2_module.hpp"

namespace modsl2 {

/// A summand of a constructed triple: either one simple V(part-1), or a
/// hyperbolic pair V(part-1) + V(part-1)* occupying 2*part coordinates.
struct Block {
  std::size_t offset = 0;
  std::size_t size = 0;
  int part = 0;
  bool hyperbolic = false;
};

struct ConstructedTriple {
  Sl2Triple triple;
  ClassicalGroup group;              ///< carries the assembled Gram for Sp/O/SO
  OrbitLabel label;
  std::vector<Block> blocks;
  std::vector<long long> weights;    ///< integer eigenvalues of h, diagonal order
};

namespace detail {

/// [[0, I_k], [eps I_k, 0]].
inline FieldMatrix hyperbolic_gram(std::size_t k, int eps, std::uint32_t p) {
  FieldMatrix g(2 * k, 2 * k, p);
  for (std::size_t i = 0; i < k; ++i) {
    g.set(i, k + i, 1);
    g.set_signed(k + i, i, eps);
  }
  return g;
}

/// diag(x, -x^T): the action on V + V*.
inline FieldMatrix hyperbolic_double(const FieldMatrix& x) {
  const FieldMatrix blocks[] = {x, -x.transpose()};
  return FieldMatrix::block_diagonal(blocks, x.modulus());
}

/// (v_i, v_j) = (-1)^i when i + j = k - 1; invariant for the Jordan block with
/// v_i -> v_{i-1}. Symmetric for odd k, alternating for even k.
inline FieldMatrix jordan_block_gram(std::size_t k, std::uint32_t p) {
  FieldMatrix g(k, k, p);
  for (std::size_t i = 0; i < k; ++i) g.set_signed(i, k - 1 - i, i % 2 ? -1 : 1);
  return g;
}

/// Nondegenerate filler form on coordinates carrying zero actions.
inline FieldMatrix padding_gram(GroupKind kind, std::size_t k, std::uint32_t p) {
  if (kind != GroupKind::Sp) return FieldMatrix::identity(k, p);
  FieldMatrix g(k, k, p);
  for (std::size_t i = 0; i + 1 < k; i += 2) {
    g.set(i, i + 1, 1);
    g.set_signed(i + 1, i, -1);
  }
  return g;
}

inline FieldMatrix single_block_form(int d, std::uint32_t p) {
  const auto forms = invariant_forms(simple_module(d, p));
  if (forms.size() != 1 || !is_invertible(forms[0]))
    throw Error(Errc::NoSolution, "V(" + std::to_string(d) + ") lacks a unique nondegenerate invariant form");
  return forms[0];
}

inline std::vector<long long> simple_weights(int d) {
  std::vector<long long> w;
  for (int i = 0; i <= d; ++i) w.push_back(d - 2 * i);
  return w;
}

inline FieldMatrix swap_matrix(std::size_t n, std::size_t a, std::size_t b, std::uint32_t p) {
  FieldMatrix m = FieldMatrix::identity(n, p);
  m.set(a, a, 0);
  m.set(b, b, 0);
  m.set(a, b, 1);
  m.set(b, a, 1);
  return m;
}

}  // namespace detail

/// Element of O of determinant -1 used to pass from spin I to spin II: the
/// reflection exchanging the first vector of the leading hyperbolic block with
/// its dual partner.
inline FieldMatrix spin_exchange(const ConstructedTriple& c) {
  for (const auto& b : c.blocks)
    if (b.hyperbolic)
      return detail::swap_matrix(c.group.n, b.offset, b.offset + static_cast<std::size_t>(b.part), c.group.p);
  throw Error(Errc::BlockDataMissing, "no hyperbolic block to exchange");
}

/// Canonical triple for an orbit label inside the maximal variety.
inline ConstructedTriple construct_triple(const ClassicalGroup& g, const OrbitLabel& label) {
  const Partition& lambda = label.partition;
  const std::uint32_t p = g.p;
  if (!label_valid_for(g.kind, label) || static_cast<std::size_t>(lambda.weight()) != g.n)
    throw Error(Errc::InvalidLabel, label.to_string() + " is not an orbit label for " + std::string(to_string(g.kind)) +
                                        "_" + std::to_string(g.n));
  if (!in_variety(lambda, max_variety(g.kind), static_cast<int>(p)))
    throw Error(Errc::OutsideMaxVariety, label.to_string() + " lies outside the maximal variety");

  ConstructedTriple out;
  out.label = label;
  std::vector<FieldMatrix> es, hs, fs, grams;
  std::size_t offset = 0;

  const bool forms = has_form(g.kind);
  // Parts of this parity pair hyperbolically; the others carry their own form.
  const int paired_parity = g.kind == GroupKind::Sp ? 1 : 0;

  std::vector<int> distinct;
  for (int part : lambda.parts())
    if (distinct.empty() || distinct.back() != part) distinct.push_back(part);

  for (int part : distinct) {
    const int d = part - 1;
    const int mult = multiplicity(lambda, part);
    const Sl2Module v = simple_module(d, p);
    const bool paired = forms && part % 2 == paired_parity;
    if (paired) {
      const int eps = g.kind == GroupKind::Sp ? -1 : 1;
      for (int c = 0; c < mult / 2; ++c) {
        es.push_back(detail::hyperbolic_double(v.E()));
        hs.push_back(detail::hyperbolic_double(v.H()));
        fs.push_back(detail::hyperbolic_double(v.F()));
        grams.push_back(detail::hyperbolic_gram(static_cast<std::size_t>(part), eps, p));
        out.blocks.push_back({offset, 2 * static_cast<std::size_t>(part), part, true});
        offset += 2 * static_cast<std::size_t>(part);
        auto w = detail::simple_weights(d);
        out.weights.insert(out.weights.end(), w.begin(), w.end());
        for (auto x : w) out.weights.push_back(-x);
      }
    } else {
      for (int c = 0; c < mult; ++c) {
        es.push_back(v.E());
        hs.push_back(v.H());
        fs.push_back(v.F());
        if (forms) grams.push_back(detail::single_block_form(d, p));
        out.blocks.push_back({offset, static_cast<std::size_t>(part), part, false});
        offset += static_cast<std::size_t>(part);
        auto w = detail::simple_weights(d);
        out.weights.insert(out.weights.end(), w.begin(), w.end());
      }
    }
  }
  out.triple = {FieldMatrix::block_diagonal(es, p), FieldMatrix::block_diagonal(hs, p),
                FieldMatrix::block_diagonal(fs, p)};
  out.group = ClassicalGroup{g.kind, g.n, p, std::nullopt};
  if (forms) out.group.gram = FieldMatrix::block_diagonal(grams, p);

  if (label.spin == Spin::II) {
    const FieldMatrix r = spin_exchange(out);
    out.triple = conjugate(r, out.triple);
    const Block& b = *std::find_if(out.blocks.begin(), out.blocks.end(), [](const Block& x) { return x.hyperbolic; });
    std::swap(out.weights[b.offset], out.weights[b.offset + static_cast<std::size_t>(b.part)]);
  }
  return out;
}

/// Self-checks reported alongside a constructed triple.
struct TripleChecks {
  bool relations = false;
  bool e_type_matches = false;
  bool f_type_matches = false;
  bool in_lie_algebra = false;
  bool gram_ok = false;
  Partition jordan_e, jordan_f;
  bool all() const { return relations && e_type_matches && f_type_matches && in_lie_algebra && gram_ok; }
};

inline TripleChecks check_constructed(const ConstructedTriple& c) {
  TripleChecks k;
  const auto& t = c.triple;
  k.relations = t.relations_hold();
  if (is_nilpotent(t.e)) k.jordan_e = jordan_type(t.e);
  if (is_nilpotent(t.f)) k.jordan_f = jordan_type(t.f);
  k.e_type_matches = is_nilpotent(t.e) && k.jordan_e == c.label.partition;
  k.f_type_matches = is_nilpotent(t.f) && k.jordan_f == c.label.partition;
  k.in_lie_algebra = in_lie_algebra(c.group, t.e) && in_lie_algebra(c.group, t.h) && in_lie_algebra(c.group, t.f);
  k.gram_ok = gram_valid(c.group);
  return k;
}

/// A nilpotent element of Lie(G) with Jordan type lambda (any valid lambda,
/// parts may exceed p), with the Gram it is skew for.
struct NilpotentRepresentative {
  FieldMatrix e;
  ClassicalGroup group;
};

inline NilpotentRepresentative nilpotent_representative(GroupKind kind, std::size_t n, std::uint32_t p,
                                                        const Partition& lambda) {
  require_modulus(p);
  if (static_cast<std::size_t>(lambda.weight()) != n || !valid_for(kind, lambda))
    throw Error(Errc::InvalidLabel, lambda.to_string() + " is not valid for " + std::string(to_string(kind)));
  const bool forms = has_form(kind);
  const int paired_parity = kind == GroupKind::Sp ? 1 : 0;
  std::vector<FieldMatrix> es, grams;
  std::vector<int> distinct;
  for (int part : lambda.parts())
    if (distinct.empty() || distinct.back() != part) distinct.push_back(part);
  for (int part : distinct) {
    const auto k = static_cast<std::size_t>(part);
    const int mult = multiplicity(lambda, part);
    const FieldMatrix j = FieldMatrix::jordan_block(k, p);
    if (forms && part % 2 == paired_parity) {
      for (int c = 0; c < mult / 2; ++c) {
        es.push_back(detail::hyperbolic_double(j));
        grams.push_back(detail::hyperbolic_gram(k, kind == GroupKind::Sp ? -1 : 1, p));
      }
    } else {
      for (int c = 0; c < mult; ++c) {
        es.push_back(j);
        if (forms) grams.push_back(detail::jordan_block_gram(k, p));
      }
    }
  }
  NilpotentRepresentative r{FieldMatrix::block_diagonal(es, p), ClassicalGroup{kind, n, p, std::nullopt}};
  if (forms) r.group.gram = FieldMatrix::block_diagonal(grams, p);
  return r;
}

/// GL triple with e in Jordan form and h the integer weight diagonal; f is the
/// lexicographically least solution of [h,f] = -2f, [e,f] = h.
inline Sl2Triple construct_triple_unrestricted(const ClassicalGroup& g, const Partition& lambda) {
  if (g.kind != GroupKind::GL) throw Error(Errc::InvalidLabel, "unrestricted construction is for GL only");
  if (static_cast<std::size_t>(lambda.weight()) != g.n) throw Error(Errc::InvalidLabel, "partition size differs from n");
  const std::uint32_t p = g.p;
  std::vector<FieldMatrix> es;
  std::vector<long long> w;
  for (int part : lambda.parts()) {
    es.push_back(FieldMatrix::jordan_block(static_cast<std::size_t>(part), p));
    for (int i = 0; i < part; ++i) w.push_back(part - 1 - 2 * i);
  }
  const FieldMatrix e = FieldMatrix::block_diagonal(es, p);
  const FieldMatrix h = FieldMatrix::diagonal(w, p);
  const std::size_t n = g.n;
  const FieldMatrix ops[] = {sylvester_operator(h, h) + FieldMatrix::identity(n * n, p).scaled(2),
                             sylvester_operator(e, e)};
  Vec rhs(2 * n * n, 0);
  for (std::size_t k = 0; k < n * n; ++k) rhs[n * n + k] = h.data()[k];
  const auto sol = solve_affine(vstack(ops), rhs);
  if (!sol) throw Error(Errc::NoSolution, "no f completes (e, h) for " + lambda.to_string());
  Sl2Triple t{e, h, unflatten(lex_least_point(*sol), n, n, p)};
  if (!t.relations_hold()) throw Error(Errc::RelationsFail, "unrestricted triple fails the relations");
  return t;
}

/// Two completions of one nilpotent element whose modules are not isomorphic.
struct CounterexampleWitness {
  ClassicalGroup group;
  FieldMatrix shared_f;
  Sl2Triple triple1;  ///< (f, -h_0, e_0), from Z(0)
  Sl2Triple triple2;  ///< (f, -h_{p-1}, e_{p-1}), from Z(p-1)
  Partition jordan_e_1, jordan_e_2;
};

inline CounterexampleWitness slp_counterexample(GroupKind kind, std::size_t n, std::uint32_t p) {
  require_modulus(p);
  const bool forms = has_form(kind);
  const std::size_t need = forms ? 2 * p : p;
  if (n < need)
    throw Error(Errc::RankTooSmall, "need n >= " + std::to_string(need) + " for the baby Verma witness");
  if (kind == GroupKind::Sp && n % 2) throw Error(Errc::OddRankForSp, "Sp needs even rank");
  const Sl2Module z0 = baby_verma(Fp(0, p), p);
  const Sl2Module zt = baby_verma(Fp(static_cast<long long>(p) - 1, p), p);
  const std::size_t pad = n - need;

  auto embed = [&](const FieldMatrix& x) {
    std::vector<FieldMatrix> parts{forms ? detail::hyperbolic_double(x) : x};
    if (pad) parts.push_back(FieldMatrix::zero(pad, p));
    return FieldMatrix::block_diagonal(parts, p);
  };
  CounterexampleWitness w;
  w.group = ClassicalGroup{kind, n, p, std::nullopt};
  if (forms) {
    std::vector<FieldMatrix> grams{detail::hyperbolic_gram(p, kind == GroupKind::Sp ? -1 : 1, p)};
    if (pad) grams.push_back(detail::padding_gram(kind, pad, p));
    w.group.gram = FieldMatrix::block_diagonal(grams, p);
  }
  w.shared_f = embed(z0.F());
  const FieldMatrix e0 = embed(z0.E()), h0 = embed(z0.H());
  const FieldMatrix et = embed(zt.E()), ht = embed(zt.H());
  w.triple1 = {w.shared_f, -h0, e0};
  w.triple2 = {w.shared_f, -ht, et};
  w.jordan_e_1 = jordan_type(e0);
  w.jordan_e_2 = jordan_type(et);
  return w;
}

/// Block-sign element acting by -1 on one odd-part block: determinant -1,
/// preserves the form, centralizes the triple. None for very even labels.
inline std::optional<FieldMatrix> so_centralizing_reflection(const ConstructedTriple& c) {
  if (!is_orthogonal(c.group.kind)) throw Error(Errc::InvalidLabel, "reflection needs an orthogonal group");
  if (c.blocks.empty() && c.group.n > 0) throw Error(Errc::BlockDataMissing, "triple carries no block data");
  if (is_very_even(c.label.partition)) return std::nullopt;
  for (const auto& b : c.blocks) {
    if (b.hyperbolic || b.part % 2 == 0) continue;
    FieldMatrix r = FieldMatrix::identity(c.group.n, c.group.p);
    for (std::size_t i = 0; i < b.size; ++i) r.set_signed(b.offset + i, b.offset + i, -1);
    return r;
  }
  throw Error(Errc::BlockDataMissing, "no odd-part block recorded");
}

enum class Conjugacy { Conjugate, NotConjugate, Indeterminate };

constexpr std::string_view to_string(Conjugacy c) {
  switch (c) {
    case Conjugacy::Conjugate: return "Conjugate";
    case Conjugacy::NotConjugate: return "NotConjugate";
    case Conjugacy::Indeterminate: return "Indeterminate";
  }
  return "?";
}

struct SoRefinementOptions {
  std::uint64_t budget = 10'000'000;  ///< intertwiners examined
  std::optional<FieldMatrix> centralizing_reflection;  ///< det -1 element centralizing t1, if known
};

struct SoRefinement {
  Conjugacy outcome = Conjugacy::Indeterminate;
  std::optional<FieldMatrix> witness;  ///< g in SO with g t1 g^-1 = t2
  std::string field = "GF(p)";         ///< field the witness lives in
  std::uint64_t candidates = 0;
  std::string reason;
};

namespace detail {

/// Visit every isometry g in Hom(M1, M2) (so g t1 = t2 g); the visitor returns
/// false to stop. Returns false when the budget ran out first.
template <class Visit>
bool for_each_isometric_intertwiner(const ClassicalGroup& g, const Sl2Triple& t1, const Sl2Triple& t2,
                                    std::uint64_t budget, std::uint64_t& examined, Visit visit) {
  const HomSpace hs = hom_space(module_from_triple(t1), module_from_triple(t2));
  const std::size_t k = hs.dimension();
  if (saturating_pow(g.p, k) > budget) return false;
  Vec c(k, 0);
  if (k == 0) return true;
  do {
    ++examined;
    FieldMatrix phi = combine(hs.basis, c, g.p);
    if (preserves_form(g, phi) && is_invertible(phi))
      if (!visit(phi)) return true;
  } while (next_coords(c, g.p));
  return true;
}

}  // namespace detail

/// Decide SO-conjugacy of two O-conjugate triples.
///
/// For very even Jordan types the O-centralizer of a triple lies in SO, so all
/// conjugators from t1 to t2 share one determinant: one GF(p) conjugator of
/// determinant -1 settles non-conjugacy over the closure as well.
inline SoRefinement so_refinement(const ClassicalGroup& g, const Sl2Triple& t1, const Sl2Triple& t2,
                                  const SoRefinementOptions& opt = {}) {
  SoRefinement out;
  const Partition lambda = jordan_type(t1.e);
  std::optional<FieldMatrix> det_minus;
  const bool finished = detail::for_each_isometric_intertwiner(g, t1, t2, opt.budget, out.candidates, [&](const FieldMatrix& phi) {
    if (determinant(phi).value() == 1) {
      out.witness = phi;
      return false;
    }
    if (!det_minus) det_minus = phi;
    return true;
  });
  if (out.witness) {
    out.outcome = Conjugacy::Conjugate;
    out.reason = "determinant-one isometric intertwiner found";
    return out;
  }
  if (!is_very_even(lambda)) {
    out.outcome = Conjugacy::Conjugate;
    if (det_minus && opt.centralizing_reflection) {
      out.witness = *det_minus * *opt.centralizing_reflection;
      out.reason = "determinant -1 conjugator corrected by a centralizing reflection";
    } else {
      out.reason = "Jordan type has an odd part, so the centralizer meets O \\ SO";
    }
    return out;
  }
  if (det_minus) {
    out.outcome = Conjugacy::NotConjugate;
    out.reason = "every isometric intertwiner has determinant -1";
    return out;
  }
  out.outcome = Conjugacy::Indeterminate;
  out.field = "none";
  out.reason = finished ? "no isometric intertwiner over GF(p)" : "search budget exceeded";
  return out;
}

struct ConjugacyResult {
  Conjugacy outcome = Conjugacy::Indeterminate;
  IsoResult module_iso;
  std::optional<SoRefinement> refinement;
};

/// Conjugacy of two triples under G, via module isomorphism; SO adds the
/// determinant refinement.
inline ConjugacyResult triples_conjugate(const ClassicalGroup& g, const Sl2Triple& t1, const Sl2Triple& t2,
                                         const IsoOptions& iso = {}, const SoRefinementOptions& so = {}) {
  if (!t1.relations_hold() || !t2.relations_hold()) throw Error(Errc::RelationsFail, "input is not an sl2-triple");
  if (has_form(g.kind))
    for (const Sl2Triple* t : {&t1, &t2})
      for (const FieldMatrix* x : {&t->e, &t->h, &t->f})
        if (!in_lie_algebra(g, *x)) throw Error(Errc::NotInAlgebra, "triple element outside Lie(G)");
  ConjugacyResult r;
  r.module_iso = is_isomorphic(module_from_triple(t1), module_from_triple(t2), iso);
  if (!r.module_iso.isomorphic) {
    r.outcome = r.module_iso.conclusive ? Conjugacy::NotConjugate : Conjugacy::Indeterminate;
    return r;
  }
  if (g.kind != GroupKind::SO) {
    r.outcome = Conjugacy::Conjugate;
    return r;
  }
  r.refinement = so_refinement(g, t1, t2, so);
  r.outcome = r.refinement->outcome;
  return r;
}

// ---------------------------------------------------------------------------
// Exponential sweep.

struct ExpSweepPoint {
  FieldMatrix claimed;    ///< tt^2 (e - s h - s^2 f)
  FieldMatrix witnessed;  ///< g e g^-1 with g = exp(s f) tau(tt)
};

/// tau(tt) = diag(tt^{w_i}) scales e by tt^2; exp(s f) then carries tt^2 e to
/// tt^2 (e - s h - s^2 f).
inline ExpSweepPoint orbit_exp_sweep(const Sl2Triple& t, const std::vector<long long>& weights, Fp s, Fp tt) {
  const std::uint32_t p = t.modulus();
  const std::size_t n = t.size();
  if (!t.h.is_diagonal() || weights.size() != n) throw Error(Errc::HNotDiagonal, "h must be diagonal with known weights");
  for (std::size_t i = 0; i < n; ++i)
    if (t.h(i, i) != reduce(weights[i], p)) throw Error(Errc::HNotDiagonal, "weights disagree with h");
  if (tt.value() == 0) throw Error(Errc::NotInvertible, "tt must be nonzero");
  if (!t.f.pow(p).is_zero()) throw Error(Errc::FPowerNotZero, "f^p is nonzero");
  FieldMatrix tau(n, n, p);
  const std::uint32_t tinv = tt.inverse().value();
  for (std::size_t i = 0; i < n; ++i) {
    const long long w = weights[i];
    tau.set(i, i, w >= 0 ? pow_mod(tt.value(), static_cast<std::uint64_t>(w), p)
                         : pow_mod(tinv, static_cast<std::uint64_t>(-w), p));
  }
  const FieldMatrix g = nilpotent_exp(t.f, s) * tau;
  ExpSweepPoint out;
  out.witnessed = conjugate(g, t.e);
  const Fp t2 = tt * tt;
  out.claimed = t2 * (t.e - s * t.h - (s * s) * t.f);
  return out;
}

/// Number of (s, tt) in GF(p) x GF(p)^x where the two sides differ.
inline std::size_t exp_sweep_mismatches(const Sl2Triple& t, const std::vector<long long>& weights) {
  const std::uint32_t p = t.modulus();
  std::size_t bad = 0;
  for (std::uint32_t s = 0; s < p; ++s)
    for (std::uint32_t tt = 1; tt < p; ++tt) {
      const auto pt = orbit_exp_sweep(t, weights, Fp(s, p), Fp(tt, p));
      if (!(pt.claimed == pt.witnessed)) ++bad;
    }
  return bad;
}

}  // namespace modsl2
