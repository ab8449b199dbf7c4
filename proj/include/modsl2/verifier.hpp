#pragma once

// Brute-force checks over GF(p): enumerate every completion (e, h, f) of a
// nilpotent e inside Lie(G), test the orbit bijection on a variety, and
// produce non-injectivity witnesses just outside the maximal variety.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "modsl2/classical_group.hpp"
#include "modsl2/error.hpp"
#include "modsl2/linalg.hpp"
#include "modsl2/orbits.hpp"
#include "modsl2/sl2_module.hpp"
#include "modsl2/triple_forge.hpp"

namespace modsl2 {

/// h ranges over {h in [e, Lie(G)] : [h, e] = 2e}, written in the basis
/// h_basis; for each h, f ranges over an affine subspace of Lie(G).
///
/// Restricting h to the image of ad e loses nothing, since [e, f] = h with
/// f in Lie(G).
class CompletionSpace {
 public:
  CompletionSpace(ClassicalGroup g, FieldMatrix e) : group_(std::move(g)), e_(std::move(e)) {
    if (!e_.square() || e_.rows() != group_.n) throw Error(Errc::ShapeMismatch, "e has the wrong size");
    if (!in_lie_algebra(group_, e_)) throw Error(Errc::NotInAlgebra, "e is not in Lie(G)");
    if (!is_nilpotent(e_)) throw Error(Errc::NotNilpotent, "e is not nilpotent");
    const std::uint32_t p = group_.p;
    const std::size_t n = group_.n, nn = n * n;
    lie_ = lie_algebra_basis(group_);
    const std::size_t L = lie_.size();

    // Columns vec([e, L_k]); their span is [e, Lie(G)].
    ad_e_ = FieldMatrix(nn, L, p);
    for (std::size_t k = 0; k < L; ++k) {
      const FieldMatrix c = bracket(e_, lie_[k]);
      for (std::size_t r = 0; r < nn; ++r) ad_e_.set(r, k, c.data()[r]);
    }
    for (auto& v : row_space_basis(ad_e_.transpose())) h_basis_.push_back(unflatten(v, n, n, p));

    // [h, e] = 2e, linear in the coordinates of h.
    FieldMatrix a(nn, h_basis_.size(), p);
    for (std::size_t j = 0; j < h_basis_.size(); ++j) {
      const FieldMatrix c = bracket(h_basis_[j], e_);
      for (std::size_t r = 0; r < nn; ++r) a.set(r, j, c.data()[r]);
    }
    Vec rhs = e_.scaled(2).data();
    if (h_basis_.empty()) {
      if (e_.is_zero()) h_space_ = AffineSpace{Vec{}, {}, p};
    } else {
      h_space_ = solve_affine(a, rhs);
    }
  }

  const ClassicalGroup& group() const { return group_; }
  const FieldMatrix& e() const { return e_; }
  bool has_h() const { return h_space_.has_value(); }
  std::uint64_t h_count() const { return h_space_ ? h_space_->point_count() : 0; }
  std::size_t h_dimension() const { return h_space_ ? h_space_->dimension() : 0; }

  FieldMatrix h_at(std::uint64_t index) const {
    const Vec c = h_space_->point(index);
    FieldMatrix h = FieldMatrix::zero(group_.n, group_.p);
    for (std::size_t j = 0; j < c.size(); ++j)
      if (c[j]) h = h + h_basis_[j].scaled(c[j]);
    return h;
  }

  /// {f in Lie(G) : [e, f] = h, [h, f] = -2f} in Lie-basis coordinates.
  std::optional<AffineSpace> f_space(const FieldMatrix& h) const {
    const std::uint32_t p = group_.p;
    const std::size_t nn = group_.n * group_.n, L = lie_.size();
    FieldMatrix a(2 * nn, L, p);
    a.paste(0, 0, ad_e_);
    for (std::size_t k = 0; k < L; ++k) {
      const FieldMatrix c = bracket(h, lie_[k]) + lie_[k].scaled(2);
      for (std::size_t r = 0; r < nn; ++r) a.set(nn + r, k, c.data()[r]);
    }
    Vec rhs(2 * nn, 0);
    std::copy(h.data().begin(), h.data().end(), rhs.begin());
    return solve_affine(a, rhs);
  }

  FieldMatrix f_from(const Vec& coords) const {
    FieldMatrix f = FieldMatrix::zero(group_.n, group_.p);
    for (std::size_t k = 0; k < coords.size(); ++k)
      if (coords[k]) f = f + lie_[k].scaled(coords[k]);
    return f;
  }

 private:
  ClassicalGroup group_;
  FieldMatrix e_;
  std::vector<FieldMatrix> lie_;
  FieldMatrix ad_e_;
  std::vector<FieldMatrix> h_basis_;
  std::optional<AffineSpace> h_space_;
};

struct EnumerationStatus {
  std::uint64_t points = 0;  ///< h points plus f points visited
  std::uint64_t triples = 0;
  bool truncated = false;    ///< budget ran out
  bool stopped = false;      ///< visitor asked to stop
};

/// Visits completions whose h index lies in [h_begin, h_end). The visitor
/// returns false to stop early.
template <class Visit>
EnumerationStatus for_each_completion(const CompletionSpace& space, std::uint64_t budget, Visit&& visit,
                                      std::uint64_t h_begin = 0,
                                      std::uint64_t h_end = std::numeric_limits<std::uint64_t>::max()) {
  EnumerationStatus st;
  h_end = std::min(h_end, space.h_count());
  for (std::uint64_t hi = h_begin; hi < h_end; ++hi) {
    if (++st.points > budget) {
      st.truncated = true;
      return st;
    }
    const FieldMatrix h = space.h_at(hi);
    const auto fs = space.f_space(h);
    if (!fs) continue;
    const std::uint64_t nf = fs->point_count();
    for (std::uint64_t fi = 0; fi < nf; ++fi) {
      if (++st.points > budget) {
        st.truncated = true;
        return st;
      }
      ++st.triples;
      if (!visit(Sl2Triple{space.e(), h, space.f_from(fs->point(fi))})) {
        st.stopped = true;
        return st;
      }
    }
  }
  return st;
}

struct CompletionList {
  std::vector<Sl2Triple> triples;
  EnumerationStatus status;
};

/// Every completion of e in Lie(G), or a truncated prefix when the budget is spent.
inline CompletionList enumerate_completions(const ClassicalGroup& g, const FieldMatrix& e, std::uint64_t budget) {
  CompletionList out;
  const CompletionSpace space(g, e);
  out.status = for_each_completion(space, budget, [&](Sl2Triple t) {
    out.triples.push_back(std::move(t));
    return true;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Bijection check.

enum class Verdict { Holds, FailsWithWitness, BudgetExceeded };

constexpr std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "Holds";
    case Verdict::FailsWithWitness: return "FailsWithWitness";
    case Verdict::BudgetExceeded: return "BudgetExceeded";
  }
  return "?";
}

struct Offender {
  Sl2Triple triple;
  std::string reason;
  std::optional<Partition> jordan_f;
};

struct OrbitResult {
  OrbitLabel label;
  bool surjective = false;              ///< a completion with e, f in the variety exists
  bool canonical_constructed = false;   ///< reference triple came from construct_triple
  std::optional<Sl2Triple> reference;   ///< surjectivity witness
  std::uint64_t completions_found = 0;  ///< all completions of e
  std::uint64_t completions_in_variety = 0;
  std::uint64_t f_type_mismatches = 0;  ///< in-variety completions with type(f) != type(e)
  std::size_t iso_classes = 0;          ///< G-classes among in-variety completions
  std::vector<Offender> offenders;      ///< one representative per extra class
  std::uint64_t points = 0;
  std::size_t h_dimension = 0;
  std::string witness_field = "GF(p)";
  bool truncated = false;
};

struct VerificationReport {
  GroupKind kind = GroupKind::GL;
  std::size_t n = 0;
  std::uint32_t p = 3;
  VarietyKind variety = VarietyKind::NpMinus1;
  std::uint64_t budget = 0;
  std::uint64_t points = 0;
  std::vector<OrbitResult> orbits;
  bool cross_label_injective = true;
  Verdict verdict = Verdict::Holds;
};

struct VerifyOptions {
  std::uint64_t budget = 100'000'000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::function<void(const OrbitResult&)> progress;
};

/// Expected verdict for (kind, n, p, v): Holds exactly when every
/// orbit of v lies in the maximal variety.
inline Verdict expected_verdict(GroupKind kind, int n, int p, VarietyKind v) {
  for (const auto& l : enumerate_orbits(kind, n, p, v))
    if (!in_variety(l.partition, max_variety(kind), p)) return Verdict::FailsWithWitness;
  return Verdict::Holds;
}

namespace detail {

inline bool f_in_variety(const FieldMatrix& f, VarietyKind v, std::uint32_t p, std::optional<Partition>& type) {
  if (!is_nilpotent(f)) return false;
  type = jordan_type(f);
  return in_variety(*type, v, static_cast<int>(p));
}

struct ChunkResult {
  EnumerationStatus status;
  std::uint64_t in_variety = 0;
  std::uint64_t f_mismatch = 0;
  std::vector<Offender> offenders;  ///< completions not conjugate to the reference
};

}  // namespace detail

/// Check the orbit bijection on variety v by exhaustive completion search.
inline VerificationReport verify_sl2_property(GroupKind kind, std::size_t n, std::uint32_t p, VarietyKind v,
                                              const VerifyOptions& opt = {}) {
  VerificationReport rep;
  rep.kind = kind;
  rep.n = n;
  rep.p = p;
  rep.variety = v;
  rep.budget = opt.budget;
  const ClassicalGroup std_group = standard_group(kind, n, p);
  const auto labels = enumerate_orbits(kind, static_cast<int>(n), static_cast<int>(p), v);
  IsoOptions iso;
  iso.seed = opt.seed;
  bool budget_hit = false;
  std::vector<std::pair<ClassicalGroup, Sl2Triple>> references;

  for (const auto& label : labels) {
    OrbitResult orb;
    orb.label = label;
    std::optional<ClassicalGroup> group;
    std::optional<Sl2Triple> reference;
    FieldMatrix e;
    if (in_variety(label.partition, max_variety(kind), static_cast<int>(p))) {
      const ConstructedTriple c = construct_triple(std_group, label);
      group = c.group;
      reference = c.triple;
      orb.canonical_constructed = true;
      e = c.triple.e;
    } else {
      auto rep_e = nilpotent_representative(kind == GroupKind::SL ? GroupKind::GL : kind, n, p, label.partition);
      rep_e.group.kind = kind;
      group = rep_e.group;
      e = rep_e.e;
      if (label.spin == Spin::II) {
        // Outside the maximal variety spins only arise for very even types
        // with parts >= p; move to the other SO-orbit by an O \ SO element.
        FieldMatrix r = FieldMatrix::identity(n, p);
        const std::size_t k = static_cast<std::size_t>(label.partition.largest());
        r.set(0, 0, 0);
        r.set(k, k, 0);
        r.set(0, k, 1);
        r.set(k, 0, 1);
        e = r * e * r;
      }
    }
    const CompletionSpace space(*group, e);
    orb.h_dimension = space.h_dimension();
    const std::uint64_t remaining = opt.budget > rep.points ? opt.budget - rep.points : 0;

    // Without a constructed reference, take the first completion with f in v.
    if (!reference) {
      detail::ChunkResult probe;
      probe.status = for_each_completion(space, remaining, [&](const Sl2Triple& t) {
        std::optional<Partition> ft;
        if (detail::f_in_variety(t.f, v, p, ft)) {
          reference = t;
          return false;
        }
        return true;
      });
      rep.points += probe.status.points;
      if (probe.status.truncated) budget_hit = true;
    }
    orb.surjective = reference.has_value();
    if (reference) {
      std::optional<Partition> ft;
      orb.surjective = detail::f_in_variety(reference->f, v, p, ft);
    }
    orb.reference = reference;

    if (reference && !budget_hit) {
      const std::uint64_t budget_left = opt.budget > rep.points ? opt.budget - rep.points : 0;
      const std::uint64_t hc = space.h_count();
      const unsigned threads = std::max(1u, std::min<unsigned>(opt.threads, static_cast<unsigned>(std::min<std::uint64_t>(hc, 64))));
      std::vector<detail::ChunkResult> chunks(threads);
      const Partition e_type = label.partition;
      auto work = [&](unsigned w) {
        const std::uint64_t lo = hc * w / threads, hi = hc * (w + 1) / threads;
        auto& out = chunks[w];
        out.status = for_each_completion(
            space, budget_left,
            [&](const Sl2Triple& t) {
              std::optional<Partition> ft;
              if (!detail::f_in_variety(t.f, v, p, ft)) return true;
              ++out.in_variety;
              if (*ft != e_type) ++out.f_mismatch;
              const ConjugacyResult cr = triples_conjugate(*group, *reference, t, iso);
              if (cr.outcome != Conjugacy::Conjugate)
                out.offenders.push_back({t, std::string("not conjugate to the reference: ") + std::string(to_string(cr.outcome)), ft});
              return true;
            },
            lo, hi);
      };
      if (threads == 1) {
        work(0);
      } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
        for (auto& th : pool) th.join();
      }
      std::vector<Offender> offenders;
      for (auto& c : chunks) {
        orb.points += c.status.points;
        orb.completions_found += c.status.triples;
        orb.completions_in_variety += c.in_variety;
        orb.f_type_mismatches += c.f_mismatch;
        if (c.status.truncated || c.status.stopped) orb.truncated = true;
        offenders.insert(offenders.end(), c.offenders.begin(), c.offenders.end());
      }
      if (orb.points > budget_left) orb.truncated = true;
      rep.points += orb.points;
      if (orb.truncated) budget_hit = true;
      // Group the offenders into classes; the reference class counts once.
      orb.iso_classes = 1;
      for (auto& o : offenders) {
        bool known = false;
        for (const auto& rep_o : orb.offenders)
          if (triples_conjugate(*group, rep_o.triple, o.triple, iso).outcome == Conjugacy::Conjugate) {
            known = true;
            break;
          }
        if (!known) {
          orb.offenders.push_back(std::move(o));
          ++orb.iso_classes;
        }
      }
      references.emplace_back(*group, *reference);
    }
    if (opt.progress) opt.progress(orb);
    rep.orbits.push_back(std::move(orb));
    if (budget_hit) break;
  }

  // Distinct labels must give distinct classes of reference triples.
  if (!budget_hit) {
    for (std::size_t i = 0; i < references.size() && rep.cross_label_injective; ++i)
      for (std::size_t j = i + 1; j < references.size(); ++j) {
        const auto& [gi, ti] = references[i];
        const auto& [gj, tj] = references[j];
        const IsoResult r = is_isomorphic(module_from_triple(ti), module_from_triple(tj), iso);
        if (!r.isomorphic) continue;
        // Only SO spin pairs may share a module; they must then differ in SO.
        bool separated = false;
        if (kind == GroupKind::SO && gi.gram && gj.gram && *gi.gram == *gj.gram)
          separated = so_refinement(gi, ti, tj).outcome == Conjugacy::NotConjugate;
        if (!separated) {
          rep.cross_label_injective = false;
          break;
        }
      }
  }

  if (budget_hit) {
    rep.verdict = Verdict::BudgetExceeded;
    return rep;
  }
  bool ok = rep.cross_label_injective;
  for (const auto& o : rep.orbits) ok = ok && o.surjective && o.iso_classes == 1 && o.f_type_mismatches == 0;
  rep.verdict = ok ? Verdict::Holds : Verdict::FailsWithWitness;
  return rep;
}

// ---------------------------------------------------------------------------
// Maximality.

struct BoundaryWitness {
  Partition lambda;      ///< type of the element outside N^p
  Sl2Triple triple_a;    ///< (x, -h, e): completes x with third slot of type lambda
  Sl2Triple triple_b;    ///< (x, h', e') with e'^p = 0
  Partition jordan_e_1, jordan_e_2;
  ClassicalGroup group;
};

struct MaximalityReport {
  GroupKind kind = GroupKind::GL;
  std::size_t n = 0;
  std::uint32_t p = 3;
  std::uint64_t budget = 0;
  std::uint64_t points = 0;
  std::optional<CounterexampleWitness> slp;
  bool slp_modules_non_isomorphic = false;
  std::optional<BoundaryWitness> boundary;
  bool boundary_modules_non_isomorphic = false;
  std::vector<std::string> notes;
  Verdict verdict = Verdict::Holds;

  /// (larger, smaller) Jordan types of the SL_p witness.
  std::optional<std::pair<Partition, Partition>> slp_pair() const {
    if (!slp) return std::nullopt;
    return std::pair{slp->jordan_e_2, slp->jordan_e_1};
  }
};

/// Non-injectivity witnesses just outside the maximal variety: the baby Verma
/// pair (types (p,1^{n-p}) / (p^2,1^{n-2p})) and the N^p boundary
/// ((p+1,1,...), or (p+2,1,...) for O/SO).
inline MaximalityReport verify_maximality(GroupKind kind, std::size_t n, std::uint32_t p, std::uint64_t budget = 100'000'000,
                                          std::uint64_t seed = 1) {
  require_modulus(p);
  if (kind == GroupKind::Sp && n % 2) throw Error(Errc::OddRankForSp, "Sp needs even rank");
  MaximalityReport rep;
  rep.kind = kind;
  rep.n = n;
  rep.p = p;
  rep.budget = budget;
  IsoOptions iso;
  iso.seed = seed;
  const bool forms = has_form(kind);
  const std::size_t slp_need = forms ? 2 * p : p;
  const std::size_t head = is_orthogonal(kind) ? p + 2 : p + 1;
  if (n < slp_need && n < head)
    throw Error(Errc::RankTooSmall, "n = " + std::to_string(n) + " is too small for either maximality witness");

  bool budget_hit = false;
  if (n >= slp_need) {
    rep.slp = slp_counterexample(kind, n, p);
    const IsoResult r = is_isomorphic(module_from_triple(rep.slp->triple1), module_from_triple(rep.slp->triple2), iso);
    rep.slp_modules_non_isomorphic = !r.isomorphic && r.conclusive;
  } else {
    rep.notes.push_back("baby Verma witness needs n >= " + std::to_string(slp_need));
  }

  if (n >= head) {
    const Partition lambda = Partition::with_ones({static_cast<int>(head)}, static_cast<int>(n - head));
    auto rep_e = nilpotent_representative(kind == GroupKind::SL ? GroupKind::GL : kind, n, p, lambda);
    rep_e.group.kind = kind;
    const ClassicalGroup& g = rep_e.group;
    std::optional<Sl2Triple> first;
    const CompletionSpace s1(g, rep_e.e);
    auto st1 = for_each_completion(s1, budget - rep.points, [&](const Sl2Triple& t) {
      if (t.f.pow(p).is_zero()) {
        first = t;
        return false;
      }
      return true;
    });
    rep.points += st1.points;
    if (st1.truncated) budget_hit = true;
    if (first) {
      const CompletionSpace s2(g, first->f);
      std::optional<Sl2Triple> second;
      auto st2 = for_each_completion(s2, budget - std::min(budget, rep.points), [&](const Sl2Triple& t) {
        if (t.f.pow(p).is_zero()) {
          second = t;
          return false;
        }
        return true;
      });
      rep.points += st2.points;
      if (st2.truncated) budget_hit = true;
      if (second) {
        BoundaryWitness w;
        w.lambda = lambda;
        w.triple_a = {first->f, -first->h, first->e};
        w.triple_b = *second;
        w.jordan_e_1 = jordan_type(w.triple_a.f);
        w.jordan_e_2 = jordan_type(w.triple_b.f);
        w.group = g;
        const IsoResult r = is_isomorphic(module_from_triple(w.triple_a), module_from_triple(w.triple_b), iso);
        rep.boundary_modules_non_isomorphic = !r.isomorphic && r.conclusive;
        rep.boundary = std::move(w);
      } else if (!budget_hit) {
        rep.notes.push_back("no completion of f with third slot in N^p found");
      }
    } else if (!budget_hit) {
      rep.notes.push_back("no completion of " + lambda.to_string() + " with f^p = 0 found");
    }
  } else {
    rep.notes.push_back("N^p boundary witness needs n >= " + std::to_string(head));
  }

  const bool any = (rep.slp && rep.slp_modules_non_isomorphic) || (rep.boundary && rep.boundary_modules_non_isomorphic);
  rep.verdict = any ? Verdict::FailsWithWitness : (budget_hit ? Verdict::BudgetExceeded : Verdict::Holds);
  return rep;
}

/// Dominance order agrees with the rank criterion rank(x_mu^i) <= rank(x_lambda^i)
/// on Jordan-form representatives of all valid pairs.
inline bool verify_closure_consistency(GroupKind kind, int n, std::uint32_t p) {
  std::vector<Partition> valid;
  for (auto& l : partitions_of(n))
    if (valid_for(kind, l)) valid.push_back(l);
  std::vector<std::vector<std::size_t>> ranks;
  for (const auto& l : valid) {
    const auto r = nilpotent_representative(kind == GroupKind::SL ? GroupKind::GL : kind, static_cast<std::size_t>(n), p, l);
    std::vector<std::size_t> seq;
    FieldMatrix pw = FieldMatrix::identity(static_cast<std::size_t>(n), p);
    for (int i = 0; i <= n; ++i) {
      seq.push_back(rank(pw));
      pw = pw * r.e;
    }
    ranks.push_back(std::move(seq));
  }
  for (std::size_t a = 0; a < valid.size(); ++a)
    for (std::size_t b = 0; b < valid.size(); ++b) {
      bool rank_leq = true;
      for (std::size_t i = 0; i < ranks[a].size(); ++i) rank_leq = rank_leq && ranks[a][i] <= ranks[b][i];
      if (rank_leq != dominance_leq(valid[a], valid[b])) return false;
    }
  return true;
}

}  // namespace modsl2
