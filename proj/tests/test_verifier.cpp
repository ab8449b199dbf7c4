#include <catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "modsl2/verifier.hpp"
#include "test_util.hpp"

using namespace modsl2;

namespace {

Partition P(std::vector<int> parts) { return Partition(std::move(parts)); }

using Key = std::pair<Vec, Vec>;  // (h, f)

std::set<Key> keys(const std::vector<Sl2Triple>& ts) {
  std::set<Key> out;
  for (const auto& t : ts) out.insert({flatten(t.h), flatten(t.f)});
  return out;
}

// All (h, f) with h, f drawn from `elements` completing e, by direct search.
std::set<Key> brute_completions(const FieldMatrix& e, const std::vector<FieldMatrix>& elements) {
  std::set<Key> out;
  for (const auto& h : elements) {
    if (!(bracket(h, e) == e.scaled(2))) continue;
    for (const auto& f : elements)
      if (Sl2Triple{e, h, f}.relations_hold()) out.insert({flatten(h), flatten(f)});
  }
  return out;
}

std::vector<FieldMatrix> brute_lie(const ClassicalGroup& g) {
  std::vector<FieldMatrix> out;
  for (auto& x : test::all_matrices(g.n, g.p))
    if (in_lie_algebra(g, x)) out.push_back(std::move(x));
  return out;
}

}  // namespace

TEST_CASE("completions in gl_1", "[verifier]") {
  const auto g = standard_group(GroupKind::GL, 1, 3);
  const auto list = enumerate_completions(g, FieldMatrix::zero(1, 3), 1000);
  CHECK_FALSE(list.status.truncated);
  REQUIRE(list.triples.size() == 1);
  CHECK(list.triples[0].h.is_zero());
  CHECK(list.triples[0].f.is_zero());
  CHECK(keys(list.triples) == brute_completions(FieldMatrix::zero(1, 3), test::all_matrices(1, 3)));
}

TEST_CASE("completions of a Jordan block in gl_2 over GF(3)", "[verifier]") {
  const auto g = standard_group(GroupKind::GL, 2, 3);
  const auto e = FieldMatrix::jordan_block(2, 3);
  const auto list = enumerate_completions(g, e, 100000);
  const auto brute = brute_completions(e, test::all_matrices(2, 3));
  CHECK(keys(list.triples) == brute);
  CHECK(list.triples.size() == brute.size());  // no repeats
  for (const auto& t : list.triples) {
    CHECK(t.relations_hold());
    CHECK(jordan_type(t.f) == P({2}));
  }
}

TEST_CASE("completions in so_3 and sp_2 against exhaustive search", "[verifier]") {
  for (auto [kind, n, label] : {std::tuple{GroupKind::O, std::size_t{3}, P({3})},
                                std::tuple{GroupKind::O, std::size_t{3}, P({1, 1, 1})},
                                std::tuple{GroupKind::Sp, std::size_t{2}, P({2})}}) {
    const auto c = construct_triple(standard_group(kind, n, 3), {label, std::nullopt});
    const auto list = enumerate_completions(c.group, c.triple.e, 1'000'000);
    CHECK(keys(list.triples) == brute_completions(c.triple.e, brute_lie(c.group)));
  }
}

TEST_CASE("completions of the shared baby Verma element in sl_3", "[verifier]") {
  const auto w = slp_counterexample(GroupKind::SL, 3, 3);
  const auto list = enumerate_completions(standard_group(GroupKind::SL, 3, 3), w.shared_f, 1'000'000);
  std::set<Partition> types;
  for (const auto& t : list.triples)
    if (is_nilpotent(t.f)) types.insert(jordan_type(t.f));
  CHECK(types.count(P({3})) == 1);
  CHECK(types.count(P({2, 1})) == 1);
}

TEST_CASE("enumeration is independent of the h order", "[verifier]") {
  const auto c = construct_triple(standard_group(GroupKind::GL, 3, 3), {P({2, 1}), std::nullopt});
  const CompletionSpace space(c.group, c.triple.e);
  std::vector<Sl2Triple> forward, backward;
  for_each_completion(space, UINT64_MAX, [&](Sl2Triple t) {
    forward.push_back(std::move(t));
    return true;
  });
  const std::uint64_t hc = space.h_count();
  REQUIRE(hc > 1);
  for (std::uint64_t hi = hc; hi-- > 0;)
    for_each_completion(
        space, UINT64_MAX,
        [&](Sl2Triple t) {
          backward.push_back(std::move(t));
          return true;
        },
        hi, hi + 1);
  CHECK(keys(forward) == keys(backward));
  CHECK(forward.size() == backward.size());
  for (const auto& t : forward) CHECK(t.relations_hold());
}

TEST_CASE("completion space preconditions and budget", "[verifier]") {
  const auto g = standard_group(GroupKind::O, 3, 3);
  CHECK_THROWS_MATCHES(CompletionSpace(g, FieldMatrix::zero(2, 3)), Error, test::HasCode(Errc::ShapeMismatch));
  CHECK_THROWS_MATCHES(CompletionSpace(g, FieldMatrix::jordan_block(3, 3)), Error, test::HasCode(Errc::NotInAlgebra));
  CHECK_THROWS_MATCHES(CompletionSpace(standard_group(GroupKind::GL, 2, 3), FieldMatrix::identity(2, 3)), Error,
                       test::HasCode(Errc::NotNilpotent));
  const auto c = construct_triple(standard_group(GroupKind::GL, 3, 3), {P({2, 1}), std::nullopt});
  const auto cut = enumerate_completions(c.group, c.triple.e, 5);
  CHECK(cut.status.truncated);
  CHECK(cut.status.points <= 6);
}

TEST_CASE("the sl2 property holds on small grids", "[verifier]") {
  const std::tuple<GroupKind, std::size_t, std::uint32_t> cases[] = {
      {GroupKind::GL, 3, 3}, {GroupKind::SL, 3, 3}, {GroupKind::Sp, 2, 3}, {GroupKind::Sp, 4, 3},
      {GroupKind::O, 4, 3},  {GroupKind::SO, 4, 3}, {GroupKind::O, 3, 5},  {GroupKind::GL, 2, 5}};
  for (auto [kind, n, p] : cases) {
    INFO(to_string(kind) << n << " p=" << p);
    const auto rep = verify_sl2_property(kind, n, p, max_variety(kind), {});
    CHECK(rep.verdict == Verdict::Holds);
    CHECK(rep.cross_label_injective);
    CHECK(rep.orbits.size() == enumerate_orbits(kind, static_cast<int>(n), static_cast<int>(p), max_variety(kind)).size());
    for (const auto& o : rep.orbits) {
      CHECK(o.surjective);
      CHECK(o.canonical_constructed);
      CHECK(o.iso_classes == 1);
      CHECK(o.f_type_mismatches == 0);
      CHECK(o.completions_in_variety >= 1);
      CHECK(o.offenders.empty());
    }
  }
}

TEST_CASE("threads do not change the report", "[verifier]") {
  VerifyOptions one, three;
  three.threads = 3;
  const auto a = verify_sl2_property(GroupKind::SO, 4, 3, VarietyKind::OneNp, one);
  const auto b = verify_sl2_property(GroupKind::SO, 4, 3, VarietyKind::OneNp, three);
  REQUIRE(a.orbits.size() == b.orbits.size());
  CHECK(a.verdict == b.verdict);
  CHECK(a.points == b.points);
  for (std::size_t i = 0; i < a.orbits.size(); ++i) {
    CHECK(a.orbits[i].completions_found == b.orbits[i].completions_found);
    CHECK(a.orbits[i].iso_classes == b.orbits[i].iso_classes);
    CHECK(a.orbits[i].reference == b.orbits[i].reference);
  }
}

TEST_CASE("the property fails beyond the maximal variety", "[verifier]") {
  const auto rep = verify_sl2_property(GroupKind::GL, 3, 3, VarietyKind::Np, {});
  CHECK(rep.verdict == Verdict::FailsWithWitness);
  CHECK(expected_verdict(GroupKind::GL, 3, 3, VarietyKind::Np) == Verdict::FailsWithWitness);
  CHECK(expected_verdict(GroupKind::SO, 4, 3, VarietyKind::OneNp) == Verdict::Holds);
  bool offended = false;
  for (const auto& o : rep.orbits) offended = offended || !o.offenders.empty() || !o.surjective;
  CHECK(offended);
}

TEST_CASE("tiny budgets are reported", "[verifier]") {
  VerifyOptions opt;
  opt.budget = 10;
  const auto rep = verify_sl2_property(GroupKind::GL, 4, 3, VarietyKind::NpMinus1, opt);
  CHECK(rep.verdict == Verdict::BudgetExceeded);
}

TEST_CASE("maximality witnesses", "[verifier]") {
  const auto sl3 = verify_maximality(GroupKind::SL, 3, 3);
  CHECK(sl3.verdict == Verdict::FailsWithWitness);
  REQUIRE(sl3.slp_pair());
  CHECK(*sl3.slp_pair() == std::pair{P({3}), P({2, 1})});
  CHECK(sl3.slp_modules_non_isomorphic);

  const auto gl4 = verify_maximality(GroupKind::GL, 4, 3);
  CHECK(gl4.verdict == Verdict::FailsWithWitness);
  CHECK(*gl4.slp_pair() == std::pair{P({3, 1}), P({2, 1, 1})});
  REQUIRE(gl4.boundary);
  CHECK(gl4.boundary->lambda == P({4}));
  CHECK(gl4.boundary_modules_non_isomorphic);
  CHECK(gl4.boundary->triple_a.e == gl4.boundary->triple_b.e);
  CHECK(gl4.boundary->triple_a.relations_hold());
  CHECK(gl4.boundary->triple_b.relations_hold());
  CHECK(gl4.boundary->triple_b.f.pow(3).is_zero());

  const auto sp6 = verify_maximality(GroupKind::Sp, 6, 3);
  CHECK(*sp6.slp_pair() == std::pair{P({3, 3}), P({2, 2, 1, 1})});
  CHECK(sp6.verdict == Verdict::FailsWithWitness);

  CHECK_THROWS_MATCHES(verify_maximality(GroupKind::GL, 2, 3), Error, test::HasCode(Errc::RankTooSmall));
}

TEST_CASE("closure order matches rank inequalities", "[verifier]") {
  CHECK(verify_closure_consistency(GroupKind::GL, 6, 5));
  CHECK(verify_closure_consistency(GroupKind::O, 5, 3));
  CHECK(verify_closure_consistency(GroupKind::GL, 2, 3));
  CHECK(verify_closure_consistency(GroupKind::Sp, 6, 3));
}
