#include <catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "modsl2/linalg.hpp"
#include "modsl2/orbits.hpp"
#include "modsl2/partition.hpp"
#include "test_util.hpp"

using namespace modsl2;

namespace {

Partition P(std::vector<int> parts) { return Partition(std::move(parts)); }

OrbitLabel L(std::vector<int> parts, std::optional<Spin> s = std::nullopt) { return {P(std::move(parts)), s}; }

// Dominance via the rank function r_i(lambda) = sum_j max(lambda_j - i, 0).
bool rank_dominance(const Partition& mu, const Partition& lambda) {
  const int top = std::max(mu.largest(), lambda.largest());
  for (int i = 0; i <= top; ++i) {
    int rm = 0, rl = 0;
    for (int x : mu.parts()) rm += std::max(x - i, 0);
    for (int x : lambda.parts()) rl += std::max(x - i, 0);
    if (rm > rl) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("partition construction and accessors", "[partitions]") {
  const auto l = P({3, 3, 2, 1, 1, 1});
  CHECK(multiplicity(l, 1) == 3);
  CHECK(multiplicity(P({5}), 2) == 0);
  CHECK(multiplicity(P({2, 2}), 2) == 2);
  CHECK(l.weight() == 11);
  CHECK(l.part(1) == 3);
  CHECK(l.part(7) == 0);
  CHECK(l.to_string() == "(3,3,2,1,1,1)");
  CHECK(Partition::from_unsorted({1, 0, 3, 2}) == P({3, 2, 1}));
  CHECK(Partition::with_ones({4}, 2) == P({4, 1, 1}));
  CHECK(parse_partition("3,2,2") == P({3, 2, 2}));
  CHECK(parse_partition("(2 1)") == P({2, 1}));
  CHECK(parse_partition("").empty());
  CHECK_THROWS_MATCHES(P({1, 2}), Error, test::HasCode(Errc::InvalidLabel));
  CHECK_THROWS_MATCHES(P({2, 0}), Error, test::HasCode(Errc::InvalidLabel));
  CHECK_THROWS_MATCHES(parse_partition("3,x"), Error, test::HasCode(Errc::ParseError));
}

TEST_CASE("join merges multiplicities", "[partitions]") {
  CHECK(join(P({3, 1}), P({2, 1})) == P({3, 2, 1, 1}));
  CHECK(join(P({4, 2}), Partition{}) == P({4, 2}));
  CHECK(join(P({2, 2}), P({2})) == P({2, 2, 2}));
}

TEST_CASE("partitions_of counts and order", "[partitions]") {
  const int counts[] = {1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77};
  for (int n = 0; n <= 12; ++n) {
    const auto all = partitions_of(n);
    CHECK(all.size() == static_cast<std::size_t>(counts[n]));
    CHECK(std::is_sorted(all.begin(), all.end(), std::greater<>()));
    CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
    for (const auto& l : all) CHECK(l.weight() == n);
  }
  const auto four = partitions_of(4);
  CHECK(four.front() == P({4}));
  CHECK(four[1] == P({3, 1}));
  CHECK(four.back() == P({1, 1, 1, 1}));
}

TEST_CASE("dominance order", "[partitions]") {
  CHECK(dominance_leq(P({2, 2}), P({3, 1})));
  CHECK_FALSE(dominance_leq(P({3, 1}), P({2, 2})));
  CHECK_FALSE(dominance_leq(P({3, 1, 1, 1}), P({2, 2, 2})));
  CHECK_FALSE(dominance_leq(P({2, 2, 2}), P({3, 1, 1, 1})));
  for (int p : {3, 5, 7})
    for (int ones = 0; ones < 3; ++ones)
      CHECK(dominance_leq(Partition::with_ones({p - 1}, ones + 1), Partition::with_ones({p}, ones)));
}

TEST_CASE("dominance agrees with the rank-function criterion", "[partitions]") {
  for (int n = 1; n <= 12; ++n) {
    const auto all = partitions_of(n);
    for (const auto& mu : all)
      for (const auto& lambda : all) REQUIRE(dominance_leq(mu, lambda) == rank_dominance(mu, lambda));
  }
}

TEST_CASE("block triangular matrices dominate the join of their diagonal types", "[partitions]") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 80; ++trial) {
    const std::uint32_t p = trial % 2 ? 3 : 5;
    auto random_nilpotent = [&](std::size_t n) {
      std::vector<int> raw;
      int left = static_cast<int>(n);
      while (left > 0) {
        const int k = 1 + static_cast<int>(rng() % static_cast<unsigned>(left));
        raw.push_back(k);
        left -= k;
      }
      std::vector<FieldMatrix> blocks;
      const Partition lambda = Partition::from_unsorted(raw);
      for (int k : lambda.parts()) blocks.push_back(FieldMatrix::jordan_block(static_cast<std::size_t>(k), p));
      return conjugate(test::random_invertible(n, p, rng), FieldMatrix::block_diagonal(blocks, p));
    };
    const std::size_t a = 1 + rng() % 3, b = 1 + rng() % 3;
    const FieldMatrix xa = random_nilpotent(a), xb = random_nilpotent(b);
    FieldMatrix m(a + b, a + b, p);
    m.paste(0, 0, xa);
    m.paste(a, a, xb);
    m.paste(0, a, test::random_matrix(a, b, p, rng, trial % 3 == 0));
    REQUIRE(is_nilpotent(m));
    CHECK(dominance_leq(join(jordan_type(xa), jordan_type(xb)), jordan_type(m)));
  }
}

TEST_CASE("validity, very even and variety predicates", "[partitions]") {
  CHECK(valid_for(GroupKind::Sp, P({3, 3, 2})));
  CHECK_FALSE(valid_for(GroupKind::Sp, P({3, 2, 1})));
  CHECK(valid_for(GroupKind::O, P({2, 2, 1})));
  CHECK_FALSE(valid_for(GroupKind::O, P({2, 1})));
  CHECK(valid_for(GroupKind::GL, P({2, 1})));
  CHECK(is_very_even(P({2, 2})));
  CHECK_FALSE(is_very_even(P({4, 2, 2})));
  CHECK_FALSE(is_very_even(P({3, 3})));
  for (int p : {3, 5, 7}) {
    CHECK(in_variety(P({p - 1, p - 1}), VarietyKind::NpMinus1, p));
    CHECK_FALSE(in_variety(P({p, p}), VarietyKind::OneNp, p));
    CHECK(in_variety(P({p, 1}), VarietyKind::OneNp, p));
    CHECK(in_variety(P({p, p}), VarietyKind::Np, p));
    CHECK_FALSE(in_variety(P({p, 1}), VarietyKind::NpMinus1, p));
  }
  CHECK(max_variety(GroupKind::GL) == VarietyKind::NpMinus1);
  CHECK(max_variety(GroupKind::Sp) == VarietyKind::NpMinus1);
  CHECK(max_variety(GroupKind::SO) == VarietyKind::OneNp);
  CHECK(max_variety(GroupKind::O) == VarietyKind::OneNp);
  CHECK(parse_variety("Np-1") == VarietyKind::NpMinus1);
  CHECK(parse_group_kind("SO") == GroupKind::SO);
  CHECK_THROWS_MATCHES(parse_group_kind("Spin"), Error, test::HasCode(Errc::ParseError));
}

TEST_CASE("orbit enumeration", "[partitions]") {
  CHECK(enumerate_orbits(GroupKind::GL, 3, 3, VarietyKind::NpMinus1) ==
        std::vector<OrbitLabel>{L({2, 1}), L({1, 1, 1})});
  CHECK(enumerate_orbits(GroupKind::SO, 4, 3, VarietyKind::OneNp) ==
        std::vector<OrbitLabel>{L({3, 1}), L({2, 2}, Spin::I), L({2, 2}, Spin::II), L({1, 1, 1, 1})});
  CHECK(enumerate_orbits(GroupKind::Sp, 2, 5, VarietyKind::NpMinus1) == std::vector<OrbitLabel>{L({2}), L({1, 1})});
  CHECK_THROWS_MATCHES(enumerate_orbits(GroupKind::Sp, 3, 3, VarietyKind::NilAll), Error,
                       test::HasCode(Errc::OddRankForSp));
  CHECK(L({2, 2}, Spin::II).to_string() == "(2,2).II");
}

TEST_CASE("SO label count splits very even partitions", "[partitions]") {
  for (int n = 1; n <= 12; ++n) {
    std::size_t valid = 0, very_even = 0;
    for (const auto& l : partitions_of(n)) {
      valid += valid_for(GroupKind::O, l);
      very_even += is_very_even(l);
    }
    CHECK(enumerate_orbits(GroupKind::SO, n, 5, VarietyKind::NilAll).size() == valid + very_even);
    CHECK(enumerate_orbits(GroupKind::O, n, 5, VarietyKind::NilAll).size() == valid);
  }
}

TEST_CASE("the maximal variety is downward closed", "[partitions]") {
  for (GroupKind kind : {GroupKind::GL, GroupKind::SL, GroupKind::Sp, GroupKind::O, GroupKind::SO})
    for (int n = 1; n <= 10; ++n) {
      if (kind == GroupKind::Sp && n % 2) continue;
      for (int p : {3, 5}) {
        const auto all = enumerate_orbits(kind, n, p, VarietyKind::NilAll);
        const auto inside = enumerate_orbits(kind, n, p, max_variety(kind));
        for (const auto& b : inside)
          for (const auto& a : all)
            if (closure_leq(a, b, kind)) CHECK(std::ranges::find(inside, a) != inside.end());
      }
    }
}

TEST_CASE("closure order", "[partitions]") {
  CHECK(closure_leq(L({2, 2, 1}), L({3, 1, 1}), GroupKind::O));
  CHECK_FALSE(closure_leq(L({2, 2}, Spin::I), L({2, 2}, Spin::II), GroupKind::SO));
  CHECK_FALSE(closure_leq(L({2, 2}, Spin::II), L({2, 2}, Spin::I), GroupKind::SO));
  CHECK(closure_leq(L({2, 2}, Spin::II), L({2, 2}, Spin::II), GroupKind::SO));
  for (const auto& a : enumerate_orbits(GroupKind::SO, 8, 5, VarietyKind::NilAll))
    CHECK(closure_leq(a, a, GroupKind::SO));
  CHECK_THROWS_MATCHES(closure_leq(L({2, 1}), L({2}), GroupKind::GL), Error, test::HasCode(Errc::SizeMismatch));
  CHECK_THROWS_MATCHES(closure_leq(L({2, 1}), L({3}), GroupKind::O), Error, test::HasCode(Errc::InvalidLabel));
  CHECK_THROWS_MATCHES(closure_leq(L({2, 2}), L({3, 1}), GroupKind::SO), Error, test::HasCode(Errc::InvalidLabel));
}

TEST_CASE("Hasse diagrams", "[partitions]") {
  using Edge = std::pair<std::size_t, std::size_t>;
  const auto gl3 = hasse_diagram(GroupKind::GL, 3, 5, VarietyKind::NilAll);
  REQUIRE(gl3.nodes == std::vector<OrbitLabel>{L({3}), L({2, 1}), L({1, 1, 1})});
  CHECK(gl3.edges == std::vector<Edge>{{1, 0}, {2, 1}});

  const auto so4 = hasse_diagram(GroupKind::SO, 4, 5, VarietyKind::NilAll);
  REQUIRE(so4.nodes == std::vector<OrbitLabel>{L({3, 1}), L({2, 2}, Spin::I), L({2, 2}, Spin::II), L({1, 1, 1, 1})});
  CHECK(so4.edges == std::vector<Edge>{{1, 0}, {2, 0}, {3, 1}, {3, 2}});

  const auto gl2 = hasse_diagram(GroupKind::GL, 2, 3, VarietyKind::NpMinus1);
  CHECK(gl2.edges == std::vector<Edge>{{1, 0}});

  const std::string dot = to_dot(so4, GroupKind::SO);
  CHECK(dot.find("\"(2,2).I\" -> \"(3,1)\"") != std::string::npos);
  CHECK(dot.find("rankdir=BT") != std::string::npos);

  // Hasse edges generate closure_leq transitively.
  const auto gl6 = hasse_diagram(GroupKind::GL, 6, 5, VarietyKind::NilAll);
  const std::size_t n = gl6.nodes.size();
  std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) reach[i][i] = 1;
  for (auto [lo, hi] : gl6.edges) reach[lo][hi] = 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (reach[i][k] && reach[k][j]) reach[i][j] = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      CHECK(static_cast<bool>(reach[i][j]) == closure_leq(gl6.nodes[i], gl6.nodes[j], GroupKind::GL));
}
