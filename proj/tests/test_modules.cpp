#include <catch_amalgamated.hpp>

#include <random>

#include "modsl2/sl2_module.hpp"
#include "test_util.hpp"

using namespace modsl2;

namespace {

Partition P(std::vector<int> parts) { return Partition(std::move(parts)); }

// Count of all phi (exhaustive) with phi X_m = X_n phi; tiny modules only.
std::uint64_t brute_hom_count(const Sl2Module& m, const Sl2Module& n) {
  const std::uint32_t p = m.modulus();
  std::uint64_t count = 0;
  for (const Vec& v : test::all_vectors(n.dim() * m.dim(), p)) {
    const FieldMatrix phi = unflatten(v, n.dim(), m.dim(), p);
    if (phi * m.E() == n.E() * phi && phi * m.H() == n.H() * phi && phi * m.F() == n.F() * phi) ++count;
  }
  return count;
}

bool intertwines(const FieldMatrix& phi, const Sl2Module& m, const Sl2Module& n) {
  return phi * m.E() == n.E() * phi && phi * m.H() == n.H() * phi && phi * m.F() == n.F() * phi;
}

}  // namespace

TEST_CASE("simple modules", "[modules]") {
  const auto v0 = simple_module(0, 3);
  CHECK(v0.dim() == 1);
  CHECK(v0.E().is_zero());
  CHECK(v0.H().is_zero());
  const auto v1 = simple_module(1, 3);
  CHECK(v1.H() == FieldMatrix::diagonal({1, -1}, 3));
  CHECK(v1.E() == FieldMatrix::from_rows({{0, 1}, {0, 0}}, 3));
  const auto v2 = simple_module(2, 5);
  CHECK(v2.H() == FieldMatrix::diagonal({2, 0, -2}, 5));
  CHECK(jordan_type(v2.E()) == P({3}));
  CHECK(simple_module(4, 5) == baby_verma(Fp(4, 5), 5));
  CHECK_THROWS_MATCHES(simple_module(5, 5), Error, test::HasCode(Errc::DOutOfRange));
  CHECK_THROWS_MATCHES(simple_module(-1, 5), Error, test::HasCode(Errc::DOutOfRange));
  for (std::uint32_t p : {3u, 5u, 7u})
    for (int d = 0; d <= static_cast<int>(p) - 2; ++d) {
      const auto v = simple_module(d, p);
      CHECK(jordan_type(v.E()) == P({d + 1}));
      CHECK(jordan_type(v.F()) == P({d + 1}));
    }
}

TEST_CASE("baby Verma modules", "[modules]") {
  CHECK(jordan_type(baby_verma(Fp(0, 3), 3).E()) == P({2, 1}));
  for (std::uint32_t p : {3u, 5u, 7u}) {
    CHECK(jordan_type(baby_verma(Fp(p - 1, p), p).E()) == P({static_cast<int>(p)}));
    for (std::uint32_t d = 0; d < p; ++d) {
      const auto z = baby_verma(Fp(d, p), p);
      CHECK(z.actions().relations_hold());
      CHECK(jordan_type(z.F()) == P({static_cast<int>(p)}));
      if (d < p - 1)
        CHECK(jordan_type(z.E()) == Partition::from_unsorted({static_cast<int>(p - 1 - d), static_cast<int>(d + 1)}));
    }
  }
  CHECK_THROWS_MATCHES(baby_verma(Fp(1, 5), 3), Error, test::HasCode(Errc::ModulusMismatch));
}

TEST_CASE("direct sums and duals", "[modules]") {
  const auto v1 = simple_module(1, 3);
  CHECK(direct_sum({v1}) == v1);
  const auto zero2 = direct_sum({simple_module(0, 3), simple_module(0, 3)});
  CHECK(zero2.dim() == 2);
  CHECK(zero2.E().is_zero());
  CHECK(jordan_type(direct_sum({v1, simple_module(0, 3)}).E()) == P({2, 1}));
  CHECK_THROWS_MATCHES(direct_sum({v1, simple_module(0, 5)}), Error, test::HasCode(Errc::ModulusMismatch));

  CHECK(dual_module(simple_module(0, 3)) == simple_module(0, 3));
  for (std::uint32_t p : {3u, 5u}) {
    const auto z0 = baby_verma(Fp(0, p), p);
    CHECK(dual_module(dual_module(z0)) == z0);
    CHECK(jordan_type(dual_module(z0).E()) == P({static_cast<int>(p) - 1, 1}));
    for (int d = 0; d <= static_cast<int>(p) - 2; ++d)
      CHECK(is_isomorphic(simple_module(d, p), dual_module(simple_module(d, p))).isomorphic);
  }
}

TEST_CASE("module from a triple", "[modules]") {
  const auto t = Sl2Triple{FieldMatrix::jordan_block(2, 3), FieldMatrix::diagonal({1, -1}, 3),
                           FieldMatrix::jordan_block(2, 3).transpose()};
  const auto m = module_from_triple(t);
  CHECK(is_isomorphic(m, simple_module(1, 3)).isomorphic);
  CHECK(module_from_triple(simple_module(2, 5).actions()) == simple_module(2, 5));
  const auto z = FieldMatrix::zero(1, 3);
  CHECK(module_from_triple({z, z, z}) == simple_module(0, 3));
  CHECK_THROWS_MATCHES(module_from_triple({t.e, t.h, t.e}), Error, test::HasCode(Errc::RelationsFail));
  CHECK(module_for_partition(P({3, 1}), 5) == direct_sum({simple_module(2, 5), simple_module(0, 5)}));
}

TEST_CASE("Hom spaces between simples", "[modules]") {
  for (std::uint32_t p : {3u, 5u, 7u})
    for (int c = 0; c <= static_cast<int>(p) - 2; ++c)
      for (int d = 0; d <= static_cast<int>(p) - 2; ++d) {
        const auto hs = hom_space(simple_module(c, p), simple_module(d, p));
        CHECK(hs.dimension() == (c == d ? 1u : 0u));
        for (const auto& phi : hs.basis) CHECK(intertwines(phi, simple_module(c, p), simple_module(d, p)));
      }
  CHECK(hom_space(simple_module(0, 5), simple_module(2, 5)).dimension() == 0);
  CHECK_THROWS_MATCHES(hom_space(simple_module(0, 5), simple_module(0, 3)), Error, test::HasCode(Errc::ModulusMismatch));
}

TEST_CASE("Hom dimensions against exhaustive intertwiner counts", "[modules]") {
  const std::uint32_t p = 3;
  const std::vector<Sl2Module> ms = {simple_module(0, p), simple_module(1, p),
                                     direct_sum({simple_module(0, p), simple_module(0, p)}),
                                     direct_sum({simple_module(1, p), simple_module(0, p)}), baby_verma(Fp(0, p), p),
                                     baby_verma(Fp(1, p), p), dual_module(baby_verma(Fp(0, p), p))};
  for (const auto& m : ms)
    for (const auto& n : ms) {
      if (m.dim() * n.dim() > 9) continue;
      CHECK(brute_hom_count(m, n) == saturating_pow(p, hom_space(m, n).dimension()));
    }
}

TEST_CASE("isomorphism testing", "[modules]") {
  const auto z0 = baby_verma(Fp(0, 3), 3), z2 = baby_verma(Fp(2, 3), 3);
  const auto self = is_isomorphic(z0, z0);
  CHECK(self.isomorphic);
  CHECK(*self.witness == FieldMatrix::identity(3, 3));
  const auto r = is_isomorphic(z0, z2);
  CHECK_FALSE(r.isomorphic);
  CHECK(r.conclusive);

  std::mt19937_64 rng(41);
  for (std::uint32_t p : {3u, 5u}) {
    const auto m = direct_sum({simple_module(1, p), simple_module(1, p), simple_module(0, p)});
    for (int trial = 0; trial < 5; ++trial) {
      const FieldMatrix g = test::random_invertible(m.dim(), p, rng);
      const Sl2Module n = module_from_triple(conjugate(g, m.actions()));
      const auto res = is_isomorphic(m, n);
      REQUIRE(res.isomorphic);
      CHECK(is_invertible(*res.witness));
      CHECK(intertwines(*res.witness, m, n));
    }
  }
  // (1^3) against V(2): same dimension, different E types.
  CHECK_FALSE(is_isomorphic(module_for_partition(P({1, 1, 1}), 5), simple_module(2, 5)).isomorphic);
  // Z(0) and its dual share Jordan types of E and F but are not isomorphic.
  const auto zd = dual_module(baby_verma(Fp(0, 5), 5));
  const auto z = baby_verma(Fp(0, 5), 5);
  CHECK_FALSE(is_isomorphic(z, zd).isomorphic);
}

TEST_CASE("isomorphism is an equivalence relation on sample modules", "[modules]") {
  std::mt19937_64 rng(43);
  const std::uint32_t p = 5;
  std::vector<Sl2Module> ms;
  for (const auto& lambda : {P({3, 1}), P({2, 2}), P({2, 1, 1}), P({4})}) {
    const Sl2Module base = module_for_partition(lambda, p);
    ms.push_back(base);
    ms.push_back(module_from_triple(conjugate(test::random_invertible(4, p, rng), base.actions())));
  }
  ms.push_back(sigma_twist(ms[0]));
  const std::size_t n = ms.size();
  std::vector<std::vector<char>> iso(n, std::vector<char>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) iso[i][j] = is_isomorphic(ms[i], ms[j]).isomorphic;
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(iso[i][i]);
    for (std::size_t j = 0; j < n; ++j) {
      CHECK(iso[i][j] == iso[j][i]);
      for (std::size_t k = 0; k < n; ++k)
        if (iso[i][j] && iso[j][k]) CHECK(iso[i][k]);
    }
  }
  CHECK(iso[0][1]);
  CHECK_FALSE(iso[0][2]);
}

TEST_CASE("sigma twist preserves simples", "[modules]") {
  for (std::uint32_t p : {3u, 5u, 7u})
    for (int d = 0; d <= static_cast<int>(p) - 1; ++d) {
      const auto v = simple_module(d, p);
      CHECK(is_isomorphic(v, sigma_twist(v)).isomorphic);
    }
}

TEST_CASE("restricted decomposition", "[modules]") {
  const auto ok = decompose_restricted(direct_sum({simple_module(2, 5), simple_module(0, 5)}));
  CHECK(ok.semisimple);
  CHECK(ok.d_values == std::vector<int>{2, 0});
  const auto bad = decompose_restricted(baby_verma(Fp(0, 3), 3));
  CHECK_FALSE(bad.semisimple);
  CHECK(bad.d_values == std::vector<int>{1, 0});
  CHECK_FALSE(decompose_restricted(simple_module(4, 5)).semisimple);
}

TEST_CASE("invariant bilinear forms", "[modules]") {
  const auto f0 = invariant_forms(simple_module(0, 3));
  REQUIRE(f0.size() == 1);
  CHECK(is_symmetric(f0[0]));
  const auto f1 = invariant_forms(simple_module(1, 3));
  REQUIRE(f1.size() == 1);
  CHECK(is_alternating(f1[0]));
  for (std::uint32_t p : {3u, 5u, 7u})
    for (int d = 0; d <= static_cast<int>(p) - 1; ++d) {
      const auto v = simple_module(d, p);
      const auto forms = invariant_forms(v);
      REQUIRE(forms.size() == 1);
      const FieldMatrix& g = forms[0];
      CHECK(is_invertible(g));
      CHECK(is_symmetric(g) == (d % 2 == 0));
      CHECK(is_alternating(g) == (d % 2 == 1));
      for (const FieldMatrix* x : {&v.E(), &v.H(), &v.F()}) CHECK((x->transpose() * g + g * *x).is_zero());
    }
}

TEST_CASE("two-step filtrations split away from the exceptional pair", "[modules]") {
  for (std::uint32_t p : {3u, 5u}) {
    const int top = static_cast<int>(p) - 2;
    for (int c = 0; c <= top; ++c)
      for (int d = 0; d <= top; ++d) {
        if (d == c || d == static_cast<int>(p) - c - 2) continue;
        const auto ext = test::filtered_extensions(d, c, p, 8, 1000u * p + 10u * c + d);
        for (const auto& m : ext)
          CHECK(is_isomorphic(m, direct_sum({simple_module(d, p), simple_module(c, p)})).isomorphic);
      }
  }
  // At the exceptional pair a non-split extension exists.
  const auto ext = test::filtered_extensions(1, 2, 5, 20, 77);
  bool nonsplit = false;
  for (const auto& m : ext)
    nonsplit = nonsplit || !is_isomorphic(m, direct_sum({simple_module(1, 5), simple_module(2, 5)})).isomorphic;
  CHECK(nonsplit);
}
