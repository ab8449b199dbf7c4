#include <catch_amalgamated.hpp>

#include "modsl2/json_io.hpp"
#include "test_util.hpp"

using namespace modsl2;

TEST_CASE("partitions and labels round-trip", "[json]") {
  const Partition l({3, 2, 2});
  CHECK(to_json(l).dump() == "[3,2,2]");
  CHECK(partition_from_json(to_json(l)) == l);
  const OrbitLabel a{Partition({2, 2}), Spin::II};
  CHECK(to_json(a).dump() == R"({"partition":[2,2],"spin":"II"})");
  CHECK(label_from_json(to_json(a)) == a);
  const OrbitLabel b{Partition({3, 1}), std::nullopt};
  CHECK(to_json(b).dump() == R"({"partition":[3,1],"spin":null})");
  CHECK(label_from_json(to_json(b)) == b);
}

TEST_CASE("modules round-trip", "[json]") {
  for (const auto& m : {simple_module(2, 5), baby_verma(Fp(1, 3), 3),
                        direct_sum({simple_module(1, 7), simple_module(0, 7)})}) {
    const json j = to_json(m);
    CHECK(j.at("dim") == m.dim());
    CHECK(module_from_json(j) == m);
    CHECK(module_from_json(json::parse(j.dump())) == m);
  }
  const json v1 = to_json(simple_module(1, 3));
  CHECK(v1.at("actH").dump() == "[[1,0],[0,2]]");
  json broken = v1;
  broken["actF"] = broken["actE"];
  CHECK_THROWS_MATCHES(module_from_json(broken), Error, test::HasCode(Errc::RelationsFail));
}

TEST_CASE("triple and report encodings are stable", "[json]") {
  const auto c = construct_triple(standard_group(GroupKind::SO, 4, 3), {Partition({2, 2}), Spin::I});
  const json j = to_json(c);
  CHECK(j.at("kind") == "SO");
  CHECK(j.contains("gram"));
  CHECK(matrix_from_json(j.at("e"), 3) == c.triple.e);
  CHECK(label_from_json(j.at("label")) == c.label);
  CHECK(j.dump() == to_json(construct_triple(standard_group(GroupKind::SO, 4, 3), c.label)).dump());

  const auto w = slp_counterexample(GroupKind::GL, 3, 3);
  const json wj = to_json(w);
  CHECK(wj.at("jordan_e_1").dump() == "[2,1]");
  CHECK(wj.at("jordan_e_2").dump() == "[3]");
  CHECK_FALSE(wj.contains("gram"));

  const auto rep = verify_sl2_property(GroupKind::GL, 2, 3, VarietyKind::NpMinus1, {});
  const std::string once = to_json(rep).dump();
  CHECK(once == to_json(verify_sl2_property(GroupKind::GL, 2, 3, VarietyKind::NpMinus1, {})).dump());
  CHECK(json::parse(once).at("verdict") == "Holds");
}
