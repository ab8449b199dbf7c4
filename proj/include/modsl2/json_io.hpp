#pragma once

// JSON encodings. nlohmann::json keeps object keys sorted, so dumps are
// byte-stable for equal inputs.

#include <json.hpp>

#include "modsl2/algebra_a.hpp"
#include "modsl2/classical_group.hpp"
#include "modsl2/orbits.hpp"
#include "modsl2/partition.hpp"
#include "modsl2/sl2_module.hpp"
#include "modsl2/triple_forge.hpp"
#include "modsl2/verifier.hpp"

namespace modsl2 {

using json = nlohmann::json;

inline json to_json(const Partition& p) { return json(p.parts()); }

inline Partition partition_from_json(const json& j) { return Partition(j.get<std::vector<int>>()); }

inline json to_json(const OrbitLabel& l) {
  json j;
  j["partition"] = to_json(l.partition);
  j["spin"] = l.spin ? json(std::string(to_string(*l.spin))) : json(nullptr);
  return j;
}

inline OrbitLabel label_from_json(const json& j) {
  OrbitLabel l{partition_from_json(j.at("partition")), std::nullopt};
  if (j.contains("spin") && !j.at("spin").is_null()) l.spin = parse_spin(j.at("spin").get<std::string>());
  return l;
}

/// Nested row arrays of integer residues.
inline json to_json(const FieldMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline FieldMatrix matrix_from_json(const json& j, std::uint32_t p) {
  return FieldMatrix::from_rows(j.get<std::vector<std::vector<long long>>>(), p);
}

inline json to_json(const Sl2Module& m) {
  return json{{"dim", m.dim()}, {"p", m.modulus()}, {"actE", to_json(m.E())}, {"actH", to_json(m.H())}, {"actF", to_json(m.F())}};
}

inline Sl2Module module_from_json(const json& j) {
  const auto p = j.at("p").get<std::uint32_t>();
  return {matrix_from_json(j.at("actE"), p), matrix_from_json(j.at("actH"), p), matrix_from_json(j.at("actF"), p)};
}

inline json triple_json(const ClassicalGroup& g, const Sl2Triple& t) {
  json j{{"kind", std::string(to_string(g.kind))}, {"n", g.n}, {"p", g.p},
         {"e", to_json(t.e)}, {"h", to_json(t.h)}, {"f", to_json(t.f)}};
  if (g.gram) j["gram"] = to_json(*g.gram);
  return j;
}

inline json to_json(const ConstructedTriple& c) {
  json j = triple_json(c.group, c.triple);
  j["label"] = to_json(c.label);
  j["weights"] = c.weights;
  json blocks = json::array();
  for (const auto& b : c.blocks)
    blocks.push_back({{"offset", b.offset}, {"size", b.size}, {"part", b.part}, {"hyperbolic", b.hyperbolic}});
  j["blocks"] = std::move(blocks);
  return j;
}

inline json to_json(const TripleChecks& k) {
  return json{{"relations", k.relations},
              {"jordan_e", to_json(k.jordan_e)},
              {"jordan_f", to_json(k.jordan_f)},
              {"e_type_matches", k.e_type_matches},
              {"f_type_matches", k.f_type_matches},
              {"in_lie_algebra", k.in_lie_algebra},
              {"gram_ok", k.gram_ok},
              {"all", k.all()}};
}

inline json to_json(const CounterexampleWitness& w) {
  json j;
  j["kind"] = std::string(to_string(w.group.kind));
  j["n"] = w.group.n;
  j["p"] = w.group.p;
  if (w.group.gram) j["gram"] = to_json(*w.group.gram);
  j["shared_f"] = to_json(w.shared_f);
  j["triple1"] = triple_json(w.group, w.triple1);
  j["triple2"] = triple_json(w.group, w.triple2);
  j["jordan_e_1"] = to_json(w.jordan_e_1);
  j["jordan_e_2"] = to_json(w.jordan_e_2);
  return j;
}

inline json to_json(const OrbitResult& o, const ClassicalGroup* g = nullptr) {
  json j{{"label", to_json(o.label)},
         {"surjective", o.surjective},
         {"canonical_constructed", o.canonical_constructed},
         {"completions_found", o.completions_found},
         {"completions_in_variety", o.completions_in_variety},
         {"f_type_mismatches", o.f_type_mismatches},
         {"iso_classes", o.iso_classes},
         {"points", o.points},
         {"h_dimension", o.h_dimension},
         {"witness_field", o.witness_field},
         {"truncated", o.truncated}};
  json offenders = json::array();
  for (const auto& off : o.offenders) {
    json x{{"reason", off.reason}, {"e", to_json(off.triple.e)}, {"h", to_json(off.triple.h)}, {"f", to_json(off.triple.f)}};
    x["jordan_f"] = off.jordan_f ? to_json(*off.jordan_f) : json(nullptr);
    offenders.push_back(std::move(x));
  }
  j["offenders"] = std::move(offenders);
  if (o.reference) {
    if (g) {
      j["surjectivity_witness"] = triple_json(*g, *o.reference);
    } else {
      j["surjectivity_witness"] = {{"e", to_json(o.reference->e)}, {"h", to_json(o.reference->h)}, {"f", to_json(o.reference->f)}};
    }
  } else {
    j["surjectivity_witness"] = nullptr;
  }
  return j;
}

inline json to_json(const VerificationReport& r) {
  json orbits = json::array();
  for (const auto& o : r.orbits) orbits.push_back(to_json(o));
  return json{{"kind", std::string(to_string(r.kind))},
              {"n", r.n},
              {"p", r.p},
              {"variety", std::string(to_string(r.variety))},
              {"budget", r.budget},
              {"points", r.points},
              {"cross_label_injective", r.cross_label_injective},
              {"orbits", std::move(orbits)},
              {"verdict", std::string(to_string(r.verdict))}};
}

inline json to_json(const MaximalityReport& r) {
  json j{{"kind", std::string(to_string(r.kind))},
         {"n", r.n},
         {"p", r.p},
         {"budget", r.budget},
         {"points", r.points},
         {"notes", r.notes},
         {"verdict", std::string(to_string(r.verdict))}};
  if (r.slp) {
    j["slp_witness"] = to_json(*r.slp);
    j["slp_witness"]["modules_non_isomorphic"] = r.slp_modules_non_isomorphic;
    const auto pair = *r.slp_pair();
    j["slp_jordan_pair"] = {to_json(pair.first), to_json(pair.second)};
  } else {
    j["slp_witness"] = nullptr;
  }
  if (r.boundary) {
    const auto& b = *r.boundary;
    j["boundary_witness"] = {{"lambda", to_json(b.lambda)},
                             {"triple_a", triple_json(b.group, b.triple_a)},
                             {"triple_b", triple_json(b.group, b.triple_b)},
                             {"jordan_e_1", to_json(b.jordan_e_1)},
                             {"jordan_e_2", to_json(b.jordan_e_2)},
                             {"modules_non_isomorphic", r.boundary_modules_non_isomorphic}};
  } else {
    j["boundary_witness"] = nullptr;
  }
  return j;
}

}  // namespace modsl2
