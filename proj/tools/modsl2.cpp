// modsl2: command-line front end for orbit listings, triple construction,
// brute-force verification, maximality witnesses and algebra checks.
//
// Exit codes: 0 expected outcome, 2 bad configuration, 3 domain
// precondition failed, 4 result contradicts the classification, 5 budget.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "modsl2/json_io.hpp"
#include "modsl2/modsl2.hpp"

namespace {

using namespace modsl2;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitDomain = 3;
constexpr int kExitContradiction = 4;
constexpr int kExitBudget = 5;

struct Config {
  std::string group = "GL";
  int n = 0;
  long long p = 0;
  std::string variety;
  std::string label;
  std::string spin;
  std::uint64_t budget = 100'000'000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::string format;
  std::string output;
  bool progress = false;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

GroupKind checked_group(const Config& c) {
  try {
    return parse_group_kind(c.group);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

std::uint32_t checked_prime(const Config& c) {
  if (c.p <= 2 || c.p >= static_cast<long long>(kMaxModulus) || !is_odd_prime(static_cast<std::uint64_t>(c.p)))
    throw ConfigError("--p must be an odd prime below 65536");
  return static_cast<std::uint32_t>(c.p);
}

void check_rank(const Config& c, GroupKind kind) {
  if (c.n <= 0) throw ConfigError("--n must be positive");
  if (kind == GroupKind::Sp && c.n % 2) throw ConfigError("Sp needs even --n");
}

VarietyKind checked_variety(const Config& c, VarietyKind fallback) {
  if (c.variety.empty()) return fallback;
  try {
    return parse_variety(c.variety);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

void emit(const Config& c, const std::string& text) {
  if (c.output.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(c.output);
  if (!out) throw ConfigError("cannot open output file " + c.output);
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

void emit_json(const Config& c, const json& j) { emit(c, j.dump(2)); }

int cmd_orbits(const Config& c) {
  const GroupKind kind = checked_group(c);
  const std::uint32_t p = checked_prime(c);
  check_rank(c, kind);
  const VarietyKind v = checked_variety(c, VarietyKind::NilAll);
  const auto labels = enumerate_orbits(kind, c.n, static_cast<int>(p), v);
  const int pi = static_cast<int>(p);
  if (c.format == "text") {
    std::string out;
    for (const auto& l : labels) {
      out += l.to_string();
      out += "  Np-1=" + std::to_string(in_variety(l.partition, VarietyKind::NpMinus1, pi));
      out += " 1Np=" + std::to_string(in_variety(l.partition, VarietyKind::OneNp, pi));
      out += " Np=" + std::to_string(in_variety(l.partition, VarietyKind::Np, pi)) + "\n";
    }
    emit(c, out);
    return kExitOk;
  }
  json arr = json::array();
  for (const auto& l : labels) {
    json j = to_json(l);
    j["in_NpMinus1"] = in_variety(l.partition, VarietyKind::NpMinus1, pi);
    j["in_OneNp"] = in_variety(l.partition, VarietyKind::OneNp, pi);
    j["in_Np"] = in_variety(l.partition, VarietyKind::Np, pi);
    j["in_max_variety"] = in_variety(l.partition, max_variety(kind), pi);
    arr.push_back(std::move(j));
  }
  emit_json(c, json{{"kind", c.group}, {"n", c.n}, {"p", p}, {"variety", std::string(to_string(v))}, {"orbits", arr}});
  return kExitOk;
}

OrbitLabel checked_label(const Config& c, GroupKind kind) {
  OrbitLabel label;
  try {
    label.partition = parse_partition(c.label);
    if (!c.spin.empty()) label.spin = parse_spin(c.spin);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  // Default to spin I for very even SO labels when none is given.
  if (kind == GroupKind::SO && !label.spin && !label.partition.empty() && is_very_even(label.partition))
    label.spin = Spin::I;
  return label;
}

int cmd_construct(const Config& c) {
  const GroupKind kind = checked_group(c);
  const std::uint32_t p = checked_prime(c);
  check_rank(c, kind);
  if (c.label.empty()) throw ConfigError("--label is required");
  const OrbitLabel label = checked_label(c, kind);
  const ConstructedTriple t = construct_triple(standard_group(kind, static_cast<std::size_t>(c.n), p), label);
  const TripleChecks checks = check_constructed(t);
  json j = to_json(t);
  j["checks"] = to_json(checks);
  emit_json(c, j);
  return checks.all() ? kExitOk : kExitContradiction;
}

int cmd_verify(const Config& c) {
  const GroupKind kind = checked_group(c);
  const std::uint32_t p = checked_prime(c);
  check_rank(c, kind);
  const VarietyKind v = checked_variety(c, max_variety(kind));
  VerifyOptions opt;
  opt.budget = c.budget;
  opt.seed = c.seed;
  opt.threads = c.threads;
  if (c.progress)
    opt.progress = [](const OrbitResult& o) {
      std::cerr << "orbit " << o.label.to_string() << " completions=" << o.completions_found
                << " in_variety=" << o.completions_in_variety << " classes=" << o.iso_classes << '\n';
    };
  const VerificationReport rep = verify_sl2_property(kind, static_cast<std::size_t>(c.n), p, v, opt);
  json j = to_json(rep);
  const Verdict expected = expected_verdict(kind, c.n, static_cast<int>(p), v);
  j["expected_verdict"] = std::string(to_string(expected));
  emit_json(c, j);
  if (rep.verdict == Verdict::BudgetExceeded) return kExitBudget;
  return rep.verdict == expected ? kExitOk : kExitContradiction;
}

int cmd_maximality(const Config& c) {
  const GroupKind kind = checked_group(c);
  const std::uint32_t p = checked_prime(c);
  check_rank(c, kind);
  const MaximalityReport rep = verify_maximality(kind, static_cast<std::size_t>(c.n), p, c.budget, c.seed);
  emit_json(c, to_json(rep));
  if (rep.verdict == Verdict::BudgetExceeded) return kExitBudget;
  return rep.verdict == Verdict::FailsWithWitness ? kExitOk : kExitContradiction;
}

int cmd_algebra_check(const Config& c) {
  const std::uint32_t p = checked_prime(c);
  const std::size_t dim = dimension_of_A(p);
  const std::uint64_t expected = expected_dimension_of_A(p);
  const bool basis_ok = verify_basis_S(p);
  const bool relations_ok = check_power_relations(p, static_cast<int>(p) - 2);
  emit_json(c, json{{"p", p}, {"dim", dim}, {"expected", expected}, {"basis_ok", basis_ok}, {"relations_ok", relations_ok}});
  return dim == expected && basis_ok && relations_ok ? kExitOk : kExitContradiction;
}

int cmd_hasse(const Config& c) {
  const GroupKind kind = checked_group(c);
  const std::uint32_t p = checked_prime(c);
  check_rank(c, kind);
  const VarietyKind v = checked_variety(c, VarietyKind::NilAll);
  const HasseDiagram h = hasse_diagram(kind, c.n, static_cast<int>(p), v);
  if (c.format == "json") {
    json nodes = json::array(), edges = json::array();
    for (const auto& l : h.nodes) nodes.push_back(to_json(l));
    for (auto [lo, hi] : h.edges) edges.push_back({lo, hi});
    emit_json(c, json{{"nodes", nodes}, {"edges", edges}});
  } else {
    emit(c, to_dot(h, kind));
  }
  return kExitOk;
}

int cmd_witness_slp(const Config& c) {
  const GroupKind kind = checked_group(c);
  const std::uint32_t p = checked_prime(c);
  check_rank(c, kind);
  const CounterexampleWitness w = slp_counterexample(kind, static_cast<std::size_t>(c.n), p);
  emit_json(c, to_json(w));
  return kExitOk;
}

void common_options(CLI::App* sub, Config& c, bool group_opts) {
  if (group_opts) {
    sub->add_option("--group", c.group, "GL, SL, Sp, O or SO")->required();
    sub->add_option("--n", c.n, "rank")->required();
  }
  sub->add_option("--p", c.p, "odd prime")->required();
  sub->add_option("--format", c.format, "json, dot or text");
  sub->add_option("--output", c.output, "write to this file instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sl2-triples in classical Lie algebras over GF(p)"};
  app.require_subcommand(1);
  Config cfg;

  auto* orbits = app.add_subcommand("orbits", "list orbit labels with variety membership");
  common_options(orbits, cfg, true);
  orbits->add_option("--variety", cfg.variety, "NilAll, NpMinus1, OneNp or Np (default NilAll)");

  auto* construct = app.add_subcommand("construct", "build the canonical triple for an orbit");
  common_options(construct, cfg, true);
  construct->add_option("--label", cfg.label, "partition, comma separated")->required();
  construct->add_option("--spin", cfg.spin, "I or II for very even SO labels");

  auto* verify = app.add_subcommand("verify", "brute-force check of the orbit bijection");
  common_options(verify, cfg, true);
  verify->add_option("--variety", cfg.variety, "default: the maximal variety of the group");

  auto* maximality = app.add_subcommand("maximality", "non-injectivity witnesses outside the maximal variety");
  common_options(maximality, cfg, true);

  for (auto* sub : {verify, maximality}) {
    sub->add_option("--budget", cfg.budget, "lattice points to enumerate")->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "seed for randomized isomorphism search");
    sub->add_option("--threads", cfg.threads, "worker threads")->check(CLI::Range(1u, 256u));
    sub->add_flag("--progress", cfg.progress, "one line per orbit on stderr");
  }

  auto* algebra = app.add_subcommand("algebra-check", "dimension, basis and power relations of the quotient algebra");
  common_options(algebra, cfg, false);

  auto* hasse = app.add_subcommand("hasse", "closure order Hasse diagram");
  common_options(hasse, cfg, true);
  hasse->add_option("--variety", cfg.variety, "default NilAll");

  auto* witness = app.add_subcommand("witness-slp", "the two baby Verma completions of one element");
  common_options(witness, cfg, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*orbits) return cmd_orbits(cfg);
    if (*construct) return cmd_construct(cfg);
    if (*verify) return cmd_verify(cfg);
    if (*maximality) return cmd_maximality(cfg);
    if (*algebra) return cmd_algebra_check(cfg);
    if (*hasse) return cmd_hasse(cfg);
    if (*witness) return cmd_witness_slp(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    switch (e.code()) {
      case Errc::BudgetExceeded: return kExitBudget;
      case Errc::InvalidModulus:
      case Errc::OddRankForSp:
      case Errc::ParseError: return kExitConfig;
      default: return kExitDomain;
    }
  }
  return kExitConfig;
}
