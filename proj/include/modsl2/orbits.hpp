#pragma once

// Nilpotent orbit labels for GL, SL, Sp, O and SO, the varieties cut out by
// Jordan-type bounds, and the closure order between labels.

#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "modsl2/error.hpp"
#include "modsl2/partition.hpp"

namespace modsl2 {

enum class GroupKind { GL, SL, Sp, O, SO };

constexpr std::string_view to_string(GroupKind k) {
  switch (k) {
    case GroupKind::GL: return "GL";
    case GroupKind::SL: return "SL";
    case GroupKind::Sp: return "Sp";
    case GroupKind::O: return "O";
    case GroupKind::SO: return "SO";
  }
  return "?";
}

inline GroupKind parse_group_kind(std::string_view s) {
  if (s == "GL") return GroupKind::GL;
  if (s == "SL") return GroupKind::SL;
  if (s == "Sp") return GroupKind::Sp;
  if (s == "O") return GroupKind::O;
  if (s == "SO") return GroupKind::SO;
  throw Error(Errc::ParseError, "unknown group kind '" + std::string(s) + "'");
}

constexpr bool has_form(GroupKind k) { return k == GroupKind::Sp || k == GroupKind::O || k == GroupKind::SO; }
constexpr bool is_orthogonal(GroupKind k) { return k == GroupKind::O || k == GroupKind::SO; }

enum class Spin { I, II };

constexpr std::string_view to_string(Spin s) { return s == Spin::I ? "I" : "II"; }

inline Spin parse_spin(std::string_view s) {
  if (s == "I") return Spin::I;
  if (s == "II") return Spin::II;
  throw Error(Errc::ParseError, "spin must be I or II, got '" + std::string(s) + "'");
}

struct OrbitLabel {
  Partition partition;
  std::optional<Spin> spin;

  std::string to_string() const {
    std::string s = partition.to_string();
    if (spin) s += "." + std::string(modsl2::to_string(*spin));
    return s;
  }
  friend bool operator==(const OrbitLabel&, const OrbitLabel&) = default;
};

enum class VarietyKind { NilAll, NpMinus1, OneNp, Np };

constexpr std::string_view to_string(VarietyKind v) {
  switch (v) {
    case VarietyKind::NilAll: return "NilAll";
    case VarietyKind::NpMinus1: return "NpMinus1";
    case VarietyKind::OneNp: return "OneNp";
    case VarietyKind::Np: return "Np";
  }
  return "?";
}

inline VarietyKind parse_variety(std::string_view s) {
  if (s == "NilAll" || s == "N") return VarietyKind::NilAll;
  if (s == "NpMinus1" || s == "Np-1") return VarietyKind::NpMinus1;
  if (s == "OneNp" || s == "1Np") return VarietyKind::OneNp;
  if (s == "Np") return VarietyKind::Np;
  throw Error(Errc::ParseError, "unknown variety '" + std::string(s) + "'");
}

/// Parity rule: Sp needs even multiplicity for odd parts, O/SO for even parts.
inline bool valid_for(GroupKind kind, const Partition& lambda) {
  if (!has_form(kind)) return true;
  const int bad_parity = kind == GroupKind::Sp ? 1 : 0;
  for (int part : lambda.parts())
    if (part % 2 == bad_parity && multiplicity(lambda, part) % 2 != 0) return false;
  return true;
}

inline bool is_very_even(const Partition& lambda) {
  for (int part : lambda.parts())
    if (part % 2 != 0 || multiplicity(lambda, part) % 2 != 0) return false;
  return true;
}

inline bool in_variety(const Partition& lambda, VarietyKind v, int p) {
  switch (v) {
    case VarietyKind::NilAll: return true;
    case VarietyKind::NpMinus1: return lambda.part(1) <= p - 1;
    case VarietyKind::OneNp: return lambda.part(1) <= p && lambda.part(2) <= p - 1;
    case VarietyKind::Np: return lambda.part(1) <= p;
  }
  return false;
}

constexpr VarietyKind max_variety(GroupKind kind) {
  return is_orthogonal(kind) ? VarietyKind::OneNp : VarietyKind::NpMinus1;
}

/// A spin flag is required exactly for very even SO labels.
inline bool label_valid_for(GroupKind kind, const OrbitLabel& label) {
  if (!valid_for(kind, label.partition)) return false;
  const bool needs_spin = kind == GroupKind::SO && !label.partition.empty() && is_very_even(label.partition);
  return needs_spin == label.spin.has_value();
}

inline std::vector<OrbitLabel> enumerate_orbits(GroupKind kind, int n, int p, VarietyKind v) {
  if (kind == GroupKind::Sp && n % 2 != 0) throw Error(Errc::OddRankForSp, "Sp needs even rank, got n = " + std::to_string(n));
  std::vector<OrbitLabel> out;
  for (auto& lambda : partitions_of(n)) {
    if (!valid_for(kind, lambda) || !in_variety(lambda, v, p)) continue;
    if (kind == GroupKind::SO && !lambda.empty() && is_very_even(lambda)) {
      out.push_back({lambda, Spin::I});
      out.push_back({lambda, Spin::II});
    } else {
      out.push_back({lambda, std::nullopt});
    }
  }
  return out;
}

inline bool closure_leq(const OrbitLabel& a, const OrbitLabel& b, GroupKind kind) {
  if (a.partition.weight() != b.partition.weight())
    throw Error(Errc::SizeMismatch, "labels of different sizes: " + a.to_string() + " vs " + b.to_string());
  if (!label_valid_for(kind, a) || !label_valid_for(kind, b))
    throw Error(Errc::InvalidLabel, "label not valid for " + std::string(to_string(kind)));
  if (kind == GroupKind::SO && a.partition == b.partition) return a.spin == b.spin;
  return dominance_leq(a.partition, b.partition);
}

/// Covering relations (lower, upper) as index pairs into `labels`.
inline std::vector<std::pair<std::size_t, std::size_t>> covering_relations(const std::vector<OrbitLabel>& labels,
                                                                          GroupKind kind) {
  const std::size_t n = labels.size();
  std::vector<std::vector<char>> lt(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) lt[i][j] = i != j && closure_leq(labels[i], labels[j], kind);
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!lt[i][j]) continue;
      bool covered = true;
      for (std::size_t k = 0; k < n && covered; ++k)
        if (lt[i][k] && lt[k][j]) covered = false;
      if (covered) edges.emplace_back(i, j);
    }
  return edges;
}

struct HasseDiagram {
  std::vector<OrbitLabel> nodes;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  ///< (lower, upper)
};

inline HasseDiagram hasse_diagram(GroupKind kind, int n, int p, VarietyKind v) {
  HasseDiagram h;
  h.nodes = enumerate_orbits(kind, n, p, v);
  h.edges = covering_relations(h.nodes, kind);
  return h;
}

inline std::string to_dot(const HasseDiagram& h, GroupKind kind) {
  std::ostringstream os;
  os << "digraph hasse_" << to_string(kind) << " {\n  rankdir=BT;\n";
  for (const auto& node : h.nodes) os << "  \"" << node.to_string() << "\";\n";
  for (auto [lo, hi] : h.edges)
    os << "  \"" << h.nodes[lo].to_string() << "\" -> \"" << h.nodes[hi].to_string() << "\";\n";
  os << "}\n";
  return os.str();
}

}  // namespace modsl2
