#pragma once

#include <algorithm>
#include <charconv>
#include <compare>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "modsl2/error.hpp"

namespace modsl2 {

/// A weakly decreasing sequence of positive integers. Parts beyond the stored
/// length read as zero.
class Partition {
 public:
  Partition() = default;

  /// Throws InvalidLabel unless `parts` is weakly decreasing and positive.
  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] <= 0) throw Error(Errc::InvalidLabel, "partition parts must be positive");
      if (i > 0 && parts_[i] > parts_[i - 1])
        throw Error(Errc::InvalidLabel, "partition parts must be weakly decreasing");
    }
  }

  static Partition from_unsorted(std::vector<int> parts) {
    std::erase_if(parts, [](int x) { return x == 0; });
    std::sort(parts.begin(), parts.end(), std::greater<>());
    return Partition(std::move(parts));
  }

  /// (k, 1, ..., 1) style helpers: `ones` copies of 1 appended to `head`.
  static Partition with_ones(std::vector<int> head, int ones) {
    for (int i = 0; i < ones; ++i) head.push_back(1);
    return from_unsorted(std::move(head));
  }

  const std::vector<int>& parts() const { return parts_; }
  std::size_t length() const { return parts_.size(); }
  bool empty() const { return parts_.empty(); }
  int weight() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

  /// One-indexed part lookup with the zero-padding convention.
  int part(std::size_t i) const { return i >= 1 && i <= parts_.size() ? parts_[i - 1] : 0; }
  int largest() const { return part(1); }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(parts_[i]);
    }
    return s + ")";
  }

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition& a, const Partition& b) { return a.parts_ <=> b.parts_; }

 private:
  std::vector<int> parts_;
};

inline int multiplicity(const Partition& lambda, int i) {
  return static_cast<int>(std::count(lambda.parts().begin(), lambda.parts().end(), i));
}

inline Partition join(const Partition& a, const Partition& b) {
  std::vector<int> merged;
  merged.reserve(a.length() + b.length());
  std::merge(a.parts().begin(), a.parts().end(), b.parts().begin(), b.parts().end(),
             std::back_inserter(merged), std::greater<>());
  return Partition(std::move(merged));
}

/// Prefix-sum comparison: true iff sum_{i<=r} mu_i <= sum_{i<=r} lambda_i for every r.
inline bool dominance_leq(const Partition& mu, const Partition& lambda) {
  long long smu = 0, slam = 0;
  const std::size_t len = std::max(mu.length(), lambda.length());
  for (std::size_t r = 1; r <= len; ++r) {
    smu += mu.part(r);
    slam += lambda.part(r);
    if (smu > slam) return false;
  }
  return true;
}

/// All partitions of n in reverse lexicographic order, (n) first and (1^n) last.
inline std::vector<Partition> partitions_of(int n) {
  std::vector<Partition> out;
  if (n < 0) return out;
  if (n == 0) {
    out.emplace_back();
    return out;
  }
  std::vector<int> cur{n};
  while (true) {
    out.emplace_back(cur);
    // Find the rightmost part greater than one.
    int rem = 0;
    while (!cur.empty() && cur.back() == 1) {
      rem += 1;
      cur.pop_back();
    }
    if (cur.empty()) break;
    int k = --cur.back();
    rem += 1;
    while (rem > 0) {
      int take = std::min(k, rem);
      cur.push_back(take);
      rem -= take;
    }
  }
  return out;
}

/// Parses "3,2,2" (or "3 2 2"); the empty string is the empty partition.
inline Partition parse_partition(std::string_view text) {
  std::vector<int> parts;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ',' || text[i] == ' ' || text[i] == '(' || text[i] == ')')) ++i;
    if (i >= text.size()) break;
    int v = 0;
    auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), v);
    if (ec != std::errc{}) throw Error(Errc::ParseError, "bad partition text '" + std::string(text) + "'");
    parts.push_back(v);
    i = static_cast<std::size_t>(ptr - text.data());
  }
  return Partition(std::move(parts));
}

}  // namespace modsl2
