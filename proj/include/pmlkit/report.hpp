#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pmlkit {

/// Outcome of one exhaustively checked claim.
struct ClaimReport {
  std::string name;
  std::uint64_t instances = 0;
  std::uint64_t violation_count = 0;
  /// First few violations, rendered; `violation_count` counts all of them.
  std::vector<std::string> violations;

  static constexpr std::size_t kMaxListed = 16;

  void add_violation(std::string detail) {
    ++violation_count;
    if (violations.size() < kMaxListed) violations.push_back(std::move(detail));
  }
};

/// Ordered list of claims. Merging adds counts claim-by-claim, so partial
/// reports from disjoint slices of a search space combine in any order.
struct Report {
  std::vector<ClaimReport> claims;

  bool ok() const;
  ClaimReport& claim(const std::string& name);
  const ClaimReport* find(const std::string& name) const;
  void merge(const Report& other);

  /// theorem: <name> / instances: <n> / violations: <k>, then `  - ...`
  /// lines, one block per claim.
  std::string to_text() const;
};

}  // namespace pmlkit
