#include "pmlkit/report.hpp"

#include <algorithm>

namespace pmlkit {

bool Report::ok() const {
  return std::all_of(claims.begin(), claims.end(),
                     [](const ClaimReport& c) { return c.violation_count == 0; });
}

ClaimReport& Report::claim(const std::string& name) {
  for (auto& c : claims)
    if (c.name == name) return c;
  ClaimReport fresh;
  fresh.name = name;
  claims.push_back(std::move(fresh));
  return claims.back();
}

const ClaimReport* Report::find(const std::string& name) const {
  for (const auto& c : claims)
    if (c.name == name) return &c;
  return nullptr;
}

void Report::merge(const Report& other) {
  for (const auto& o : other.claims) {
    ClaimReport& c = claim(o.name);
    c.instances += o.instances;
    c.violation_count += o.violation_count;
    for (const auto& v : o.violations) {
      if (c.violations.size() >= ClaimReport::kMaxListed) break;
      c.violations.push_back(v);
    }
  }
}

std::string Report::to_text() const {
  std::string out;
  for (const auto& c : claims) {
    out += "theorem: " + c.name + "\n";
    out += "instances: " + std::to_string(c.instances) + "\n";
    out += "violations: " + std::to_string(c.violation_count) + "\n";
    for (const auto& v : c.violations) out += "  - " + v + "\n";
  }
  return out;
}

}  // namespace pmlkit
