#include "pmlkit/logic.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace pmlkit {

namespace {

constexpr std::array<const char*, 8> kNames = {"K", "KT", "KB", "KTB", "K4", "S4", "KB4", "S5"};

int cube_rank(std::uint8_t mask) {
  static constexpr std::array<int, 8> rank = {0, 1, 2, 4, 3, 5, 6, 7};
  return rank[mask];
}

}  // namespace

Logic Logic::parse(std::string_view name) {
  std::string up(name);
  std::transform(up.begin(), up.end(), up.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  for (std::uint8_t m = 0; m < 8; ++m)
    if (up == kNames[m]) return Logic(m);
  throw std::invalid_argument("unknown logic '" + std::string(name) +
                              "' (expected K, KT, KB, K4, KTB, S4, KB4 or S5)");
}

const std::array<Logic, 8>& Logic::cube() {
  static const std::array<Logic, 8> all = {Logic(0), Logic(T),         Logic(B),         Logic(Four),
                                           Logic(T | B), Logic(T | Four), Logic(B | Four), Logic(7)};
  return all;
}

std::string Logic::name() const { return kNames[mask_]; }

std::vector<FrameProperty> Logic::frame_properties() const {
  std::vector<FrameProperty> out;
  if (has(T)) out.push_back(FrameProperty::Reflexive);
  if (has(B)) out.push_back(FrameProperty::Symmetric);
  if (has(Four)) out.push_back(FrameProperty::Transitive);
  return out;
}

bool Logic::operator<(const Logic& o) const { return cube_rank(mask_) < cube_rank(o.mask_); }

}  // namespace pmlkit
