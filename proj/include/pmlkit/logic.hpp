#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pmlkit/kripke.hpp"

namespace pmlkit {

/// A point of the modal cube over the schemata T, B and 4.
class Logic {
 public:
  enum Axiom : std::uint8_t { T = 1, B = 2, Four = 4 };

  constexpr Logic() = default;
  constexpr explicit Logic(std::uint8_t mask) : mask_(mask & 7) {}

  /// K, KT, KB, K4, KTB, S4, KB4, S5 (case-insensitive).
  static Logic parse(std::string_view name);
  /// The eight logics ordered K, KT, KB, K4, KTB, S4, KB4, S5.
  static const std::array<Logic, 8>& cube();

  std::uint8_t mask() const { return mask_; }
  bool has(Axiom a) const { return (mask_ & a) != 0; }
  /// Schema inclusion, i.e. frame-class inclusion reversed.
  bool extends(Logic weaker) const { return (weaker.mask_ & ~mask_) == 0; }
  std::string name() const;
  /// T -> reflexive, B -> symmetric, 4 -> transitive.
  std::vector<FrameProperty> frame_properties() const;

  bool operator==(const Logic&) const = default;
  bool operator<(const Logic& o) const;  // cube order

 private:
  std::uint8_t mask_ = 0;
};

}  // namespace pmlkit
