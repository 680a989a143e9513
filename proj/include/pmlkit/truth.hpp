#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

namespace pmlkit {

/// Boolean algebra over a truth carrier. `bool` is ordinary evaluation;
/// `Lanes` evaluates 64 valuations at once, one per bit.
template <class T>
struct TruthOps;

template <>
struct TruthOps<bool> {
  static constexpr bool top() { return true; }
  static constexpr bool neg(bool a) { return !a; }
  static constexpr bool imp(bool a, bool b) { return !a || b; }
  static constexpr bool conj(bool a, bool b) { return a && b; }
  static constexpr bool none(bool a) { return !a; }
  static constexpr bool from_bool(bool a) { return a; }
};

using Lanes = std::uint64_t;

template <>
struct TruthOps<Lanes> {
  static constexpr Lanes top() { return ~Lanes{0}; }
  static constexpr Lanes neg(Lanes a) { return ~a; }
  static constexpr Lanes imp(Lanes a, Lanes b) { return ~a | b; }
  static constexpr Lanes conj(Lanes a, Lanes b) { return a & b; }
  static constexpr bool none(Lanes a) { return a == 0; }
  static constexpr Lanes from_bool(bool a) { return a ? top() : Lanes{0}; }
};

/// Bit-sliced enumeration of all assignments to `bits` boolean variables.
///
/// Assignment index k sets variable i iff bit i of k is set. Block b holds
/// assignments b*64 .. b*64+63; lane j of block b is assignment b*64+j.
class AssignmentLanes {
 public:
  explicit AssignmentLanes(std::size_t bits) : bits_(bits) {}

  std::size_t bits() const { return bits_; }
  std::size_t blocks() const { return bits_ <= 6 ? 1 : std::size_t{1} << (bits_ - 6); }
  /// Lanes that correspond to real assignments.
  Lanes live() const {
    return bits_ >= 6 ? ~Lanes{0} : (Lanes{1} << (std::size_t{1} << bits_)) - 1;
  }
  /// Lanes (within `block`) where variable `var` is true.
  Lanes variable(std::size_t var, std::size_t block) const {
    static constexpr std::array<Lanes, 6> kPattern = {
        0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
        0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull};
    if (var < 6) return kPattern[var] & live();
    return ((block >> (var - 6)) & 1) ? live() : Lanes{0};
  }
  std::uint64_t assignment(std::size_t block, unsigned lane) const {
    return (static_cast<std::uint64_t>(block) << 6) | lane;
  }

 private:
  std::size_t bits_;
};

}  // namespace pmlkit
