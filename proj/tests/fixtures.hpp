#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "pmlkit/kripke.hpp"
#include "pmlkit/syntax.hpp"

namespace pmlkit::testing {

inline Formula f(std::string_view text) { return parse(text, infer_signature(text)); }

inline Formula f(std::string_view text, const Signature& sig) { return parse(text, sig); }

/// Worlds 0, 1, 2; every world sees itself, 0 sees 1 and 2, 2 sees 0.
/// p holds at 0 and 2.
inline KripkeModel reflexive3_model() {
  return KripkeModel(Frame(3, {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {2, 0}, {2, 2}}), Signature{"p"},
                     {{true, false, true}});
}

/// Valuation bit a*n + w sets atom a at world w.
inline KripkeModel model_from_bits(const Frame& fr, const Signature& sig, std::uint64_t val) {
  const std::size_t n = fr.size();
  std::vector<std::vector<bool>> truth(sig.size(), std::vector<bool>(n));
  for (std::size_t a = 0; a < sig.size(); ++a)
    for (std::size_t w = 0; w < n; ++w) truth[a][w] = (val >> (a * n + w)) & 1;
  return KripkeModel(fr, sig, std::move(truth));
}

/// Every model with 1..max_worlds worlds over `sig`. With `subsets`, every
/// non-empty designated subset too; otherwise all worlds are designated.
inline void for_each_model(int max_worlds, const Signature& sig, bool subsets,
                           const std::function<void(const KripkeModel&)>& visit) {
  for (std::size_t n = 1; n <= static_cast<std::size_t>(max_worlds); ++n) {
    const std::uint64_t all = (std::uint64_t{1} << n) - 1;
    for (std::uint64_t in = subsets ? 1 : all; in <= all; ++in)
      for (std::uint64_t r = 0; r < (std::uint64_t{1} << (n * n)); ++r) {
        const Frame fr = Frame::from_bits(n, in, r);
        for (std::uint64_t v = 0; v < (std::uint64_t{1} << (sig.size() * n)); ++v)
          visit(model_from_bits(fr, sig, v));
      }
  }
}

}  // namespace pmlkit::testing
