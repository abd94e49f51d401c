#pragma once

#include <cstdint>
#include <vector>

#include "axial/core.hpp"

namespace axial::detail {

// Constrained letters keep their own symbol; all free letters share one,
// since no forbidden word mentions them.
struct CollapsedAlphabet {
  std::vector<Letter> constrained;  // symbol i < constrained.size() is this letter
  std::uint64_t free_count = 0;     // multiplicity of the shared symbol, if present
  std::vector<std::vector<std::vector<std::uint8_t>>> by_last;  // forbidden words keyed by last symbol

  std::size_t size() const { return constrained.size() + (free_count > 0 ? 1 : 0); }
  bool is_free(std::uint8_t s) const { return s >= constrained.size(); }
};

inline CollapsedAlphabet collapse(const SubshiftSpec& spec) {
  CollapsedAlphabet c;
  std::vector<int> index(spec.alphabet().size(), -1);
  for (std::size_t a = 0; a < spec.alphabet().size(); ++a) {
    if ((spec.constrained_letters() >> a) & 1U) {
      index[a] = static_cast<int>(c.constrained.size());
      c.constrained.push_back(static_cast<Letter>(a));
    }
  }
  c.free_count = static_cast<std::uint64_t>(std::popcount(spec.free_letters()));
  c.by_last.resize(c.size());
  for (const auto& f : spec.forbidden()) {
    if (f.size() < 2) continue;  // dead letters are simply absent
    std::vector<std::uint8_t> g;
    for (auto a : f) g.push_back(static_cast<std::uint8_t>(index[a]));
    c.by_last[g.back()].push_back(std::move(g));
  }
  return c;
}

}  // namespace axial::detail
