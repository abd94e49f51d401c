#include <optional>

#include "axial/errors.hpp"
#include "axial/mean_cycle.hpp"

namespace axial {

namespace mp = boost::multiprecision;

namespace {

// (num/den)^(1/len)
struct RootRatio {
  BigInt num;
  BigInt den;
  std::uint64_t len;
};

// Exact comparison of (a.num/a.den)^(1/a.len) and (b.num/b.den)^(1/b.len).
int compare(const RootRatio& a, const RootRatio& b) {
  const auto pa = static_cast<unsigned>(a.len);
  const auto pb = static_cast<unsigned>(b.len);
  const BigInt lhs = mp::pow(a.num, pb) * mp::pow(b.den, pa);
  const BigInt rhs = mp::pow(b.num, pa) * mp::pow(a.den, pb);
  return (lhs > rhs) - (lhs < rhs);
}

}  // namespace

ExactScore max_mean_cycle_reference(std::size_t vertex_count, std::span<const Arc> arcs,
                                    std::span<const std::uint64_t> weights) {
  std::optional<ExactScore> best;
  for (const auto& comp : strongly_connected_components(vertex_count, arcs)) {
    const std::size_t n = comp.size();
    std::vector<std::int64_t> local(vertex_count, -1);
    for (std::size_t i = 0; i < n; ++i) local[comp[i]] = static_cast<std::int64_t>(i);
    bool has_arc = false;
    for (const auto& a : arcs) has_arc |= local[a.src] >= 0 && local[a.dst] >= 0;
    if (!has_arc) continue;

    // table[l][v]: largest product over walks of length l inside the component ending at v.
    std::vector<std::vector<std::optional<BigInt>>> table(
        n + 1, std::vector<std::optional<BigInt>>(n));
    for (auto& cell : table[0]) cell = BigInt(1);
    for (std::size_t l = 1; l <= n; ++l) {
      for (std::size_t e = 0; e < arcs.size(); ++e) {
        const auto u = local[arcs[e].src];
        const auto v = local[arcs[e].dst];
        if (u < 0 || v < 0 || !table[l - 1][u]) continue;
        BigInt cand = *table[l - 1][u] * weights[e];
        auto& slot = table[l][v];
        if (!slot || cand > *slot) slot = cand;
      }
    }

    std::optional<RootRatio> comp_best;
    for (std::size_t v = 0; v < n; ++v) {
      if (!table[n][v]) continue;
      std::optional<RootRatio> worst;
      for (std::size_t l = 0; l < n; ++l) {
        if (!table[l][v]) continue;
        RootRatio r{*table[n][v], *table[l][v], n - l};
        if (!worst || compare(r, *worst) < 0) worst = r;
      }
      if (worst && (!comp_best || compare(*worst, *comp_best) > 0)) comp_best = worst;
    }
    if (!comp_best) continue;
    // At the optimum the ratio is an integer power of the cycle mean.
    if (comp_best->num % comp_best->den != 0) throw Error("internal: non-integral Karp ratio");
    ExactScore s = canonicalize_score(ExactScore{comp_best->num / comp_best->den, comp_best->len});
    if (!best || score_compare(s, *best) > 0) best = s;
  }
  if (!best) throw ValidationError("graph has no cycle");
  return *best;
}

}  // namespace axial
