#include <algorithm>
#include <cmath>

#include "axial/automaton.hpp"
#include "axial/counting.hpp"
#include "axial/errors.hpp"
#include "axial/mean_cycle.hpp"

namespace axial {

namespace {

// Perron root of an irreducible nonnegative matrix given as a multigraph on
// vertices 0..n-1. Iterates with A + I, which is primitive, and stops when
// the Collatz-Wielandt bounds meet.
double perron_root(std::size_t n, const std::vector<Arc>& arcs, double tol) {
  std::vector<double> x(n, 1.0), y(n);
  const int max_iter = 1'000'000;
  for (int it = 0; it < max_iter; ++it) {
    y = x;
    for (const auto& a : arcs) y[a.dst] += x[a.src];
    double lo = INFINITY, hi = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      const double r = y[v] / x[v];
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    if (hi - lo <= tol * lo) return 0.5 * (lo + hi) - 1.0;
    const double scale = *std::max_element(y.begin(), y.end());
    for (std::size_t v = 0; v < n; ++v) x[v] = y[v] / scale;
  }
  throw Error("power iteration did not converge");
}

}  // namespace

double entropy_1d(const SubshiftSpec& spec, double tol, const Caps& caps) {
  std::vector<SetLetter> singletons;
  const LetterMask live = spec.alphabet().full_mask() & ~spec.dead_letters();
  for (std::size_t a = 0; a < spec.alphabet().size(); ++a) {
    if ((live >> a) & 1U) singletons.push_back(SetLetter::singleton(static_cast<Letter>(a)));
  }
  if (singletons.empty()) throw EmptyLanguage("every letter is forbidden");
  const WindowGraph g = build_window_graph_over(spec, singletons, caps);

  std::vector<Arc> arcs;
  for (const auto& e : g.edges) arcs.push_back({e.src, e.dst});
  double best = 0.0;
  bool any = false;
  for (const auto& comp : strongly_connected_components(g.vertex_count(), arcs)) {
    std::vector<std::int64_t> local(g.vertex_count(), -1);
    for (std::size_t i = 0; i < comp.size(); ++i) local[comp[i]] = static_cast<std::int64_t>(i);
    std::vector<Arc> inner;
    for (const auto& a : arcs) {
      if (local[a.src] >= 0 && local[a.dst] >= 0) {
        inner.push_back({static_cast<std::uint32_t>(local[a.src]),
                         static_cast<std::uint32_t>(local[a.dst])});
      }
    }
    if (inner.empty()) continue;
    best = std::max(best, perron_root(comp.size(), inner, tol));
    any = true;
  }
  if (!any) throw EmptyLanguage("no bi-infinite point");
  return std::log(best);
}

}  // namespace axial
