#include "axial/automaton.hpp"

#include <algorithm>
#include <deque>
#include <ostream>

#include "axial/errors.hpp"

namespace axial {

namespace {

/// Forbidden words ending at the last cell of `w` that fit there.
const Word* violation_at_end(std::span<const SetLetter> w, const std::vector<Word>& forbidden) {
  for (const auto& f : forbidden) {
    if (f.size() > w.size()) continue;
    if (fits_at(w, w.size() - f.size(), f)) return &f;
  }
  return nullptr;
}

void normalize_universe(std::vector<SetLetter>& u) {
  std::sort(u.begin(), u.end());
  u.erase(std::unique(u.begin(), u.end()), u.end());
}

std::uint64_t saturating_pow(std::uint64_t base, std::size_t e) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < e; ++i) {
    if (base != 0 && r > UINT64_MAX / base) return UINT64_MAX;
    r *= base;
  }
  return r;
}

void enumerate_windows(const SubshiftSpec& spec, const std::vector<SetLetter>& universe,
                       std::size_t k, const Caps& caps, SetWord& prefix,
                       std::vector<SetWord>& out) {
  if (prefix.size() == k) {
    if (out.size() >= caps.max_vertices) {
      throw CapExceeded("window graph exceeds the vertex cap of " +
                        std::to_string(caps.max_vertices));
    }
    out.push_back(prefix);
    return;
  }
  for (auto cell : universe) {
    prefix.push_back(cell);
    if (!violation_at_end(prefix, spec.forbidden())) {
      enumerate_windows(spec, universe, k, caps, prefix, out);
    }
    prefix.pop_back();
  }
}

}  // namespace

std::optional<std::uint32_t> WindowGraph::find_vertex(const SetWord& window) const {
  auto it = std::lower_bound(vertices.begin(), vertices.end(), window);
  if (it == vertices.end() || *it != window) return std::nullopt;
  return static_cast<std::uint32_t>(it - vertices.begin());
}

std::vector<SetLetter> candidate_set_letters(const SubshiftSpec& spec, const Caps& caps) {
  const LetterMask constrained = spec.constrained_letters();
  const LetterMask free = spec.free_letters();
  const int c = std::popcount(constrained);
  if (c >= 63 || (std::uint64_t{1} << c) > caps.max_candidates) {
    throw CapExceeded("candidate set-letters 2^" + std::to_string(c) + " exceed the cap of " +
                      std::to_string(caps.max_candidates) +
                      "; use exhaustive mode on a smaller alphabet");
  }
  std::vector<SetLetter> out;
  // Enumerate submasks of the constrained letters.
  LetterMask sub = 0;
  do {
    if ((free | sub) != 0) out.emplace_back(free | sub);
    sub = (sub - constrained) & constrained;
  } while (sub != 0);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SetLetter> exhaustive_set_letters(const SubshiftSpec& spec, const Caps& caps) {
  const LetterMask live = spec.alphabet().full_mask() & ~spec.dead_letters();
  const int live_count = std::popcount(live);
  if (live_count >= 63 || (std::uint64_t{1} << live_count) > caps.max_candidates) {
    throw CapExceeded("exhaustive set-letter universe exceeds the candidate cap");
  }
  std::vector<SetLetter> out;
  LetterMask sub = 0;
  do {
    sub = (sub - live) & live;
    if (sub != 0) out.emplace_back(sub);
  } while (sub != 0);
  std::sort(out.begin(), out.end());
  return out;
}

WindowGraph build_untrimmed_window_graph(const SubshiftSpec& spec,
                                         std::vector<SetLetter> universe, const Caps& caps) {
  normalize_universe(universe);
  WindowGraph g;
  g.window_length = spec.memory();
  g.universe = std::move(universe);
  const std::size_t k = g.window_length;

  SetWord prefix;
  enumerate_windows(spec, g.universe, k, caps, prefix, g.vertices);

  const auto nv = g.universe.empty() ? 0 : static_cast<std::int64_t>(g.vertices.size());
  std::vector<std::vector<WindowEdge>> per_vertex(g.vertices.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t u = 0; u < nv; ++u) {
    SetWord window = g.vertices[u];
    window.push_back(g.universe.front());
    SetWord next(window.begin() + 1, window.end());
    for (auto cell : g.universe) {
      window.back() = cell;
      if (violation_at_end(window, spec.forbidden())) continue;
      std::uint32_t dst = 0;
      if (k > 0) {
        next.back() = cell;
        dst = *g.find_vertex(next);  // suffix of a legal window is legal
      }
      per_vertex[u].push_back({static_cast<std::uint32_t>(u), dst, cell});
    }
  }
  for (auto& list : per_vertex) g.edges.insert(g.edges.end(), list.begin(), list.end());
  return g;
}

void trim(WindowGraph& g) {
  const std::size_t n = g.vertices.size();
  std::vector<std::size_t> indeg(n, 0), outdeg(n, 0);
  std::vector<std::vector<std::uint32_t>> out_adj(n), in_adj(n);
  for (const auto& e : g.edges) {
    ++outdeg[e.src];
    ++indeg[e.dst];
    out_adj[e.src].push_back(e.dst);
    in_adj[e.dst].push_back(e.src);
  }
  std::vector<char> removed(n, 0);
  std::deque<std::uint32_t> queue;
  for (std::uint32_t v = 0; v < n; ++v) {
    if (indeg[v] == 0 || outdeg[v] == 0) {
      removed[v] = 1;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    const std::uint32_t v = queue.front();
    queue.pop_front();
    for (auto w : out_adj[v]) {
      if (!removed[w] && --indeg[w] == 0) {
        removed[w] = 1;
        queue.push_back(w);
      }
    }
    for (auto w : in_adj[v]) {
      if (!removed[w] && --outdeg[w] == 0) {
        removed[w] = 1;
        queue.push_back(w);
      }
    }
  }

  std::vector<std::uint32_t> new_id(n, UINT32_MAX);
  std::vector<SetWord> kept;
  for (std::uint32_t v = 0; v < n; ++v) {
    if (!removed[v]) {
      new_id[v] = static_cast<std::uint32_t>(kept.size());
      kept.push_back(std::move(g.vertices[v]));
    }
  }
  std::vector<WindowEdge> edges;
  for (const auto& e : g.edges) {
    if (!removed[e.src] && !removed[e.dst]) edges.push_back({new_id[e.src], new_id[e.dst], e.label});
  }
  g.vertices = std::move(kept);
  g.edges = std::move(edges);
}

WindowGraph build_window_graph_over(const SubshiftSpec& spec, std::vector<SetLetter> universe,
                                    const Caps& caps) {
  WindowGraph g = build_untrimmed_window_graph(spec, std::move(universe), caps);
  trim(g);
  if (g.vertices.empty()) {
    throw EmptyLanguage("the subshift has no points: its window graph is empty after trimming");
  }
  return g;
}

WindowGraph build_window_graph(const SubshiftSpec& spec, GraphUniverse universe,
                               const Caps& caps) {
  if (universe == GraphUniverse::exhaustive) {
    const LetterMask live = spec.alphabet().full_mask() & ~spec.dead_letters();
    const std::uint64_t cells = (std::uint64_t{1} << std::popcount(live)) - 1;
    if (saturating_pow(cells, spec.memory()) > caps.max_vertices) {
      throw CapExceeded("exhaustive window graph would have more than " +
                        std::to_string(caps.max_vertices) + " vertices");
    }
    return build_window_graph_over(spec, exhaustive_set_letters(spec, caps), caps);
  }
  return build_window_graph_over(spec, candidate_set_letters(spec, caps), caps);
}

LegalityReport is_independently_legal(const SetWord& w, const SubshiftSpec& spec,
                                      LegalityMode mode, const Caps& caps) {
  const LetterMask alphabet = spec.alphabet().full_mask();
  for (auto cell : w) {
    if ((cell.mask() & ~alphabet) != 0) throw ValidationError("set-word uses letters outside the alphabet");
  }

  for (std::size_t pos = 0; pos < w.size(); ++pos) {
    for (const auto& f : spec.forbidden()) {
      if (!fits_at(w, pos, f)) continue;
      Word selection;
      for (std::size_t i = 0; i < w.size(); ++i) {
        selection.push_back(i >= pos && i < pos + f.size() ? f[i - pos] : w[i].min_letter());
      }
      return {false, LegalityViolation{std::move(selection), pos, f},
              "selection contains forbidden word " + spec.format(f)};
    }
  }
  if (mode == LegalityMode::local || w.empty()) return {};

  std::vector<SetLetter> universe = candidate_set_letters(spec, caps);
  universe.insert(universe.end(), w.begin(), w.end());
  WindowGraph g = build_untrimmed_window_graph(spec, std::move(universe), caps);
  trim(g);
  const LegalityReport not_extendable{false, std::nullopt, "not extendable"};
  if (g.vertices.empty()) return not_extendable;

  const std::size_t k = g.window_length;
  if (w.size() >= k) {
    for (std::size_t i = 0; i + k <= w.size(); ++i) {
      SetWord window(w.begin() + static_cast<std::ptrdiff_t>(i),
                     w.begin() + static_cast<std::ptrdiff_t>(i + k));
      if (!g.find_vertex(window)) return not_extendable;
    }
    return {};
  }
  for (const auto& v : g.vertices) {
    if (std::search(v.begin(), v.end(), w.begin(), w.end()) != v.end()) return {};
  }
  return not_extendable;
}

void dump_graph(std::ostream& os, const WindowGraph& g, const SubshiftSpec& spec) {
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    const auto& window = g.vertices[v];
    os << "vertex " << v << ' ' << (window.empty() ? std::string("()") : spec.format(window))
       << '\n';
  }
  for (const auto& e : g.edges) {
    os << "edge " << e.src << ' ' << e.dst << ' ' << e.weight() << ' ' << spec.format(e.label)
       << '\n';
  }
}

}  // namespace axial
