#include "axial/optimize.hpp"

#include <algorithm>
#include <set>

#include "axial/errors.hpp"

namespace axial {

namespace {

std::vector<Arc> arcs_of(const WindowGraph& g) {
  std::vector<Arc> arcs;
  arcs.reserve(g.edges.size());
  for (const auto& e : g.edges) arcs.push_back({e.src, e.dst});
  return arcs;
}

SetWord labels_of(const WindowGraph& g, const std::vector<std::uint32_t>& arc_cycle) {
  SetWord w;
  for (auto e : arc_cycle) w.push_back(g.edges[e].label);
  return w;
}

ExactScore integer_score(const FactoredWeights& weights, const MeanCycleSolution& sol) {
  const BigRational p = weights.value(sol.numerator);
  if (boost::multiprecision::denominator(p) != 1) throw Error("internal: fractional independence score");
  return {boost::multiprecision::numerator(p), static_cast<std::uint64_t>(sol.denominator)};
}

FactoredWeights cell_size_weights(const WindowGraph& g) {
  std::vector<std::uint64_t> w;
  w.reserve(g.edges.size());
  for (const auto& e : g.edges) w.push_back(e.weight());
  return FactoredWeights::from_integers(w);
}

}  // namespace

SetWord canonical_rotation(const SetWord& w) {
  SetWord best = w;
  SetWord rot = w;
  for (std::size_t i = 1; i < w.size(); ++i) {
    std::rotate(rot.begin(), rot.begin() + 1, rot.end());
    if (rot < best) best = rot;
  }
  return best;
}

bool is_rotation_of(const SetWord& a, const SetWord& b) {
  return a.size() == b.size() && canonical_rotation(a) == canonical_rotation(b);
}

bool is_simple_cycle(const SetWord& w, std::size_t k) {
  if (k == 0) return w.size() == 1;
  std::set<SetWord> windows;
  for (std::size_t i = 0; i < w.size(); ++i) {
    SetWord win;
    for (std::size_t j = 0; j < k; ++j) win.push_back(w[(i + j) % w.size()]);
    if (!windows.insert(std::move(win)).second) return false;
  }
  return true;
}

std::pair<ExactScore, MaximizingCycle> max_mean_cycle(const WindowGraph& g) {
  if (g.vertices.empty()) throw EmptyLanguage("window graph is empty");
  const auto arcs = arcs_of(g);
  const auto weights = cell_size_weights(g);
  const auto sol = max_mean_cycle_kernel(g.vertex_count(), arcs, weights);
  const ExactScore score = integer_score(weights, sol);
  MaximizingCycle cycle{canonical_rotation(labels_of(g, sol.witness)), score, true};
  cycle.simple = is_simple_cycle(cycle.word, g.window_length);
  return {score, cycle};
}

IndependenceAnalysis analyze_independence(const SubshiftSpec& spec, const Caps& caps) {
  IndependenceAnalysis a;
  a.graph = build_window_graph(spec, GraphUniverse::candidates, caps);
  const auto arcs = arcs_of(a.graph);
  const auto weights = cell_size_weights(a.graph);
  a.solution = max_mean_cycle_kernel(a.graph.vertex_count(), arcs, weights);
  a.score = integer_score(weights, a.solution);
  a.witness = {canonical_rotation(labels_of(a.graph, a.solution.witness)), a.score, true};
  a.witness.simple = is_simple_cycle(a.witness.word, a.graph.window_length);
  return a;
}

std::pair<ExactScore, MaximizingCycle> independence_entropy(const SubshiftSpec& spec,
                                                            const Caps& caps) {
  auto a = analyze_independence(spec, caps);
  return {a.score, a.witness};
}

CycleEnumeration enumerate_simple_maximizing_cycles(const IndependenceAnalysis& analysis,
                                                    const CycleLimits& limits) {
  const WindowGraph& g = analysis.graph;
  const auto& critical = analysis.solution.critical;
  const std::size_t n = g.vertex_count();
  const std::size_t max_length = limits.max_length == 0 ? std::max<std::size_t>(n, 1) : limits.max_length;

  // Every cycle through critical arcs has maximum mean and every maximum-mean
  // cycle uses only critical arcs, so a plain simple-cycle search over the
  // critical subgraph is exact.
  std::vector<std::vector<std::uint32_t>> out(n), in(n);
  for (std::uint32_t e = 0; e < g.edges.size(); ++e) {
    if (!critical[e]) continue;
    out[g.edges[e].src].push_back(e);
    in[g.edges[e].dst].push_back(e);
  }

  CycleEnumeration result;
  result.score = analysis.score;
  std::set<SetWord> found;
  std::uint64_t expansions = 0;
  bool stop = false;

  std::vector<char> can_reach(n), on_path(n);
  std::vector<std::uint32_t> path;
  for (std::uint32_t s = 0; s < n && !stop; ++s) {
    if (out[s].empty()) continue;
    // Vertices >= s that reach s inside the critical subgraph restricted to >= s.
    std::fill(can_reach.begin(), can_reach.end(), 0);
    std::vector<std::uint32_t> stack{s};
    can_reach[s] = 1;
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      for (auto e : in[v]) {
        auto u = g.edges[e].src;
        if (u >= s && !can_reach[u]) {
          can_reach[u] = 1;
          stack.push_back(u);
        }
      }
    }

    // Iterative DFS over arc choices.
    std::vector<std::size_t> next_choice{0};
    std::uint32_t v = s;
    on_path[s] = 1;
    while (!next_choice.empty() && !stop) {
      std::size_t& idx = next_choice.back();
      if (idx >= out[v].size()) {
        next_choice.pop_back();
        on_path[v] = 0;
        if (!path.empty()) {
          v = g.edges[path.back()].src;
          path.pop_back();
        }
        continue;
      }
      const std::uint32_t e = out[v][idx++];
      const std::uint32_t w = g.edges[e].dst;
      if (++expansions > limits.max_expansions) {
        result.complete = false;
        stop = true;
        break;
      }
      if (w == s) {
        path.push_back(e);
        SetWord word = canonical_rotation(labels_of(g, path));
        path.pop_back();
        if (found.insert(word).second && found.size() >= limits.max_count) {
          result.complete = false;
          stop = true;
        }
        continue;
      }
      if (w < s || !can_reach[w] || on_path[w]) continue;
      if (path.size() + 1 >= max_length) {
        result.complete = false;
        continue;
      }
      path.push_back(e);
      on_path[w] = 1;
      v = w;
      next_choice.push_back(0);
    }
    for (auto x : path) on_path[g.edges[x].dst] = 0;
    on_path[s] = 0;
    path.clear();
  }

  for (const auto& w : found) {
    MaximizingCycle c{w, independence_score(w), is_simple_cycle(w, g.window_length)};
    if (score_compare(c.score, analysis.score) != 0) throw Error("internal: non-maximal critical cycle");
    result.cycles.push_back(std::move(c));
  }
  return result;
}

CycleEnumeration enumerate_simple_maximizing_cycles(const SubshiftSpec& spec,
                                                    const CycleLimits& limits, const Caps& caps) {
  return enumerate_simple_maximizing_cycles(analyze_independence(spec, caps), limits);
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::unique: return "unique";
    case Verdict::exactly_k: return "exactly_k";
    case Verdict::multiple: return "multiple";
    case Verdict::unknown_within_bounds: return "unknown_within_bounds";
  }
  return "unknown_within_bounds";
}

namespace {

bool share_a_letter(const SetWord& a, const SetWord& b) {
  for (auto x : a) {
    if (std::find(b.begin(), b.end(), x) != b.end()) return true;
  }
  return false;
}

}  // namespace

MMEClassification classify_mme(const SubshiftSpec& spec, const ClassifyBounds& bounds,
                               const Caps& caps) {
  MMEClassification out;
  out.bounds = bounds;
  const auto analysis = analyze_independence(spec, caps);
  auto cycles = enumerate_simple_maximizing_cycles(analysis, bounds.cycles);
  out.score = cycles.score;
  out.cycles = cycles.cycles;
  out.cycles_complete = cycles.complete;

  if (out.cycles.size() >= 2) {
    out.verdict = Verdict::multiple;
    out.reason = "more than one simple maximizing cycle up to shifts";
    if (!cycles.complete) return out;
    for (std::size_t i = 0; i < out.cycles.size(); ++i) {
      for (std::size_t j = i + 1; j < out.cycles.size(); ++j) {
        if (share_a_letter(out.cycles[i].word, out.cycles[j].word)) {
          out.reason += "; two cycles share a set-letter";
          return out;
        }
      }
    }
    for (std::size_t i = 0; i < out.cycles.size(); ++i) {
      auto c2 = check_condition_two(out.cycles[i].word, bounds.phase_bound);
      if (c2.counterexample) {
        out.counterexample = c2.counterexample;
        out.counterexample_cycle = i;
        out.reason += "; a cycle admits a second finite orbit in the plane";
        return out;
      }
      if (!c2.search_complete) {
        out.reason += "; phase search budget exhausted";
        return out;
      }
    }
    out.verdict = Verdict::exactly_k;
    out.k = out.cycles.size();
    out.reason = "letter-disjoint simple maximizing cycles, each with a single planar orbit";
    return out;
  }

  if (out.cycles.size() == 1 && cycles.complete) {
    auto c2 = check_condition_two(out.cycles[0].word, bounds.phase_bound);
    if (c2.counterexample) {
      out.verdict = Verdict::multiple;
      out.counterexample = c2.counterexample;
      out.reason = "unique simple maximizing cycle, but a second finite orbit exists in the plane";
      return out;
    }
    if (c2.search_complete) {
      out.verdict = Verdict::unique;
      out.k = 1;
      out.reason = "unique simple maximizing cycle; no other planar orbit with phase period <= " +
                   std::to_string(c2.bound);
      return out;
    }
    out.reason = "phase search budget exhausted";
    return out;
  }
  out.reason = "cycle enumeration limits reached";
  return out;
}

PressureResult independence_pressure(const SubshiftSpec& spec,
                                     const std::vector<BigRational>& activity, const Caps& caps) {
  if (activity.size() != spec.alphabet().size()) {
    throw ValidationError("activity needs one value per letter");
  }
  for (const auto& g : activity) {
    if (g <= 0) throw ValidationError("activity values must be positive");
  }
  WindowGraph graph = build_window_graph(spec, GraphUniverse::candidates, caps);
  std::vector<BigRational> mass;
  mass.reserve(graph.edges.size());
  for (const auto& e : graph.edges) {
    BigRational m = 0;
    for (std::size_t a = 0; a < activity.size(); ++a) {
      if (e.label.contains(static_cast<Letter>(a))) m += activity[a];
    }
    mass.push_back(m);
  }
  const auto weights = FactoredWeights::from_rationals(mass);
  const auto arcs = arcs_of(graph);
  const auto sol = max_mean_cycle_kernel(graph.vertex_count(), arcs, weights);
  PressureResult r;
  r.score = {weights.value(sol.numerator), static_cast<std::uint64_t>(sol.denominator)};
  r.witness = canonical_rotation(labels_of(graph, sol.witness));
  return r;
}

}  // namespace axial
