#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include <doctest.h>

#include "axial/counting.hpp"
#include "axial/errors.hpp"
#include "axial/mean_cycle.hpp"
#include "axial/models.hpp"
#include "axial/optimize.hpp"
#include "small_specs.hpp"

using namespace axial;

namespace {

SetLetter cell(std::initializer_list<int> letters) {
  LetterMask m = 0;
  for (int a : letters) m |= LetterMask{1} << a;
  return SetLetter(m);
}

ExactScore score(long long p, std::uint64_t n) { return ExactScore{BigInt(p), n}; }

bool same(const ExactScore& a, const ExactScore& b) { return score_compare(a, b) == std::strong_ordering::equal; }

SubshiftSpec add_spec() {
  std::vector<std::string> az;
  for (char c = 'A'; c <= 'Z'; ++c) az.emplace_back(1, c);
  return validate_spec_chars(az, {"ADD"});
}

// Every simple cycle of a small multigraph, as arc lists starting at their
// smallest vertex.
std::vector<std::vector<std::uint32_t>> all_simple_cycles(std::size_t n, const std::vector<Arc>& arcs) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> path;
  std::vector<char> used(n, 0);
  std::function<void(std::uint32_t, std::uint32_t)> dfs = [&](std::uint32_t start, std::uint32_t v) {
    for (std::uint32_t e = 0; e < arcs.size(); ++e) {
      if (arcs[e].src != v) continue;
      const auto w = arcs[e].dst;
      if (w == start) {
        path.push_back(e);
        out.push_back(path);
        path.pop_back();
      } else if (w > start && !used[w]) {
        used[w] = 1;
        path.push_back(e);
        dfs(start, w);
        path.pop_back();
        used[w] = 0;
      }
    }
  };
  for (std::uint32_t s = 0; s < n; ++s) {
    used[s] = 1;
    dfs(s, s);
    used[s] = 0;
  }
  return out;
}

ExactScore kernel_score(const FactoredWeights& w, const MeanCycleSolution& sol) {
  const BigRational p = w.value(sol.numerator);
  REQUIRE(boost::multiprecision::denominator(p) == 1);
  return {boost::multiprecision::numerator(p), static_cast<std::uint64_t>(sol.denominator)};
}

std::set<SetWord> brute_force_maximizing_words(const WindowGraph& g, const ExactScore& best) {
  std::vector<Arc> arcs;
  for (const auto& e : g.edges) arcs.push_back({e.src, e.dst});
  std::set<SetWord> words;
  for (const auto& c : all_simple_cycles(g.vertex_count(), arcs)) {
    SetWord w;
    for (auto e : c) w.push_back(g.edges[e].label);
    if (same(independence_score(w), best)) words.insert(canonical_rotation(w));
  }
  return words;
}

}  // namespace

TEST_CASE("exact Karp kernel against brute force and the serial reference") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 6;
    std::vector<Arc> arcs;
    std::vector<std::uint64_t> w;
    const std::size_t m = n + rng() % (2 * n + 2);
    for (std::size_t i = 0; i < m; ++i) {
      arcs.push_back({static_cast<std::uint32_t>(rng() % n), static_cast<std::uint32_t>(rng() % n)});
      w.push_back(1 + rng() % 6);
    }
    const auto cycles = all_simple_cycles(n, arcs);
    if (cycles.empty()) {
      CHECK_THROWS_AS(max_mean_cycle_kernel(n, arcs, FactoredWeights::from_integers(w)), ValidationError);
      continue;
    }
    std::optional<ExactScore> best;
    for (const auto& c : cycles) {
      BigInt p = 1;
      for (auto e : c) p *= w[e];
      ExactScore s{p, c.size()};
      if (!best || score_compare(s, *best) > 0) best = s;
    }
    const auto fw = FactoredWeights::from_integers(w);
    const auto sol = max_mean_cycle_kernel(n, arcs, fw);
    CHECK(same(kernel_score(fw, sol), *best));
    CHECK(same(max_mean_cycle_reference(n, arcs, w), *best));

    // The witness is a closed walk of optimal mean.
    REQUIRE_FALSE(sol.witness.empty());
    BigInt p = 1;
    for (std::size_t i = 0; i < sol.witness.size(); ++i) {
      const auto& a = arcs[sol.witness[i]];
      CHECK(a.dst == arcs[sol.witness[(i + 1) % sol.witness.size()]].src);
      p *= w[sol.witness[i]];
    }
    CHECK(same(ExactScore{p, sol.witness.size()}, *best));

    // Critical arcs are exactly those on some optimal simple cycle.
    std::vector<char> on_optimal(arcs.size(), 0);
    for (const auto& c : cycles) {
      BigInt q = 1;
      for (auto e : c) q *= w[e];
      if (same(ExactScore{q, c.size()}, *best)) {
        for (auto e : c) on_optimal[e] = 1;
      }
    }
    CHECK(sol.critical == on_optimal);
  }
}

TEST_CASE("Karp kernel with rational weights") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 5;
    std::vector<Arc> arcs;
    std::vector<BigRational> w;
    for (std::size_t i = 0; i < 2 * n + 1; ++i) {
      arcs.push_back({static_cast<std::uint32_t>(rng() % n), static_cast<std::uint32_t>(rng() % n)});
      w.emplace_back(1 + static_cast<long>(rng() % 12), 1 + static_cast<long>(rng() % 5));
    }
    const auto cycles = all_simple_cycles(n, arcs);
    if (cycles.empty()) continue;
    std::optional<PressureScore> best;
    for (const auto& c : cycles) {
      BigRational p = 1;
      for (auto e : c) p *= w[e];
      PressureScore s{p, c.size()};
      if (!best || score_compare(s, *best) > 0) best = s;
    }
    const auto fw = FactoredWeights::from_rationals(w);
    const auto sol = max_mean_cycle_kernel(n, arcs, fw);
    PressureScore got{fw.value(sol.numerator), static_cast<std::uint64_t>(sol.denominator)};
    CHECK(score_compare(got, *best) == std::strong_ordering::equal);
  }
  const std::vector<BigRational> bad{BigRational(0)};
  CHECK_THROWS_AS(FactoredWeights::from_rationals(bad), ValidationError);
}

TEST_CASE("strongly connected components") {
  const std::vector<Arc> arcs{{0, 1}, {1, 0}, {1, 2}, {2, 3}, {3, 2}, {4, 4}};
  auto comps = strongly_connected_components(6, arcs);
  std::sort(comps.begin(), comps.end());
  CHECK(comps == std::vector<std::vector<std::uint32_t>>{{0, 1}, {2, 3}, {4}, {5}});
}

TEST_CASE("maximum mean cycle of window graphs") {
  const auto hs = max_mean_cycle(build_window_graph(load_model("hard_square"), GraphUniverse::candidates));
  CHECK(hs.first == score(2, 2));
  CHECK(hs.second.word == SetWord{cell({0}), cell({0, 1})});

  const auto spec = add_spec();
  const auto add = max_mean_cycle(build_window_graph(spec, GraphUniverse::candidates));
  CHECK(add.first == score(650, 2));
  const auto s = candidate_set_letters(spec);
  // (all but D)(all): 25 * 26 = 650
  CHECK(add.second.word == SetWord{s[1], s[3]});

  const auto full = max_mean_cycle(build_window_graph(load_model("full:5"), GraphUniverse::candidates));
  CHECK(full.first == score(5, 1));
}

TEST_CASE("independence entropy of named models") {
  CHECK(independence_entropy(load_model("coloring:3")).first == score(2, 2));
  CHECK(independence_entropy(load_model("beach:3")).first == score(3, 1));
  CHECK(independence_entropy(load_model("rll:2,5")).first == score(2, 6));
  CHECK(independence_entropy(load_model("plastic")).first == score(1, 1));
}

TEST_CASE("rotations and simple cycles") {
  const SetWord w{cell({1}), cell({0}), cell({0, 1})};
  CHECK(canonical_rotation(w) == SetWord{cell({0}), cell({0, 1}), cell({1})});
  CHECK(is_rotation_of(w, canonical_rotation(w)));
  CHECK_FALSE(is_rotation_of(w, SetWord{cell({0}), cell({1}), cell({0, 1})}));
  CHECK(is_simple_cycle(SetWord{cell({0}), cell({0, 1})}, 1));
  CHECK_FALSE(is_simple_cycle(SetWord{cell({0}), cell({0}), cell({0, 1}), cell({1})}, 1));
  CHECK(is_simple_cycle(SetWord{cell({0}), cell({0}), cell({0, 1}), cell({1})}, 2));
  CHECK_FALSE(is_simple_cycle(SetWord{cell({0}), cell({0}), cell({0, 1}), cell({0})}, 2));
  CHECK(is_simple_cycle(SetWord{cell({0})}, 0));
  CHECK_FALSE(is_simple_cycle(SetWord{cell({0}), cell({1})}, 0));
}

TEST_CASE("simple maximizing cycles of named models") {
  const auto hs = enumerate_simple_maximizing_cycles(load_model("hard_square"));
  CHECK(hs.complete);
  REQUIRE(hs.cycles.size() == 1);
  CHECK(hs.cycles[0].word == SetWord{cell({0}), cell({0, 1})});

  const auto c3 = enumerate_simple_maximizing_cycles(load_model("coloring:3"));
  REQUIRE(c3.cycles.size() == 3);
  std::set<SetWord> expected;
  for (int a = 0; a < 3; ++a) {
    expected.insert(canonical_rotation(SetWord{cell({a}), SetLetter(0b111 & ~(LetterMask{1} << a))}));
  }
  std::set<SetWord> got;
  for (const auto& c : c3.cycles) got.insert(c.word);
  CHECK(got == expected);

  const auto beach = enumerate_simple_maximizing_cycles(load_model("beach:3"));
  REQUIRE(beach.cycles.size() == 2);
  CHECK(beach.cycles[0].word == SetWord{cell({0, 1, 2})});
  CHECK(beach.cycles[1].word == SetWord{cell({3, 4, 5})});
}

TEST_CASE("enumerated cycles are legal, simple and optimal") {
  for (const auto& name : builtin_model_names()) {
    CAPTURE(name);
    const auto spec = load_model(name);
    const auto e = enumerate_simple_maximizing_cycles(spec);
    CHECK(e.complete);
    CHECK_FALSE(e.cycles.empty());
    for (const auto& c : e.cycles) {
      SetWord twice = c.word;
      twice.insert(twice.end(), c.word.begin(), c.word.end());
      CHECK(is_independently_legal(twice, spec, LegalityMode::extendable).legal);
      CHECK(same(independence_score(c.word), e.score));
      CHECK(c.simple);
      CHECK(is_simple_cycle(c.word, spec.memory()));
      CHECK(c.word == canonical_rotation(c.word));
    }
  }
}

TEST_CASE("cycle enumeration matches brute force over all simple cycles") {
  for (const auto& s : testing::small_specs(80)) {
    CAPTURE(s.describe());
    const auto spec = s.build();
    IndependenceAnalysis a;
    try {
      a = analyze_independence(spec);
    } catch (const EmptyLanguage&) {
      continue;
    }
    if (a.graph.vertex_count() > 12) continue;
    const auto e = enumerate_simple_maximizing_cycles(a);
    REQUIRE(e.complete);
    std::set<SetWord> got;
    for (const auto& c : e.cycles) got.insert(c.word);
    CHECK(got == brute_force_maximizing_words(a.graph, a.score));
  }
}

TEST_CASE("cycle enumeration limits are reported") {
  CycleLimits limits;
  limits.max_count = 1;
  const auto e = enumerate_simple_maximizing_cycles(load_model("coloring:3"), limits);
  CHECK_FALSE(e.complete);
  CHECK(e.cycles.size() == 1);
}

TEST_CASE("planar orbit search") {
  const SetWord hs{cell({0}), cell({0, 1})};
  const auto r = check_condition_two(hs, 2);
  CHECK(r.unique_within_bound);
  CHECK(r.search_complete);

  const SetWord rll2{cell({0}), cell({0}), cell({0, 1})};
  const auto c = check_condition_two(rll2);
  CHECK_FALSE(c.unique_within_bound);
  REQUIRE(c.counterexample);
  CHECK(c.counterexample->t == 1);
  CHECK(c.counterexample->drift == 2);
  for (std::int64_t i = -3; i <= 3; ++i) {
    for (std::int64_t j = -3; j <= 3; ++j) {
      CHECK(c.counterexample->at(rll2, i, j) == rll2[static_cast<std::size_t>(((i - j) % 3 + 3) % 3)]);
    }
  }

  CHECK(check_condition_two(SetWord{cell({0, 1})}).unique_within_bound);
  // A power of a word behaves like the word.
  CHECK(check_condition_two(SetWord{cell({0}), cell({0, 1}), cell({0}), cell({0, 1})}).unique_within_bound);
}

TEST_CASE("planar orbit search agrees with unpruned enumeration") {
  // Small words over three letters; every row and column must be a shift of w.
  auto brute = [](const SetWord& w, std::size_t bound) {
    const std::size_t m = w.size();
    for (std::size_t t = 1; t <= bound; ++t) {
      std::vector<std::size_t> phases(t, 0);
      while (true) {
        for (std::size_t s = 0; s < m; ++s) {
          PhaseOrbit2D o{m, t, s, phases};
          const std::size_t rows = 2 * t * m;
          bool ok = true, diagonal = true;
          for (std::size_t i = 0; i < m && ok; ++i) {
            bool any = false;
            for (std::size_t r = 0; r < m && !any; ++r) {
              bool match = true;
              for (std::size_t j = 0; j < rows && match; ++j) {
                match = o.at(w, static_cast<std::int64_t>(i), static_cast<std::int64_t>(j)) == w[(r + j) % m];
              }
              any = match;
            }
            ok = any;
          }
          for (std::size_t j = 0; j < rows; ++j) diagonal &= o.phase(static_cast<std::int64_t>(j)) == j % m;
          if (ok && !diagonal) return false;
        }
        std::size_t k = 1;
        while (k < t && ++phases[k] == m) phases[k++] = 0;
        if (k >= t) break;
      }
    }
    return true;
  };
  std::mt19937_64 rng(3);
  int checked = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t m = 2 + rng() % 4;
    SetWord w;
    for (std::size_t i = 0; i < m; ++i) w.emplace_back(1 + rng() % 3);
    // primitive words only
    bool primitive = true;
    for (std::size_t p = 1; p < m; ++p) {
      if (m % p) continue;
      bool per = true;
      for (std::size_t i = p; i < m; ++i) per &= w[i] == w[i - p];
      primitive &= !per;
    }
    if (!primitive) continue;
    CAPTURE(w.size());
    CHECK(check_condition_two(w, 3).unique_within_bound == brute(w, 3));
    ++checked;
  }
  CHECK(checked > 100);
}

TEST_CASE("classification of named models") {
  auto verdict = [](const std::string& name) { return classify_mme(load_model(name)); };
  const auto hs = verdict("hard_square");
  CHECK(hs.verdict == Verdict::unique);

  const auto c3 = verdict("coloring:3");
  CHECK(c3.verdict == Verdict::exactly_k);
  CHECK(c3.k == 3);

  const auto beach = verdict("beach:3");
  CHECK(beach.verdict == Verdict::exactly_k);
  CHECK(beach.k == 2);

  const auto r13 = verdict("rll:1,3");
  CHECK(r13.verdict == Verdict::multiple);
  REQUIRE(r13.counterexample);
  CHECK(r13.counterexample->t == 1);
  CHECK(r13.counterexample->drift == 3);

  CHECK(verdict("rll:2,inf").verdict == Verdict::multiple);
  CHECK(verdict("rll:1,inf").verdict == Verdict::unique);
  CHECK(verdict("full:3").verdict == Verdict::unique);

  ClassifyBounds tight;
  tight.cycles.max_count = 1;
  CHECK(classify_mme(load_model("coloring:3"), tight).verdict == Verdict::unknown_within_bounds);
  CHECK(to_string(Verdict::exactly_k) == "exactly_k");
}

TEST_CASE("independence pressure") {
  const auto hs = load_model("hard_square");
  const auto one = independence_pressure(hs, {BigRational(1), BigRational(1)});
  CHECK(score_compare(one.score, PressureScore{BigRational(2), 2}) == std::strong_ordering::equal);

  // Cycles of the two-vertex graph: {0} scores 0, {0}{0,1} scores (1/2) ln 9,
  // and {0,1} alone is not a cycle.
  const auto eight = independence_pressure(hs, {BigRational(1), BigRational(8)});
  CHECK(score_compare(eight.score, PressureScore{BigRational(9), 2}) == std::strong_ordering::equal);
  CHECK(canonical_rotation(eight.witness) == SetWord{cell({0}), cell({0, 1})});

  const auto full = independence_pressure(load_model("full:2"), {BigRational(1), BigRational(3)});
  CHECK(score_compare(full.score, PressureScore{BigRational(4), 1}) == std::strong_ordering::equal);

  CHECK_THROWS_AS(independence_pressure(hs, {BigRational(1), BigRational(0)}), ValidationError);
  CHECK_THROWS_AS(independence_pressure(hs, {BigRational(1)}), ValidationError);
}

TEST_CASE("pressure with unit activity is the independence entropy") {
  for (const auto& name : builtin_model_names()) {
    CAPTURE(name);
    const auto spec = load_model(name);
    const auto h = independence_entropy(spec).first;
    const auto p = independence_pressure(spec, std::vector<BigRational>(spec.alphabet().size(), BigRational(1)));
    CHECK(score_compare(p.score, PressureScore{BigRational(h.p), h.n}) == std::strong_ordering::equal);
  }
}

TEST_CASE("scaling the activity shifts the pressure by log lambda") {
  std::mt19937_64 rng(11);
  for (const auto& name : {"hard_square", "coloring:3", "beach:2", "rll:1,3", "plastic"}) {
    CAPTURE(name);
    const auto spec = load_model(name);
    std::vector<BigRational> g;
    for (std::size_t a = 0; a < spec.alphabet().size(); ++a) {
      g.emplace_back(1 + static_cast<long>(rng() % 9), 1 + static_cast<long>(rng() % 4));
    }
    const BigRational lambda(7, 3);
    std::vector<BigRational> scaled;
    for (const auto& x : g) scaled.push_back(x * lambda);
    const auto base = independence_pressure(spec, g);
    const auto moved = independence_pressure(spec, scaled);
    BigRational shifted = base.score.p;
    for (std::uint64_t i = 0; i < base.score.n; ++i) shifted *= lambda;
    CHECK(score_compare(moved.score, PressureScore{shifted, base.score.n}) == std::strong_ordering::equal);
    CHECK(canonical_rotation(moved.witness) == canonical_rotation(base.witness));
  }
}

TEST_CASE("independence entropy never exceeds topological entropy") {
  for (const auto& name : builtin_model_names()) {
    CAPTURE(name);
    const auto spec = load_model(name);
    CHECK(nats(independence_entropy(spec).first) <= entropy_1d(spec) + 1e-6);
  }
}

TEST_CASE("candidate and exhaustive universes agree") {
  for (const auto& s : testing::small_specs(60)) {
    CAPTURE(s.describe());
    const auto spec = s.build();
    try {
      const auto cand = max_mean_cycle(build_window_graph(spec, GraphUniverse::candidates)).first;
      const auto exh = max_mean_cycle(build_window_graph(spec, GraphUniverse::exhaustive)).first;
      CHECK(same(cand, exh));
    } catch (const EmptyLanguage&) {
      CHECK_THROWS_AS(build_window_graph(spec, GraphUniverse::exhaustive), EmptyLanguage);
    }
  }
}
