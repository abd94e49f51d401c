// Times the parallel kernels against their serial references.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include <omp.h>

#include "axial/automaton.hpp"
#include "axial/counting.hpp"
#include "axial/mean_cycle.hpp"
#include "axial/measures.hpp"
#include "axial/models.hpp"
#include "axial/optimize.hpp"

namespace {

double seconds(const std::function<void()>& f, int reps) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) f();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count() / reps;
}

void karp(const std::string& model, axial::Caps caps, int reps) {
  const auto spec = axial::load_model(model, caps);
  const auto g = axial::build_window_graph(spec, axial::GraphUniverse::candidates, caps);
  std::vector<axial::Arc> arcs;
  std::vector<std::uint64_t> w;
  for (const auto& e : g.edges) {
    arcs.push_back({e.src, e.dst});
    w.push_back(e.weight());
  }
  const auto fw = axial::FactoredWeights::from_integers(w);
  const double fast = seconds([&] { axial::max_mean_cycle_kernel(g.vertex_count(), arcs, fw); }, reps);
  const double ref = seconds([&] { axial::max_mean_cycle_reference(g.vertex_count(), arcs, w); }, reps);
  std::printf("karp      %-12s V=%-6zu E=%-7zu kernel %.4fs  reference %.4fs\n", model.c_str(),
              g.vertex_count(), g.edges.size(), fast, ref);
}

void counting(const std::string& model, std::vector<std::size_t> extents, int reps) {
  const auto spec = axial::load_model(model);
  axial::BigInt a, b;
  const double fast = seconds([&] { a = axial::count_extents(spec, extents); }, reps);
  const double ref = seconds([&] { b = axial::count_box_reference(spec, extents); }, reps);
  std::printf("count     %-12s sites=%-3zu backtrack %.4fs  reference %.4fs  %s\n", model.c_str(),
              extents.size() == 2 ? extents[0] * extents[1] : extents[0], fast, ref,
              a == b ? "agree" : "DISAGREE");
}

// Single-thread runs stand in for the serial reference; outputs must match.
template <class F>
std::pair<double, double> one_vs_all(F&& f, int reps) {
  const int all = omp_get_max_threads();
  omp_set_num_threads(1);
  const double serial = seconds(f, reps);
  omp_set_num_threads(all);
  const double parallel = seconds(f, reps);
  return {parallel, serial};
}

void graph(const std::string& model, axial::Caps caps, int reps) {
  const auto spec = axial::load_model(model, caps);
  std::vector<axial::WindowGraph> out;
  const auto [fast, ref] = one_vs_all(
      [&] { out.push_back(axial::build_window_graph(spec, axial::GraphUniverse::exhaustive, caps)); }, reps);
  bool agree = true;
  for (const auto& g : out) agree &= g.vertex_count() == out[0].vertex_count() && g.edges.size() == out[0].edges.size();
  std::printf("graph     %-12s V=%-6zu E=%-7zu parallel %.4fs  one thread %.4fs  %s\n", model.c_str(),
              out[0].vertex_count(), out[0].edges.size(), fast, ref, agree ? "agree" : "DISAGREE");
}

void sampling(const std::string& model, std::size_t n, std::size_t d, std::size_t count) {
  const auto spec = axial::load_model(model);
  const auto w = axial::independence_entropy(spec).second.word;
  std::vector<axial::SampleBatch> out;
  const auto [fast, ref] = one_vs_all([&] { out.push_back(axial::sample_box(spec, w, n, d, 42, count)); }, 1);
  bool agree = true;
  for (std::size_t i = 0; i < count; ++i) agree &= out[0].samples[i].sites == out[1].samples[i].sites;
  std::printf("sample    %-12s %zu x %zu^%zu parallel %.4fs  one thread %.4fs  %s\n", model.c_str(), count, n, d,
              fast, ref, agree ? "agree" : "DISAGREE");
}

}  // namespace

int main() {
  std::printf("threads %d\n", omp_get_max_threads());
  axial::Caps wide;
  wide.max_forbidden_length = 12;
  karp("hard_square", wide, 200);
  karp("coloring:6", wide, 20);
  karp("rll:2,9", wide, 5);
  karp("rll:3,inf", wide, 20);
  counting("hard_square", {4, 4}, 3);
  counting("coloring:3", {3, 4}, 3);
  counting("plastic", {4, 4}, 1);
  graph("coloring:6", wide, 3);
  graph("rll:2,9", wide, 3);
  sampling("hard_square", 8, 3, 20000);
  sampling("coloring:5", 6, 2, 20000);
  return 0;
}
