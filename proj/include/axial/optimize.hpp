#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "axial/automaton.hpp"
#include "axial/caps.hpp"
#include "axial/mean_cycle.hpp"
#include "axial/score.hpp"

namespace axial {

/// One period of a maximizing cycle, rotated to its lexicographically least form.
struct MaximizingCycle {
  SetWord word;
  ExactScore score;
  bool simple = true;
};

/// Candidate window graph together with its exact maximum-mean-cycle solution.
struct IndependenceAnalysis {
  WindowGraph graph;
  MeanCycleSolution solution;
  ExactScore score;
  MaximizingCycle witness;
};

IndependenceAnalysis analyze_independence(const SubshiftSpec& spec, const Caps& caps = {});

std::pair<ExactScore, MaximizingCycle> max_mean_cycle(const WindowGraph& g);

/// h_ind(X), which equals the limiting entropy of the axial powers.
std::pair<ExactScore, MaximizingCycle> independence_entropy(const SubshiftSpec& spec,
                                                            const Caps& caps = {});

SetWord canonical_rotation(const SetWord& w);
bool is_rotation_of(const SetWord& a, const SetWord& b);
/// No k-window repeats cyclically (for k = 0: period one).
bool is_simple_cycle(const SetWord& w, std::size_t k);

struct CycleLimits {
  std::size_t max_length = 0;  // 0: number of vertices
  std::size_t max_count = 10'000;
  std::uint64_t max_expansions = 100'000'000;
};

struct CycleEnumeration {
  ExactScore score;
  std::vector<MaximizingCycle> cycles;  // sorted by word
  bool complete = true;
};

CycleEnumeration enumerate_simple_maximizing_cycles(const IndependenceAnalysis& analysis,
                                                    const CycleLimits& limits = {});
CycleEnumeration enumerate_simple_maximizing_cycles(const SubshiftSpec& spec,
                                                    const CycleLimits& limits = {},
                                                    const Caps& caps = {});

/// A doubly periodic point of the plane whose row j is the period-m word
/// shifted by phase c_j; phases repeat with period t up to a drift:
/// c_{j+t} = c_j + drift (mod m).
struct PhaseOrbit2D {
  std::size_t period = 1;
  std::size_t t = 1;
  std::size_t drift = 0;
  std::vector<std::size_t> phases;  // c_0 .. c_{t-1}, c_0 = 0

  std::size_t phase(std::int64_t row) const;
  SetLetter at(const SetWord& w, std::int64_t col, std::int64_t row) const;
};

struct ConditionTwoResult {
  bool unique_within_bound = true;
  bool search_complete = true;  // false if the expansion budget ran out
  std::optional<PhaseOrbit2D> counterexample;
  std::size_t bound = 0;
};

/// Searches phase data with t <= bound (0: 2m) for a point whose rows and
/// columns are all shifts of w^infinity but which is not a shift of the
/// diagonal point w_{i+j}.
ConditionTwoResult check_condition_two(const SetWord& w, std::size_t bound = 0,
                                       std::uint64_t max_expansions = 50'000'000);

enum class Verdict { unique, exactly_k, multiple, unknown_within_bounds };
std::string to_string(Verdict v);

struct ClassifyBounds {
  CycleLimits cycles;
  std::size_t phase_bound = 0;  // 0: twice the cycle period
};

struct MMEClassification {
  Verdict verdict = Verdict::unknown_within_bounds;
  std::size_t k = 0;
  ExactScore score;
  std::vector<MaximizingCycle> cycles;
  bool cycles_complete = true;
  std::optional<PhaseOrbit2D> counterexample;
  std::size_t counterexample_cycle = 0;
  std::string reason;
  ClassifyBounds bounds;
};

MMEClassification classify_mme(const SubshiftSpec& spec, const ClassifyBounds& bounds = {},
                               const Caps& caps = {});

struct PressureResult {
  PressureScore score;
  SetWord witness;
};

/// Independence pressure for the single-site activity g (one positive
/// rational per letter): cells weigh the sum of g over their letters.
PressureResult independence_pressure(const SubshiftSpec& spec,
                                     const std::vector<BigRational>& activity,
                                     const Caps& caps = {});

}  // namespace axial
