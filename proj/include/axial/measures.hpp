#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "axial/caps.hpp"
#include "axial/core.hpp"
#include "axial/score.hpp"

namespace axial {

/// The diagonal point of a periodic set-word restricted to [0,n-1]^d:
/// the cell at g is w[(phase + sum of g) mod m]. Sites in row-major order.
struct MaximizingBoxField {
  SetWord word;
  std::size_t phase = 0;
  std::size_t n = 0;
  std::size_t d = 0;
  std::vector<SetLetter> cells;

  std::vector<std::size_t> extents() const { return std::vector<std::size_t>(d, n); }
};

/// Throws ValidationError if some line of the field admits a forbidden selection.
MaximizingBoxField maximizing_point_box(const SubshiftSpec& spec, const SetWord& w,
                                        std::size_t phase, std::size_t n, std::size_t d,
                                        const Caps& caps = {});

inline constexpr const char* kSamplerAlgorithm = "mt19937_64+splitmix64-substreams/v1";

/// Sample i uses a generator seeded from (seed, i) alone, so batches do not
/// depend on the thread count.
std::uint64_t sample_stream_seed(std::uint64_t seed, std::uint64_t index);

struct BoxSample {
  std::size_t phase = 0;
  std::vector<Letter> sites;
};

struct SampleBatch {
  SetWord word;
  std::size_t n = 0;
  std::size_t d = 0;
  std::uint64_t seed = 0;
  std::string algorithm = kSamplerAlgorithm;
  std::vector<BoxSample> samples;
  std::uint64_t violations = 0;
};

/// Uniform phase, then each site uniform in its cell. Every sample is checked
/// against the forbidden words along every axis; a violation throws Error.
SampleBatch sample_box(const SubshiftSpec& spec, const SetWord& w, std::size_t n, std::size_t d,
                       std::uint64_t seed, std::size_t count, const Caps& caps = {});

struct EmpiricalStats {
  std::size_t samples = 0;
  std::uint64_t violations = 0;
  /// Mean over sites of the plug-in entropy of the observed letters, nats.
  double site_entropy = 0.0;
  /// Mean of ln|cell| over all sites and all m phases; equals the word's score.
  ExactScore mean_log_cell;
  /// Share of samples where some parity class of sites (by coordinate sum)
  /// holds letter 0 only, and where both do.
  double parity_rate = 0.0;
  double both_parity_rate = 0.0;
  /// Letter frequencies over sites whose cell has more than one letter.
  std::vector<double> free_site_frequency;
};

EmpiricalStats empirical_stats(const SubshiftSpec& spec, const SampleBatch& batch);

}  // namespace axial
