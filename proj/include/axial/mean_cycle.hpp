#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "axial/score.hpp"

namespace axial {

struct Arc {
  std::uint32_t src;
  std::uint32_t dst;
};

/// Positive edge weights held as exponent vectors over a prime basis, so that
/// a product of weights along a walk is a vector sum and comparisons between
/// products are exact: two different vectors never denote the same number.
class FactoredWeights {
 public:
  static FactoredWeights from_integers(std::span<const std::uint64_t> weights);
  /// Throws ValidationError for nonpositive weights or factors it cannot certify.
  static FactoredWeights from_rationals(std::span<const BigRational> weights);

  std::size_t dim() const { return primes_.size(); }
  std::size_t edge_count() const { return edge_count_; }
  const std::vector<std::uint64_t>& primes() const { return primes_; }
  std::span<const std::int64_t> edge(std::size_t e) const {
    return {exponents_.data() + e * dim(), dim()};
  }

  /// Sign of sum_p c_p * ln(p).
  int sign(std::span<const std::int64_t> c) const;
  /// prod_p p^(c_p).
  BigRational value(std::span<const std::int64_t> c) const;

 private:
  using Factorization = std::vector<std::pair<std::uint64_t, std::int64_t>>;
  static FactoredWeights from_factorizations(const std::vector<Factorization>& edges);

  std::vector<std::uint64_t> primes_;
  std::vector<double> logs_;
  std::vector<std::int64_t> exponents_;
  std::size_t edge_count_ = 0;
};

struct MeanCycleSolution {
  /// Maximum cycle mean: (sum_p numerator_p ln p) / denominator, in lowest terms.
  std::vector<std::int64_t> numerator;
  std::int64_t denominator = 1;
  /// Per arc: lies on some cycle of maximum mean.
  std::vector<char> critical;
  /// Arc indices of one maximum-mean cycle, in walk order.
  std::vector<std::uint32_t> witness;
};

/// Exact Karp recurrence per strongly connected component, parallel over the
/// vertices of each layer. Throws ValidationError if the graph has no cycle.
MeanCycleSolution max_mean_cycle_kernel(std::size_t vertex_count, std::span<const Arc> arcs,
                                        const FactoredWeights& weights);

/// Serial reference: textbook Karp with the whole table of big-integer
/// products kept and ratios compared by cross-powering. Score only.
ExactScore max_mean_cycle_reference(std::size_t vertex_count, std::span<const Arc> arcs,
                                    std::span<const std::uint64_t> weights);

/// Tarjan, iterative. Components are listed with vertices in increasing order.
std::vector<std::vector<std::uint32_t>> strongly_connected_components(std::size_t vertex_count,
                                                                      std::span<const Arc> arcs);

}  // namespace axial
