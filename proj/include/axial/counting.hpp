#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "axial/caps.hpp"
#include "axial/core.hpp"
#include "axial/score.hpp"

namespace axial {

/// Number of fillings of [0,n-1]^d whose axis-parallel lines avoid every
/// forbidden word (free boundary, no wraparound).
struct BoxCount {
  std::size_t n = 0;
  std::size_t d = 0;
  BigInt count;
  double estimate = 0.0;  // ln(count) / n^d
};

enum class CountMethod { automatic, backtrack, transfer };

BoxCount count_box(const SubshiftSpec& spec, std::size_t n, std::size_t d, const Caps& caps = {},
                   CountMethod method = CountMethod::automatic);

/// Backtracking count over an arbitrary box; extents[i] is the side along axis i.
/// Free letters are interchangeable, so they are folded into one weighted symbol.
BigInt count_extents(const SubshiftSpec& spec, const std::vector<std::size_t>& extents,
                     const Caps& caps = {});

/// Row-by-row transfer count of a width x height rectangle.
BigInt count_rectangle(const SubshiftSpec& spec, std::size_t width, std::size_t height,
                       const Caps& caps = {});

/// Number of legal words of length n.
BigInt count_line(const SubshiftSpec& spec, std::size_t n, const Caps& caps = {});

/// Serial check of every filling over the full alphabet. Small boxes only.
BigInt count_box_reference(const SubshiftSpec& spec, const std::vector<std::size_t>& extents,
                           const Caps& caps = {});

/// Sites are in row-major order: the last axis varies fastest.
bool box_is_legal(const SubshiftSpec& spec, const std::vector<std::size_t>& extents,
                  std::span<const Letter> sites);

struct TableRow {
  std::size_t n = 0;
  std::size_t d = 0;
  BigInt count;
  double estimate = 0.0;
};

struct ConvergenceTable {
  std::vector<TableRow> rows;  // sorted by (d, n)
  ExactScore h_ind;
  bool sandwich = true;            // estimate >= h_ind - 1e-9 everywhere
  bool slice_monotone = true;      // count(n, d+1) <= count(n, d)^n
  bool doubling_monotone = true;   // estimate(2n, d) <= estimate(n, d)
  bool thin_box = true;            // n x 1 x ... x 1 box counts words of length n
  std::vector<std::string> skipped;  // "n=..,d=..: reason" for capped entries
};

/// With skip_capped, entries over a cap are listed in `skipped`; otherwise the
/// CapExceeded propagates.
ConvergenceTable entropy_estimate_table(const SubshiftSpec& spec,
                                        const std::vector<std::size_t>& ns,
                                        const std::vector<std::size_t>& ds, const Caps& caps = {},
                                        bool skip_capped = false);

/// ln of the Perron root of the letter-level window graph, to relative tolerance tol.
double entropy_1d(const SubshiftSpec& spec, double tol = 1e-10, const Caps& caps = {});

/// Best independence score over cyclic set-words of length <= max_len whose
/// periodic extension is fully legal, by exhaustive search over all subsets.
ExactScore oracle_hind(const SubshiftSpec& spec, std::size_t max_len, const Caps& caps = {});

}  // namespace axial
