#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "axial/caps.hpp"
#include "axial/core.hpp"

namespace axial {

struct WindowEdge {
  std::uint32_t src;
  std::uint32_t dst;
  SetLetter label;  // the cell appended when moving from src to dst
  std::uint32_t weight() const { return static_cast<std::uint32_t>(label.size()); }
};

/// De Bruijn graph on fully legal k-windows of set-letters. Every edge's
/// (k+1)-window is fully legal; after trimming every vertex lies on a
/// bi-infinite path. Vertices are in lexicographic mask order.
struct WindowGraph {
  std::size_t window_length = 0;
  std::vector<SetWord> vertices;
  std::vector<WindowEdge> edges;  // sorted by (src, label)
  std::vector<SetLetter> universe;

  std::size_t vertex_count() const { return vertices.size(); }
  std::optional<std::uint32_t> find_vertex(const SetWord& window) const;
};

enum class GraphUniverse { candidates, exhaustive };
enum class LegalityMode { local, extendable };

struct LegalityViolation {
  Word selection;      // one letter per cell, spelling the forbidden word at `position`
  std::size_t position;
  Word forbidden;
};

struct LegalityReport {
  bool legal = true;
  std::optional<LegalityViolation> witness;
  std::string reason;
};

/// Free letters joined with every subset of the constrained letters, sorted by
/// mask. Sufficient to realize every maximizing cycle (docs/candidate_reduction.md).
std::vector<SetLetter> candidate_set_letters(const SubshiftSpec& spec, const Caps& caps = {});

/// Nonempty subsets of the live letters, sorted by mask.
std::vector<SetLetter> exhaustive_set_letters(const SubshiftSpec& spec, const Caps& caps = {});

WindowGraph build_window_graph(const SubshiftSpec& spec, GraphUniverse universe,
                               const Caps& caps = {});

/// Window graph over an explicit universe (sorted, deduplicated internally).
/// Throws EmptyLanguage if trimming removes every vertex.
WindowGraph build_window_graph_over(const SubshiftSpec& spec, std::vector<SetLetter> universe,
                                    const Caps& caps = {});

/// Untrimmed variant; may be empty.
WindowGraph build_untrimmed_window_graph(const SubshiftSpec& spec,
                                         std::vector<SetLetter> universe, const Caps& caps = {});

/// Removes vertices of zero in- or out-degree until none remain.
void trim(WindowGraph& g);

LegalityReport is_independently_legal(const SetWord& w, const SubshiftSpec& spec,
                                      LegalityMode mode, const Caps& caps = {});

/// `vertex <id> <window>` and `edge <src> <dst> <weight> <setletter>` lines.
void dump_graph(std::ostream& os, const WindowGraph& g, const SubshiftSpec& spec);

}  // namespace axial
