#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "axial/caps.hpp"
#include "axial/core.hpp"

namespace axial {

enum class ModelKind { full, hard_square, coloring, beach, rll, plastic, words };

struct ModelDescriptor {
  ModelKind kind = ModelKind::hard_square;
  std::size_t size = 0;                 // full: sigma, coloring: n, beach: M
  std::size_t rll_d = 0;
  std::optional<std::size_t> rll_k;     // empty: k = infinity
  std::vector<std::string> alphabet;    // words
  std::vector<std::vector<std::string>> forbidden;

  std::string name() const;
};

/// Accepts hard_square, plastic, full:S, coloring:N, beach:M, rll:D,K,
/// rll:D,inf and file:PATH (JSON with `alphabet` and `forbidden`).
ModelDescriptor parse_model(std::string_view text);

/// Reads `{"alphabet":[...],"forbidden":[...]}`; forbidden entries are either
/// strings of single-character symbols or arrays of symbols.
ModelDescriptor parse_model_json(std::string_view json_text);

SubshiftSpec build_model(const ModelDescriptor& desc, const Caps& caps = {});

inline SubshiftSpec load_model(std::string_view text, const Caps& caps = {}) {
  return build_model(parse_model(text), caps);
}

ModelDescriptor full_shift(std::size_t sigma);
ModelDescriptor hard_square();
ModelDescriptor coloring(std::size_t n);
ModelDescriptor beach(std::size_t m);
ModelDescriptor rll(std::size_t d, std::optional<std::size_t> k);
ModelDescriptor plastic();
ModelDescriptor words(std::vector<std::string> alphabet, std::vector<std::vector<std::string>> forbidden);

/// Built-in models small enough for every exact routine under default caps.
std::vector<std::string> builtin_model_names();

}  // namespace axial
