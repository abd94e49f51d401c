#pragma once

#include <cstddef>
#include <cstdint>

namespace axial {

/// Work limits shared by every module. Exceeding one raises CapExceeded.
struct Caps {
  std::size_t max_forbidden_length = 8;
  std::uint64_t max_candidates = std::uint64_t{1} << 20;
  std::uint64_t max_vertices = 1'000'000;
  std::uint64_t max_sites = 24;
  std::uint64_t max_nodes = 1'000'000'000;
  std::size_t max_transfer_width = 12;
};

}  // namespace axial
