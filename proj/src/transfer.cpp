#include <algorithm>
#include <map>

#include "axial/counting.hpp"
#include "axial/errors.hpp"
#include "collapsed.hpp"

namespace axial {

namespace {

using Row = std::vector<std::uint8_t>;

struct RowSet {
  std::vector<Row> rows;
  std::vector<BigInt> weights;  // free_count^(free symbols in the row)
};

bool row_extends(const detail::CollapsedAlphabet& alpha, const Row& row, std::uint8_t a) {
  const std::size_t pos = row.size();
  for (const auto& f : alpha.by_last[a]) {
    if (f.size() > pos + 1) continue;
    bool match = true;
    for (std::size_t t = 1; t < f.size() && match; ++t) match = row[pos - t] == f[f.size() - 1 - t];
    if (match) return false;
  }
  return true;
}

RowSet legal_rows(const detail::CollapsedAlphabet& alpha, std::size_t width, const Caps& caps) {
  RowSet out;
  std::vector<Row> level{Row{}};
  for (std::size_t c = 0; c < width; ++c) {
    std::vector<Row> next;
    for (const auto& r : level) {
      for (std::uint8_t a = 0; a < alpha.size(); ++a) {
        if (!row_extends(alpha, r, a)) continue;
        Row s = r;
        s.push_back(a);
        next.push_back(std::move(s));
      }
    }
    if (next.size() > caps.max_vertices) {
      throw CapExceeded("strip of width " + std::to_string(width) + " has more than " +
                        std::to_string(caps.max_vertices) + " legal rows");
    }
    level = std::move(next);
  }
  for (auto& r : level) {
    BigInt w = 1;
    for (auto a : r) {
      if (alpha.is_free(a)) w *= alpha.free_count;
    }
    out.rows.push_back(std::move(r));
    out.weights.push_back(std::move(w));
  }
  return out;
}

}  // namespace

BigInt count_rectangle(const SubshiftSpec& spec, std::size_t width, std::size_t height,
                       const Caps& caps) {
  if (width == 0 || height == 0) throw ValidationError("rectangle sides must be positive");
  if (width > caps.max_transfer_width) {
    throw CapExceeded("strip width " + std::to_string(width) + " exceeds the transfer cap " +
                      std::to_string(caps.max_transfer_width));
  }
  const auto alpha = detail::collapse(spec);
  if (alpha.size() == 0) return 0;
  const RowSet rows = legal_rows(alpha, width, caps);
  const std::size_t k = spec.memory();

  // The column below row r: is appending r to the last rows of `state` legal?
  auto fits = [&](const std::vector<std::uint32_t>& state, std::uint32_t r) {
    const Row& next = rows.rows[r];
    for (std::size_t c = 0; c < width; ++c) {
      for (const auto& f : alpha.by_last[next[c]]) {
        if (f.size() > state.size() + 1) continue;
        bool match = true;
        for (std::size_t t = 1; t < f.size() && match; ++t) {
          match = rows.rows[state[state.size() - t]][c] == f[f.size() - 1 - t];
        }
        if (match) return false;
      }
    }
    return true;
  };

  // State: indices of the last min(k, rows placed) rows, oldest first.
  std::map<std::vector<std::uint32_t>, BigInt> layer{{{}, BigInt{1}}};
  for (std::size_t h = 0; h < height; ++h) {
    std::map<std::vector<std::uint32_t>, BigInt> next;
    for (const auto& [state, ways] : layer) {
      for (std::uint32_t r = 0; r < rows.rows.size(); ++r) {
        if (!fits(state, r)) continue;
        std::vector<std::uint32_t> s = state;
        s.push_back(r);
        if (s.size() > k) s.erase(s.begin());
        next[std::move(s)] += ways * rows.weights[r];
      }
      if (next.size() > caps.max_vertices) {
        throw CapExceeded("transfer state count exceeds " + std::to_string(caps.max_vertices));
      }
    }
    layer = std::move(next);
  }
  BigInt total = 0;
  for (const auto& [state, ways] : layer) total += ways;
  return total;
}

BigInt count_line(const SubshiftSpec& spec, std::size_t n, const Caps& caps) {
  if (n == 0) throw ValidationError("word length must be positive");
  Caps line = caps;
  line.max_transfer_width = std::max<std::size_t>(line.max_transfer_width, 1);
  return count_rectangle(spec, 1, n, line);
}

}  // namespace axial
