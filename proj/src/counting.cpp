#include "axial/counting.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <exception>
#include <sstream>
#include <string>
#include <unordered_map>

#include "axial/errors.hpp"
#include "axial/optimize.hpp"
#include "collapsed.hpp"

namespace axial {

namespace {

struct BoxShape {
  std::vector<std::size_t> extents;
  std::vector<std::size_t> strides;
  std::size_t sites = 1;
  std::vector<std::size_t> coords;  // sites x d

  explicit BoxShape(const std::vector<std::size_t>& ext) : extents(ext) {
    if (ext.empty()) throw ValidationError("box needs at least one axis");
    for (auto e : ext) {
      if (e == 0) throw ValidationError("box sides must be positive");
    }
    const std::size_t d = ext.size();
    strides.assign(d, 1);
    for (std::size_t i = d - 1; i-- > 0;) strides[i] = strides[i + 1] * ext[i + 1];
    sites = strides[0] * ext[0];
    coords.resize(sites * d);
    for (std::size_t s = 0; s < sites; ++s) {
      for (std::size_t i = 0; i < d; ++i) coords[s * d + i] = (s / strides[i]) % ext[i];
    }
  }
  std::size_t dims() const { return extents.size(); }
  std::size_t coord(std::size_t s, std::size_t axis) const { return coords[s * dims() + axis]; }
};

class Filler {
 public:
  Filler(const detail::CollapsedAlphabet& alpha, const BoxShape& shape, std::uint64_t node_cap,
         std::uint64_t memo_cap)
      : alpha_(alpha), shape_(shape), node_cap_(node_cap), memo_cap_(memo_cap) {
    std::size_t longest = 1;
    for (const auto& words : alpha.by_last) {
      for (const auto& f : words) longest = std::max(longest, f.size());
    }
    window_ = (longest - 1) * shape.strides[0];
  }

  // Whether symbol a may go at site s given the sites before it.
  bool can_place(const std::vector<std::uint8_t>& grid, std::size_t s, std::uint8_t a) const {
    for (const auto& f : alpha_.by_last[a]) {
      const std::size_t len = f.size();
      for (std::size_t axis = 0; axis < shape_.dims(); ++axis) {
        if (shape_.coord(s, axis) + 1 < len) continue;
        bool match = true;
        for (std::size_t t = 1; t < len && match; ++t) {
          match = grid[s - t * shape_.strides[axis]] == f[len - 1 - t];
        }
        if (match) return false;
      }
    }
    return true;
  }

  struct Prefix {
    std::vector<std::uint8_t> grid;
    std::size_t free_sites = 0;
  };

  // Legal fillings of the first `depth` sites.
  std::vector<Prefix> prefixes(std::size_t depth) const {
    std::vector<Prefix> level{{std::vector<std::uint8_t>(shape_.sites, 0), 0}};
    for (std::size_t s = 0; s < depth; ++s) {
      std::vector<Prefix> next;
      for (const auto& p : level) {
        for (std::uint8_t a = 0; a < alpha_.size(); ++a) {
          if (!can_place(p.grid, s, a)) continue;
          Prefix q = p;
          q.grid[s] = a;
          q.free_sites += alpha_.is_free(a);
          next.push_back(std::move(q));
        }
      }
      level = std::move(next);
    }
    return level;
  }

  // Completion counts indexed by the number of free sites placed.
  using Hist = std::vector<unsigned __int128>;

  struct Walk {
    std::vector<std::uint8_t> grid;
    std::atomic<std::uint64_t>& nodes;
    std::atomic<bool>& abort;
    std::unordered_map<std::string, Hist> memo;
    std::uint64_t local = 0;
  };

  // Histogram by number of free sites of the completions of `p`.
  void complete(const Prefix& p, std::size_t depth, Hist& hist, std::atomic<std::uint64_t>& nodes,
                std::atomic<bool>& abort) const {
    Walk walk{p.grid, nodes, abort, {}};
    const Hist tail = extend(walk, depth);
    nodes += walk.local;
    for (std::size_t j = 0; j < tail.size(); ++j) add(hist[j + p.free_sites], tail[j]);
  }

 private:
  static void add(unsigned __int128& acc, unsigned __int128 x) {
    if (__builtin_add_overflow(acc, x, &acc)) throw CapExceeded("box count overflows 128 bits");
  }

  // What can still be placed from site s on depends only on the last
  // `window` sites, since every axis looks back at most memory * stride[0].
  std::string key(const std::vector<std::uint8_t>& grid, std::size_t s) const {
    const std::size_t from = s > window_ ? s - window_ : 0;
    std::string k(sizeof(s), '\0');
    std::memcpy(k.data(), &s, sizeof(s));
    k.append(grid.begin() + static_cast<std::ptrdiff_t>(from), grid.begin() + static_cast<std::ptrdiff_t>(s));
    return k;
  }

  Hist extend(Walk& w, std::size_t s) const {
    if (s == shape_.sites) return Hist{1};
    std::string k = key(w.grid, s);
    if (auto it = w.memo.find(k); it != w.memo.end()) return it->second;
    if (++w.local == 4096) {
      if (w.nodes.fetch_add(w.local) + w.local > node_cap_) w.abort = true;
      w.local = 0;
    }
    Hist out(shape_.sites - s + 1, 0);
    if (w.abort.load(std::memory_order_relaxed)) return out;
    for (std::uint8_t a = 0; a < alpha_.size(); ++a) {
      if (!can_place(w.grid, s, a)) continue;
      w.grid[s] = a;
      const Hist sub = extend(w, s + 1);
      const std::size_t shift = alpha_.is_free(a) ? 1 : 0;
      for (std::size_t j = 0; j < sub.size(); ++j) add(out[j + shift], sub[j]);
    }
    if (w.memo.size() < memo_cap_) w.memo.emplace(std::move(k), out);
    return out;
  }

  const detail::CollapsedAlphabet& alpha_;
  const BoxShape& shape_;
  std::uint64_t node_cap_;
  std::uint64_t memo_cap_;
  std::size_t window_ = 0;
};

std::size_t box_sites(std::size_t n, std::size_t d, const Caps& caps) {
  std::uint64_t sites = 1;
  for (std::size_t i = 0; i < d; ++i) {
    sites *= n;
    if (sites > caps.max_sites) {
      std::ostringstream msg;
      msg << "box " << n << "^" << d << " exceeds the site cap " << caps.max_sites;
      throw CapExceeded(msg.str());
    }
  }
  return static_cast<std::size_t>(sites);
}

}  // namespace

BigInt count_extents(const SubshiftSpec& spec, const std::vector<std::size_t>& extents,
                     const Caps& caps) {
  const BoxShape shape(extents);
  if (shape.sites > caps.max_sites) {
    throw CapExceeded("box has " + std::to_string(shape.sites) + " sites, cap is " +
                      std::to_string(caps.max_sites));
  }
  const auto alpha = detail::collapse(spec);
  if (alpha.size() == 0) return 0;
  const Filler filler(alpha, shape, caps.max_nodes, caps.max_vertices);

  std::size_t depth = 0;
  std::vector<Filler::Prefix> roots = filler.prefixes(0);
  while (depth < shape.sites && roots.size() < 256) {
    ++depth;
    roots = filler.prefixes(depth);
    if (roots.empty()) return 0;
  }

  std::vector<Filler::Hist> hists(roots.size(), Filler::Hist(shape.sites + 1, 0));
  std::exception_ptr failure;
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> abort{false};
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t i = 0; i < roots.size(); ++i) {
    try {
      filler.complete(roots[i], depth, hists[i], nodes, abort);
    } catch (...) {
#pragma omp critical(axial_count_failure)
      if (!failure) failure = std::current_exception();
      abort = true;
    }
  }
  if (failure) std::rethrow_exception(failure);
  if (abort) {
    throw CapExceeded("backtracking exceeded the node cap " + std::to_string(caps.max_nodes));
  }

  std::vector<BigInt> by_free(shape.sites + 1, 0);
  for (const auto& h : hists) {
    for (std::size_t j = 0; j <= shape.sites; ++j) {
      by_free[j] += (BigInt(static_cast<std::uint64_t>(h[j] >> 64)) << 64) + static_cast<std::uint64_t>(h[j]);
    }
  }
  BigInt total = 0;
  BigInt weight = 1;
  for (std::size_t j = 0; j <= shape.sites; ++j) {
    total += by_free[j] * weight;
    weight *= alpha.free_count;
  }
  return total;
}

bool box_is_legal(const SubshiftSpec& spec, const std::vector<std::size_t>& extents,
                  std::span<const Letter> sites) {
  const BoxShape shape(extents);
  if (sites.size() != shape.sites) throw ValidationError("site count does not match the box");
  for (std::size_t s = 0; s < shape.sites; ++s) {
    if (sites[s] >= spec.alphabet().size()) return false;
    for (const auto& f : spec.forbidden()) {
      const std::size_t len = f.size();
      for (std::size_t axis = 0; axis < shape.dims(); ++axis) {
        if (shape.coord(s, axis) + len > shape.extents[axis]) continue;
        bool match = true;
        for (std::size_t t = 0; t < len && match; ++t) {
          match = sites[s + t * shape.strides[axis]] == f[t];
        }
        if (match) return false;
      }
    }
  }
  return true;
}

BigInt count_box_reference(const SubshiftSpec& spec, const std::vector<std::size_t>& extents,
                           const Caps& caps) {
  const BoxShape shape(extents);
  const std::size_t sigma = spec.alphabet().size();
  double fillings = std::pow(static_cast<double>(sigma), static_cast<double>(shape.sites));
  if (fillings > static_cast<double>(caps.max_nodes)) {
    throw CapExceeded("reference count would visit more than the node cap");
  }
  std::vector<Letter> grid(shape.sites, 0);
  BigInt total = 0;
  while (true) {
    if (box_is_legal(spec, extents, grid)) ++total;
    std::size_t i = 0;
    while (i < grid.size() && ++grid[i] == sigma) grid[i++] = 0;
    if (i == grid.size()) break;
  }
  return total;
}

BoxCount count_box(const SubshiftSpec& spec, std::size_t n, std::size_t d, const Caps& caps,
                   CountMethod method) {
  if (n == 0 || d == 0) throw ValidationError("box side and dimension must be positive");
  BoxCount out{n, d, 0, 0.0};
  if (method == CountMethod::automatic) {
    const bool strip = d == 1 || (d == 2 && n <= caps.max_transfer_width);
    method = strip ? CountMethod::transfer : CountMethod::backtrack;
  }
  if (method == CountMethod::transfer) {
    if (d == 1) {
      out.count = count_line(spec, n, caps);
    } else if (d == 2) {
      out.count = count_rectangle(spec, n, n, caps);
    } else {
      throw ValidationError("transfer counting supports d <= 2");
    }
  } else {
    box_sites(n, d, caps);
    out.count = count_extents(spec, std::vector<std::size_t>(d, n), caps);
  }
  double volume = std::pow(static_cast<double>(n), static_cast<double>(d));
  out.estimate = out.count > 0 ? log_of(out.count) / volume : -INFINITY;
  return out;
}

ConvergenceTable entropy_estimate_table(const SubshiftSpec& spec,
                                        const std::vector<std::size_t>& ns,
                                        const std::vector<std::size_t>& ds, const Caps& caps,
                                        bool skip_capped) {
  ConvergenceTable table;
  table.h_ind = independence_entropy(spec, caps).first;
  const double h = nats(table.h_ind);

  std::vector<std::size_t> n_sorted(ns), d_sorted(ds);
  std::sort(n_sorted.begin(), n_sorted.end());
  n_sorted.erase(std::unique(n_sorted.begin(), n_sorted.end()), n_sorted.end());
  std::sort(d_sorted.begin(), d_sorted.end());
  d_sorted.erase(std::unique(d_sorted.begin(), d_sorted.end()), d_sorted.end());

  for (auto d : d_sorted) {
    for (auto n : n_sorted) {
      try {
        auto c = count_box(spec, n, d, caps);
        table.rows.push_back({n, d, std::move(c.count), c.estimate});
      } catch (const CapExceeded& e) {
        if (!skip_capped) throw;
        table.skipped.push_back("n=" + std::to_string(n) + ",d=" + std::to_string(d) + ": " +
                                e.what());
      }
    }
  }

  auto find = [&](std::size_t n, std::size_t d) -> const TableRow* {
    for (const auto& r : table.rows) {
      if (r.n == n && r.d == d) return &r;
    }
    return nullptr;
  };
  for (const auto& r : table.rows) {
    if (r.estimate < h - 1e-9) table.sandwich = false;
    if (const auto* up = find(r.n, r.d + 1)) {
      if (up->count > boost::multiprecision::pow(r.count, static_cast<unsigned>(r.n))) {
        table.slice_monotone = false;
      }
    }
    if (const auto* twice = find(2 * r.n, r.d)) {
      if (twice->estimate > r.estimate + 1e-12) table.doubling_monotone = false;
    }
    if (r.d >= 2 && r.n <= caps.max_sites) {
      std::vector<std::size_t> thin(r.d, 1);
      thin[0] = r.n;
      try {
        if (count_extents(spec, thin, caps) != count_line(spec, r.n, caps)) table.thin_box = false;
      } catch (const CapExceeded&) {
        if (!skip_capped) throw;
      }
    }
  }
  return table;
}

}  // namespace axial
