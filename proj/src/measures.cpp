#include "axial/measures.hpp"

#include <cmath>
#include <random>

#include "axial/automaton.hpp"
#include "axial/counting.hpp"
#include "axial/errors.hpp"

namespace axial {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform on [0, bound) by rejection; the standard distributions are not
// specified bit-for-bit across library implementations.
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

std::size_t site_count(std::size_t n, std::size_t d, const Caps& caps) {
  if (n == 0 || d == 0) throw ValidationError("box side and dimension must be positive");
  std::uint64_t sites = 1;
  for (std::size_t i = 0; i < d; ++i) {
    sites *= n;
    if (sites > caps.max_vertices) throw CapExceeded("box exceeds the site cap for fields");
  }
  return static_cast<std::size_t>(sites);
}

std::size_t coordinate_sum(std::size_t site, std::size_t n, std::size_t d) {
  std::size_t sum = 0;
  for (std::size_t i = 0; i < d; ++i) {
    sum += site % n;
    site /= n;
  }
  return sum;
}

}  // namespace

MaximizingBoxField maximizing_point_box(const SubshiftSpec& spec, const SetWord& w,
                                        std::size_t phase, std::size_t n, std::size_t d,
                                        const Caps& caps) {
  if (w.empty()) throw ValidationError("empty maximizing word");
  const std::size_t m = w.size();
  if (phase >= m) throw ValidationError("phase must be below the word period");
  const std::size_t sites = site_count(n, d, caps);

  SetWord periodic;
  while (periodic.size() < m + spec.memory()) periodic.insert(periodic.end(), w.begin(), w.end());
  if (!is_independently_legal(periodic, spec, LegalityMode::local, caps).legal) {
    throw ValidationError("word is not a periodic point of the multi-choice shift");
  }

  MaximizingBoxField field{w, phase, n, d, {}};
  field.cells.reserve(sites);
  for (std::size_t s = 0; s < sites; ++s) {
    field.cells.push_back(w[(phase + coordinate_sum(s, n, d)) % m]);
  }

  // Every axis line must avoid forbidden selections.
  std::size_t stride = 1;
  for (std::size_t axis = 0; axis < d; ++axis, stride *= n) {
    for (std::size_t s = 0; s < sites; ++s) {
      if ((s / stride) % n != 0) continue;
      SetWord line;
      for (std::size_t t = 0; t < n; ++t) line.push_back(field.cells[s + t * stride]);
      for (const auto& f : spec.forbidden()) {
        for (std::size_t p = 0; p + f.size() <= n; ++p) {
          if (fits_at(line, p, f)) throw ValidationError("field line admits a forbidden word");
        }
      }
    }
  }
  return field;
}

std::uint64_t sample_stream_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

SampleBatch sample_box(const SubshiftSpec& spec, const SetWord& w, std::size_t n, std::size_t d,
                       std::uint64_t seed, std::size_t count, const Caps& caps) {
  if (count == 0) throw ValidationError("sample count must be positive");
  const std::size_t m = w.size();
  std::vector<MaximizingBoxField> fields;
  for (std::size_t r = 0; r < m; ++r) fields.push_back(maximizing_point_box(spec, w, r, n, d, caps));
  const auto extents = fields.front().extents();

  SampleBatch batch;
  batch.word = w;
  batch.n = n;
  batch.d = d;
  batch.seed = seed;
  batch.samples.resize(count);
  std::vector<char> bad(count, 0);

#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < count; ++i) {
    std::mt19937_64 rng(sample_stream_seed(seed, i));
    BoxSample& out = batch.samples[i];
    out.phase = static_cast<std::size_t>(draw_below(rng, m));
    const auto& cells = fields[out.phase].cells;
    out.sites.resize(cells.size());
    for (std::size_t s = 0; s < cells.size(); ++s) {
      LetterMask mask = cells[s].mask();
      auto pick = draw_below(rng, static_cast<std::uint64_t>(cells[s].size()));
      while (pick-- > 0) mask &= mask - 1;
      out.sites[s] = static_cast<Letter>(std::countr_zero(mask));
    }
    bad[i] = !box_is_legal(spec, extents, out.sites);
  }

  for (auto b : bad) batch.violations += b;
  if (batch.violations > 0) {
    throw Error(std::to_string(batch.violations) + " sampled boxes contain a forbidden word");
  }
  return batch;
}

EmpiricalStats empirical_stats(const SubshiftSpec& spec, const SampleBatch& batch) {
  if (batch.samples.empty()) throw ValidationError("empty sample batch");
  const std::size_t sigma = spec.alphabet().size();
  const std::size_t m = batch.word.size();
  const std::size_t sites = batch.samples.front().sites.size();

  EmpiricalStats st;
  st.samples = batch.samples.size();
  st.violations = batch.violations;

  std::vector<std::uint64_t> counts(sites * sigma, 0);
  for (const auto& s : batch.samples) {
    for (std::size_t g = 0; g < sites; ++g) ++counts[g * sigma + s.sites[g]];
  }
  const double total = static_cast<double>(st.samples);
  for (std::size_t g = 0; g < sites; ++g) {
    double h = 0.0;
    for (std::size_t a = 0; a < sigma; ++a) {
      if (const auto c = counts[g * sigma + a]) {
        const double p = static_cast<double>(c) / total;
        h -= p * std::log(p);
      }
    }
    st.site_entropy += h / static_cast<double>(sites);
  }

  // Over all phases each cell index is hit once per site and phase pair.
  std::vector<std::uint64_t> hits(m, 0);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t g = 0; g < sites; ++g) ++hits[(r + coordinate_sum(g, batch.n, batch.d)) % m];
  }
  BigInt p = 1;
  for (std::size_t i = 0; i < m; ++i) {
    p *= boost::multiprecision::pow(BigInt(batch.word[i].size()), static_cast<unsigned>(hits[i]));
  }
  st.mean_log_cell = canonicalize_score(ExactScore{p, static_cast<std::uint64_t>(m * sites)});

  std::uint64_t one = 0, both = 0, free_total = 0;
  std::vector<std::uint64_t> free_counts(sigma, 0);
  for (const auto& s : batch.samples) {
    bool zero[2] = {true, true};
    for (std::size_t g = 0; g < sites; ++g) {
      if (s.sites[g] != 0) zero[coordinate_sum(g, batch.n, batch.d) % 2] = false;
      const SetLetter cell = batch.word[(s.phase + coordinate_sum(g, batch.n, batch.d)) % m];
      if (cell.size() > 1) {
        ++free_counts[s.sites[g]];
        ++free_total;
      }
    }
    one += zero[0] || zero[1];
    both += zero[0] && zero[1];
  }
  st.parity_rate = static_cast<double>(one) / total;
  st.both_parity_rate = static_cast<double>(both) / total;
  st.free_site_frequency.assign(sigma, 0.0);
  if (free_total > 0) {
    for (std::size_t a = 0; a < sigma; ++a) {
      st.free_site_frequency[a] = static_cast<double>(free_counts[a]) / static_cast<double>(free_total);
    }
  }
  return st;
}

}  // namespace axial
