#include "axial/mean_cycle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numeric>
#include <optional>

#include "axial/errors.hpp"

namespace axial {

namespace mp = boost::multiprecision;

namespace {

constexpr std::uint64_t kTrialLimit = 1'000'000;

const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    std::vector<char> composite(kTrialLimit + 1, 0);
    std::vector<std::uint32_t> out;
    for (std::uint64_t i = 2; i <= kTrialLimit; ++i) {
      if (composite[i]) continue;
      out.push_back(static_cast<std::uint32_t>(i));
      for (std::uint64_t j = i * i; j <= kTrialLimit; j += i) composite[j] = 1;
    }
    return out;
  }();
  return primes;
}

// Adds sign * (exponents of x) into `into`.
void factor_into(BigInt x, int sign, std::map<std::uint64_t, std::int64_t>& into) {
  if (x <= 0) throw ValidationError("weights must be positive");
  for (std::uint32_t p : small_primes()) {
    if (x == 1) return;
    if (BigInt(p) * p > x) break;
    while (x % p == 0) {
      x /= p;
      into[p] += sign;
    }
  }
  if (x == 1) return;
  if (x > BigInt(kTrialLimit) * kTrialLimit) {
    throw ValidationError("weight has a factor too large to factor exactly: " + x.str());
  }
  into[x.convert_to<std::uint64_t>()] += sign;
}

using Vec = std::vector<std::int64_t>;

// Row-major table of exponent vectors, one row per vertex.
struct Layer {
  std::size_t dim;
  Vec data;
  Layer(std::size_t rows, std::size_t d) : dim(d), data(rows * d, 0) {}
  std::span<std::int64_t> row(std::size_t v) { return {data.data() + v * dim, dim}; }
  std::span<const std::int64_t> row(std::size_t v) const { return {data.data() + v * dim, dim}; }
};

struct InArc {
  std::uint32_t src;  // local index
  std::uint32_t arc;  // global arc index
};

struct Component {
  std::vector<std::uint32_t> vertices;         // global ids, increasing
  std::vector<std::vector<InArc>> in_arcs;     // by local vertex
};

// Mean as (sum numerator ln p) / denominator.
struct Mean {
  Vec numerator;
  std::int64_t denominator = 1;
};

// sign(X/x - Y/y) for positive x, y.
int compare_means(const FactoredWeights& w, std::span<const std::int64_t> x_num, std::int64_t x_den,
                  std::span<const std::int64_t> y_num, std::int64_t y_den, Vec& scratch) {
  for (std::size_t p = 0; p < scratch.size(); ++p) {
    scratch[p] = y_den * x_num[p] - x_den * y_num[p];
  }
  return w.sign(scratch);
}

// next[v] = max over in-arcs (u -> v) of prev[u] + weight.
void karp_step(const Component& c, const FactoredWeights& w, const Layer& prev, Layer& next) {
  const std::size_t dim = w.dim();
  const auto n = static_cast<std::int64_t>(c.vertices.size());
#pragma omp parallel
  {
    Vec cand(dim), diff(dim);
#pragma omp for schedule(static)
    for (std::int64_t v = 0; v < n; ++v) {
      auto out = next.row(static_cast<std::size_t>(v));
      bool have = false;
      for (const auto& in : c.in_arcs[static_cast<std::size_t>(v)]) {
        auto base = prev.row(in.src);
        auto we = w.edge(in.arc);
        for (std::size_t p = 0; p < dim; ++p) cand[p] = base[p] + we[p];
        if (have) {
          for (std::size_t p = 0; p < dim; ++p) diff[p] = cand[p] - out[p];
          if (w.sign(diff) <= 0) continue;
        }
        std::copy(cand.begin(), cand.end(), out.begin());
        have = true;
      }
    }
  }
}

// Karp: max_v min_{l<N} (D_N(v) - D_l(v)) / (N - l), with D_0 = 0 everywhere.
// D_N is computed first, then the layers are regenerated so memory stays O(N).
Mean component_mean(const Component& c, const FactoredWeights& w) {
  const std::size_t n = c.vertices.size();
  const std::size_t dim = w.dim();
  Layer a(n, dim), b(n, dim);
  Layer* prev = &a;
  Layer* next = &b;
  for (std::size_t l = 1; l <= n; ++l) {
    karp_step(c, w, *prev, *next);
    std::swap(prev, next);
  }
  const Layer last = *prev;

  Layer min_num(n, dim);
  std::vector<std::int64_t> min_den(n, 0);
  Layer cur(n, dim), tmp(n, dim);
  for (std::size_t l = 0; l < n; ++l) {
    const auto den = static_cast<std::int64_t>(n - l);
#pragma omp parallel
    {
      Vec num(dim), scratch(dim);
#pragma omp for schedule(static)
      for (std::int64_t sv = 0; sv < static_cast<std::int64_t>(n); ++sv) {
        const auto v = static_cast<std::size_t>(sv);
        auto dn = last.row(v);
        auto dl = cur.row(v);
        for (std::size_t p = 0; p < dim; ++p) num[p] = dn[p] - dl[p];
        if (min_den[v] == 0 ||
            compare_means(w, num, den, min_num.row(v), min_den[v], scratch) < 0) {
          std::copy(num.begin(), num.end(), min_num.row(v).begin());
          min_den[v] = den;
        }
      }
    }
    karp_step(c, w, cur, tmp);
    std::swap(cur, tmp);
  }

  Mean best{Vec(min_num.row(0).begin(), min_num.row(0).end()), min_den[0]};
  Vec scratch(dim);
  for (std::size_t v = 1; v < n; ++v) {
    if (compare_means(w, min_num.row(v), min_den[v], best.numerator, best.denominator, scratch) > 0) {
      best.numerator.assign(min_num.row(v).begin(), min_num.row(v).end());
      best.denominator = min_den[v];
    }
  }
  std::int64_t g = best.denominator;
  for (auto x : best.numerator) g = std::gcd(g, std::llabs(x));
  for (auto& x : best.numerator) x /= g;
  best.denominator /= g;
  return best;
}

// pi(v) = max_{l<N} (den * D_l(v) - l * num); a feasible potential for the
// reduced weights den * w - num, tight exactly on maximum-mean cycles.
Layer component_potentials(const Component& c, const FactoredWeights& w, const Mean& mean) {
  const std::size_t n = c.vertices.size();
  const std::size_t dim = w.dim();
  Layer pi(n, dim), cur(n, dim), tmp(n, dim);
  Vec cand(dim), diff(dim);
  for (std::size_t l = 1; l < n; ++l) {
    karp_step(c, w, cur, tmp);
    std::swap(cur, tmp);
    const auto shift = static_cast<std::int64_t>(l);
    for (std::size_t v = 0; v < n; ++v) {
      auto dl = cur.row(v);
      auto best = pi.row(v);
      for (std::size_t p = 0; p < dim; ++p) {
        cand[p] = mean.denominator * dl[p] - shift * mean.numerator[p];
        diff[p] = cand[p] - best[p];
      }
      if (w.sign(diff) > 0) std::copy(cand.begin(), cand.end(), best.begin());
    }
  }
  return pi;
}

}  // namespace

FactoredWeights FactoredWeights::from_factorizations(const std::vector<Factorization>& edges) {
  FactoredWeights out;
  std::map<std::uint64_t, std::size_t> index;
  for (const auto& f : edges) {
    for (const auto& [p, e] : f) {
      if (e != 0) index.emplace(p, 0);
    }
  }
  for (auto& [p, i] : index) {
    i = out.primes_.size();
    out.primes_.push_back(p);
    out.logs_.push_back(std::log(static_cast<double>(p)));
  }
  out.edge_count_ = edges.size();
  out.exponents_.assign(edges.size() * out.dim(), 0);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    for (const auto& [p, x] : edges[e]) {
      if (x != 0) out.exponents_[e * out.dim() + index.at(p)] += x;
    }
  }
  return out;
}

FactoredWeights FactoredWeights::from_integers(std::span<const std::uint64_t> weights) {
  std::vector<Factorization> edges;
  edges.reserve(weights.size());
  for (auto w : weights) {
    if (w == 0) throw ValidationError("weights must be positive");
    Factorization f;
    for (std::uint64_t p = 2; p * p <= w; ++p) {
      std::int64_t e = 0;
      while (w % p == 0) {
        w /= p;
        ++e;
      }
      if (e > 0) f.emplace_back(p, e);
    }
    if (w > 1) f.emplace_back(w, 1);
    edges.push_back(std::move(f));
  }
  return from_factorizations(edges);
}

FactoredWeights FactoredWeights::from_rationals(std::span<const BigRational> weights) {
  std::vector<Factorization> edges;
  std::map<BigRational, Factorization> cache;
  for (const auto& w : weights) {
    if (w <= 0) throw ValidationError("weights must be positive");
    auto it = cache.find(w);
    if (it == cache.end()) {
      std::map<std::uint64_t, std::int64_t> acc;
      factor_into(mp::numerator(w), +1, acc);
      factor_into(mp::denominator(w), -1, acc);
      it = cache.emplace(w, Factorization(acc.begin(), acc.end())).first;
    }
    edges.push_back(it->second);
  }
  return from_factorizations(edges);
}

int FactoredWeights::sign(std::span<const std::int64_t> c) const {
  if (c.size() == 1) return (c[0] > 0) - (c[0] < 0);
  double sum = 0.0;
  double scale = 0.0;
  bool zero = true;
  for (std::size_t p = 0; p < c.size(); ++p) {
    if (c[p] == 0) continue;
    zero = false;
    const double term = static_cast<double>(c[p]) * logs_[p];
    sum += term;
    scale += std::abs(term);
  }
  if (zero) return 0;
  // Logs of distinct primes are linearly independent over Q, so sum != 0 here.
  if (std::abs(sum) > 1e-9 * scale) return sum > 0 ? 1 : -1;
  BigInt pos = 1, neg = 1;
  for (std::size_t p = 0; p < c.size(); ++p) {
    if (c[p] > 0) pos *= mp::pow(BigInt(primes_[p]), static_cast<unsigned>(c[p]));
    if (c[p] < 0) neg *= mp::pow(BigInt(primes_[p]), static_cast<unsigned>(-c[p]));
  }
  return pos > neg ? 1 : -1;
}

BigRational FactoredWeights::value(std::span<const std::int64_t> c) const {
  BigInt num = 1, den = 1;
  for (std::size_t p = 0; p < c.size(); ++p) {
    if (c[p] > 0) num *= mp::pow(BigInt(primes_[p]), static_cast<unsigned>(c[p]));
    if (c[p] < 0) den *= mp::pow(BigInt(primes_[p]), static_cast<unsigned>(-c[p]));
  }
  return BigRational(num, den);
}

std::vector<std::vector<std::uint32_t>> strongly_connected_components(std::size_t vertex_count,
                                                                      std::span<const Arc> arcs) {
  std::vector<std::vector<std::uint32_t>> out_adj(vertex_count);
  for (const auto& a : arcs) out_adj[a.src].push_back(a.dst);

  constexpr std::uint32_t kUnvisited = UINT32_MAX;
  std::vector<std::uint32_t> index(vertex_count, kUnvisited), low(vertex_count, 0);
  std::vector<char> on_stack(vertex_count, 0);
  std::vector<std::uint32_t> stack;
  std::vector<std::pair<std::uint32_t, std::size_t>> call;  // (vertex, next child)
  std::vector<std::vector<std::uint32_t>> comps;
  std::uint32_t counter = 0;

  for (std::uint32_t root = 0; root < vertex_count; ++root) {
    if (index[root] != kUnvisited) continue;
    call.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      auto& [v, child] = call.back();
      if (child < out_adj[v].size()) {
        const std::uint32_t w = out_adj[v][child++];
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const std::uint32_t done = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
      if (low[done] == index[done]) {
        std::vector<std::uint32_t> comp;
        std::uint32_t x;
        do {
          x = stack.back();
          stack.pop_back();
          on_stack[x] = 0;
          comp.push_back(x);
        } while (x != done);
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
      }
    }
  }
  std::sort(comps.begin(), comps.end());
  return comps;
}

MeanCycleSolution max_mean_cycle_kernel(std::size_t vertex_count, std::span<const Arc> arcs,
                                        const FactoredWeights& weights) {
  const std::size_t dim = weights.dim();
  const auto comps = strongly_connected_components(vertex_count, arcs);
  std::vector<std::uint32_t> comp_of(vertex_count), local(vertex_count);
  for (std::uint32_t ci = 0; ci < comps.size(); ++ci) {
    for (std::uint32_t i = 0; i < comps[ci].size(); ++i) {
      comp_of[comps[ci][i]] = ci;
      local[comps[ci][i]] = i;
    }
  }
  std::vector<Component> components(comps.size());
  std::vector<char> cyclic(comps.size(), 0);
  for (std::size_t ci = 0; ci < comps.size(); ++ci) {
    components[ci].vertices = comps[ci];
    components[ci].in_arcs.resize(comps[ci].size());
  }
  for (std::uint32_t e = 0; e < arcs.size(); ++e) {
    const auto& a = arcs[e];
    if (comp_of[a.src] != comp_of[a.dst]) continue;
    components[comp_of[a.dst]].in_arcs[local[a.dst]].push_back({local[a.src], e});
    cyclic[comp_of[a.dst]] = 1;
  }

  std::vector<std::optional<Mean>> means(comps.size());
  std::optional<Mean> best;
  Vec scratch(dim);
  for (std::size_t ci = 0; ci < comps.size(); ++ci) {
    if (!cyclic[ci]) continue;
    means[ci] = component_mean(components[ci], weights);
    if (!best || compare_means(weights, means[ci]->numerator, means[ci]->denominator,
                               best->numerator, best->denominator, scratch) > 0) {
      best = means[ci];
    }
  }
  if (!best) throw ValidationError("graph has no cycle");

  MeanCycleSolution sol;
  sol.numerator = best->numerator;
  sol.denominator = best->denominator;
  std::vector<char> tight(arcs.size(), 0);
  for (std::size_t ci = 0; ci < comps.size(); ++ci) {
    if (!means[ci] || means[ci]->numerator != best->numerator ||
        means[ci]->denominator != best->denominator) {
      continue;
    }
    const Layer pi = component_potentials(components[ci], weights, *best);
    const auto& comp = components[ci];
    for (std::size_t v = 0; v < comp.vertices.size(); ++v) {
      for (const auto& in : comp.in_arcs[v]) {
        auto pu = pi.row(in.src);
        auto pv = pi.row(v);
        auto we = weights.edge(in.arc);
        bool eq = true;
        for (std::size_t p = 0; p < dim && eq; ++p) {
          eq = pu[p] + best->denominator * we[p] - best->numerator[p] == pv[p];
        }
        tight[in.arc] = eq ? 1 : 0;
      }
    }
  }

  // Tight arcs inside a strongly connected piece of the tight subgraph are
  // exactly the arcs on maximum-mean cycles.
  std::vector<Arc> tight_arcs;
  std::vector<std::uint32_t> tight_index;
  for (std::uint32_t e = 0; e < arcs.size(); ++e) {
    if (tight[e]) {
      tight_arcs.push_back(arcs[e]);
      tight_index.push_back(e);
    }
  }
  const auto tight_comps = strongly_connected_components(vertex_count, tight_arcs);
  std::vector<std::uint32_t> tight_comp_of(vertex_count);
  for (std::uint32_t ci = 0; ci < tight_comps.size(); ++ci) {
    for (auto v : tight_comps[ci]) tight_comp_of[v] = ci;
  }
  sol.critical.assign(arcs.size(), 0);
  for (std::size_t i = 0; i < tight_arcs.size(); ++i) {
    if (tight_comp_of[tight_arcs[i].src] == tight_comp_of[tight_arcs[i].dst]) {
      sol.critical[tight_index[i]] = 1;
    }
  }

  std::vector<std::optional<std::uint32_t>> first_out(vertex_count);
  for (std::uint32_t e = 0; e < arcs.size(); ++e) {
    if (sol.critical[e] && !first_out[arcs[e].src]) first_out[arcs[e].src] = e;
  }
  std::uint32_t start = 0;
  while (start < vertex_count && !first_out[start]) ++start;
  if (start == vertex_count) throw Error("internal: no critical cycle found");
  std::vector<std::int64_t> seen_at(vertex_count, -1);
  std::vector<std::uint32_t> walk;
  std::uint32_t v = start;
  while (seen_at[v] < 0) {
    seen_at[v] = static_cast<std::int64_t>(walk.size());
    walk.push_back(*first_out[v]);
    v = arcs[*first_out[v]].dst;
  }
  sol.witness.assign(walk.begin() + seen_at[v], walk.end());
  return sol;
}

}  // namespace axial
