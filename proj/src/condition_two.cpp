#include <algorithm>
#include <numeric>

#include "axial/errors.hpp"
#include "axial/optimize.hpp"

namespace axial {

std::size_t PhaseOrbit2D::phase(std::int64_t row) const {
  const auto tt = static_cast<std::int64_t>(t);
  const auto m = static_cast<std::int64_t>(period);
  std::int64_t q = row / tt;
  std::int64_t r = row % tt;
  if (r < 0) {
    r += tt;
    --q;
  }
  std::int64_t c = static_cast<std::int64_t>(phases[static_cast<std::size_t>(r)]) +
                   (q % m) * static_cast<std::int64_t>(drift);
  c %= m;
  if (c < 0) c += m;
  return static_cast<std::size_t>(c);
}

SetLetter PhaseOrbit2D::at(const SetWord& w, std::int64_t col, std::int64_t row) const {
  const auto m = static_cast<std::int64_t>(period);
  std::int64_t i = (col + static_cast<std::int64_t>(phase(row))) % m;
  if (i < 0) i += m;
  return w[static_cast<std::size_t>(i)];
}

namespace {

class PhaseSearch {
 public:
  PhaseSearch(const SetWord& w, std::uint64_t budget) : w_(w), m_(w.size()), budget_(budget) {}

  // Searches one value of t; returns a counterexample if any.
  std::optional<PhaseOrbit2D> search(std::size_t t) {
    t_ = t;
    phases_.assign(1, 0);
    // candidates[i][r]: column i can still be the word shifted by r.
    std::vector<std::vector<char>> candidates(m_, std::vector<char>(m_, 0));
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t r = 0; r < m_; ++r) candidates[i][r] = w_[r] == w_[i];
    }
    return extend(candidates);
  }

  bool exhausted() const { return exhausted_; }

 private:
  std::optional<PhaseOrbit2D> extend(const std::vector<std::vector<char>>& candidates) {
    if (exhausted_) return std::nullopt;
    if (phases_.size() == t_) {
      for (std::size_t s = 0; s < m_; ++s) {
        PhaseOrbit2D orbit{m_, t_, s, phases_};
        if (is_valid(orbit) && !is_diagonal(orbit)) return orbit;
      }
      return std::nullopt;
    }
    const std::size_t j = phases_.size();
    for (std::size_t c = 0; c < m_; ++c) {
      if (++expansions_ > budget_) {
        exhausted_ = true;
        return std::nullopt;
      }
      auto next = candidates;
      bool alive = true;
      for (std::size_t i = 0; i < m_ && alive; ++i) {
        bool any = false;
        for (std::size_t r = 0; r < m_; ++r) {
          if (next[i][r] && w_[(r + j) % m_] != w_[(i + c) % m_]) next[i][r] = 0;
          any |= next[i][r] != 0;
        }
        alive = any;
      }
      if (!alive) continue;
      phases_.push_back(c);
      auto found = extend(next);
      phases_.pop_back();
      if (found) return found;
    }
    return std::nullopt;
  }

  std::size_t rows_to_check(const PhaseOrbit2D& o) const {
    const std::size_t vertical = o.t * (m_ / std::gcd(o.drift, m_));
    return std::lcm(vertical, m_);
  }

  // Every column i is some shift of the word.
  bool is_valid(const PhaseOrbit2D& o) const {
    const std::size_t rows = rows_to_check(o);
    for (std::size_t i = 0; i < m_; ++i) {
      bool matched = false;
      for (std::size_t r = 0; r < m_ && !matched; ++r) {
        matched = true;
        for (std::size_t j = 0; j < rows && matched; ++j) {
          matched = o.at(w_, static_cast<std::int64_t>(i), static_cast<std::int64_t>(j)) ==
                    w_[(r + j) % m_];
        }
      }
      if (!matched) return false;
    }
    return true;
  }

  // Shift of w_{i+j}: with c_0 = 0 that forces c_j = j for every row.
  bool is_diagonal(const PhaseOrbit2D& o) const {
    const std::size_t rows = rows_to_check(o);
    for (std::size_t j = 0; j < rows; ++j) {
      if (o.phase(static_cast<std::int64_t>(j)) != j % m_) return false;
    }
    return true;
  }

  const SetWord& w_;
  std::size_t m_;
  std::size_t t_ = 1;
  std::vector<std::size_t> phases_;
  std::uint64_t budget_;
  std::uint64_t expansions_ = 0;
  bool exhausted_ = false;
};

}  // namespace

ConditionTwoResult check_condition_two(const SetWord& w_in, std::size_t bound,
                                       std::uint64_t max_expansions) {
  if (w_in.empty()) throw ValidationError("condition two needs a nonempty word");
  // Work with the primitive root: a power of u has the same planar points.
  std::size_t root = 1;
  while (root < w_in.size()) {
    if (w_in.size() % root == 0) {
      bool periodic = true;
      for (std::size_t i = root; i < w_in.size() && periodic; ++i) periodic = w_in[i] == w_in[i - root];
      if (periodic) break;
    }
    ++root;
  }
  const SetWord w(w_in.begin(), w_in.begin() + static_cast<long>(root));
  const std::size_t m = w.size();
  ConditionTwoResult result;
  result.bound = bound == 0 ? 2 * m : bound;
  if (m == 1) return result;

  SetWord reversed(w.rbegin(), w.rend());
  if (m > 2 && is_rotation_of(reversed, w)) {
    // Anti-diagonal point w_{i-j}: rows are w shifted by -j.
    result.unique_within_bound = false;
    result.counterexample = PhaseOrbit2D{m, 1, m - 1, {0}};
    return result;
  }

  PhaseSearch search(w, max_expansions);
  for (std::size_t t = 1; t <= result.bound; ++t) {
    if (auto orbit = search.search(t)) {
      result.unique_within_bound = false;
      result.counterexample = std::move(orbit);
      return result;
    }
    if (search.exhausted()) {
      result.search_complete = false;
      return result;
    }
  }
  return result;
}

}  // namespace axial
