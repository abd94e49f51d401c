#include <algorithm>
#include <bit>
#include <cmath>
#include <optional>

#include "axial/automaton.hpp"
#include "axial/counting.hpp"
#include "axial/errors.hpp"

namespace axial {

namespace {

class OracleSearch {
 public:
  OracleSearch(const SubshiftSpec& spec, std::vector<SetLetter> cells, std::size_t max_len)
      : spec_(spec), cells_(std::move(cells)), max_len_(max_len) {
    for (auto c : cells_) max_log_ = std::max(max_log_, std::log(static_cast<double>(c.size())));
  }

  std::optional<ExactScore> run() {
    // Every cyclic word has a rotation starting with its largest cell.
    for (std::size_t i = 0; i < cells_.size(); ++i) {
      word_.assign(1, cells_[i]);
      if (!prefix_legal()) continue;
      visit(std::log(static_cast<double>(cells_[i].size())));
    }
    return best_;
  }

 private:
  void visit(double log_prod) {
    const std::size_t j = word_.size();
    if (cyclic_legal()) offer(log_prod);
    if (j == max_len_) return;
    const double bound = (log_prod + static_cast<double>(max_len_ - j) * max_log_) /
                         static_cast<double>(max_len_);
    if (best_ && bound < best_log_ - 1e-9) return;
    for (auto c : cells_) {
      if (c > word_.front()) break;
      word_.push_back(c);
      if (prefix_legal()) visit(log_prod + std::log(static_cast<double>(c.size())));
      word_.pop_back();
    }
  }

  bool prefix_legal() const {
    const std::size_t end = word_.size();
    for (const auto& f : spec_.forbidden()) {
      if (f.size() <= end && fits_at(word_, end - f.size(), f)) return false;
    }
    return true;
  }

  bool cyclic_legal() const {
    const std::size_t m = word_.size();
    const std::size_t span = m + spec_.memory();
    SetWord u;
    while (u.size() < span) u.insert(u.end(), word_.begin(), word_.end());
    for (const auto& f : spec_.forbidden()) {
      for (std::size_t p = 0; p < m && p + f.size() <= u.size(); ++p) {
        if (fits_at(u, p, f)) return false;
      }
    }
    return true;
  }

  void offer(double log_prod) {
    const double value = log_prod / static_cast<double>(word_.size());
    if (best_ && value < best_log_ - 1e-9) return;
    ExactScore s = independence_score(word_);
    if (!best_ || score_compare(s, *best_) > 0) {
      best_ = s;
      best_log_ = nats(s);
    }
  }

  const SubshiftSpec& spec_;
  std::vector<SetLetter> cells_;
  std::size_t max_len_;
  double max_log_ = 0.0;
  SetWord word_;
  std::optional<ExactScore> best_;
  double best_log_ = 0.0;
};

}  // namespace

ExactScore oracle_hind(const SubshiftSpec& spec, std::size_t max_len, const Caps& caps) {
  if (max_len == 0) throw ValidationError("oracle length must be positive");
  const LetterMask live = spec.alphabet().full_mask() & ~spec.dead_letters();
  const double letters = std::exp2(static_cast<double>(std::popcount(live))) - 1.0;
  if (std::pow(letters, static_cast<double>(max_len)) > static_cast<double>(caps.max_nodes)) {
    throw CapExceeded("oracle search space exceeds the node cap");
  }
  if (live == 0) throw EmptyLanguage("every letter is forbidden");
  OracleSearch search(spec, exhaustive_set_letters(spec, caps), max_len);
  auto best = search.run();
  if (!best) throw EmptyLanguage("no periodic point up to length " + std::to_string(max_len));
  return *best;
}

}  // namespace axial
