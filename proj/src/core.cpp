#include "axial/core.hpp"

#include <algorithm>
#include <set>

#include "axial/errors.hpp"

namespace axial {

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw ValidationError("alphabet is empty");
  if (symbols_.size() > kMaxAlphabetSize) {
    throw ValidationError("alphabet has " + std::to_string(symbols_.size()) +
                          " symbols; at most 64 are supported");
  }
  std::set<std::string_view> seen;
  for (const auto& s : symbols_) {
    if (s.empty()) throw ValidationError("alphabet contains an empty symbol");
    if (!seen.insert(s).second) throw ValidationError("duplicate symbol '" + s + "'");
  }
}

std::optional<Letter> Alphabet::find(std::string_view symbol) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (symbols_[i] == symbol) return static_cast<Letter>(i);
  }
  return std::nullopt;
}

LetterMask Alphabet::full_mask() const {
  return size() == 64 ? ~LetterMask{0} : (LetterMask{1} << size()) - 1;
}

bool Alphabet::single_char_symbols() const {
  return std::all_of(symbols_.begin(), symbols_.end(),
                     [](const std::string& s) { return s.size() == 1; });
}

SetLetter::SetLetter(LetterMask mask) : mask_(mask) {
  if (mask == 0) throw ValidationError("set-letter must be nonempty");
}

std::string SubshiftSpec::format(const Word& w) const {
  std::string out;
  const bool compact = alphabet_.single_char_symbols();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!compact && i > 0) out += ' ';
    out += alphabet_.symbol(w[i]);
  }
  return out;
}

std::vector<std::string> SubshiftSpec::symbols_of(SetLetter s) const {
  std::vector<std::string> out;
  for (std::size_t a = 0; a < alphabet_.size(); ++a) {
    if (s.contains(static_cast<Letter>(a))) out.push_back(alphabet_.symbol(static_cast<Letter>(a)));
  }
  return out;
}

std::string SubshiftSpec::format(SetLetter s) const {
  std::string out = "{";
  bool first = true;
  for (const auto& sym : symbols_of(s)) {
    if (!first) out += ',';
    out += sym;
    first = false;
  }
  return out + "}";
}

std::string SubshiftSpec::format(std::span<const SetLetter> w) const {
  std::string out;
  for (auto s : w) out += format(s);
  return out;
}

namespace {

bool contains_subword(const Word& haystack, const Word& needle) {
  return std::search(haystack.begin(), haystack.end(), needle.begin(), needle.end()) !=
         haystack.end();
}

}  // namespace

SubshiftSpec validate_spec(std::vector<std::string> alphabet,
                           const std::vector<std::vector<std::string>>& forbidden,
                           const Caps& caps) {
  SubshiftSpec spec{Alphabet(std::move(alphabet))};
  const Alphabet& sigma = spec.alphabet_;

  std::vector<Word> words;
  for (const auto& raw : forbidden) {
    if (raw.empty()) throw ValidationError("forbidden word is empty");
    if (raw.size() > caps.max_forbidden_length) {
      throw ValidationError("forbidden word of length " + std::to_string(raw.size()) +
                            " exceeds the cap of " + std::to_string(caps.max_forbidden_length));
    }
    Word w;
    for (const auto& sym : raw) {
      auto a = sigma.find(sym);
      if (!a) throw ValidationError("unknown symbol '" + sym + "' in forbidden word");
      w.push_back(*a);
    }
    words.push_back(std::move(w));
  }

  // Shortest first so that a word is only kept when no kept word occurs in it.
  std::sort(words.begin(), words.end(), [](const Word& a, const Word& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  words.erase(std::unique(words.begin(), words.end()), words.end());
  for (const auto& w : words) {
    bool dominated = std::any_of(spec.forbidden_.begin(), spec.forbidden_.end(),
                                 [&](const Word& kept) { return contains_subword(w, kept); });
    if (!dominated) spec.forbidden_.push_back(w);
  }

  for (const auto& w : spec.forbidden_) {
    spec.memory_ = std::max(spec.memory_, w.size() - 1);
    if (w.size() == 1) {
      spec.dead_ |= LetterMask{1} << w[0];
    } else {
      for (Letter a : w) spec.constrained_ |= LetterMask{1} << a;
    }
  }
  // Minimization guarantees no longer word mentions a dead letter.
  spec.free_ = sigma.full_mask() & ~spec.constrained_ & ~spec.dead_;
  return spec;
}

SubshiftSpec validate_spec_chars(std::vector<std::string> alphabet,
                                 const std::vector<std::string>& forbidden, const Caps& caps) {
  std::vector<std::vector<std::string>> split;
  for (const auto& f : forbidden) {
    std::vector<std::string> w;
    for (char c : f) w.emplace_back(1, c);
    split.push_back(std::move(w));
  }
  return validate_spec(std::move(alphabet), split, caps);
}

bool fits_at(std::span<const SetLetter> w, std::size_t pos, const Word& f) {
  if (pos + f.size() > w.size()) return false;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!w[pos + i].contains(f[i])) return false;
  }
  return true;
}

}  // namespace axial
