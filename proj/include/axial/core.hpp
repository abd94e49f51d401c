#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "axial/caps.hpp"

namespace axial {

using Letter = std::uint8_t;
using LetterMask = std::uint64_t;

inline constexpr std::size_t kMaxAlphabetSize = 64;

/// Ordered set of distinct display symbols; letters are their indices.
class Alphabet {
 public:
  explicit Alphabet(std::vector<std::string> symbols);

  std::size_t size() const { return symbols_.size(); }
  const std::string& symbol(Letter a) const { return symbols_[a]; }
  const std::vector<std::string>& symbols() const { return symbols_; }
  std::optional<Letter> find(std::string_view symbol) const;
  LetterMask full_mask() const;
  bool single_char_symbols() const;

 private:
  std::vector<std::string> symbols_;
};

using Word = std::vector<Letter>;

/// Nonempty subset of the alphabet, stored as a bitmask.
class SetLetter {
 public:
  explicit SetLetter(LetterMask mask);
  static SetLetter singleton(Letter a) { return SetLetter(LetterMask{1} << a); }

  LetterMask mask() const { return mask_; }
  int size() const { return std::popcount(mask_); }
  bool contains(Letter a) const { return (mask_ >> a) & 1U; }
  Letter min_letter() const { return static_cast<Letter>(std::countr_zero(mask_)); }

  auto operator<=>(const SetLetter&) const = default;

 private:
  LetterMask mask_;
};

using SetWord = std::vector<SetLetter>;

/// Alphabet plus a minimized finite forbidden-word list.
class SubshiftSpec {
 public:
  const Alphabet& alphabet() const { return alphabet_; }
  const std::vector<Word>& forbidden() const { return forbidden_; }
  /// k: longest forbidden word minus one (0 when every forbidden word is a letter).
  std::size_t memory() const { return memory_; }

  /// Letters forbidden on their own; they never occur in any point.
  LetterMask dead_letters() const { return dead_; }
  /// Live letters occurring in some forbidden word.
  LetterMask constrained_letters() const { return constrained_; }
  /// Live letters occurring in no forbidden word.
  LetterMask free_letters() const { return free_; }

  std::string format(const Word& w) const;
  std::string format(SetLetter s) const;
  std::string format(std::span<const SetLetter> w) const;
  std::vector<std::string> symbols_of(SetLetter s) const;

 private:
  friend SubshiftSpec validate_spec(std::vector<std::string>,
                                    const std::vector<std::vector<std::string>>&,
                                    const Caps&);
  explicit SubshiftSpec(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}

  Alphabet alphabet_;
  std::vector<Word> forbidden_;
  std::size_t memory_ = 0;
  LetterMask dead_ = 0;
  LetterMask constrained_ = 0;
  LetterMask free_ = 0;
};

/// Checks symbols, maps forbidden words to letters, drops forbidden words that
/// contain another forbidden word, and computes the memory.
SubshiftSpec validate_spec(std::vector<std::string> alphabet,
                           const std::vector<std::vector<std::string>>& forbidden,
                           const Caps& caps = {});

/// Convenience overload for single-character symbols: each forbidden string is
/// split into characters.
SubshiftSpec validate_spec_chars(std::vector<std::string> alphabet,
                                 const std::vector<std::string>& forbidden,
                                 const Caps& caps = {});

/// True iff forbidden word `f` fits at `pos` of `w`, i.e. some selection of the
/// cells w[pos..pos+|f|) spells f.
bool fits_at(std::span<const SetLetter> w, std::size_t pos, const Word& f);

}  // namespace axial
