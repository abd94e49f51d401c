#include <cmath>
#include <random>

#include <doctest.h>

#include "axial/core.hpp"
#include "axial/errors.hpp"
#include "axial/score.hpp"

using namespace axial;

namespace {

SetLetter cell(std::initializer_list<int> letters) {
  LetterMask m = 0;
  for (int a : letters) m |= LetterMask{1} << a;
  return SetLetter(m);
}

ExactScore score(long long p, std::uint64_t n) { return ExactScore{BigInt(p), n}; }

}  // namespace

TEST_CASE("independence score of small set-words") {
  CHECK(independence_score(SetWord{cell({0}), cell({0, 1})}) == score(2, 2));
  CHECK(independence_score(SetWord{cell({0}), cell({0}), cell({0})}) == score(1, 1));
  // 2 * 3 over two cells; 6 is not a perfect square
  CHECK(independence_score(SetWord{cell({0, 1}), cell({0, 1, 2})}) == score(6, 2));
  CHECK(independence_score(SetWord{cell({0, 1}), cell({0, 1})}) == score(2, 1));
  CHECK_THROWS_AS(independence_score(SetWord{}), ValidationError);
}

TEST_CASE("score comparison is exact") {
  CHECK(score_compare(score(2, 2), score(2, 2)) == std::strong_ordering::equal);
  CHECK(score_compare(score(650, 2), score(2, 2)) == std::strong_ordering::greater);
  CHECK(score_compare(score(9, 2), score(8, 2)) == std::strong_ordering::greater);
  CHECK(score_compare(score(4, 4), score(2, 2)) == std::strong_ordering::equal);
  CHECK(score_compare(score(1, 1), score(1, 7)) == std::strong_ordering::equal);

  // Near tie: 2^(1/2) against (2^60 + 1)^(1/120) differ only around 1e-20.
  ExactScore a = score(2, 2);
  ExactScore b{(BigInt(1) << 60) + 1, 120};
  CHECK(score_compare(a, b) == std::strong_ordering::less);
  CHECK(score_compare(b, a) == std::strong_ordering::greater);
}

TEST_CASE("score comparison agrees with floating point away from ties") {
  std::mt19937_64 rng(12345);
  std::uniform_int_distribution<long long> p(1, 999'999);
  std::uniform_int_distribution<std::uint64_t> n(1, 12);
  for (int i = 0; i < 2000; ++i) {
    const ExactScore a = score(p(rng), n(rng));
    const ExactScore b = score(p(rng), n(rng));
    const double fa = std::log(static_cast<double>(a.p)) / static_cast<double>(a.n);
    const double fb = std::log(static_cast<double>(b.p)) / static_cast<double>(b.n);
    if (std::abs(fa - fb) < 1e-9) continue;
    CHECK((score_compare(a, b) == std::strong_ordering::less) == (fa < fb));
  }
}

TEST_CASE("score order is transitive and antisymmetric on canonical forms") {
  std::vector<ExactScore> xs;
  for (long long p = 1; p <= 40; ++p) {
    for (std::uint64_t n = 1; n <= 4; ++n) xs.push_back(canonicalize_score(score(p, n)));
  }
  for (const auto& a : xs) {
    for (const auto& b : xs) {
      const auto ab = score_compare(a, b);
      CHECK(score_compare(b, a) == (ab == std::strong_ordering::less      ? std::strong_ordering::greater
                                    : ab == std::strong_ordering::greater ? std::strong_ordering::less
                                                                          : std::strong_ordering::equal));
      if (ab == std::strong_ordering::equal) CHECK(a == b);
    }
  }
  for (std::size_t i = 0; i + 2 < xs.size(); i += 3) {
    const auto& a = xs[i];
    const auto& b = xs[i + 1];
    const auto& c = xs[i + 2];
    if (score_compare(a, b) <= 0 && score_compare(b, c) <= 0) CHECK(score_compare(a, c) <= 0);
  }
}

TEST_CASE("canonical form") {
  CHECK(canonicalize_score(score(4, 4)) == score(2, 2));
  CHECK(canonicalize_score(score(4, 2)) == score(2, 1));
  CHECK(canonicalize_score(score(650, 2)) == score(650, 2));
  CHECK(canonicalize_score(score(1, 9)) == score(1, 1));
  CHECK(canonicalize_score(score(64, 6)) == score(2, 1));
  CHECK(canonicalize_score(score(36, 4)) == score(6, 2));
  CHECK_THROWS_AS(canonicalize_score(score(0, 1)), ValidationError);
  CHECK_THROWS_AS(canonicalize_score(score(3, 0)), ValidationError);

  for (long long p = 1; p <= 300; ++p) {
    for (std::uint64_t n = 1; n <= 6; ++n) {
      const ExactScore c = canonicalize_score(score(p, n));
      CHECK(score_compare(c, score(p, n)) == std::strong_ordering::equal);
      CHECK(canonicalize_score(c) == c);
    }
  }
}

TEST_CASE("score of a concatenation composes") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> mask(1, 7), len(1, 5);
  for (int i = 0; i < 200; ++i) {
    SetWord u, v;
    for (int j = len(rng); j > 0; --j) u.emplace_back(static_cast<LetterMask>(mask(rng)));
    for (int j = len(rng); j > 0; --j) v.emplace_back(static_cast<LetterMask>(mask(rng)));
    SetWord uv = u;
    uv.insert(uv.end(), v.begin(), v.end());
    const auto su = independence_score(u);
    const auto sv = independence_score(v);
    // Undo canonicalization by raising to the word length.
    const BigInt pu = boost::multiprecision::pow(su.p, static_cast<unsigned>(u.size() / su.n));
    const BigInt pv = boost::multiprecision::pow(sv.p, static_cast<unsigned>(v.size() / sv.n));
    CHECK(independence_score(uv) == canonicalize_score(ExactScore{pu * pv, uv.size()}));
  }
}

TEST_CASE("integer roots and logs") {
  CHECK(integer_root(BigInt(0), 3) == 0);
  CHECK(integer_root(BigInt(26), 3) == 2);
  CHECK(integer_root(BigInt(27), 3) == 3);
  const BigInt big = boost::multiprecision::pow(BigInt(123456789), 7);
  CHECK(integer_root(big, 7) == 123456789);
  CHECK(integer_root(big - 1, 7) == 123456788);
  CHECK(log_of(BigInt(650)) == doctest::Approx(std::log(650.0)).epsilon(1e-15));
  CHECK(log_of(big) == doctest::Approx(7 * std::log(123456789.0)).epsilon(1e-14));
  CHECK(to_string(BigInt(650)) == "650");
  CHECK(to_string(BigRational(9, 4)) == "9/4");
  CHECK(to_string(BigRational(9, 1)) == "9");
}

TEST_CASE("pressure scores compare rationals") {
  PressureScore nine{BigRational(9), 2};
  PressureScore eight{BigRational(8), 2};
  CHECK(score_compare(nine, eight) == std::strong_ordering::greater);
  CHECK(canonicalize_score(PressureScore{BigRational(9, 4), 2}) == PressureScore{BigRational(3, 2), 1});
  CHECK(score_compare(PressureScore{BigRational(1, 4), 2}, PressureScore{BigRational(1, 2), 1}) ==
        std::strong_ordering::equal);
}

TEST_CASE("alphabet and set-letter basics") {
  CHECK_THROWS_AS(Alphabet(std::vector<std::string>{}), ValidationError);
  CHECK_THROWS_AS(Alphabet({"a", "a"}), ValidationError);
  CHECK_THROWS_AS(Alphabet({"a", ""}), ValidationError);
  std::vector<std::string> many;
  for (int i = 0; i < 65; ++i) many.push_back("s" + std::to_string(i));
  CHECK_THROWS_AS(Alphabet{many}, ValidationError);
  many.pop_back();
  CHECK(Alphabet{many}.full_mask() == ~LetterMask{0});

  Alphabet ab({"x", "y"});
  CHECK(ab.find("y") == Letter{1});
  CHECK_FALSE(ab.find("z"));
  CHECK_THROWS_AS(SetLetter(0), ValidationError);
  CHECK(cell({1, 3}).size() == 2);
  CHECK(cell({1, 3}).min_letter() == 1);
}

TEST_CASE("validating specs") {
  auto hs = validate_spec_chars({"0", "1"}, {"11"});
  CHECK(hs.memory() == 1);
  CHECK(hs.constrained_letters() == 0b10);
  CHECK(hs.free_letters() == 0b01);

  std::vector<std::string> az;
  for (char c = 'A'; c <= 'Z'; ++c) az.emplace_back(1, c);
  auto add = validate_spec_chars(az, {"ADD"});
  CHECK(add.memory() == 2);
  CHECK(add.alphabet().size() == 26);

  auto minimized = validate_spec_chars({"0", "1"}, {"11", "110"});
  CHECK(minimized.forbidden().size() == 1);
  CHECK(minimized.memory() == 1);

  auto full = validate_spec_chars({"a", "b", "c"}, {});
  CHECK(full.memory() == 0);
  CHECK(full.forbidden().empty());

  auto dead = validate_spec_chars({"a", "b", "c"}, {"b", "ab"});
  CHECK(dead.dead_letters() == 0b010);
  CHECK(dead.forbidden().size() == 1);
  CHECK(dead.memory() == 0);

  CHECK_THROWS_AS(validate_spec({"a", "a"}, {}), ValidationError);
  CHECK_THROWS_AS(validate_spec_chars({"0", "1"}, {"12"}), ValidationError);
  CHECK_THROWS_AS(validate_spec_chars({"0", "1"}, {"000000000"}), ValidationError);
  Caps wide;
  wide.max_forbidden_length = 9;
  CHECK(validate_spec_chars({"0", "1"}, {"000000000"}, wide).memory() == 8);
}

TEST_CASE("formatting") {
  auto hs = validate_spec_chars({"0", "1"}, {"11"});
  CHECK(hs.format(Word{0, 1, 0}) == "010");
  CHECK(hs.format(cell({0, 1})) == "{0,1}");
  CHECK(hs.format(SetWord{cell({0}), cell({0, 1})}) == "{0}{0,1}");
  auto multi = validate_spec({"-1", "1"}, {{"-1", "1"}});
  CHECK(multi.format(Word{0, 1}) == "-1 1");
}

TEST_CASE("fits_at finds selections") {
  const SetWord w{cell({0, 1}), cell({0, 1}), cell({0})};
  CHECK(fits_at(w, 0, Word{1, 1}));
  CHECK_FALSE(fits_at(w, 1, Word{1, 1}));
  CHECK(fits_at(w, 1, Word{1, 0}));
}
