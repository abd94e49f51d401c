#include "axial/score.hpp"

#include <cmath>
#include <vector>

#include "axial/errors.hpp"

namespace axial {

namespace mp = boost::multiprecision;

namespace {

BigInt power(const BigInt& base, std::uint64_t e) {
  // mp::pow takes an unsigned; exponents in practice stay far below that.
  return mp::pow(base, static_cast<unsigned>(e));
}

std::vector<std::uint64_t> divisors_descending(std::uint64_t n) {
  std::vector<std::uint64_t> small, large;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d != n / d) large.push_back(n / d);
    }
  }
  std::vector<std::uint64_t> out(large.begin(), large.end());
  out.insert(out.end(), small.rbegin(), small.rend());
  return out;
}

std::optional<BigInt> exact_root(const BigInt& x, std::uint64_t k) {
  BigInt r = integer_root(x, k);
  if (power(r, k) == x) return r;
  return std::nullopt;
}

}  // namespace

BigInt integer_root(const BigInt& x, std::uint64_t k) {
  if (k == 0) throw ValidationError("root of order zero");
  if (x < 2 || k == 1) return x;
  const std::size_t bits = mp::msb(x) + 1;
  if (k >= bits) return 1;
  // Newton from above converges monotonically to the floor.
  BigInt r = BigInt(1) << ((bits + k - 1) / k);
  for (;;) {
    BigInt next = ((k - 1) * r + x / power(r, k - 1)) / k;
    if (next >= r) break;
    r = next;
  }
  while (power(r, k) > x) --r;
  while (power(r + 1, k) <= x) ++r;
  return r;
}

std::strong_ordering score_compare(const ExactScore& a, const ExactScore& b) {
  const BigInt lhs = power(a.p, b.n);
  const BigInt rhs = power(b.p, a.n);
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::strong_ordering score_compare(const PressureScore& a, const PressureScore& b) {
  // (an/ad)^bn vs (bn/bd)^an, cleared of denominators.
  const BigInt lhs = power(mp::numerator(a.p), b.n) * power(mp::denominator(b.p), a.n);
  const BigInt rhs = power(mp::numerator(b.p), a.n) * power(mp::denominator(a.p), b.n);
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

ExactScore canonicalize_score(ExactScore s) {
  if (s.n == 0) throw ValidationError("score length must be positive");
  if (s.p < 1) throw ValidationError("score base must be at least 1");
  if (s.p == 1) return {BigInt(1), 1};
  for (std::uint64_t g : divisors_descending(s.n)) {
    if (g == 1) break;
    if (auto r = exact_root(s.p, g)) return {*r, s.n / g};
  }
  return s;
}

PressureScore canonicalize_score(PressureScore s) {
  if (s.n == 0) throw ValidationError("score length must be positive");
  if (s.p <= 0) throw ValidationError("pressure base must be positive");
  if (s.p == 1) return {BigRational(1), 1};
  const BigInt num = mp::numerator(s.p);
  const BigInt den = mp::denominator(s.p);
  for (std::uint64_t g : divisors_descending(s.n)) {
    if (g == 1) break;
    auto rn = exact_root(num, g);
    if (!rn) continue;
    auto rd = exact_root(den, g);
    if (!rd) continue;
    return {BigRational(*rn, *rd), s.n / g};
  }
  return s;
}

ExactScore independence_score(std::span<const SetLetter> w) {
  if (w.empty()) throw ValidationError("independence score of an empty word");
  BigInt p = 1;
  for (auto cell : w) p *= cell.size();
  return canonicalize_score(ExactScore{p, w.size()});
}

double log_of(const BigInt& x) {
  if (x <= 0) throw ValidationError("logarithm of a nonpositive number");
  const std::size_t bits = mp::msb(x) + 1;
  if (bits <= 60) return std::log(x.convert_to<double>());
  const std::size_t shift = bits - 60;
  const BigInt top = x >> shift;
  return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

double nats(const ExactScore& s) { return log_of(s.p) / static_cast<double>(s.n); }

double nats(const PressureScore& s) {
  return (log_of(mp::numerator(s.p)) - log_of(mp::denominator(s.p))) / static_cast<double>(s.n);
}

std::string to_string(const BigInt& x) { return x.str(); }

std::string to_string(const BigRational& x) {
  if (mp::denominator(x) == 1) return mp::numerator(x).str();
  return mp::numerator(x).str() + "/" + mp::denominator(x).str();
}

}  // namespace axial
