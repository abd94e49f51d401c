#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "axial/core.hpp"

namespace axial {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// The number (1/n) * ln(p) held exactly: p >= 1 an integer, n >= 1.
struct ExactScore {
  BigInt p{1};
  std::uint64_t n = 1;

  bool operator==(const ExactScore&) const = default;  // representation, not value
};

/// Same shape with a positive rational base, as produced by weighted pressure.
struct PressureScore {
  BigRational p{1};
  std::uint64_t n = 1;

  bool operator==(const PressureScore&) const = default;
};

/// Compares values exactly by cross-powering; works on non-canonical input.
std::strong_ordering score_compare(const ExactScore& a, const ExactScore& b);
std::strong_ordering score_compare(const PressureScore& a, const PressureScore& b);

/// Smallest n representing the same value. Throws ValidationError on p < 1 or n = 0.
ExactScore canonicalize_score(ExactScore s);
PressureScore canonicalize_score(PressureScore s);

/// Mean of ln|cell| over the word, as a canonical exact score.
ExactScore independence_score(std::span<const SetLetter> w);

double nats(const ExactScore& s);
double nats(const PressureScore& s);

/// Natural log of a positive big integer, accurate to double precision.
double log_of(const BigInt& x);

/// floor(x^(1/k)) for x >= 0, k >= 1.
BigInt integer_root(const BigInt& x, std::uint64_t k);

std::string to_string(const BigInt& x);
std::string to_string(const BigRational& x);

}  // namespace axial
