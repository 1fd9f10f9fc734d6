#pragma once

// Azimuths are points [a : b] of a projective line over Q. Left and right
// azimuths sit on the two preimages of a bisep; the middle azimuth lives on
// the tensor product and a compatible triple satisfies middle = left * right,
// coordinatewise. Coordinates follow the sorted edge order of the bisep.

#include <optional>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "sepcanon/error.hpp"

namespace sepcanon {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

/// Parses "p", "-p" or "p/q".
inline Rational parse_rational(const std::string& text) {
  try {
    const auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(Integer(text));
    Integer den(text.substr(slash + 1));
    if (den == 0) fail(Errc::malformed_input, "zero denominator in " + text);
    return Rational(Integer(text.substr(0, slash)), den);
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    fail(Errc::malformed_input, "not a rational: '" + text + "'");
  }
}

inline std::string format_rational(const Rational& r) {
  const auto num = boost::multiprecision::numerator(r);
  const auto den = boost::multiprecision::denominator(r);
  return den == 1 ? num.str() : num.str() + "/" + den.str();
}

class Azimuth {
 public:
  /// Canonical form: [a/b : 1] when b != 0, otherwise [1 : 0].
  Azimuth(const Rational& a, const Rational& b) {
    if (a == 0 && b == 0) fail(Errc::incompatible_singular, "[0:0] is not a projective point");
    if (b != 0) {
      first_ = a / b;
      second_ = 1;
    } else {
      first_ = 1;
      second_ = 0;
    }
  }

  Azimuth(long a, long b) : Azimuth(Rational(a), Rational(b)) {}

  const Rational& first() const { return first_; }
  const Rational& second() const { return second_; }

  bool is_regular() const { return first_ != 0 && second_ != 0; }
  bool is_singular() const { return !is_regular(); }

  std::string to_string() const { return "[" + format_rational(first_) + ":" + format_rational(second_) + "]"; }

  friend bool operator==(const Azimuth& x, const Azimuth& y) { return x.first_ == y.first_ && x.second_ == y.second_; }

 private:
  Rational first_;
  Rational second_;
};

inline bool is_regular(const Azimuth& a) { return a.is_regular(); }

/// Middle azimuth of a compatible triple: [a_L a_R : b_L b_R].
inline Azimuth compose(const Azimuth& left, const Azimuth& right) {
  const Rational a = left.first() * right.first();
  const Rational b = left.second() * right.second();
  if (a == 0 && b == 0) {
    fail(Errc::incompatible_singular, left.to_string() + " and " + right.to_string() + " are opposite singular points");
  }
  return Azimuth(a, b);
}

struct AzimuthTriple {
  std::optional<Azimuth> left;
  std::optional<Azimuth> middle;
  std::optional<Azimuth> right;
  std::string bisep;
};

namespace detail {

/// Solves known * x = middle coordinatewise. Errors when no solution exists or
/// when it is not unique.
inline Azimuth solve_side(const Azimuth& known, const Azimuth& middle) {
  const bool zero_a = known.first() == 0, zero_b = known.second() == 0;
  if ((zero_a && middle.first() != 0) || (zero_b && middle.second() != 0)) {
    fail(Errc::inconsistent_singular, "no azimuth x with " + known.to_string() + " * x = " + middle.to_string());
  }
  if (zero_a || zero_b) {
    fail(Errc::both_singular, known.to_string() + " and " + middle.to_string() + " leave the third azimuth free");
  }
  return Azimuth(middle.first() / known.first(), middle.second() / known.second());
}

}  // namespace detail

/// Fills in the missing member of a triple from the other two.
///
/// Both given entries singular: InconsistentSingular when no completion
/// exists, BothSingular otherwise (the excluded case). One given entry
/// singular: solvable unless a singular side faces a regular middle.
inline AzimuthTriple complete_triple(AzimuthTriple t) {
  const int present = t.left.has_value() + t.middle.has_value() + t.right.has_value();
  if (present < 2) fail(Errc::under_determined, "need two of left, middle, right");
  if (present == 3) {
    if (!(compose(*t.left, *t.right) == *t.middle)) {
      fail(Errc::incompatible_triple, "middle " + t.middle->to_string() + " is not left * right");
    }
    return t;
  }
  if (!t.middle) {
    if (t.left->is_singular() && t.right->is_singular()) {
      const bool opposite = t.left->first() * t.right->first() == 0 && t.left->second() * t.right->second() == 0;
      fail(opposite ? Errc::inconsistent_singular : Errc::both_singular,
           "left " + t.left->to_string() + " and right " + t.right->to_string() + " are both singular");
    }
    t.middle = compose(*t.left, *t.right);
    return t;
  }
  auto& known = t.left ? *t.left : *t.right;
  auto& missing = t.left ? t.right : t.left;
  if (known.is_singular() && t.middle->is_singular()) {
    // Existence decides between the two errors; uniqueness is excluded anyway.
    try {
      detail::solve_side(known, *t.middle);
    } catch (const Error& e) {
      if (e.code() == Errc::inconsistent_singular) throw;
    }
    fail(Errc::both_singular, known.to_string() + " and middle " + t.middle->to_string() + " are both singular");
  }
  missing = detail::solve_side(known, *t.middle);
  return t;
}

/// Left azimuth compatible with a regular middle azimuth and the hyperelliptic
/// azimuth on the right preimage.
inline Azimuth induced_left_azimuth(const Azimuth& middle, const Azimuth& hyperelliptic_right) {
  if (!middle.is_regular()) fail(Errc::non_regular, "middle azimuth " + middle.to_string() + " is singular");
  if (!hyperelliptic_right.is_regular()) {
    fail(Errc::non_regular, "hyperelliptic azimuth " + hyperelliptic_right.to_string() + " is singular");
  }
  return Azimuth(middle.first() / hyperelliptic_right.first(), middle.second() / hyperelliptic_right.second());
}

}  // namespace sepcanon
