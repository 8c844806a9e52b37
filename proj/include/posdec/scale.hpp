#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <limits>
#include <ostream>
#include <string>
#include <string_view>

#include "posdec/error.hpp"

namespace posdec {

/// Exact rational value on the commensurate scale [0, 1].
///
/// Certainty degrees of knowledge and priorities of goals share this scale;
/// the order-reversing map is n(x) = 1 - x.
class ScaleValue {
 public:
  using Rep = boost::rational<std::int64_t>;

  constexpr ScaleValue() = default;

  ScaleValue(std::int64_t num, std::int64_t den) : value_(num, den) { check(); }

  explicit ScaleValue(Rep r) : value_(r) { check(); }

  static ScaleValue zero() { return ScaleValue(0, 1); }
  static ScaleValue one() { return ScaleValue(1, 1); }

  /// Parses "1", "0.6", ".25" or "3/5" exactly.
  static ScaleValue parse(std::string_view text);

  std::int64_t numerator() const { return value_.numerator(); }
  std::int64_t denominator() const { return value_.denominator(); }
  const Rep& rational() const { return value_; }

  /// "p/q", or "0" / "1" for the bounds.
  std::string to_string() const {
    if (value_.denominator() == 1) return std::to_string(value_.numerator());
    return std::to_string(value_.numerator()) + "/" + std::to_string(value_.denominator());
  }

  double to_double() const {
    return static_cast<double>(value_.numerator()) / static_cast<double>(value_.denominator());
  }

  friend bool operator==(const ScaleValue& a, const ScaleValue& b) { return a.value_ == b.value_; }
  friend bool operator<(const ScaleValue& a, const ScaleValue& b) { return a.value_ < b.value_; }
  friend bool operator>(const ScaleValue& a, const ScaleValue& b) { return b < a; }
  friend bool operator<=(const ScaleValue& a, const ScaleValue& b) { return !(b < a); }
  friend bool operator>=(const ScaleValue& a, const ScaleValue& b) { return !(a < b); }

  friend std::ostream& operator<<(std::ostream& os, const ScaleValue& v) { return os << v.to_string(); }

 private:
  void check() const {
    if (value_ < Rep(0) || value_ > Rep(1))
      throw ScaleError("scale value " + std::to_string(value_.numerator()) + "/" +
                       std::to_string(value_.denominator()) + " outside [0, 1]");
  }

  Rep value_{0};
};

/// n(a) = 1 - a. Involutive, strictly decreasing, n(0) = 1 and n(1) = 0.
inline ScaleValue order_reverse(const ScaleValue& a) { return ScaleValue(ScaleValue::Rep(1) - a.rational()); }

/// Midpoint of two scale values; used to probe the open intervals of a cut grid.
inline ScaleValue midpoint(const ScaleValue& a, const ScaleValue& b) {
  return ScaleValue((a.rational() + b.rational()) / ScaleValue::Rep(2));
}

inline ScaleValue ScaleValue::parse(std::string_view text) {
  auto fail = [&](const std::string& why) -> ScaleError {
    return ScaleError("bad weight '" + std::string(text) + "': " + why);
  };
  auto digits = [&](std::string_view s, std::int64_t& out) {
    if (s.empty() || s.size() > 18) throw fail("expected 1 to 18 digits");
    out = 0;
    for (char c : s) {
      if (c < '0' || c > '9') throw fail("unexpected character");
      out = out * 10 + (c - '0');
    }
  };

  if (text.empty()) throw fail("empty");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::int64_t num = 0, den = 0;
    digits(text.substr(0, slash), num);
    digits(text.substr(slash + 1), den);
    if (den == 0) throw fail("zero denominator");
    return ScaleValue(Rep(num, den));
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    if (frac.empty() || whole.size() + frac.size() > 18) throw fail("malformed decimal");
    std::int64_t w = 0, f = 0;
    if (!whole.empty()) digits(whole, w);
    digits(frac, f);
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    return ScaleValue(Rep(w * den + f, den));
  }
  std::int64_t v = 0;
  digits(text, v);
  return ScaleValue(Rep(v, 1));
}

}  // namespace posdec
