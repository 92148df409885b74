#pragma once

// Exact rationals, extended rationals (±∞ sentinels) and concave
// piecewise-linear functions given as a minimum of finitely many lines.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "ramified/errors.hpp"

namespace ramified {

using Rational = boost::rational<std::int64_t>;

inline std::int64_t floor(const Rational& x) {
  std::int64_t q = x.numerator() / x.denominator();
  if (x.numerator() < 0 && q * x.denominator() != x.numerator()) --q;
  return q;
}

inline std::int64_t ceil(const Rational& x) { return -floor(-x); }

/// Fractional part in [0, 1).
inline Rational frac(const Rational& x) { return x - floor(x); }

inline bool is_integer(const Rational& x) { return x.denominator() == 1; }

/// "num/den", always with an explicit denominator.
inline std::string to_string(const Rational& x) {
  return std::to_string(x.numerator()) + "/" + std::to_string(x.denominator());
}

inline Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(std::stoll(s));
    return Rational(std::stoll(s.substr(0, slash)),
                    std::stoll(s.substr(slash + 1)));
  } catch (const std::exception&) {
    throw ParseError(0, "malformed rational '" + s + "'");
  }
}

/// A rational number or one of the two infinities.
class ExtRational {
 public:
  enum class Kind { NegInf, Finite, PosInf };

  ExtRational() = default;
  ExtRational(Rational v) : kind_(Kind::Finite), value_(v) {}  // NOLINT
  ExtRational(std::int64_t v) : kind_(Kind::Finite), value_(v) {}  // NOLINT

  static ExtRational pos_inf() { return ExtRational(Kind::PosInf); }
  static ExtRational neg_inf() { return ExtRational(Kind::NegInf); }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  const Rational& value() const {
    if (!is_finite()) throw InternalInconsistency("value() of infinite ExtRational");
    return value_;
  }

  friend bool operator==(const ExtRational& a, const ExtRational& b) {
    if (a.kind_ != b.kind_) return false;
    return a.kind_ != Kind::Finite || a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const ExtRational& a,
                                          const ExtRational& b) {
    if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
    if (a.kind_ != Kind::Finite || a.value_ == b.value_)
      return std::strong_ordering::equal;
    return a.value_ < b.value_ ? std::strong_ordering::less
                               : std::strong_ordering::greater;
  }

  std::string str() const {
    switch (kind_) {
      case Kind::NegInf: return "-inf";
      case Kind::PosInf: return "+inf";
      default: return to_string(value_);
    }
  }

 private:
  explicit ExtRational(Kind k) : kind_(k) {}
  Kind kind_ = Kind::Finite;
  Rational value_{0};
};

/// x ↦ slope·x + intercept.
struct Line {
  Rational slope;
  Rational intercept;
  Rational operator()(const Rational& x) const { return slope * x + intercept; }
};

/// Concave piecewise-linear function x ↦ min_k line_k(x) with strictly
/// positive slopes, hence strictly increasing and invertible on ℚ.
class PiecewiseLinear {
 public:
  PiecewiseLinear() = default;
  explicit PiecewiseLinear(std::vector<Line> lines) : lines_(std::move(lines)) {
    if (lines_.empty()) throw InternalInconsistency("empty piecewise-linear function");
    for (const auto& l : lines_)
      if (l.slope <= 0) throw InternalInconsistency("non-increasing line");
  }

  const std::vector<Line>& lines() const { return lines_; }

  Rational operator()(const Rational& x) const {
    Rational best = lines_.front()(x);
    for (const auto& l : lines_) best = std::min(best, l(x));
    return best;
  }

  /// The compositional inverse: the maximum of the inverted lines.
  Rational inverse(const Rational& y) const {
    Rational best = (y - lines_.front().intercept) / lines_.front().slope;
    for (const auto& l : lines_) best = std::max(best, (y - l.intercept) / l.slope);
    return best;
  }

  /// Slope of the piece active immediately to the right of x.
  Rational right_slope(const Rational& x) const {
    const Rational v = (*this)(x);
    Rational s{0};
    bool found = false;
    for (const auto& l : lines_) {
      if (l(x) != v) continue;
      if (!found || l.slope < s) s = l.slope;
      found = true;
    }
    return s;
  }

  /// Points where the active piece changes, in increasing order.
  std::vector<Rational> breakpoints() const {
    std::vector<Rational> out;
    for (std::size_t a = 0; a < lines_.size(); ++a)
      for (std::size_t b = a + 1; b < lines_.size(); ++b) {
        if (lines_[a].slope == lines_[b].slope) continue;
        Rational x = (lines_[b].intercept - lines_[a].intercept) /
                     (lines_[a].slope - lines_[b].slope);
        Rational v = (*this)(x);
        if (lines_[a](x) == v && right_slope(x) != left_slope(x)) out.push_back(x);
      }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

 private:
  Rational left_slope(const Rational& x) const {
    const Rational v = (*this)(x);
    Rational s{0};
    bool found = false;
    for (const auto& l : lines_) {
      if (l(x) != v) continue;
      if (!found || l.slope > s) s = l.slope;
      found = true;
    }
    return s;
  }

  std::vector<Line> lines_;
};

}  // namespace ramified
