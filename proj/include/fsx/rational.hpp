#pragma once

#include <cctype>
#include <compare>
#include <cstdlib>
#include <limits>
#include <ostream>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "fsx/errors.hpp"

namespace fsx {

/**
 * @brief Exact fraction with a distinguished +infinity.
 *
 * Finite values wrap boost::multiprecision::cpp_rational, which keeps them reduced
 * with a positive denominator. 1/inf = 0; inf - inf and 0 * inf throw.
 */
class Rational {
public:
  using big = boost::multiprecision::cpp_rational;
  using bigint = boost::multiprecision::cpp_int;

  Rational() = default;
  Rational(long long v) : v_(v) {}
  Rational(long long num, long long den) {
    if (den == 0)
      throw ParameterError("zero denominator");
    v_ = big(bigint(num), bigint(den));
  }
  explicit Rational(const big &v) : v_(v) {}

  static Rational infinity() {
    Rational r;
    r.inf_ = true;
    return r;
  }

  bool is_inf() const { return inf_; }
  bool is_finite() const { return !inf_; }
  const big &value() const {
    if (inf_)
      throw ParameterError("infinite rational has no finite value");
    return v_;
  }
  bigint numerator() const { return boost::multiprecision::numerator(value()); }
  bigint denominator() const { return boost::multiprecision::denominator(value()); }

  int sign() const { return inf_ ? 1 : v_.sign(); }
  bool is_zero() const { return !inf_ && v_.is_zero(); }

  double to_double() const {
    return inf_ ? std::numeric_limits<double>::infinity() : v_.convert_to<double>();
  }

  /// 1/x with 1/inf = 0 and 1/0 = inf (used for exponent conventions only).
  Rational reciprocal() const {
    if (inf_)
      return Rational(0);
    if (v_.is_zero())
      return infinity();
    return Rational(big(1) / v_);
  }

  Rational operator-() const {
    if (inf_)
      throw ParameterError("negative infinity is not representable");
    return Rational(-v_);
  }

  friend Rational operator+(const Rational &a, const Rational &b) {
    if (a.inf_ || b.inf_)
      return infinity();
    return Rational(a.v_ + b.v_);
  }
  friend Rational operator-(const Rational &a, const Rational &b) {
    if (b.inf_)
      throw ParameterError(a.inf_ ? "inf - inf is undefined" : "finite - inf is not representable");
    if (a.inf_)
      return infinity();
    return Rational(a.v_ - b.v_);
  }
  friend Rational operator*(const Rational &a, const Rational &b) {
    if (a.inf_ || b.inf_) {
      if (a.is_zero() || b.is_zero())
        throw ParameterError("0 * inf is undefined");
      if (a.sign() < 0 || b.sign() < 0)
        throw ParameterError("negative infinity is not representable");
      return infinity();
    }
    return Rational(a.v_ * b.v_);
  }
  friend Rational operator/(const Rational &a, const Rational &b) {
    if (b.is_zero())
      throw ParameterError("division by zero");
    if (b.inf_) {
      if (a.inf_)
        throw ParameterError("inf / inf is undefined");
      return Rational(0);
    }
    if (a.inf_) {
      if (b.sign() < 0)
        throw ParameterError("negative infinity is not representable");
      return infinity();
    }
    return Rational(a.v_ / b.v_);
  }
  Rational &operator+=(const Rational &o) { return *this = *this + o; }
  Rational &operator-=(const Rational &o) { return *this = *this - o; }
  Rational &operator*=(const Rational &o) { return *this = *this * o; }
  Rational &operator/=(const Rational &o) { return *this = *this / o; }

  friend bool operator==(const Rational &a, const Rational &b) {
    if (a.inf_ || b.inf_)
      return a.inf_ == b.inf_;
    return a.v_ == b.v_;
  }
  friend std::strong_ordering operator<=>(const Rational &a, const Rational &b) {
    if (a.inf_ || b.inf_) {
      if (a.inf_ == b.inf_)
        return std::strong_ordering::equal;
      return a.inf_ ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    if (a.v_ < b.v_)
      return std::strong_ordering::less;
    if (a.v_ > b.v_)
      return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  /// "num/den", "num" when the denominator is 1, or "inf".
  std::string str() const {
    if (inf_)
      return "inf";
    auto d = denominator();
    if (d == 1)
      return numerator().str();
    return numerator().str() + "/" + d.str();
  }

  /// Accepts "a/b", integers, exact decimals ("-0.25", "1e-3") and "inf".
  static Rational parse(const std::string &text) {
    std::string s;
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c)))
        s.push_back(c);
    if (s.empty())
      throw FormatError("empty rational");
    if (s == "inf" || s == "+inf" || s == "infinity" || s == "Infinity")
      return infinity();
    auto slash = s.find('/');
    if (slash != std::string::npos) {
      Rational a = parse_decimal(s.substr(0, slash));
      Rational b = parse_decimal(s.substr(slash + 1));
      if (b.is_zero())
        throw FormatError("zero denominator in '" + text + "'");
      return a / b;
    }
    return parse_decimal(s);
  }

private:
  static Rational parse_decimal(const std::string &s) {
    std::size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-'))
      neg = s[i++] == '-';
    bigint mant = 0;
    long long frac_digits = 0;
    bool any = false, dot = false;
    for (; i < s.size(); ++i) {
      char c = s[i];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        mant = mant * 10 + (c - '0');
        any = true;
        if (dot)
          ++frac_digits;
      } else if (c == '.' && !dot) {
        dot = true;
      } else {
        break;
      }
    }
    if (!any)
      throw FormatError("malformed rational '" + s + "'");
    long long exp10 = 0;
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
      ++i;
      std::size_t used = 0;
      try {
        exp10 = std::stoll(s.substr(i), &used);
      } catch (const std::exception &) {
        throw FormatError("malformed exponent in '" + s + "'");
      }
      if (std::llabs(exp10) > 400)
        throw FormatError("exponent too large in '" + s + "'");
      i += used;
    }
    if (i != s.size())
      throw FormatError("trailing characters in '" + s + "'");
    exp10 -= frac_digits;
    bigint p10 = 1;
    for (long long k = 0; k < std::llabs(exp10); ++k)
      p10 *= 10;
    big v = exp10 >= 0 ? big(mant * p10) : big(mant, p10);
    return Rational(neg ? big(-v) : v);
  }

  big v_ = 0;
  bool inf_ = false;
};

inline std::ostream &operator<<(std::ostream &os, const Rational &r) { return os << r.str(); }

inline Rational rmin(const Rational &a, const Rational &b) { return a < b ? a : b; }
inline Rational rmax(const Rational &a, const Rational &b) { return a < b ? b : a; }

} // namespace fsx
