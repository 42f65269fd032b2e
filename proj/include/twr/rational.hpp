#pragma once

#include <compare>
#include <complex>
#include <cstdint>
#include <string>

namespace twr {

/// Exact rational number with 64-bit numerator and denominator.
///
/// Always stored in lowest terms with a positive denominator. Arithmetic is
/// carried out in 128-bit intermediates; a result that does not fit back into
/// 64 bits throws std::overflow_error instead of wrapping.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num);  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t num, std::int64_t den);

  /// Parses "p", "p/q" or a decimal literal such as "0.125" or "1e-4".
  static Rational parse(const std::string& text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_one() const { return num_ == 1 && den_ == 1; }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return (num_ > 0) - (num_ < 0); }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string str() const;

  Rational operator-() const;
  Rational inverse() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  static Rational from_wide(__int128 num, __int128 den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// Exact complex rational re + im*i. The only constant type stored in
/// expression trees.
class ComplexRational {
 public:
  constexpr ComplexRational() = default;
  ComplexRational(Rational re, Rational im = Rational{}) : re_(re), im_(im) {}  // NOLINT
  ComplexRational(std::int64_t re) : re_(re) {}                                 // NOLINT

  static ComplexRational i() { return {Rational{0}, Rational{1}}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_one() const { return re_.is_one() && im_.is_zero(); }
  bool is_real() const { return im_.is_zero(); }
  bool is_imaginary() const { return re_.is_zero() && !im_.is_zero(); }

  /// Sign used to canonicalize odd functions: the sign of the real part, or of
  /// the imaginary part when the real part vanishes.
  int leading_sign() const { return re_.is_zero() ? im_.sign() : re_.sign(); }

  std::complex<double> to_complex() const { return {re_.to_double(), im_.to_double()}; }

  ComplexRational operator-() const { return {-re_, -im_}; }
  ComplexRational conj() const { return {re_, -im_}; }
  ComplexRational inverse() const;
  ComplexRational pow(int n) const;

  friend ComplexRational operator+(const ComplexRational& a, const ComplexRational& b) {
    return {a.re_ + b.re_, a.im_ + b.im_};
  }
  friend ComplexRational operator-(const ComplexRational& a, const ComplexRational& b) {
    return {a.re_ - b.re_, a.im_ - b.im_};
  }
  friend ComplexRational operator*(const ComplexRational& a, const ComplexRational& b) {
    return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
  }
  friend ComplexRational operator/(const ComplexRational& a, const ComplexRational& b) {
    return a * b.inverse();
  }
  ComplexRational& operator+=(const ComplexRational& o) { return *this = *this + o; }
  ComplexRational& operator*=(const ComplexRational& o) { return *this = *this * o; }

  friend bool operator==(const ComplexRational&, const ComplexRational&) = default;
  friend std::strong_ordering operator<=>(const ComplexRational& a, const ComplexRational& b) {
    if (auto c = a.re_ <=> b.re_; c != 0) return c;
    return a.im_ <=> b.im_;
  }

 private:
  Rational re_;
  Rational im_;
};

}  // namespace twr
