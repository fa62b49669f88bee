#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <complex>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cliffordlab {

using Rational = mpq_class;

// Parses "a", "a/b" or a plain decimal such as "-0.125" or "1.5e-3" into an
// exact rational. Throws std::invalid_argument on malformed input.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  if (s.find_first_of(".eE") == std::string::npos) {
    if (s.front() == '+') s.erase(0, 1);
    Rational r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + std::string(text));
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
    r.canonicalize();
    return r;
  }
  // decimal form
  bool negative = false;
  std::size_t pos = 0;
  if (s[pos] == '+' || s[pos] == '-') negative = (s[pos++] == '-');
  std::string mantissa_digits;
  long exponent = 0;
  bool seen_point = false, seen_digit = false;
  for (; pos < s.size(); ++pos) {
    char c = s[pos];
    if (c >= '0' && c <= '9') {
      mantissa_digits.push_back(c);
      seen_digit = true;
      if (seen_point) --exponent;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else if (c == 'e' || c == 'E') {
      ++pos;
      break;
    } else {
      throw std::invalid_argument("bad decimal literal: " + std::string(text));
    }
  }
  if (!seen_digit) throw std::invalid_argument("bad decimal literal: " + std::string(text));
  if (pos < s.size() || (pos == s.size() && s.back() == 'e')) {
    std::string exp_part = s.substr(pos);
    try {
      std::size_t used = 0;
      exponent += std::stol(exp_part, &used);
      if (used != exp_part.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw std::invalid_argument("bad exponent in: " + std::string(text));
    }
  }
  mpz_class num(mantissa_digits, 10);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  Rational r = exponent < 0 ? Rational(num, scale) : Rational(num * scale, 1);
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

inline std::string to_string(const Rational& r) { return r.get_str(10); }

// Exact complex scalar re + im*i with rational parts. mpq_class keeps both
// parts canonical (positive, coprime denominators).
struct GaussianRational {
  Rational re{0};
  Rational im{0};

  GaussianRational() = default;
  GaussianRational(long v) : re(v), im(0) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(Rational r) : re(std::move(r)), im(0) { re.canonicalize(); }  // NOLINT
  GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {
    re.canonicalize();
    im.canonicalize();
  }

  static GaussianRational i() { return {Rational(0), Rational(1)}; }

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }
  bool is_one() const { return re == 1 && sgn(im) == 0; }

  GaussianRational conj() const { return {re, Rational(-im)}; }
  // |z|^2, always rational.
  Rational norm2() const { return Rational(re * re + im * im); }

  GaussianRational& operator+=(const GaussianRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    Rational r = re * o.re - im * o.im;
    Rational i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o) {
    Rational n = o.norm2();
    if (sgn(n) == 0) throw std::domain_error("division by zero Gaussian rational");
    Rational r = (re * o.re + im * o.im) / n;
    Rational i = (im * o.re - re * o.im) / n;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend GaussianRational operator-(const GaussianRational& a) { return {Rational(-a.re), Rational(-a.im)}; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

  std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }
};

inline GaussianRational conj(const GaussianRational& z) { return z.conj(); }

// Matrix-entry format: "3", "-1/2", "i", "-i", "2/3i", "1/2-3/4i".
inline std::string to_string(const GaussianRational& z) {
  if (z.is_real()) return to_string(z.re);
  auto imag_text = [](const Rational& v) -> std::string {
    if (v == 1) return "i";
    if (v == -1) return "-i";
    return to_string(v) + "i";
  };
  if (sgn(z.re) == 0) return imag_text(z.im);
  std::string out = to_string(z.re);
  if (sgn(z.im) > 0) {
    out += '+';
    out += imag_text(z.im);
  } else {
    out += imag_text(z.im);  // carries its own '-'
  }
  return out;
}

inline GaussianRational parse_gaussian(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  if (s.empty()) throw std::invalid_argument("empty complex literal");
  if (s.back() != 'i') return GaussianRational(parse_rational(s));
  std::string body = s.substr(0, s.size() - 1);
  // split at the last sign that is not leading and not part of an exponent
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag_coeff = [&](const std::string& t) -> Rational {
    if (t.empty() || t == "+") return Rational(1);
    if (t == "-") return Rational(-1);
    return parse_rational(t);
  };
  if (split == std::string::npos) return {Rational(0), imag_coeff(body)};
  return {parse_rational(body.substr(0, split)), imag_coeff(body.substr(split))};
}

inline std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << to_string(z); }

// Scalar capabilities shared by the exact and floating layers.
template <typename T>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
  static constexpr bool exact = true;
  static bool is_zero(const Rational& x) { return sgn(x) == 0; }
  static Rational conj(const Rational& x) { return x; }
  static double magnitude(const Rational& x) { return std::abs(x.get_d()); }
};

template <>
struct scalar_traits<GaussianRational> {
  static constexpr bool exact = true;
  static bool is_zero(const GaussianRational& x) { return x.is_zero(); }
  static GaussianRational conj(const GaussianRational& x) { return x.conj(); }
  static double magnitude(const GaussianRational& x) { return std::abs(x.to_complex()); }
};

template <>
struct scalar_traits<double> {
  static constexpr bool exact = false;
  static bool is_zero(double x) { return x == 0.0; }
  static double conj(double x) { return x; }
  static double magnitude(double x) { return std::abs(x); }
};

template <>
struct scalar_traits<std::complex<double>> {
  static constexpr bool exact = false;
  static bool is_zero(const std::complex<double>& x) { return x == 0.0; }
  static std::complex<double> conj(const std::complex<double>& x) { return std::conj(x); }
  static double magnitude(const std::complex<double>& x) { return std::abs(x); }
};

template <typename T>
concept ExactScalar = scalar_traits<T>::exact;

// Exact rational square root when one exists.
inline std::optional<Rational> rational_sqrt(const Rational& x) {
  if (sgn(x) < 0) return std::nullopt;
  if (sgn(x) == 0) return Rational(0);
  mpz_class n = x.get_num(), d = x.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  return Rational(rn, rd);
}

}  // namespace cliffordlab
