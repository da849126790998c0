#include "deltakin/scalar.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace deltakin {

Scalar Scalar::root3(long num, long den) {
  mpq_class s(num, den);
  s.canonicalize();
  return Scalar(mpq_class(0), s);
}

Scalar Scalar::fraction(long num, long den) {
  mpq_class r(num, den);
  r.canonicalize();
  return Scalar(std::move(r));
}

int Scalar::sign() const {
  const int sr = sgn(rat);
  const int ss = sgn(sqrt3);
  if (ss == 0) return sr;
  if (sr == 0) return ss;
  if (sr == ss) return sr;
  // Opposite signs: compare rat^2 against 3*sqrt3^2. Equality would make
  // sqrt(3) rational, so it cannot happen for nonzero parts.
  const mpq_class diff = rat * rat - 3 * sqrt3 * sqrt3;
  return sgn(diff) > 0 ? sr : ss;
}

double Scalar::to_double() const {
  static const double kRoot3 = std::sqrt(3.0);
  return rat.get_d() + sqrt3.get_d() * kRoot3;
}

double Scalar::to_double_accurate() const {
  static const mpf_class kRoot3 = [] {
    mpf_class r(0, 256);
    mpf_sqrt_ui(r.get_mpf_t(), 3);
    return r;
  }();
  mpf_class acc(rat, 256);
  mpf_class s3(sqrt3, 256);
  acc += s3 * kRoot3;
  return acc.get_d();
}

std::string Scalar::str() const {
  if (is_zero()) return "0";
  std::string out;
  if (sgn(rat) != 0) out += rat.get_str();
  if (sgn(sqrt3) != 0) {
    if (!out.empty() && sgn(sqrt3) > 0) out += "+";
    if (sqrt3 == -1) {
      out += "-sqrt3";
    } else if (sqrt3 == 1) {
      out += "sqrt3";
    } else {
      out += sqrt3.get_str() + "*sqrt3";
    }
  }
  return out;
}

namespace {

// Parses "p", "p/q" or a finite decimal into an exact rational.
std::optional<mpq_class> parse_rational(std::string_view text) {
  if (text.empty()) return std::nullopt;
  std::string s(text);
  const auto dot = s.find('.');
  if (dot != std::string::npos) {
    if (s.find('/') != std::string::npos) return std::nullopt;
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    const size_t frac_len = s.size() - dot - 1;
    if (digits.empty() || digits == "-" || digits == "+") return std::nullopt;
    for (size_t i = 0; i < digits.size(); ++i) {
      if (i == 0 && (digits[i] == '-' || digits[i] == '+')) continue;
      if (!std::isdigit(static_cast<unsigned char>(digits[i]))) return std::nullopt;
    }
    mpq_class num;
    if (num.set_str(digits, 10) != 0) return std::nullopt;
    mpz_class den(1);
    for (size_t i = 0; i < frac_len; ++i) den *= 10;
    mpq_class r = num / mpq_class(den);
    r.canonicalize();
    return r;
  }
  mpq_class r;
  if (r.set_str(s, 10) != 0) return std::nullopt;
  if (sgn(r.get_den()) <= 0) return std::nullopt;
  r.canonicalize();
  return r;
}

}  // namespace

std::optional<Scalar> Scalar::parse(std::string_view text) {
  // Split into a rational part and an optional sqrt3 part. The sqrt3 part,
  // when present, looks like "r/s*sqrt3", "sqrt3" or "-sqrt3".
  const auto s3pos = text.find("sqrt3");
  if (s3pos == std::string_view::npos) {
    auto r = parse_rational(text);
    if (!r) return std::nullopt;
    return Scalar(*r);
  }
  if (text.substr(s3pos) != "sqrt3") return std::nullopt;
  std::string_view head = text.substr(0, s3pos);

  // Find where the sqrt3 coefficient starts: after the last '+' or '-' that
  // is not the leading sign of the rational part and not inside a fraction.
  size_t split = std::string_view::npos;
  for (size_t i = head.size(); i-- > 1;) {
    if (head[i] == '+' || head[i] == '-') {
      split = i;
      break;
    }
  }
  std::string_view rat_text, coef_text;
  if (split == std::string_view::npos) {
    rat_text = "";
    coef_text = head;
  } else {
    rat_text = head.substr(0, split);
    coef_text = head.substr(split);
  }

  mpq_class rat_part(0);
  if (!rat_text.empty()) {
    auto r = parse_rational(rat_text);
    if (!r) return std::nullopt;
    rat_part = *r;
  }

  mpq_class coef(1);
  if (!coef_text.empty()) {
    std::string_view c = coef_text;
    bool neg = false;
    if (c.front() == '+' || c.front() == '-') {
      neg = c.front() == '-';
      c.remove_prefix(1);
    }
    if (!c.empty()) {
      if (c.back() != '*') return std::nullopt;
      c.remove_suffix(1);
      auto r = parse_rational(c);
      if (!r) return std::nullopt;
      coef = *r;
    }
    if (neg) coef = -coef;
  }
  return Scalar(rat_part, coef);
}

Scalar& Scalar::operator+=(const Scalar& o) {
  rat += o.rat;
  sqrt3 += o.sqrt3;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  rat -= o.rat;
  sqrt3 -= o.sqrt3;
  return *this;
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  // (a.r + a.s*sqrt3)(b.r + b.s*sqrt3), using sqrt3^2 = 3.
  return Scalar(a.rat * b.rat + 3 * a.sqrt3 * b.sqrt3,
                a.rat * b.sqrt3 + a.sqrt3 * b.rat);
}

Scalar& Scalar::operator*=(const Scalar& o) {
  *this = *this * o;
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw std::domain_error("Scalar division by zero");
  // Multiply by the conjugate; the norm c^2 - 3 d^2 is nonzero for any
  // nonzero element of Q(sqrt3).
  const mpq_class norm = o.rat * o.rat - 3 * o.sqrt3 * o.sqrt3;
  const mpq_class nr = (rat * o.rat - 3 * sqrt3 * o.sqrt3) / norm;
  const mpq_class ns = (sqrt3 * o.rat - rat * o.sqrt3) / norm;
  rat = nr;
  sqrt3 = ns;
  return *this;
}

}  // namespace deltakin
