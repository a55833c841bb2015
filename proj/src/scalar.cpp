#include "nexp/scalar.hpp"

#include <cctype>
#include <string>

#include "nexp/errors.hpp"

namespace nexp {

Scalar::Scalar(const Surd& exact, Precision prec) : approx_(exact.to_real(prec)), exact_(exact) {}

Scalar Scalar::parse_decimal(std::string_view text, Precision prec) {
  Real approx = Real::parse(text, prec);
  // Re-read the literal as mantissa * 10^exponent to keep it exact.
  std::string digits;
  long exponent = 0;
  bool negative = false;
  bool seen_point = false;
  size_t pos = 0;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) negative = text[pos++] == '-';
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits += c;
      if (seen_point) --exponent;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    try {
      exponent += std::stol(std::string(text.substr(pos + 1)));
    } catch (const std::exception&) {
      return Scalar(std::move(approx));
    }
  } else if (pos != text.size()) {
    return Scalar(std::move(approx));
  }
  if (digits.empty() || exponent > 4096 || exponent < -4096) return Scalar(std::move(approx));
  mpz_class num(digits);
  if (negative) num = -num;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  Surd exact = exponent < 0 ? Surd::rational(num, scale) : Surd::rational(num * scale);
  return Scalar(std::move(approx), std::move(exact));
}

long Scalar::floor() const {
  if (exact_) {
    const mpz_class f = exact_->floor();
    if (!f.fits_slong_p()) throw DomainError("value out of integer range");
    return f.get_si();
  }
  return approx_.floor_long();
}

bool Scalar::is_integer() const { return exact_ ? exact_->is_integer() : near_integer(approx_); }

int Scalar::sign() const { return exact_ ? exact_->sign() : approx_.sign(); }

std::string Scalar::str() const { return exact_ ? exact_->str() : approx_.str(); }

namespace {

bool both_exact(const Scalar& a, const Scalar& b) {
  return a.exact() && b.exact() && a.exact()->compatible(*b.exact());
}

}  // namespace

Scalar operator-(const Scalar& x) {
  std::optional<Surd> e;
  if (x.exact_) e = -*x.exact_;
  return Scalar(-x.approx_, std::move(e));
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  if (both_exact(a, b)) return Scalar(*a.exact_ + *b.exact_, max(a.precision(), b.precision()));
  return Scalar(a.approx_ + b.approx_);
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  if (both_exact(a, b)) return Scalar(*a.exact_ - *b.exact_, max(a.precision(), b.precision()));
  return Scalar(a.approx_ - b.approx_);
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  if (both_exact(a, b)) return Scalar(*a.exact_ * *b.exact_, max(a.precision(), b.precision()));
  return Scalar(a.approx_ * b.approx_);
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  if (b.sign() == 0) throw DomainError("division by zero");
  if (both_exact(a, b)) return Scalar(*a.exact_ / *b.exact_, max(a.precision(), b.precision()));
  return Scalar(a.approx_ / b.approx_);
}

Scalar operator+(const Scalar& a, long b) { return a + Scalar(b, a.precision()); }
Scalar operator-(const Scalar& a, long b) { return a - Scalar(b, a.precision()); }
Scalar operator*(const Scalar& a, long b) { return a * Scalar(b, a.precision()); }
Scalar operator/(const Scalar& a, long b) { return a / Scalar(b, a.precision()); }
Scalar operator+(long a, const Scalar& b) { return b + a; }
Scalar operator-(long a, const Scalar& b) { return Scalar(a, b.precision()) - b; }
Scalar operator*(long a, const Scalar& b) { return b * a; }
Scalar operator/(long a, const Scalar& b) { return Scalar(a, b.precision()) / b; }

int compare(const Scalar& a, const Scalar& b) {
  if (a.exact() && b.exact()) {
    const auto c = *a.exact() <=> *b.exact();
    return c < 0 ? -1 : c > 0 ? 1 : 0;
  }
  return approx_compare(a.approx(), b.approx());
}

int compare(const Scalar& a, long b) { return compare(a, Scalar(b, a.precision())); }

Scalar sqrt(const Scalar& x) {
  if (x.sign() < 0) throw DomainError("square root of a negative value");
  if (x.exact() && x.exact()->is_rational()) {
    // sqrt(p/r) = sqrt(p*r)/r
    const Surd& e = *x.exact();
    return Scalar(Surd(0, 1, e.r(), e.p() * e.r()), x.precision());
  }
  return Scalar(sqrt(x.approx()));
}

Scalar min(const Scalar& a, const Scalar& b) { return compare(b, a) < 0 ? b : a; }
Scalar max(const Scalar& a, const Scalar& b) { return compare(b, a) > 0 ? b : a; }

}  // namespace nexp
