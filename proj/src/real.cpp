#include "nexp/real.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <string>

#include "nexp/errors.hpp"

namespace nexp {

Precision::Precision(int bits) : bits_(bits) {
  if (bits < kMinPrecisionBits || bits > kMaxPrecisionBits) {
    throw DomainError("precision must be between " + std::to_string(kMinPrecisionBits) + " and " +
                      std::to_string(kMaxPrecisionBits) + " bits, got " + std::to_string(bits));
  }
}

Real::Real(Precision prec) {
  mpfr_init2(value_, prec.bits());
  mpfr_set_zero(value_, 1);
}

Real::Real(long value, Precision prec) {
  mpfr_init2(value_, prec.bits());
  mpfr_set_si(value_, value, MPFR_RNDN);
}

Real::Real(const Real& other) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

Real::~Real() { mpfr_clear(value_); }

Real Real::parse(std::string_view text, Precision prec) {
  Real out(prec);
  std::string buf(text);
  char* end = nullptr;
  if (buf.empty()) throw DomainError("empty number");
  mpfr_strtofr(out.value_, buf.c_str(), &end, 10, MPFR_RNDN);
  if (end == buf.c_str() || end != buf.c_str() + buf.size()) {
    throw DomainError("not a decimal number: '" + buf + "'");
  }
  if (!mpfr_number_p(out.value_)) throw DomainError("not a finite number: '" + buf + "'");
  return out;
}

Real Real::from_double(double value, Precision prec) {
  Real out(prec);
  mpfr_set_d(out.value_, value, MPFR_RNDN);
  return out;
}

Real Real::pow2(long exponent, Precision prec) {
  Real out(1, prec);
  mpfr_mul_2si(out.value_, out.value_, exponent, MPFR_RNDN);
  return out;
}

Real Real::with_precision(Precision prec) const {
  Real out(prec);
  mpfr_set(out.value_, value_, MPFR_RNDN);
  return out;
}

long Real::floor_long() const {
  if (!mpfr_fits_slong_p(value_, MPFR_RNDD)) throw DomainError("value out of integer range");
  return mpfr_get_si(value_, MPFR_RNDD);
}

std::string Real::str(int digits) const {
  if (digits < 0) {
    // Significant digits the mantissa carries, less the integer part.
    int sig = static_cast<int>((mpfr_get_prec(value_) - 1) * 0.30103) - 1;
    if (mpfr_regular_p(value_) && mpfr_get_exp(value_) > 0) {
      sig -= static_cast<int>(std::ceil(mpfr_get_exp(value_) * 0.30103));
    }
    digits = std::max(sig, 0);
  }
  // mpfr_asprintf is not affected by the C locale's decimal separator in the
  // %R*f path, it always emits '.'.
  char* raw = nullptr;
  mpfr_asprintf(&raw, "%.*Rf", digits, value_);
  std::string out(raw);
  mpfr_free_str(raw);
  if (out == "-0" || (out.rfind("-0.", 0) == 0 && out.find_first_not_of("0.", 1) == std::string::npos)) {
    out.erase(0, 1);
  }
  return out;
}

void Real::widen_to(const Real& rhs) {
  if (mpfr_get_prec(rhs.value_) > mpfr_get_prec(value_)) {
    mpfr_prec_round(value_, mpfr_get_prec(rhs.value_), MPFR_RNDN);
  }
}

Real& Real::operator+=(const Real& rhs) {
  widen_to(rhs);
  mpfr_add(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}
Real& Real::operator-=(const Real& rhs) {
  widen_to(rhs);
  mpfr_sub(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}
Real& Real::operator*=(const Real& rhs) {
  widen_to(rhs);
  mpfr_mul(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}
Real& Real::operator/=(const Real& rhs) {
  widen_to(rhs);
  mpfr_div(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}
Real& Real::operator+=(long rhs) {
  mpfr_add_si(value_, value_, rhs, MPFR_RNDN);
  return *this;
}
Real& Real::operator-=(long rhs) {
  mpfr_sub_si(value_, value_, rhs, MPFR_RNDN);
  return *this;
}
Real& Real::operator*=(long rhs) {
  mpfr_mul_si(value_, value_, rhs, MPFR_RNDN);
  return *this;
}
Real& Real::operator/=(long rhs) {
  mpfr_div_si(value_, value_, rhs, MPFR_RNDN);
  return *this;
}

Real operator-(const Real& x) {
  Real out(x.precision());
  mpfr_neg(out.value_, x.value_, MPFR_RNDN);
  return out;
}

std::partial_ordering operator<=>(const Real& a, const Real& b) {
  if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.value_, b.value_);
  return c < 0 ? std::partial_ordering::less : c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent;
}

std::partial_ordering operator<=>(const Real& a, long b) {
  if (mpfr_nan_p(a.value_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp_si(a.value_, b);
  return c < 0 ? std::partial_ordering::less : c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent;
}

namespace {

Real widest(const Real& a, const Real& b) { return Real(max(a.precision(), b.precision())); }

}  // namespace

Real operator+(const Real& a, const Real& b) {
  Real out = widest(a, b);
  mpfr_add(out.get(), a.get(), b.get(), MPFR_RNDN);
  return out;
}
Real operator-(const Real& a, const Real& b) {
  Real out = widest(a, b);
  mpfr_sub(out.get(), a.get(), b.get(), MPFR_RNDN);
  return out;
}
Real operator*(const Real& a, const Real& b) {
  Real out = widest(a, b);
  mpfr_mul(out.get(), a.get(), b.get(), MPFR_RNDN);
  return out;
}
Real operator/(const Real& a, const Real& b) {
  Real out = widest(a, b);
  mpfr_div(out.get(), a.get(), b.get(), MPFR_RNDN);
  return out;
}
Real operator+(const Real& a, long b) { return Real(a) += b; }
Real operator-(const Real& a, long b) { return Real(a) -= b; }
Real operator*(const Real& a, long b) { return Real(a) *= b; }
Real operator/(const Real& a, long b) { return Real(a) /= b; }
Real operator+(long a, const Real& b) { return Real(b) += a; }
Real operator-(long a, const Real& b) {
  Real out(b.precision());
  mpfr_si_sub(out.get(), a, b.get(), MPFR_RNDN);
  return out;
}
Real operator*(long a, const Real& b) { return Real(b) *= a; }
Real operator/(long a, const Real& b) {
  Real out(b.precision());
  mpfr_si_div(out.get(), a, b.get(), MPFR_RNDN);
  return out;
}

Real sqrt(const Real& x) {
  Real out(x.precision());
  mpfr_sqrt(out.get(), x.get(), MPFR_RNDN);
  return out;
}

Real abs(const Real& x) {
  Real out(x.precision());
  mpfr_abs(out.get(), x.get(), MPFR_RNDN);
  return out;
}

Real floor(const Real& x) {
  Real out(x.precision());
  mpfr_floor(out.get(), x.get());
  return out;
}

Real round(const Real& x) {
  Real out(x.precision());
  mpfr_round(out.get(), x.get());
  return out;
}

Real eps_cmp(Precision prec) { return Real::pow2(8 - prec.bits(), prec); }
Real eps_int(Precision prec) { return Real::pow2(16 - prec.bits(), prec); }

int approx_compare(const Real& a, const Real& b) {
  const Precision prec = max(a.precision(), b.precision());
  Real scale(1, prec);
  Real aa = abs(a);
  Real ab = abs(b);
  if (aa > scale) scale = aa;
  if (ab > scale) scale = ab;
  const Real diff = a - b;
  if (abs(diff) <= eps_cmp(prec) * scale) return 0;
  return diff.sign() < 0 ? -1 : 1;
}

bool near_integer(const Real& x) {
  Real scale = abs(x);
  if (scale < 1L) scale = Real(1, x.precision());
  return abs(x - round(x)) <= eps_int(x.precision()) * scale;
}

}  // namespace nexp
