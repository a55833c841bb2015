#pragma once

#include <mpfr.h>

#include <compare>
#include <string>
#include <string_view>

namespace nexp {

inline constexpr int kDefaultPrecisionBits = 128;
inline constexpr int kMinPrecisionBits = 64;
inline constexpr int kMaxPrecisionBits = 1 << 20;

/// Binary mantissa width for Real values. Passed explicitly; there is no
/// process-wide precision setting.
class Precision {
 public:
  constexpr Precision() = default;
  explicit Precision(int bits);

  constexpr int bits() const { return bits_; }

  friend constexpr auto operator<=>(Precision, Precision) = default;

 private:
  int bits_ = kDefaultPrecisionBits;
};

inline Precision max(Precision a, Precision b) { return a.bits() >= b.bits() ? a : b; }

/// Arbitrary-precision binary floating point value backed by MPFR.
///
/// Every value carries its own precision. Binary operations produce a result
/// at the larger of the operand precisions and round to nearest, so a fixed
/// precision gives bit-identical results on every run.
class Real {
 public:
  explicit Real(Precision prec = Precision{});
  Real(long value, Precision prec);
  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  /// Parses a decimal literal ("6.5", "-1e-3", "49.98019737") rounded to nearest.
  static Real parse(std::string_view text, Precision prec);
  static Real from_double(double value, Precision prec);
  /// 2^exponent, exact.
  static Real pow2(long exponent, Precision prec);

  Precision precision() const { return Precision(static_cast<int>(mpfr_get_prec(value_))); }
  /// Rounds into a new precision.
  Real with_precision(Precision prec) const;

  mpfr_srcptr get() const { return value_; }
  mpfr_ptr get() { return value_; }

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  /// Floor as an integer; throws DomainError when it does not fit a long.
  long floor_long() const;
  int sign() const { return mpfr_sgn(value_); }
  bool is_integer() const { return mpfr_integer_p(value_) != 0; }

  /// Fixed-point decimal rendering with `digits` fractional digits (locale
  /// independent). digits < 0 prints the digits the precision supports.
  std::string str(int digits = -1) const;

  Real& operator+=(const Real& rhs);
  Real& operator-=(const Real& rhs);
  Real& operator*=(const Real& rhs);
  Real& operator/=(const Real& rhs);
  Real& operator+=(long rhs);
  Real& operator-=(long rhs);
  Real& operator*=(long rhs);
  Real& operator/=(long rhs);

  friend Real operator-(const Real& x);
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }
  friend std::partial_ordering operator<=>(const Real& a, const Real& b);
  friend bool operator==(const Real& a, long b) { return mpfr_cmp_si(a.value_, b) == 0; }
  friend std::partial_ordering operator<=>(const Real& a, long b);

 private:
  void widen_to(const Real& rhs);

  mpfr_t value_;
};

Real operator+(const Real& a, const Real& b);
Real operator-(const Real& a, const Real& b);
Real operator*(const Real& a, const Real& b);
Real operator/(const Real& a, const Real& b);
Real operator+(const Real& a, long b);
Real operator-(const Real& a, long b);
Real operator*(const Real& a, long b);
Real operator/(const Real& a, long b);
Real operator+(long a, const Real& b);
Real operator-(long a, const Real& b);
Real operator*(long a, const Real& b);
Real operator/(long a, const Real& b);

Real sqrt(const Real& x);
Real abs(const Real& x);
Real floor(const Real& x);
Real round(const Real& x);

/// Comparison tolerance 2^(8 - bits) used for boundary tests between Reals.
Real eps_cmp(Precision prec);
/// Integrality tolerance 2^(16 - bits) used when a Real alpha is tested for
/// landing exactly on a fixed point.
Real eps_int(Precision prec);

/// Three-way comparison that treats |a - b| <= eps_cmp * max(1, |a|, |b|) as equal.
int approx_compare(const Real& a, const Real& b);
inline bool approx_equal(const Real& a, const Real& b) { return approx_compare(a, b) == 0; }

/// True when x lies within eps_int * max(1, |x|) of an integer.
bool near_integer(const Real& x);

}  // namespace nexp
