#pragma once

#include <optional>
#include <string>

#include "nexp/real.hpp"
#include "nexp/surd.hpp"

namespace nexp {

/// A real quantity that stays exact for as long as its inputs allow.
///
/// Every Scalar carries a Real approximation. When it was built from exact
/// data (a Surd, an integer, a decimal literal) it also carries the exact
/// value, and arithmetic between exact operands in a shared field keeps it.
/// Anything else degrades to the approximation alone.
class Scalar {
 public:
  explicit Scalar(Precision prec = Precision{}) : approx_(prec), exact_(Surd(0)) {}
  Scalar(const Surd& exact, Precision prec);
  Scalar(long value, Precision prec) : Scalar(Surd(value), prec) {}
  /// Approximation only.
  explicit Scalar(Real approx) : approx_(std::move(approx)) {}

  /// Decimal literal such as "49.98019737" or "-1.5e-3"; kept exact as a rational.
  static Scalar parse_decimal(std::string_view text, Precision prec);

  const Real& approx() const { return approx_; }
  const std::optional<Surd>& exact() const { return exact_; }
  bool is_exact() const { return exact_.has_value(); }
  Precision precision() const { return approx_.precision(); }
  double to_double() const { return approx_.to_double(); }

  /// Exact floor when possible, otherwise floor of the approximation.
  long floor() const;
  bool is_integer() const;
  int sign() const;

  /// Surd text when exact, otherwise the decimal.
  std::string str() const;
  std::string decimal(int digits = -1) const { return approx_.str(digits); }

  friend Scalar operator-(const Scalar& x);
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  friend Scalar operator+(const Scalar& a, long b);
  friend Scalar operator-(const Scalar& a, long b);
  friend Scalar operator*(const Scalar& a, long b);
  friend Scalar operator/(const Scalar& a, long b);
  friend Scalar operator+(long a, const Scalar& b);
  friend Scalar operator-(long a, const Scalar& b);
  friend Scalar operator*(long a, const Scalar& b);
  friend Scalar operator/(long a, const Scalar& b);

 private:
  Scalar(Real approx, std::optional<Surd> exact) : approx_(std::move(approx)), exact_(std::move(exact)) {}

  Real approx_;
  std::optional<Surd> exact_;
};

/// Exact three-way comparison when both sides are exact, else approx_compare.
int compare(const Scalar& a, const Scalar& b);
int compare(const Scalar& a, long b);
inline bool operator<(const Scalar& a, const Scalar& b) { return compare(a, b) < 0; }
inline bool operator<=(const Scalar& a, const Scalar& b) { return compare(a, b) <= 0; }
inline bool operator>(const Scalar& a, const Scalar& b) { return compare(a, b) > 0; }
inline bool operator>=(const Scalar& a, const Scalar& b) { return compare(a, b) >= 0; }
inline bool same_value(const Scalar& a, const Scalar& b) { return compare(a, b) == 0; }

Scalar sqrt(const Scalar& x);
Scalar min(const Scalar& a, const Scalar& b);
Scalar max(const Scalar& a, const Scalar& b);

}  // namespace nexp
