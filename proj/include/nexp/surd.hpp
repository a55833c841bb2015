#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>
#include <string_view>

#include "nexp/real.hpp"

namespace nexp {

/// Exact quadratic irrational (p + q*sqrt(D)) / r.
///
/// Canonical form: D squarefree (D = 0 and q = 0 for rationals),
/// gcd(p, q, r) = 1 and r > 0. Two canonical surds are equal iff their
/// fields are equal.
///
/// Arithmetic is closed for operands sharing D (a rational combines with
/// anything); mixing two different radicands throws DomainError. Ordering is
/// defined for any pair.
class Surd {
 public:
  Surd() = default;
  /// Normalizes; r == 0 or D < 0 throws DomainError.
  Surd(mpz_class p, mpz_class q, mpz_class r, mpz_class radicand);
  Surd(long value) : p_(value) {}  // NOLINT(google-explicit-constructor)

  static Surd rational(const mpz_class& num, const mpz_class& den = 1);
  /// sqrt(radicand), normalized.
  static Surd sqrt_of(const mpz_class& radicand);
  /// Accepts "(p+q*sqrt(D))/r", "p+q*sqrt(D)", "(sqrt(D)-p)/r", "p/q", "p".
  static Surd parse(std::string_view text);

  const mpz_class& p() const { return p_; }
  const mpz_class& q() const { return q_; }
  const mpz_class& r() const { return r_; }
  const mpz_class& radicand() const { return d_; }
  bool is_rational() const { return q_ == 0; }
  bool is_integer() const { return q_ == 0 && r_ == 1; }
  /// True when both values live in the same field Q(sqrt(D)).
  bool compatible(const Surd& other) const {
    return is_rational() || other.is_rational() || d_ == other.d_;
  }

  Real to_real(Precision prec) const;
  mpz_class floor() const;
  /// Conjugate (p - q*sqrt(D)) / r.
  Surd conjugate() const;
  int sign() const;

  /// Canonical text: "5/2", "-1+2*sqrt(13)", "(27-9*sqrt(7))/2".
  std::string str() const;

  friend Surd operator-(const Surd& x);
  friend Surd operator+(const Surd& a, const Surd& b);
  friend Surd operator-(const Surd& a, const Surd& b);
  friend Surd operator*(const Surd& a, const Surd& b);
  /// Throws DomainError on division by zero.
  friend Surd operator/(const Surd& a, const Surd& b);

  friend bool operator==(const Surd& a, const Surd& b) = default;
  friend std::strong_ordering operator<=>(const Surd& a, const Surd& b);

 private:
  void normalize();

  mpz_class p_{0};
  mpz_class q_{0};
  mpz_class r_{1};
  mpz_class d_{0};
};

/// Exact ordering. Same-field pairs are decided by rationalized sign
/// analysis; different radicands by interval refinement at escalating
/// precision (such pairs can never be equal, so refinement terminates).
std::strong_ordering surd_compare(const Surd& a, const Surd& b);

/// Splits n = square^2 * core with core squarefree.
struct SquarefreeSplit {
  mpz_class square;
  mpz_class core;
};
SquarefreeSplit squarefree_split(const mpz_class& n);

}  // namespace nexp
