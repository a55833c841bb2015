#pragma once

#include <vector>

#include "nexp/real.hpp"
#include "nexp/scalar.hpp"

namespace nexp {

/// One N-expansion system: the numerator N and the shift alpha of the
/// domain interval [alpha, alpha + 1].
class Params {
 public:
  /// Throws DomainError unless n >= 2 and 0 < alpha <= sqrt(n) - 1.
  Params(long n, Scalar alpha);

  long n() const { return n_; }
  const Scalar& alpha() const { return alpha_; }
  Scalar alpha_plus_one() const { return alpha_ + 1; }
  Precision precision() const { return alpha_.precision(); }

  /// N/alpha - alpha is an integer, so the left endpoint takes the smaller
  /// digit and T(alpha) = alpha + 1.
  bool left_special() const { return left_special_; }
  /// N/(alpha+1) - alpha is an integer, so T(alpha + 1) = alpha.
  bool right_hits_alpha() const { return right_hits_alpha_; }

  long d_max() const { return d_max_; }
  long d_min() const { return d_min_; }

 private:
  long n_;
  Scalar alpha_;
  bool left_special_ = false;
  bool right_hits_alpha_ = false;
  long d_max_ = 0;
  long d_min_ = 0;
};

/// Fast in-place iteration of T on Reals. Holds its own scratch values, so
/// one Stepper per thread.
class Stepper {
 public:
  Stepper(const Params& params, Precision prec);

  /// Digit of x. Throws DomainError when x is outside [alpha, alpha + 1].
  long digit(const Real& x);
  /// x <- T(x); returns the digit used.
  long step(Real& x);

  Precision precision() const { return prec_; }

 private:
  void check_domain(const Real& x) const;
  bool at_special_alpha(const Real& x) const;

  Params params_;
  Precision prec_;
  long n_;
  Real alpha_;
  Real alpha1_;
  Real domain_tol_;
  Real lo_;
  Real hi_;
  Real special_hi_;
  Real snap_tol_;
  Real quotient_;
  Real offset_;
};

long digit(const Params& params, const Real& x);
Real apply_t(const Params& params, const Real& x);

/// Exact when both x and alpha are exact; otherwise falls back to Reals.
long digit(const Params& params, const Scalar& x);
Scalar apply_t(const Params& params, const Scalar& x);

/// [x, T(x), ..., T^steps(x)].
std::vector<Real> orbit(const Params& params, const Real& x, long steps);

struct ExpansionDigits {
  std::vector<long> digits;
  /// T^count(x), the tail that makes evaluate() reproduce x.
  Real remainder;
};

ExpansionDigits expand(const Params& params, const Real& x, long count);

/// Right fold v <- N/(d + v) starting from tail. Throws DomainError when a
/// denominator is not positive.
Real evaluate(long n, const std::vector<long>& digits, const Real& tail);

}  // namespace nexp
