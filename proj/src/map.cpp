#include "nexp/map.hpp"

#include <algorithm>
#include <string>

#include "nexp/errors.hpp"

namespace nexp {

namespace {

// Floor of v, except that a value on (or, for Reals, within eps_int of) an
// integer reports hit = true and returns that integer.
long snapped_floor(const Scalar& v, bool& hit) {
  if (v.is_exact()) {
    hit = v.exact()->is_integer();
    return v.floor();
  }
  hit = near_integer(v.approx());
  return hit ? round(v.approx()).floor_long() : v.floor();
}

Real alpha_at(const Params& params, Precision prec) {
  if (params.alpha().exact()) return params.alpha().exact()->to_real(prec);
  return params.alpha().approx().with_precision(prec);
}

}  // namespace

Params::Params(long n, Scalar alpha) : n_(n), alpha_(std::move(alpha)) {
  if (n < 2) throw DomainError("N must be at least 2, got " + std::to_string(n));
  if (alpha_.sign() <= 0) throw DomainError("alpha must be positive, got " + alpha_.str());
  const Scalar a1 = alpha_ + 1;
  if (compare(a1 * a1, n) > 0) {
    throw DomainError("alpha must not exceed sqrt(N)-1 = " +
                      (sqrt(Real(n, alpha_.precision())) - 1).str(12) + " for N=" + std::to_string(n) +
                      ", got " + alpha_.decimal(12));
  }
  const Scalar nn(n, alpha_.precision());
  const long left = snapped_floor(nn / alpha_ - alpha_, left_special_);
  d_max_ = left_special_ ? left - 1 : left;
  d_min_ = snapped_floor(nn / a1 - alpha_, right_hits_alpha_);
}

Stepper::Stepper(const Params& params, Precision prec)
    : params_(params),
      prec_(max(prec, params.precision())),
      n_(params.n()),
      alpha_(alpha_at(params, prec_)),
      alpha1_(alpha_ + 1),
      domain_tol_(eps_cmp(prec_) * alpha1_),
      lo_(alpha_ - domain_tol_),
      hi_(alpha1_ + domain_tol_),
      special_hi_(alpha_ + domain_tol_),
      snap_tol_(eps_cmp(prec_) * (n_ / alpha_)),
      quotient_(prec_),
      offset_(prec_) {}

void Stepper::check_domain(const Real& x) const {
  if (x < lo_ || x > hi_) {
    throw DomainError("x = " + x.str(12) + " lies outside [" + alpha_.str(12) + ", " + alpha1_.str(12) + "]");
  }
}

bool Stepper::at_special_alpha(const Real& x) const { return params_.left_special() && x <= special_hi_; }

long Stepper::digit(const Real& x) {
  check_domain(x);
  if (at_special_alpha(x)) return params_.d_max();
  mpfr_si_div(quotient_.get(), n_, x.get(), MPFR_RNDN);
  mpfr_sub(offset_.get(), quotient_.get(), alpha_.get(), MPFR_RNDN);
  long m = mpfr_get_si(offset_.get(), MPFR_RNDD);
  // A point computed as p_i may land a rounding error short of the integer.
  mpfr_sub_si(offset_.get(), offset_.get(), m + 1, MPFR_RNDN);
  mpfr_neg(offset_.get(), offset_.get(), MPFR_RNDN);
  if (offset_ <= snap_tol_) ++m;
  return std::clamp(m, params_.d_min(), params_.d_max());
}

long Stepper::step(Real& x) {
  const long m = digit(x);
  if (mpfr_get_prec(x.get()) != prec_.bits()) mpfr_prec_round(x.get(), prec_.bits(), MPFR_RNDN);
  if (at_special_alpha(x)) {
    mpfr_set(x.get(), alpha1_.get(), MPFR_RNDN);
    return m;
  }
  mpfr_sub_si(x.get(), quotient_.get(), m, MPFR_RNDN);
  if (x < alpha_) {
    mpfr_set(x.get(), alpha_.get(), MPFR_RNDN);
  } else if (x > alpha1_) {
    mpfr_set(x.get(), alpha1_.get(), MPFR_RNDN);
  }
  return m;
}

long digit(const Params& params, const Real& x) { return Stepper(params, x.precision()).digit(x); }

Real apply_t(const Params& params, const Real& x) {
  Stepper stepper(params, x.precision());
  Real y = x;
  stepper.step(y);
  return y;
}

namespace {

bool exact_pair(const Params& params, const Scalar& x) { return x.exact() && params.alpha().exact(); }

}  // namespace

long digit(const Params& params, const Scalar& x) {
  if (!exact_pair(params, x)) return digit(params, x.approx());
  const Surd& a = *params.alpha().exact();
  const Surd& v = *x.exact();
  if (v < a || v > a + Surd(1)) {
    throw DomainError("x = " + v.str() + " lies outside [" + a.str() + ", " + (a + Surd(1)).str() + "]");
  }
  if (v == a && params.left_special()) return params.d_max();
  const Surd quotient = Surd(params.n()) / v;
  const Precision prec = max(x.precision(), params.precision());
  long m = (quotient.to_real(prec) - a.to_real(prec)).floor_long();
  auto fits = [&](long cand) { return quotient - Surd(cand) >= a; };
  while (!fits(m)) --m;
  while (fits(m + 1)) ++m;
  return m;
}

Scalar apply_t(const Params& params, const Scalar& x) {
  if (!exact_pair(params, x)) return Scalar(apply_t(params, x.approx()));
  const Precision prec = max(x.precision(), params.precision());
  if (*x.exact() == *params.alpha().exact() && params.left_special()) return params.alpha_plus_one();
  const long m = digit(params, x);
  return Scalar(Surd(params.n()) / *x.exact() - Surd(m), prec);
}

std::vector<Real> orbit(const Params& params, const Real& x, long steps) {
  if (steps < 0) throw DomainError("steps must be non-negative");
  Stepper stepper(params, x.precision());
  std::vector<Real> out;
  out.reserve(static_cast<size_t>(steps) + 1);
  Real cur = x.with_precision(stepper.precision());
  stepper.digit(cur);
  out.push_back(cur);
  for (long k = 0; k < steps; ++k) {
    stepper.step(cur);
    out.push_back(cur);
  }
  return out;
}

ExpansionDigits expand(const Params& params, const Real& x, long count) {
  if (count < 1) throw DomainError("digit count must be at least 1");
  Stepper stepper(params, x.precision());
  ExpansionDigits out{{}, x.with_precision(stepper.precision())};
  out.digits.reserve(static_cast<size_t>(count));
  for (long k = 0; k < count; ++k) out.digits.push_back(stepper.step(out.remainder));
  return out;
}

Real evaluate(long n, const std::vector<long>& digits, const Real& tail) {
  if (digits.empty()) throw DomainError("evaluate needs at least one digit");
  if (tail.sign() <= 0) throw DomainError("tail must be positive");
  Real v = tail;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    v += *it;
    if (v.sign() <= 0) throw DomainError("non-positive denominator at digit " + std::to_string(*it));
    v = n / v;
  }
  return v;
}

}  // namespace nexp
