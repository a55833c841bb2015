#include "nexp/arrangement.hpp"

#include <cmath>
#include <string>

#include "nexp/errors.hpp"

namespace nexp {

bool Arrangement::all_full() const {
  for (const auto& c : cylinders) {
    if (!c.is_full) return false;
  }
  return true;
}

const Cylinder& Arrangement::cylinder(long digit) const {
  if (digit < d_min || digit > d_max) throw DomainError("no cylinder with digit " + std::to_string(digit));
  return cylinders[static_cast<size_t>(d_max - digit)];
}

Surd fixed_point(long n, long i) {
  if (n < 2) throw DomainError("N must be at least 2");
  if (i < 1) throw DomainError("fixed point index must be at least 1");
  const mpz_class ii(i);
  return Surd(-ii, 1, 2, 4 * mpz_class(n) + ii * ii);
}

Scalar discontinuity(const Params& params, long i) {
  if (i <= params.d_min() || i > params.d_max()) {
    throw DomainError("discontinuity index " + std::to_string(i) + " outside (" + std::to_string(params.d_min()) +
                      ", " + std::to_string(params.d_max()) + "]");
  }
  return params.n() / (params.alpha() + i);
}

Scalar branch_number(const Params& params) {
  const Scalar& a = params.alpha();
  return params.n() / (a * params.alpha_plus_one());
}

Scalar branch_number_by_cylinders(const Params& params) {
  const long n = params.n();
  const Scalar& a = params.alpha();
  const Scalar a1 = params.alpha_plus_one();
  const Scalar interior(params.d_max() - params.d_min() - 1, params.precision());
  const Scalar left_image = n / a - params.d_max() - a;
  const Scalar right_image = a1 - (n / a1 - params.d_min());
  return interior + left_image + right_image;
}

Arrangement describe(const Params& params) {
  Arrangement out{params,
                  params.d_min(),
                  params.d_max(),
                  {},
                  {},
                  {},
                  branch_number(params),
                  branch_number_by_cylinders(params),
                  Scalar(params.precision()),
                  apply_t(params, params.alpha()),
                  apply_t(params, params.alpha_plus_one())};
  if (out.num_cylinders() < 2) {
    throw InvariantError("arrangement with fewer than two cylinders for N=" + std::to_string(params.n()));
  }
  const Scalar a1 = params.alpha_plus_one();
  out.sigma = params.n() / (a1 * a1);
  for (long i = out.d_min + 1; i <= out.d_max; ++i) out.discontinuities.emplace(i, discontinuity(params, i));
  for (long i = out.d_max; i >= out.d_min; --i) {
    Cylinder c{i,
               i == out.d_max ? params.alpha() : out.discontinuities.at(i + 1),
               i == out.d_min ? a1 : out.discontinuities.at(i),
               true};
    if (i == out.d_max) c.is_full = params.left_special();
    if (i == out.d_min) c.is_full = params.right_hits_alpha();
    out.cylinders.push_back(std::move(c));
    out.fixed_points.emplace(i, fixed_point(params.n(), i));
  }
  return out;
}

FullParams full_params(long m, long k) {
  if (m < 2) throw DomainError("full arrangement needs m >= 2");
  if (k < 1) throw DomainError("full arrangement needs k >= 1");
  return {m * k * (k + 1), k, (m - 1) * (k + 1)};
}

Scalar alpha_of_branch(long n, const Scalar& b) {
  if (compare(b, 1) <= 0) throw DomainError("branch number must exceed 1, got " + b.str());
  const Scalar alpha = (sqrt(4 * Scalar(n, b.precision()) / b + 1) - 1) / 2;
  Params checked(n, alpha);  // range check
  return alpha;
}

long d_of_branch(long n, const Scalar& b) {
  if (compare(b, 1) <= 0) throw DomainError("branch number must exceed 1, got " + b.str());
  const Scalar root = sqrt(4 * Scalar(n, b.precision()) / b + 1);
  // This is N/alpha - alpha written in b.
  const Scalar top = ((b - 1) * root + b + 1) / 2;
  if (top.is_exact()) return top.is_integer() ? top.floor() - 1 : top.floor();
  if (near_integer(top.approx())) return round(top.approx()).floor_long() - 1;
  return top.floor();
}

Surd alpha_star(long n, long d) {
  if (d < 2 || n <= d) throw DomainError("alpha_star needs n > d >= 2");
  return Surd(n) / (Surd(d) + fixed_point(n, d - 1));
}

Real fixed_point_margin(long d, const Real& x) {
  const Real x2 = x * x;
  const Real base = x2 + d * x + d;
  const Real upper = base * sqrt(4 * x + d * d) - x2 * sqrt(4 * x + (d - 1) * (d - 1)) -
                     (x2 - d * (d - 4) * x - d * (d - 2));
  return upper / (2 * base);
}

Real right_image_margin(long d, const Real& x) {
  const Real x2 = x * x;
  const Real upper = 2 * x2 * x + 4 * d * x2 + (2 * d * d * d - 5 * d * d + 3 * d) * x + 2 * d * d * (d - 1) -
                     d * x * (2 * x + 1) * sqrt(4 * x + (d - 1) * (d - 1));
  return upper / (2 * (x - d) * (x2 + d * x + d));
}

Real right_endpoint_slope(long d, const Real& x) {
  const Real x2 = x * x;
  const Real x3 = x2 * x;
  const Real x4 = x3 * x;
  const Real upper = 2 * x4 + (d - 1) * (d - 1) * x3 + 2 * d * (d - 1) * x2 + 2 * d * d * x +
                     ((d - 1) * x3 + 2 * d * x2) * sqrt(4 * x + (d - 1) * (d - 1));
  const Real lower = 2 * (x4 + 2 * d * x3 + d * (d + 2) * x2 + 2 * d * d * x + d * d);
  return upper / lower;
}

bool in_fstar_family(long n, long d) {
  if (n < 4 || d < 2 || n <= d) return false;
  const Surd alpha = alpha_star(n, d);
  if (alpha.sign() <= 0) return false;
  const Surd a1 = alpha + Surd(1);
  if (a1 * a1 > Surd(n)) return false;
  const Params params(n, Scalar(alpha, Precision{}));
  if (params.d_max() != d || params.d_min() != d - 1) return false;
  const Scalar left = apply_t(params, params.alpha());
  if (!(left.is_exact() && *left.exact() == fixed_point(n, d - 1))) return false;
  const Scalar right = apply_t(params, params.alpha_plus_one());
  return *right.exact() <= fixed_point(n, d);
}

FstarBound max_n_for_fstar(long d) {
  if (d < 2) throw DomainError("max_n_for_fstar needs d >= 2");
  const Precision prec(256);
  const Real estimate = (4 + 3 * sqrt(Real(2, prec))) * (d * d - d);
  FstarBound out{d, 0, estimate.floor_long(), 0, false};
  out.ceil_candidate = estimate.is_integer() ? out.floor_candidate : out.floor_candidate + 1;
  const Real at_ceil(out.ceil_candidate, prec);
  out.rounded_up = fixed_point_margin(d, at_ceil).sign() >= 0 && right_image_margin(d, at_ceil).sign() > 0;
  out.max_n = out.rounded_up ? out.ceil_candidate : out.floor_candidate;

  long brute = 0;
  for (long n = out.floor_candidate - 3; n <= out.ceil_candidate + 3; ++n) {
    if (in_fstar_family(n, d)) brute = n;
  }
  if (brute != out.max_n) {
    throw InvariantError("margin sign test gives " + std::to_string(out.max_n) + " but exact membership gives " +
                         std::to_string(brute) + " for d=" + std::to_string(d));
  }
  return out;
}

}  // namespace nexp
