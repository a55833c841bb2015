#pragma once

#include <map>
#include <vector>

#include "nexp/map.hpp"
#include "nexp/scalar.hpp"
#include "nexp/surd.hpp"

namespace nexp {

/// The points of [alpha, alpha+1] sharing one digit. The leftmost cylinder
/// is closed on both ends, every other one is (left, right].
struct Cylinder {
  long digit;
  Scalar left;
  Scalar right;
  bool is_full;
};

struct Arrangement {
  Params params;
  long d_min;
  long d_max;
  /// Left to right, so digits run from d_max down to d_min.
  std::vector<Cylinder> cylinders;
  std::map<long, Surd> fixed_points;
  /// p_i = N/(alpha+i) for d_min < i <= d_max.
  std::map<long, Scalar> discontinuities;
  /// N/(alpha(alpha+1)).
  Scalar branch_number;
  /// Full interior cylinders plus the image lengths of the two outer ones.
  Scalar branch_sum;
  /// |T'(alpha+1)| = N/(alpha+1)^2.
  Scalar sigma;
  Scalar image_of_alpha;
  Scalar image_of_alpha_plus_one;

  long num_cylinders() const { return d_max - d_min + 1; }
  bool all_full() const;
  const Cylinder& cylinder(long digit) const;
};

/// f_i = (sqrt(4N + i^2) - i)/2, the fixed point of the branch with digit i.
Surd fixed_point(long n, long i);

/// p_i = N/(alpha + i). Requires d_min < i <= d_max.
Scalar discontinuity(const Params& params, long i);

Arrangement describe(const Params& params);

struct FullParams {
  long n;
  long alpha;
  long d;
};

/// N = m k (k+1), alpha = k: the arrangement with exactly m full cylinders.
FullParams full_params(long m, long k);

Scalar branch_number(const Params& params);
Scalar branch_number_by_cylinders(const Params& params);

/// Inverse of branch_number in alpha. Throws DomainError when the result is
/// outside (0, sqrt(N)-1].
Scalar alpha_of_branch(long n, const Scalar& b);

/// d(alpha) at alpha = alpha_of_branch(n, b). The closed floor formula
/// gives d(alpha)+1 when N/alpha - alpha is an integer; that case is
/// corrected here so the result is always the digit of alpha.
long d_of_branch(long n, const Scalar& b);

/// alpha with T(alpha) = f_{d-1}: N/(d + f_{d-1}).
Surd alpha_star(long n, long d);

/// f_d - T(alpha+1) at alpha = alpha_star(x, d), continued to real x.
Real fixed_point_margin(long d, const Real& x);
/// T(alpha+1) - alpha at alpha = alpha_star(x, d), continued to real x.
Real right_image_margin(long d, const Real& x);
/// N/(alpha+1)^2 at alpha = alpha_star(x, d), continued to real x.
Real right_endpoint_slope(long d, const Real& x);

/// N belongs to the two-cylinder family with T(alpha) = f_{d-1} and
/// T(alpha+1) <= f_d at alpha = alpha_star(N, d). Decided exactly.
bool in_fstar_family(long n, long d);

struct FstarBound {
  long d;
  long max_n;
  long floor_candidate;
  long ceil_candidate;
  bool rounded_up;
};

/// Largest N in the family for digit d. The margin sign at the two
/// candidates around (4+3 sqrt 2)(d^2-d) picks the answer, which is then
/// checked by exact membership over a window of +-3 around them.
FstarBound max_n_for_fstar(long d);

}  // namespace nexp
