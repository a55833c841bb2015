#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nexp/arrangement.hpp"
#include "nexp/map.hpp"
#include "nexp/scalar.hpp"
#include "nexp/surd.hpp"

namespace nexp {

enum class VerdictKind {
  GaplessFull,
  GaplessSlope,
  GaplessFivePlus,
  GaplessTwoCyl,
  GaplessThreeFour,
  GapTwoCyl,
  GapFourCyl,
  Undetermined,
};

std::string_view to_string(VerdictKind kind);

enum class GapKind { LeftOrbit, RightOrbit, TwoCycleHull };

std::string_view to_string(GapKind kind);

struct GapInterval {
  Scalar lo;
  Scalar hi;
  GapKind kind;
};

/// The four-cylinder regime N = 2k^2 + 2k - i with a non-empty alpha
/// bracket [alpha_l, alpha_u] on which (q, r) is a gap.
struct FourCylGapParams {
  long n;
  long k;
  long i;
  long d;
  Surd alpha_l;
  Surd alpha_u;
  Surd q;
  Surd r;
};

struct Verdict {
  VerdictKind kind;
  std::vector<GapInterval> gaps;
  /// Which sufficient condition decided the verdict.
  std::string citation;
  std::optional<FourCylGapParams> details;

  bool gapless() const;
  bool gapped() const { return kind == VerdictKind::GapTwoCyl || kind == VerdictKind::GapFourCyl; }
};

struct TwoCycle {
  Surd q;
  Surd r;
};

/// q = [d-1, d-2, d-1, ...] and r = [d-2, d-1, d-2, ...], the period-two
/// orbit through the two middle cylinders. Requires d >= 3 and n > d.
TwoCycle two_cycle_points(long n, long d);

struct GapBracket {
  Surd alpha_l;
  Surd alpha_u;
};

/// alpha_l = N/(d+q) solves T(alpha) = q; alpha_u = N/(d-3+r) - 1 solves
/// T(alpha+1) = r. The bracket may be empty (alpha_l > alpha_u).
GapBracket gap_bracket(long n, long d);

/// (k, i) with n = 2k^2 + 2k - i, k > 1 and 1 <= i <= 4k, if any.
struct TwoCycleForm {
  long k;
  long i;
};
std::optional<TwoCycleForm> two_cycle_form(long n);

std::optional<FourCylGapParams> four_cyl_gap_params(long n);

Verdict classify(const Params& params);

/// Smallest n >= 0 with T^n(x) outside the two middle cylinders of a
/// four-cylinder arrangement, or nullopt after max_iter steps. The orbit
/// runs at the precision of x (or of alpha, if higher).
std::optional<long> escape_time(const Params& params, const Real& x, long max_iter);

/// T on the two middle cylinders, straight lines on the outer two.
Real linearized_map(const Params& params, const Real& x);

struct SurdInterval {
  Surd lo;
  Surd hi;
};

/// Nested pre-images of (f_{d-1}, f_{d-2}) under the two middle branches.
std::vector<SurdInterval> gap_preimage_chain(long n, long d, long depth);

/// Per-family closed forms for the gap bracket, kept as independent
/// cross-checks of gap_bracket.
namespace closed_form {
Surd alpha_u_minus3(long k);  // N = 2k^2 + 2k - 3
Surd alpha_l_minus3(long k);
Surd alpha_u_minus4(long k);  // N = 2k^2 + 2k - 4
Surd alpha_l_minus4(long k);
/// Root of T^3(alpha+1) = T(alpha+1) for N = 2k^2 + 2k - 1.
Surd alpha_u_minus1(long k);
}  // namespace closed_form

}  // namespace nexp
