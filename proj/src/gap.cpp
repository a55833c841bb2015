#include "nexp/gap.hpp"

#include <string>

#include "nexp/errors.hpp"

namespace nexp {

std::string_view to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::GaplessFull: return "GaplessFull";
    case VerdictKind::GaplessSlope: return "GaplessSlope";
    case VerdictKind::GaplessFivePlus: return "GaplessFivePlus";
    case VerdictKind::GaplessTwoCyl: return "GaplessTwoCyl";
    case VerdictKind::GaplessThreeFour: return "GaplessThreeFour";
    case VerdictKind::GapTwoCyl: return "GapTwoCyl";
    case VerdictKind::GapFourCyl: return "GapFourCyl";
    case VerdictKind::Undetermined: return "Undetermined";
  }
  return "Undetermined";
}

std::string_view to_string(GapKind kind) {
  switch (kind) {
    case GapKind::LeftOrbit: return "left-orbit";
    case GapKind::RightOrbit: return "right-orbit";
    case GapKind::TwoCycleHull: return "two-cycle-hull";
  }
  return "two-cycle-hull";
}

bool Verdict::gapless() const {
  switch (kind) {
    case VerdictKind::GaplessFull:
    case VerdictKind::GaplessSlope:
    case VerdictKind::GaplessFivePlus:
    case VerdictKind::GaplessTwoCyl:
    case VerdictKind::GaplessThreeFour: return true;
    default: return false;
  }
}

TwoCycle two_cycle_points(long n, long d) {
  if (d < 3 || n <= d) throw DomainError("two-cycle points need d >= 3 and n > d");
  // (d-1)q^2 + (d-1)(d-2)q - N(d-2) = 0 and (d-2)r^2 + (d-1)(d-2)r - N(d-1) = 0
  // share the discriminant (d-1)(d-2)((d-1)(d-2) + 4N).
  const mpz_class a(d - 1);
  const mpz_class b(d - 2);
  const mpz_class disc = a * b * (a * b + 4 * mpz_class(n));
  if (disc <= 0) throw InvariantError("two-cycle discriminant is not positive");
  TwoCycle out{Surd(-a * b, 1, 2 * a, disc), Surd(-a * b, 1, 2 * b, disc)};
  return out;
}

GapBracket gap_bracket(long n, long d) {
  const TwoCycle tc = two_cycle_points(n, d);
  return {Surd(n) / (Surd(d) + tc.q), Surd(n) / (Surd(d - 3) + tc.r) - Surd(1)};
}

std::optional<TwoCycleForm> two_cycle_form(long n) {
  if (n < 2) return std::nullopt;
  long k = 1;
  while (2 * k * (k + 1) < n + 1) ++k;
  if (k < 2) return std::nullopt;
  return TwoCycleForm{k, 2 * k * (k + 1) - n};
}

std::optional<FourCylGapParams> four_cyl_gap_params(long n) {
  const auto form = two_cycle_form(n);
  if (!form || form->i > 3) return std::nullopt;
  const long d = form->k + 2;
  const GapBracket bracket = gap_bracket(n, d);
  if (bracket.alpha_l > bracket.alpha_u) return std::nullopt;
  const TwoCycle tc = two_cycle_points(n, d);
  const Surd f1 = fixed_point(n, d - 1);
  const Surd f2 = fixed_point(n, d - 2);
  if (!(tc.q < f1 && f1 < f2 && f2 < tc.r)) {
    throw InvariantError("two-cycle points do not bracket the middle fixed points for N=" + std::to_string(n));
  }
  return FourCylGapParams{n, form->k, form->i, d, bracket.alpha_l, bracket.alpha_u, tc.q, tc.r};
}

Verdict classify(const Params& params) {
  const Arrangement arr = describe(params);
  const long n = params.n();
  const long d = arr.d_max;
  const long m = arr.num_cylinders();
  const Precision prec = params.precision();
  auto fixed = [&](long i) { return Scalar(fixed_point(n, i), prec); };

  if (arr.all_full()) return {VerdictKind::GaplessFull, {}, "full-arrangement", std::nullopt};
  if (m >= 5) return {VerdictKind::GaplessFivePlus, {}, "five-or-more-cylinders", std::nullopt};
  if (n >= 3 && compare(arr.sigma, 2) > 0) return {VerdictKind::GaplessSlope, {}, "slope-above-two", std::nullopt};

  const Scalar& left_image = arr.image_of_alpha;
  const Scalar& right_image = arr.image_of_alpha_plus_one;
  if (m == 2) {
    const bool left_ok = left_image >= fixed(d - 1);
    const bool right_ok = right_image <= fixed(d);
    if (left_ok && right_ok) {
      return {VerdictKind::GaplessTwoCyl, {}, "two-cylinder-fixed-point-bounds", std::nullopt};
    }
    Verdict out{VerdictKind::GapTwoCyl, {}, "two-cylinder-endpoint-orbit", std::nullopt};
    if (!left_ok) out.gaps.push_back({left_image, apply_t(params, left_image), GapKind::LeftOrbit});
    if (!right_ok) out.gaps.push_back({apply_t(params, right_image), right_image, GapKind::RightOrbit});
    return out;
  }

  if (left_image >= fixed(d - 1) || right_image <= fixed(arr.d_min + 1)) {
    return {VerdictKind::GaplessThreeFour, {}, "three-four-cylinder-bounds", std::nullopt};
  }

  if (m == 4) {
    const auto gp = four_cyl_gap_params(n);
    if (gp && gp->d == d) {
      const Scalar lo(gp->alpha_l, prec);
      const Scalar hi(gp->alpha_u, prec);
      if (lo <= params.alpha() && params.alpha() <= hi) {
        Verdict out{VerdictKind::GapFourCyl, {}, "four-cylinder-two-cycle", gp};
        out.gaps.push_back({Scalar(gp->q, prec), Scalar(gp->r, prec), GapKind::TwoCycleHull});
        return out;
      }
    }
  }
  return {VerdictKind::Undetermined, {}, "no-sufficient-condition", std::nullopt};
}

namespace {

void require_four_cylinders(const Params& params) {
  if (params.d_max() - params.d_min() != 3) {
    throw DomainError("needs a four-cylinder arrangement, got " +
                      std::to_string(params.d_max() - params.d_min() + 1) + " cylinders");
  }
}

}  // namespace

std::optional<long> escape_time(const Params& params, const Real& x, long max_iter) {
  require_four_cylinders(params);
  const long d = params.d_max();
  Stepper stepper(params, x.precision());
  Real cur = x.with_precision(stepper.precision());
  for (long k = 0; k <= max_iter; ++k) {
    const long dig = stepper.digit(cur);
    if (dig != d - 1 && dig != d - 2) return k;
    if (k < max_iter) stepper.step(cur);
  }
  return std::nullopt;
}

Real linearized_map(const Params& params, const Real& x) {
  require_four_cylinders(params);
  Stepper stepper(params, x.precision());
  const Precision prec = stepper.precision();
  const long d = params.d_max();
  const long dig = stepper.digit(x);
  const Real a = params.alpha().exact() ? params.alpha().exact()->to_real(prec) : params.alpha().approx();
  const Real a1 = a + 1;
  if (dig == d) {
    const Real p = params.n() / (a + d);
    return (a1 * p - a * a - x) / (p - a);
  }
  if (dig == d - 3) {
    const Real p = params.n() / (a + (d - 2));
    return (a1 * a1 - a * p - x) / (a1 - p);
  }
  Real y = x.with_precision(prec);
  stepper.step(y);
  return y;
}

std::vector<SurdInterval> gap_preimage_chain(long n, long d, long depth) {
  if (depth < 0) throw DomainError("depth must be non-negative");
  if (d < 3 || n <= d) throw DomainError("pre-image chain needs d >= 3 and n > d");
  std::vector<SurdInterval> chain;
  chain.reserve(static_cast<size_t>(depth) + 1);
  chain.push_back({fixed_point(n, d - 1), fixed_point(n, d - 2)});
  for (long j = 0; j < depth; ++j) {
    const SurdInterval& cur = chain.back();
    SurdInterval next{Surd(n) / (cur.hi + Surd(d - 1)), Surd(n) / (cur.lo + Surd(d - 2))};
    if (!(next.lo < cur.lo && cur.hi < next.hi)) {
      throw InvariantError("pre-image chain is not strictly nested at depth " + std::to_string(j + 1));
    }
    chain.push_back(std::move(next));
  }
  return chain;
}

namespace closed_form {

namespace {

mpz_class z(long v) { return mpz_class(v); }

}  // namespace

Surd alpha_u_minus3(long k) {
  const mpz_class K = z(k);
  const mpz_class s = 3 * K * K + 3 * K - 2;
  const mpz_class disc = s * s - 4;
  const mpz_class K2 = K * K;
  return Surd(-(2 * K2 * K2 + 3 * K2 + 3 * K - 6), 2 * K2 + 2 * K - 3, 4 * K2 * K + 12 * K2 - 6 * K - 6, disc);
}

Surd alpha_l_minus3(long k) {
  const mpz_class K = z(k);
  const mpz_class s = 3 * K * K + 3 * K - 2;
  const mpz_class disc = s * s - 4;
  const mpz_class n = 2 * K * K + 2 * K - 3;
  return Surd(-n * (K * K + 5 * K + 4), n, 4 * K * K * K - 18 * K - 8, disc);
}

Surd alpha_u_minus4(long k) {
  const mpz_class K = z(k);
  const mpz_class K2 = K * K;
  const mpz_class disc = 9 * K2 * K2 + 18 * K2 * K - 7 * K2 - 16 * K;
  return Surd(-(K2 * K + K2 + 2 * K + 4), K + 2, 2 * (K2 + 4 * K + 2), disc);
}

Surd alpha_l_minus4(long k) {
  const mpz_class K = z(k);
  const mpz_class K2 = K * K;
  const mpz_class disc = 9 * K2 * K2 + 18 * K2 * K - 7 * K2 - 16 * K;
  return Surd(-(K2 * K + 4 * K2 - K - 4), K - 1, 2 * (K2 - 2 * K - 1), disc);
}

Surd alpha_u_minus1(long k) {
  const mpz_class K = z(k);
  const mpz_class K2 = K * K;
  const mpz_class K4 = K2 * K2;
  const mpz_class disc = 36 * K4 * K4 + 144 * K4 * K2 * K + 164 * K4 * K2 - 12 * K4 * K - 95 * K4 - 2 * K2 * K +
                         21 * K2 - 4 * K;
  return Surd(-(2 * K4 + 5 * K2 + K - 2), 1, 2 * (2 * K2 * K + 6 * K2 - K - 1), disc);
}

}  // namespace closed_form

}  // namespace nexp
