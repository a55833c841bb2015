#pragma once

#include <random>
#include <string>

#include "nexp/map.hpp"
#include "nexp/scalar.hpp"
#include "nexp/surd.hpp"

namespace testing_support {

inline nexp::Scalar value(const std::string& text, nexp::Precision prec = nexp::Precision{}) {
  if (text.find("sqrt") != std::string::npos || text.find('/') != std::string::npos) {
    return nexp::Scalar(nexp::Surd::parse(text), prec);
  }
  return nexp::Scalar::parse_decimal(text, prec);
}

inline nexp::Params params(long n, const std::string& alpha, nexp::Precision prec = nexp::Precision{}) {
  return nexp::Params(n, value(alpha, prec));
}

inline nexp::Real real(const std::string& text, nexp::Precision prec = nexp::Precision{}) {
  return value(text, prec).approx();
}

// Uniform Real in [lo, hi] built from 64 random bits.
inline nexp::Real uniform(std::mt19937_64& rng, const nexp::Real& lo, const nexp::Real& hi) {
  const nexp::Precision prec = nexp::max(lo.precision(), hi.precision());
  nexp::Real u(static_cast<long>(rng() >> 11), prec);
  u *= nexp::Real::pow2(-53, prec);
  return lo + (hi - lo) * u;
}

// Random valid params with 2 <= N <= max_n and alpha uniform in (0, sqrt(N)-1].
inline nexp::Params random_params(std::mt19937_64& rng, long max_n, nexp::Precision prec = nexp::Precision{}) {
  std::uniform_int_distribution<long> pick(2, max_n);
  const long n = pick(rng);
  const nexp::Real top = nexp::sqrt(nexp::Real(n, prec)) - 1;
  nexp::Real alpha = uniform(rng, nexp::Real(0, prec), top);
  if (alpha.sign() <= 0) alpha = top;
  return nexp::Params(n, nexp::Scalar(alpha));
}

}  // namespace testing_support
