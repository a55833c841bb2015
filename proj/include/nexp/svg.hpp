#pragma once

#include <string>
#include <utility>
#include <vector>

#include "nexp/map.hpp"
#include "nexp/real.hpp"
#include "nexp/simulate.hpp"

namespace nexp::svg {

/// Graph of T over the unit square [alpha, alpha+1]^2, with cylinder
/// dividers, fixed points, analytic gaps and an optional cobweb path.
/// Tick labels show values mod alpha.
std::string arrangement(const Params& params, const std::vector<std::pair<Real, Real>>& cobweb = {});

/// One horizontal band per scan row (alpha grows upward); the occupied part
/// of each interval is drawn and empirical gaps are left blank. Analytic
/// gaps are outlined in red.
std::string scan(long n, const std::vector<ScanRow>& rows);

/// Fixed notation with `digits` fractional digits, independent of locale.
std::string number(double v, int digits = 3);

}  // namespace nexp::svg
