#include <charconv>
#include <regex>
#include <string>

#include "nexp/arrangement.hpp"
#include "nexp/cli.hpp"
#include "nexp/errors.hpp"
#include "nexp/gap.hpp"
#include "nexp/map.hpp"

namespace nexp::cli {

namespace {

long parse_index(std::string_view expr, std::string_view text) {
  long v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw DomainError("bad index in '" + std::string(expr) + "'");
  }
  return v;
}

bool starts_with(std::string_view s, std::string_view prefix) { return s.substr(0, prefix.size()) == prefix; }

}  // namespace

Scalar resolve_value(long n, std::string_view expr, Precision prec) {
  if (expr.empty()) throw DomainError("empty value expression");
  if (expr == "fmax") {
    if (n < 2) throw DomainError("N must be at least 2");
    return Scalar(Surd::sqrt_of(n) - Surd(1), prec);
  }
  if (starts_with(expr, "fix:")) return Scalar(fixed_point(n, parse_index(expr, expr.substr(4))), prec);
  if (starts_with(expr, "astar:")) return Scalar(alpha_star(n, parse_index(expr, expr.substr(6))), prec);
  if (expr == "gap:lower" || expr == "gap:upper") {
    const auto gp = four_cyl_gap_params(n);
    if (!gp) throw DomainError("gap bracket undefined for N=" + std::to_string(n));
    return Scalar(expr == "gap:lower" ? gp->alpha_l : gp->alpha_u, prec);
  }
  if (expr.find("sqrt") != std::string_view::npos || expr.find('/') != std::string_view::npos) {
    return Scalar(Surd::parse(expr), prec);
  }
  static const std::regex decimal(R"([+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?)");
  if (!std::regex_match(expr.begin(), expr.end(), decimal)) {
    throw DomainError("cannot parse value '" + std::string(expr) + "'");
  }
  return Scalar::parse_decimal(expr, prec);
}

Scalar resolve_alpha(long n, std::string_view expr, Precision prec) {
  Scalar alpha = resolve_value(n, expr, prec);
  Params(n, alpha);
  return alpha;
}

}  // namespace nexp::cli
