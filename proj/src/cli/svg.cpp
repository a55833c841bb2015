#include "nexp/svg.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "nexp/arrangement.hpp"
#include "nexp/gap.hpp"

namespace nexp::svg {

namespace {

constexpr double kSize = 600.0;
constexpr double kMargin = 50.0;
constexpr int kBranchSamples = 256;

double px(double u) { return kMargin + std::clamp(u, 0.0, 1.0) * kSize; }
double py(double v) { return kMargin + (1.0 - std::clamp(v, 0.0, 1.0)) * kSize; }

// Offset of x from alpha, as a double in [0, 1].
double offset(const Real& x, const Real& alpha) { return (x - alpha).to_double(); }

// ".375" style label for an offset.
std::string mod_label(double u) {
  std::string s = number(u, 3);
  if (s.rfind("0.", 0) == 0) s.erase(0, 1);
  return s;
}

void open_svg(std::ostringstream& os, double height) {
  os << R"(<svg xmlns="http://www.w3.org/2000/svg" width=")" << number(kSize + 2 * kMargin, 0) << R"(" height=")"
     << number(height, 0) << R"(" viewBox="0 0 )" << number(kSize + 2 * kMargin, 0) << ' ' << number(height, 0)
     << R"(" font-family="sans-serif" font-size="12">)" << '\n'
     << R"(<rect width="100%" height="100%" fill="white"/>)" << '\n';
}

}  // namespace

std::string number(double v, int digits) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, digits);
  std::string s(buf, res.ptr);
  if (s.find_first_not_of("-0.") == std::string::npos) s = digits > 0 ? "0." + std::string(digits, '0') : "0";
  return s;
}

std::string arrangement(const Params& params, const std::vector<std::pair<Real, Real>>& cobweb) {
  const Arrangement arr = describe(params);
  const Verdict verdict = classify(params);
  const Precision prec = params.precision();
  const Real alpha = params.alpha().exact() ? params.alpha().exact()->to_real(prec) : params.alpha().approx();
  const long n = params.n();

  std::ostringstream os;
  open_svg(os, kSize + 2 * kMargin);
  os << "<text x=\"" << number(kMargin, 0) << "\" y=\"30\">N=" << n << ", alpha=" << params.alpha().decimal(6)
     << ", values mod alpha</text>\n";

  for (const auto& g : verdict.gaps) {
    const double lo = offset(g.lo.approx(), alpha);
    const double hi = offset(g.hi.approx(), alpha);
    os << "<rect class=\"gap\" x=\"" << number(px(lo)) << "\" y=\"" << number(py(1)) << "\" width=\""
       << number(px(hi) - px(lo)) << "\" height=\"" << number(kSize) << "\" fill=\"#f4c7c3\"/>\n";
    os << "<rect class=\"gap\" x=\"" << number(px(0)) << "\" y=\"" << number(py(hi)) << "\" width=\"" << number(kSize)
       << "\" height=\"" << number(py(lo) - py(hi)) << "\" fill=\"#f4c7c3\" fill-opacity=\"0.5\"/>\n";
  }

  os << "<rect x=\"" << number(px(0)) << "\" y=\"" << number(py(1)) << "\" width=\"" << number(kSize) << "\" height=\""
     << number(kSize) << "\" fill=\"none\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << number(px(0)) << "\" y1=\"" << number(py(0)) << "\" x2=\"" << number(px(1)) << "\" y2=\""
     << number(py(1)) << "\" stroke=\"gray\" stroke-dasharray=\"4 4\"/>\n";
  os << "<text x=\"" << number(px(0)) << "\" y=\"" << number(py(0) + 18) << "\">alpha</text>\n";
  os << "<text x=\"" << number(px(1) - 40) << "\" y=\"" << number(py(0) + 18) << "\">alpha+1</text>\n";

  for (const auto& [i, p] : arr.discontinuities) {
    const double u = offset(p.approx(), alpha);
    os << "<line class=\"divider\" x1=\"" << number(px(u)) << "\" y1=\"" << number(py(0)) << "\" x2=\"" << number(px(u))
       << "\" y2=\"" << number(py(1)) << "\" stroke=\"gray\"/>\n";
    os << "<text x=\"" << number(px(u) - 12) << "\" y=\"" << number(py(0) + 34) << "\">" << mod_label(u) << "</text>\n";
  }

  for (const Cylinder& c : arr.cylinders) {
    const Real left = c.left.approx().with_precision(prec);
    const Real width = c.right.approx().with_precision(prec) - left;
    os << "<polyline class=\"branch\" data-digit=\"" << c.digit << "\" fill=\"none\" stroke=\"black\" points=\"";
    for (int s = 0; s <= kBranchSamples; ++s) {
      const Real x = left + width * s / kBranchSamples;
      const Real y = n / x - c.digit;
      if (s) os << ' ';
      os << number(px(offset(x, alpha))) << ',' << number(py(offset(y, alpha)));
    }
    os << "\"/>\n";
  }

  const Real hi = alpha + 1;
  for (const auto& [i, f] : arr.fixed_points) {
    const Real x = f.to_real(prec);
    if (x < alpha || x > hi) continue;
    const double u = offset(x, alpha);
    os << "<circle class=\"fixed-point\" data-index=\"" << i << "\" cx=\"" << number(px(u)) << "\" cy=\""
       << number(py(u)) << "\" r=\"3\" fill=\"blue\"/>\n";
  }

  if (!cobweb.empty()) {
    os << "<polyline class=\"cobweb\" fill=\"none\" stroke=\"red\" points=\"";
    for (size_t k = 0; k < cobweb.size(); ++k) {
      if (k) os << ' ';
      os << number(px(offset(cobweb[k].first, alpha))) << ',' << number(py(offset(cobweb[k].second, alpha)));
    }
    os << "\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string scan(long n, const std::vector<ScanRow>& rows) {
  const double band = rows.empty() ? kSize : kSize / static_cast<double>(rows.size());
  std::ostringstream os;
  open_svg(os, kSize + 2 * kMargin);
  os << "<text x=\"" << number(kMargin, 0) << "\" y=\"30\">N=" << n << ", " << rows.size()
     << " rows, values mod alpha</text>\n";
  const double thickness = std::max(band, 0.5);
  for (size_t k = 0; k < rows.size(); ++k) {
    const ScanRow& row = rows[k];
    const Real& alpha = row.alpha.approx();
    const double y = kMargin + kSize - (static_cast<double>(k) + 0.5) * band;
    double start = 0.0;
    auto segment = [&](double from, double to, const char* cls, const char* color, double width) {
      os << "<line class=\"" << cls << "\" x1=\"" << number(px(from)) << "\" y1=\"" << number(y) << "\" x2=\""
         << number(px(to)) << "\" y2=\"" << number(y) << "\" stroke=\"" << color << "\" stroke-width=\""
         << number(width) << "\"/>\n";
    };
    for (const EmpiricalGap& g : row.empirical) {
      segment(start, offset(g.lo, alpha), "occupied", "black", thickness);
      start = offset(g.hi, alpha);
    }
    segment(start, 1.0, "occupied", "black", thickness);
    for (const auto& g : row.verdict.gaps) {
      segment(offset(g.lo.approx(), alpha), offset(g.hi.approx(), alpha), "analytic-gap", "red",
              thickness * 0.4);
    }
  }
  const long labels = std::min<long>(static_cast<long>(rows.size()), 6);
  for (long j = 0; j < labels; ++j) {
    const size_t k = labels == 1 ? 0 : static_cast<size_t>(j * (static_cast<long>(rows.size()) - 1) / (labels - 1));
    const double y = kMargin + kSize - (static_cast<double>(k) + 0.5) * band;
    os << "<text x=\"4\" y=\"" << number(y + 4) << "\">" << rows[k].alpha.decimal(3) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace nexp::svg
