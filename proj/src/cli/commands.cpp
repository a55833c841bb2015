#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>

#include "nexp/arrangement.hpp"
#include "nexp/cli.hpp"
#include "nexp/errors.hpp"
#include "nexp/gap.hpp"
#include "nexp/map.hpp"
#include "nexp/simulate.hpp"
#include "nexp/svg.hpp"

namespace nexp::cli {

using nlohmann::json;

namespace {

constexpr int kTable3DefaultBits = 512;
constexpr long kTable3N = 5097;
constexpr std::string_view kTable3Alpha = "49.98019737";
const std::vector<long> kTable2Rows = {9, 21, 37, 57, 8, 20, 36, 56};

struct Globals {
  std::optional<int> precision;
  std::uint64_t seed = 0;
  std::optional<std::string> format;
  std::string out;
};

Precision working_precision(const Globals& g, int fallback) {
  if (g.precision) return Precision(*g.precision);
  if (const char* env = std::getenv("NEXP_PRECISION"); env && *env) {
    try {
      size_t used = 0;
      const int bits = std::stoi(env, &used);
      if (used == std::string_view(env).size()) return Precision(bits);
    } catch (const std::logic_error&) {
    }
    throw DomainError(std::string("NEXP_PRECISION is not an integer: '") + env + "'");
  }
  return Precision(fallback);
}

OutputDoc make_doc(std::string command, const Globals& g, Precision prec, json config, Format fallback) {
  OutputDoc doc;
  doc.command = std::move(command);
  doc.format = g.format ? parse_format(*g.format) : fallback;
  doc.metadata.precision = prec.bits();
  doc.metadata.seed = g.seed;
  doc.metadata.config = std::move(config);
  return doc;
}

std::string cell(const Scalar& v) { return v.decimal(); }
std::string cell(long v) { return std::to_string(v); }
std::string cell(bool v) { return v ? "true" : "false"; }

json gap_json(const GapInterval& g) {
  json out{{"kind", to_string(g.kind)}, {"lo", dual(g.lo)}, {"hi", dual(g.hi)}};
  if (g.lo.exact() && g.hi.exact()) out["interval"] = {g.lo.exact()->str(), g.hi.exact()->str()};
  return out;
}

std::string gap_list(const std::vector<GapInterval>& gaps, int digits) {
  std::string s;
  for (const auto& g : gaps) {
    if (!s.empty()) s += ';';
    s += g.lo.decimal(digits) + ':' + g.hi.decimal(digits);
  }
  return s;
}

std::string gap_list(const std::vector<EmpiricalGap>& gaps, int digits) {
  std::string s;
  for (const auto& g : gaps) {
    if (!s.empty()) s += ';';
    s += g.lo.str(digits) + ':' + g.hi.str(digits);
  }
  return s;
}

json sim_config_json(const SimConfig& c) {
  return {{"samples", c.samples}, {"burn_in", c.burn_in},       {"iters", c.iters},
          {"bins", c.bins},       {"min_gap_bins", c.min_gap_bins}, {"seed", c.seed}};
}

json verdict_json(const Verdict& v, Precision prec) {
  json gaps = json::array();
  for (const auto& g : v.gaps) gaps.push_back(gap_json(g));
  json out{{"verdict", to_string(v.kind)},
           {"citation", v.citation},
           {"gapless", v.gapless()},
           {"gapped", v.gapped()},
           {"gaps", gaps}};
  if (v.details) {
    const FourCylGapParams& d = *v.details;
    out["bracket"] = {{"k", d.k},
                      {"i", d.i},
                      {"d", d.d},
                      {"alpha_l", dual(Scalar(d.alpha_l, prec))},
                      {"alpha_u", dual(Scalar(d.alpha_u, prec))},
                      {"q", dual(Scalar(d.q, prec))},
                      {"r", dual(Scalar(d.r, prec))}};
  }
  return out;
}

OutputDoc cmd_describe(const Globals& g, long n, const std::string& alpha_expr) {
  const Precision prec = working_precision(g, kDefaultPrecisionBits);
  const Params params(n, resolve_alpha(n, alpha_expr, prec));
  const Arrangement arr = describe(params);
  OutputDoc doc = make_doc("describe", g, prec, {{"n", n}, {"alpha", alpha_expr}}, Format::Json);

  json cylinders = json::array();
  Table table{{"digit", "left", "right", "is_full", "fixed_point"}, {}};
  for (const Cylinder& c : arr.cylinders) {
    cylinders.push_back({{"digit", c.digit}, {"left", dual(c.left)}, {"right", dual(c.right)}, {"is_full", c.is_full}});
    table.rows.push_back({cell(c.digit), cell(c.left), cell(c.right), cell(c.is_full),
                          cell(Scalar(arr.fixed_points.at(c.digit), prec))});
  }
  json fixed = json::array();
  for (const auto& [i, f] : arr.fixed_points) fixed.push_back({{"index", i}, {"value", dual(Scalar(f, prec))}});
  json disc = json::array();
  for (const auto& [i, p] : arr.discontinuities) disc.push_back({{"index", i}, {"value", dual(p)}});

  doc.payload = {{"n", n},
                 {"alpha", dual(params.alpha())},
                 {"d_min", arr.d_min},
                 {"d_max", arr.d_max},
                 {"num_cylinders", arr.num_cylinders()},
                 {"all_full", arr.all_full()},
                 {"cylinders", cylinders},
                 {"fixed_points", fixed},
                 {"discontinuities", disc},
                 {"branch_number", dual(arr.branch_number)},
                 {"branch_sum", dual(arr.branch_sum)},
                 {"sigma", dual(arr.sigma)},
                 {"image_of_alpha", dual(arr.image_of_alpha)},
                 {"image_of_alpha_plus_one", dual(arr.image_of_alpha_plus_one)},
                 {"left_special", params.left_special()},
                 {"right_hits_alpha", params.right_hits_alpha()}};
  doc.table = std::move(table);
  return doc;
}

OutputDoc cmd_classify(const Globals& g, long n, const std::string& alpha_expr) {
  const Precision prec = working_precision(g, kDefaultPrecisionBits);
  const Params params(n, resolve_alpha(n, alpha_expr, prec));
  const Verdict v = classify(params);
  OutputDoc doc = make_doc("classify", g, prec, {{"n", n}, {"alpha", alpha_expr}}, Format::Json);
  doc.payload = verdict_json(v, prec);
  doc.payload["n"] = n;
  doc.payload["alpha"] = dual(params.alpha());
  Table table{{"n", "alpha", "verdict", "citation", "gaps"}, {}};
  table.rows.push_back({cell(n), cell(params.alpha()), std::string(to_string(v.kind)), v.citation, gap_list(v.gaps, -1)});
  doc.table = std::move(table);
  return doc;
}

OutputDoc cmd_orbit(const Globals& g, long n, const std::string& alpha_expr, const std::string& x_expr, long steps) {
  const Precision prec = working_precision(g, kDefaultPrecisionBits);
  const Params params(n, resolve_alpha(n, alpha_expr, prec));
  const Scalar x = resolve_value(n, x_expr, prec);
  const std::vector<Real> pts = orbit(params, x.approx(), steps);
  OutputDoc doc = make_doc("orbit", g, prec, {{"n", n}, {"alpha", alpha_expr}, {"x", x_expr}, {"steps", steps}},
                           Format::Json);
  json points = json::array();
  Table table{{"k", "x", "digit"}, {}};
  for (size_t k = 0; k < pts.size(); ++k) {
    const long dig = digit(params, pts[k]);
    points.push_back({{"k", k}, {"x", pts[k].str()}, {"digit", dig}});
    table.rows.push_back({std::to_string(k), pts[k].str(), cell(dig)});
  }
  doc.payload = {{"n", n}, {"alpha", dual(params.alpha())}, {"points", points}};
  doc.table = std::move(table);
  return doc;
}

OutputDoc cmd_expand(const Globals& g, long n, const std::string& alpha_expr, const std::string& x_expr, long count) {
  const Precision prec = working_precision(g, kDefaultPrecisionBits);
  const Params params(n, resolve_alpha(n, alpha_expr, prec));
  const Scalar x = resolve_value(n, x_expr, prec);
  const ExpansionDigits e = expand(params, x.approx(), count);
  OutputDoc doc = make_doc("expand", g, prec, {{"n", n}, {"alpha", alpha_expr}, {"x", x_expr}, {"count", count}},
                           Format::Json);
  doc.payload = {{"n", n}, {"alpha", dual(params.alpha())}, {"x", dual(x)}, {"digits", e.digits},
                 {"remainder", dual(e.remainder)}};
  Table table{{"k", "digit"}, {}};
  for (size_t k = 0; k < e.digits.size(); ++k) table.rows.push_back({std::to_string(k + 1), cell(e.digits[k])});
  doc.table = std::move(table);
  return doc;
}

OutputDoc cmd_eval(const Globals& g, long n, const std::vector<long>& digits, const std::string& tail_expr) {
  const Precision prec = working_precision(g, kDefaultPrecisionBits);
  const Scalar tail = resolve_value(n, tail_expr, prec);
  const Real v = evaluate(n, digits, tail.approx());
  OutputDoc doc = make_doc("eval", g, prec, {{"n", n}, {"digits", digits}, {"tail", tail_expr}}, Format::Json);
  doc.payload = {{"n", n}, {"digits", digits}, {"tail", dual(tail)}, {"value", dual(v)}};
  doc.table = Table{{"value"}, {{v.str()}}};
  return doc;
}

OutputDoc cmd_simulate(const Globals& g, long n, const std::string& alpha_expr, SimConfig cfg) {
  const Precision prec = working_precision(g, kDefaultPrecisionBits);
  const Params params(n, resolve_alpha(n, alpha_expr, prec));
  cfg.seed = g.seed;
  cfg.precision = prec;
  const SimResult r = simulate(params, cfg);
  json config = sim_config_json(cfg);
  config["n"] = n;
  config["alpha"] = alpha_expr;
  OutputDoc doc = make_doc("simulate", g, prec, config, Format::Json);
  json gaps = json::array();
  for (const auto& e : r.gaps) {
    gaps.push_back({{"lo", e.lo.str()}, {"hi", e.hi.str()}, {"first_bin", e.first_bin}, {"width_bins", e.width_bins}});
  }
  doc.payload = {{"n", n},
                 {"alpha", dual(params.alpha())},
                 {"total", r.histogram.total},
                 {"rejected", r.histogram.rejected},
                 {"counts", r.histogram.counts},
                 {"empirical_gaps", gaps},
                 {"analytic", verdict_json(classify(params), prec)}};
  Table table{{"bin", "lo", "count"}, {}};
  const Real alpha = params.alpha().approx();
  for (long b = 0; b < r.histogram.bins(); ++b) {
    table.rows.push_back({cell(b), (alpha + Real(b, prec) / cfg.bins).str(8),
                          std::to_string(r.histogram.counts[static_cast<size_t>(b)])});
  }
  doc.table = std::move(table);
  return doc;
}

OutputDoc cmd_scan(const Globals& g, long n, const std::string& lo_expr, const std::string& hi_expr, long rows,
                   SimConfig cfg) {
  const Precision prec = working_precision(g, kDefaultPrecisionBits);
  cfg.seed = g.seed;
  cfg.precision = prec;
  const std::vector<ScanRow> out =
      scan(n, resolve_alpha(n, lo_expr, prec), resolve_alpha(n, hi_expr, prec), rows, cfg);
  json config = sim_config_json(cfg);
  config["n"] = n;
  config["alpha_lo"] = lo_expr;
  config["alpha_hi"] = hi_expr;
  config["rows"] = rows;
  OutputDoc doc = make_doc("scan", g, prec, config, Format::Csv);
  json records = json::array();
  Table table{{"index", "alpha", "verdict", "analytic_gaps", "empirical_gaps"}, {}};
  for (const ScanRow& row : out) {
    json analytic = json::array();
    for (const auto& a : row.verdict.gaps) analytic.push_back(gap_json(a));
    json empirical = json::array();
    for (const auto& e : row.empirical) empirical.push_back({{"lo", e.lo.str(6)}, {"hi", e.hi.str(6)}});
    records.push_back({{"index", row.index},
                       {"alpha", dual(row.alpha)},
                       {"verdict", to_string(row.verdict.kind)},
                       {"analytic_gaps", analytic},
                       {"empirical_gaps", empirical}});
    table.rows.push_back({cell(row.index), row.alpha.decimal(10), std::string(to_string(row.verdict.kind)),
                          gap_list(row.verdict.gaps, 6), gap_list(row.empirical, 6)});
  }
  doc.payload = {{"n", n}, {"rows", records}};
  doc.table = std::move(table);
  doc.svg = svg::scan(n, out);
  return doc;
}

OutputDoc cmd_table2(const Globals& g) {
  const Precision prec = working_precision(g, kDefaultPrecisionBits);
  OutputDoc doc = make_doc("table2", g, prec, {{"n", kTable2Rows}}, Format::Csv);
  json rows = json::array();
  Table table{{"n", "k", "i", "alpha_l", "alpha_u", "gap", "alpha_l_exact", "alpha_u_exact"}, {}};
  for (long n : kTable2Rows) {
    const auto form = two_cycle_form(n);
    if (!form) throw InvariantError("no two-cycle form for N=" + std::to_string(n));
    const GapBracket b = gap_bracket(n, form->k + 2);
    const Scalar lo(b.alpha_l, prec);
    const Scalar hi(b.alpha_u, prec);
    const bool gap = b.alpha_l <= b.alpha_u;
    rows.push_back({{"n", n}, {"k", form->k}, {"i", form->i}, {"alpha_l", dual(lo)}, {"alpha_u", dual(hi)}, {"gap", gap}});
    table.rows.push_back({cell(n), cell(form->k), cell(form->i), lo.decimal(), hi.decimal(), cell(gap),
                          b.alpha_l.str(), b.alpha_u.str()});
  }
  doc.payload = {{"rows", rows}};
  doc.table = std::move(table);
  return doc;
}

OutputDoc cmd_table3(const Globals& g, long max_iter) {
  const Precision prec = working_precision(g, kTable3DefaultBits);
  if (prec.bits() < 128) throw DomainError("table3 needs at least 128 bits of precision");
  const Params params(kTable3N, resolve_alpha(kTable3N, kTable3Alpha, prec));
  OutputDoc doc = make_doc("table3", g, prec,
                           {{"n", kTable3N}, {"alpha", kTable3Alpha}, {"max_iter", max_iter}}, Format::Csv);
  json rows = json::array();
  Table table{{"x", "escape_time"}, {}};
  for (int t = 0; t < 10; ++t) {
    const std::string x_text = "50." + std::to_string(t);
    const Scalar x = Scalar::parse_decimal(x_text, prec);
    const auto steps = escape_time(params, x.exact()->to_real(prec), max_iter);
    rows.push_back({{"x", x_text}, {"escape_time", steps ? json(*steps) : json(nullptr)}});
    table.rows.push_back({x_text, steps ? cell(*steps) : "none"});
  }
  doc.payload = {{"n", kTable3N}, {"alpha", kTable3Alpha}, {"rows", rows}};
  doc.table = std::move(table);
  return doc;
}

OutputDoc cmd_render_arrangement(const Globals& g, long n, const std::string& alpha_expr,
                                 const std::optional<std::string>& from, long steps, const char* command) {
  const Precision prec = working_precision(g, kDefaultPrecisionBits);
  const Params params(n, resolve_alpha(n, alpha_expr, prec));
  json config{{"n", n}, {"alpha", alpha_expr}};
  std::vector<std::pair<Real, Real>> web;
  if (from) {
    config["cobweb_from"] = *from;
    config["steps"] = steps;
    web = cobweb(params, resolve_value(n, *from, prec).approx(), steps);
  }
  OutputDoc doc = make_doc(command, g, prec, config, Format::Svg);
  json points = json::array();
  for (const auto& [x, y] : web) points.push_back({x.str(), y.str()});
  doc.payload = {{"n", n}, {"alpha", dual(params.alpha())}, {"cobweb", points}};
  doc.svg = svg::arrangement(params, web);
  return doc;
}

void add_sim_options(CLI::App* cmd, SimConfig& cfg) {
  cmd->add_option("--samples", cfg.samples, "Starting points")->capture_default_str();
  cmd->add_option("--burn-in", cfg.burn_in,
                  "Iterates dropped per orbit; raise it (thousands) near gap regimes, where escape is slow")
      ->capture_default_str();
  cmd->add_option("--iters", cfg.iters, "Iterates recorded per orbit after burn-in")->capture_default_str();
  cmd->add_option("--bins", cfg.bins, "Histogram bins over [alpha, alpha+1]")->capture_default_str();
  cmd->add_option("--min-gap-bins", cfg.min_gap_bins, "Shortest empty run reported as a gap")->capture_default_str();
  cmd->add_option("--threads", cfg.threads, "Worker threads, 0 for one per core")->capture_default_str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"N-expansion maps T(x) = N/x - d(x) on [alpha, alpha+1]: arrangements, gaps, simulation", "nexp"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(kToolVersion));

  Globals g;
  app.add_option("--precision", g.precision, "Working precision in bits (default 128, or NEXP_PRECISION)");
  app.add_option("--seed", g.seed, "Simulation seed")->capture_default_str();
  app.add_option("--format", g.format, "json, csv or svg");
  app.add_option("--out", g.out, "Write to this file instead of stdout");

  std::function<OutputDoc()> action;
  long n = 0;
  std::string alpha;
  std::string x;
  long steps = 10;
  long count = 10;
  std::vector<long> digits;
  std::string tail;
  SimConfig cfg;
  std::string lo;
  std::string hi;
  long rows = 0;
  long max_iter = 1000000;
  std::optional<std::string> cobweb_from;

  const char* alpha_help = "alpha: decimal, p/q, (p+q*sqrt(D))/r, fmax, fix:i, astar:d, gap:lower, gap:upper";

  auto* describe_cmd = app.add_subcommand("describe", "Cylinders, fixed points and dividers of an arrangement");
  describe_cmd->add_option("n", n, "Numerator N")->required();
  describe_cmd->add_option("alpha", alpha, alpha_help)->required();
  describe_cmd->callback([&] { action = [&] { return cmd_describe(g, n, alpha); }; });

  auto* classify_cmd = app.add_subcommand("classify", "Decide whether the arrangement has a gap");
  classify_cmd->add_option("n", n, "Numerator N")->required();
  classify_cmd->add_option("alpha", alpha, alpha_help)->required();
  classify_cmd->callback([&] { action = [&] { return cmd_classify(g, n, alpha); }; });

  auto* orbit_cmd = app.add_subcommand("orbit", "Orbit x, T(x), ..., T^steps(x)");
  orbit_cmd->add_option("n", n, "Numerator N")->required();
  orbit_cmd->add_option("alpha", alpha, alpha_help)->required();
  orbit_cmd->add_option("x", x, "Starting point (same forms as alpha)")->required();
  orbit_cmd->add_option("--steps", steps)->capture_default_str();
  orbit_cmd->callback([&] { action = [&] { return cmd_orbit(g, n, alpha, x, steps); }; });

  auto* expand_cmd = app.add_subcommand("expand", "First digits of the N-expansion of x");
  expand_cmd->add_option("n", n, "Numerator N")->required();
  expand_cmd->add_option("alpha", alpha, alpha_help)->required();
  expand_cmd->add_option("x", x, "Point to expand (same forms as alpha)")->required();
  expand_cmd->add_option("--count", count)->capture_default_str();
  expand_cmd->callback([&] { action = [&] { return cmd_expand(g, n, alpha, x, count); }; });

  auto* eval_cmd = app.add_subcommand("eval", "Value of N/(d1 + N/(d2 + ... + N/(dk + tail)))");
  eval_cmd->add_option("n", n, "Numerator N")->required();
  eval_cmd->add_option("digits", digits, "Digits d1 ... dk")->required();
  eval_cmd->add_option("--tail", tail, "Tail value (same forms as alpha)")->required();
  eval_cmd->callback([&] { action = [&] { return cmd_eval(g, n, digits, tail); }; });

  auto* simulate_cmd = app.add_subcommand("simulate", "Orbit histogram and empirical gaps");
  simulate_cmd->add_option("n", n, "Numerator N")->required();
  simulate_cmd->add_option("alpha", alpha, alpha_help)->required();
  add_sim_options(simulate_cmd, cfg);
  simulate_cmd->callback([&] { action = [&] { return cmd_simulate(g, n, alpha, cfg); }; });

  auto* scan_cmd = app.add_subcommand("scan", "Classify and simulate on a uniform alpha grid");
  scan_cmd->add_option("n", n, "Numerator N")->required();
  scan_cmd->add_option("alpha_lo", lo, "Lowest alpha")->required();
  scan_cmd->add_option("alpha_hi", hi, "Highest alpha")->required();
  scan_cmd->add_option("rows", rows, "Grid size, endpoints included")->required();
  add_sim_options(scan_cmd, cfg);
  scan_cmd->callback([&] { action = [&] { return cmd_scan(g, n, lo, hi, rows, cfg); }; });

  auto* table2_cmd = app.add_subcommand("table2", "Four-cylinder gap brackets for N = 9, 21, 37, 57, 8, 20, 36, 56");
  table2_cmd->callback([&] { action = [&] { return cmd_table2(g); }; });

  auto* table3_cmd = app.add_subcommand("table3", "Escape times from x = 50.0 ... 50.9 at N = 5097 (512 bits default)");
  table3_cmd->add_option("--max-iter", max_iter)->capture_default_str();
  table3_cmd->callback([&] { action = [&] { return cmd_table3(g, max_iter); }; });

  auto* render_cmd = app.add_subcommand("render", "SVG pictures");
  render_cmd->require_subcommand(1);
  auto* render_arr = render_cmd->add_subcommand("arrangement", "Graph of T with dividers and fixed points");
  render_arr->add_option("n", n, "Numerator N")->required();
  render_arr->add_option("alpha", alpha, alpha_help)->required();
  render_arr->add_option("--cobweb-from", cobweb_from, "Overlay the cobweb of this point");
  render_arr->add_option("--steps", steps)->capture_default_str();
  render_arr->callback(
      [&] { action = [&] { return cmd_render_arrangement(g, n, alpha, cobweb_from, steps, "render arrangement"); }; });
  auto* render_web = render_cmd->add_subcommand("cobweb", "Arrangement with the cobweb of x");
  render_web->add_option("n", n, "Numerator N")->required();
  render_web->add_option("alpha", alpha, alpha_help)->required();
  render_web->add_option("x", x, "Starting point")->required();
  render_web->add_option("--steps", steps)->capture_default_str();
  render_web->callback([&] {
    action = [&] { return cmd_render_arrangement(g, n, alpha, std::optional<std::string>(x), steps, "render cobweb"); };
  });
  auto* render_scan = render_cmd->add_subcommand("scan", "Stacked intervals of an alpha scan");
  render_scan->add_option("n", n, "Numerator N")->required();
  render_scan->add_option("alpha_lo", lo, "Lowest alpha")->required();
  render_scan->add_option("alpha_hi", hi, "Highest alpha")->required();
  render_scan->add_option("rows", rows, "Grid size, endpoints included")->required();
  add_sim_options(render_scan, cfg);
  render_scan->callback([&] {
    action = [&] {
      OutputDoc doc = cmd_scan(g, n, lo, hi, rows, cfg);
      doc.command = "render scan";
      if (!g.format) doc.format = Format::Svg;
      return doc;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    const OutputDoc doc = action();
    const std::string text = serialize(doc);
    if (g.out.empty()) {
      out << text;
    } else {
      std::ofstream file(g.out, std::ios::binary);
      if (!file) throw DomainError("cannot open " + g.out + " for writing");
      file << text;
      if (!file) throw DomainError("failed writing " + g.out);
    }
    return 0;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const InvariantError& e) {
    err << "internal error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace nexp::cli
