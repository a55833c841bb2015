#include "nexp/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "nexp/errors.hpp"

namespace nexp {

void SimConfig::validate() const {
  if (samples < 1 || burn_in < 0 || iters < 1) throw DomainError("samples and iters must be positive, burn_in non-negative");
  if (bins < 100) throw DomainError("bins must be at least 100, got " + std::to_string(bins));
  if (min_gap_bins < 1) throw DomainError("min_gap_bins must be positive");
  if (threads < 0) throw DomainError("threads must be non-negative");
}

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

int worker_count(const SimConfig& cfg, long jobs) {
  long n = cfg.threads > 0 ? cfg.threads : static_cast<long>(std::max(1u, std::thread::hardware_concurrency()));
  return static_cast<int>(std::clamp(n, 1L, std::max(1L, jobs)));
}

// Runs body(begin, end, worker) over [0, jobs) split into contiguous chunks.
template <class Body>
void parallel_chunks(long jobs, int workers, Body body) {
  if (workers <= 1) {
    body(0L, jobs, 0);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    const long begin = jobs * w / workers;
    const long end = jobs * (w + 1) / workers;
    pool.emplace_back([=, &body] { body(begin, end, w); });
  }
  for (auto& t : pool) t.join();
}

Histogram empty_histogram(const Params& params, long bins) {
  Histogram h;
  h.alpha = params.alpha().to_double();
  h.counts.assign(static_cast<size_t>(bins), 0);
  return h;
}

void run_samples(const Params& params, const SimConfig& cfg, std::uint64_t stream, long begin, long end,
                 Histogram& hist) {
  Stepper stepper(params, cfg.precision);
  const Precision prec = stepper.precision();
  const Real alpha = params.alpha().exact() ? params.alpha().exact()->to_real(prec) : params.alpha().approx();
  const double alpha_d = alpha.to_double();
  const double bins = static_cast<double>(cfg.bins);
  Real x(prec);
  for (long s = begin; s < end; ++s) {
    x = alpha + Real::from_double(unit_draw(stream, static_cast<std::uint64_t>(s)), prec);
    for (long k = 0; k < cfg.burn_in; ++k) stepper.step(x);
    for (long k = 0; k < cfg.iters; ++k) {
      stepper.step(x);
      const double pos = (x.to_double() - alpha_d) * bins;
      if (!(pos >= -1e-6 * bins && pos <= bins * (1 + 1e-6))) {
        ++hist.rejected;
        continue;
      }
      const long bin = std::clamp(static_cast<long>(std::floor(pos)), 0L, cfg.bins - 1);
      ++hist.counts[static_cast<size_t>(bin)];
      ++hist.total;
    }
  }
}

}  // namespace

std::uint64_t counter_draw(std::uint64_t key, std::uint64_t counter) {
  return splitmix64(splitmix64(key) ^ (counter * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL));
}

double unit_draw(std::uint64_t key, std::uint64_t counter) {
  return static_cast<double>(counter_draw(key, counter) >> 11) * 0x1.0p-53;
}

void Histogram::merge(const Histogram& other) {
  if (other.counts.size() != counts.size()) throw InvariantError("merging histograms of different sizes");
  for (size_t i = 0; i < counts.size(); ++i) counts[i] += other.counts[i];
  total += other.total;
  rejected += other.rejected;
}

std::vector<EmpiricalGap> extract_gaps(const Histogram& histogram, const Params& params, long min_gap_bins) {
  std::vector<EmpiricalGap> out;
  const long bins = histogram.bins();
  const Precision prec = params.precision();
  const Real alpha = params.alpha().exact() ? params.alpha().exact()->to_real(prec) : params.alpha().approx();
  long start = -1;
  for (long b = 0; b <= bins; ++b) {
    const bool empty = b < bins && histogram.counts[static_cast<size_t>(b)] == 0;
    if (empty && start < 0) start = b;
    if (!empty && start >= 0) {
      const long width = b - start;
      if (start > 0 && b < bins && width >= min_gap_bins) {
        out.push_back({alpha + Real(start, prec) / bins, alpha + Real(b, prec) / bins, start, width});
      }
      start = -1;
    }
  }
  return out;
}

SimResult simulate_stream(const Params& params, const SimConfig& cfg, std::uint64_t stream) {
  cfg.validate();
  const int workers = worker_count(cfg, cfg.samples);
  std::vector<Histogram> parts(static_cast<size_t>(workers), empty_histogram(params, cfg.bins));
  parallel_chunks(cfg.samples, workers, [&](long begin, long end, int w) {
    run_samples(params, cfg, stream, begin, end, parts[static_cast<size_t>(w)]);
  });
  SimResult out{empty_histogram(params, cfg.bins), {}};
  for (const auto& p : parts) out.histogram.merge(p);
  if (out.histogram.rejected != 0) {
    throw InvariantError(std::to_string(out.histogram.rejected) + " orbit points fell outside the domain");
  }
  out.gaps = extract_gaps(out.histogram, params, cfg.min_gap_bins);
  return out;
}

SimResult simulate(const Params& params, const SimConfig& cfg) { return simulate_stream(params, cfg, cfg.seed); }

std::vector<ScanRow> scan(long n, const Scalar& alpha_lo, const Scalar& alpha_hi, long rows, const SimConfig& cfg) {
  cfg.validate();
  if (rows < 1) throw DomainError("rows must be at least 1");
  if (rows > kMaxScanRows) throw DomainError("rows must not exceed " + std::to_string(kMaxScanRows));
  if (!(alpha_lo < alpha_hi)) throw DomainError("alpha_lo must be below alpha_hi");
  // Validates both ends against (0, sqrt(N)-1].
  Params(n, alpha_lo);
  Params(n, alpha_hi);

  std::vector<Scalar> grid;
  grid.reserve(static_cast<size_t>(rows));
  for (long i = 0; i < rows; ++i) {
    grid.push_back(rows == 1 ? alpha_lo : alpha_lo + (alpha_hi - alpha_lo) * i / (rows - 1));
  }
  std::vector<ScanRow> out(static_cast<size_t>(rows), ScanRow{0, Scalar(cfg.precision), Verdict{}, {}});
  SimConfig row_cfg = cfg;
  row_cfg.threads = 1;
  const int workers = worker_count(cfg, rows);
  parallel_chunks(rows, workers, [&](long begin, long end, int) {
    for (long i = begin; i < end; ++i) {
      const Params p(n, grid[static_cast<size_t>(i)]);
      ScanRow row{i, p.alpha(), classify(p), {}};
      row.empirical = simulate_stream(p, row_cfg, cfg.seed ^ static_cast<std::uint64_t>(i)).gaps;
      out[static_cast<size_t>(i)] = std::move(row);
    }
  });
  return out;
}

std::vector<std::pair<Real, Real>> cobweb(const Params& params, const Real& x, long steps) {
  const std::vector<Real> pts = orbit(params, x, steps);
  std::vector<std::pair<Real, Real>> out;
  out.reserve(2 * pts.size());
  out.emplace_back(pts[0], pts[0]);
  for (size_t k = 0; k + 1 < pts.size(); ++k) {
    out.emplace_back(pts[k], pts[k + 1]);
    out.emplace_back(pts[k + 1], pts[k + 1]);
  }
  return out;
}

}  // namespace nexp
