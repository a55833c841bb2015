#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "nexp/gap.hpp"
#include "nexp/map.hpp"
#include "nexp/real.hpp"
#include "nexp/scalar.hpp"

namespace nexp {

struct SimConfig {
  long samples = 1000;
  long burn_in = 200;
  /// Iterates recorded per sample after burn-in.
  long iters = 1000;
  long bins = 10000;
  std::uint64_t seed = 0;
  long min_gap_bins = 3;
  /// Worker threads; 0 means one per hardware thread.
  int threads = 0;
  Precision precision{};

  /// Throws DomainError on non-positive counts or bins < 100.
  void validate() const;
};

/// SplitMix64 output at position `counter` of the stream named by `key`.
/// Any (key, counter) pair can be drawn independently of every other.
std::uint64_t counter_draw(std::uint64_t key, std::uint64_t counter);
/// Uniform double in [0, 1) with 53 random bits.
double unit_draw(std::uint64_t key, std::uint64_t counter);

/// Occupancy counts over [alpha, alpha+1] in equal bins.
struct Histogram {
  double alpha = 0.0;
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;
  std::uint64_t rejected = 0;

  long bins() const { return static_cast<long>(counts.size()); }
  void merge(const Histogram& other);
};

/// A run of empty interior bins. Edges are bin boundaries.
struct EmpiricalGap {
  Real lo;
  Real hi;
  long first_bin;
  long width_bins;
};

struct SimResult {
  Histogram histogram;
  std::vector<EmpiricalGap> gaps;
};

/// Orbits of cfg.samples uniform starting points; the first burn_in
/// iterates of each are dropped and the next iters are binned.
SimResult simulate(const Params& params, const SimConfig& cfg);
/// Same, drawing from the stream named by `stream` instead of cfg.seed.
SimResult simulate_stream(const Params& params, const SimConfig& cfg, std::uint64_t stream);

/// Maximal runs of at least min_gap_bins empty bins that touch neither end.
std::vector<EmpiricalGap> extract_gaps(const Histogram& histogram, const Params& params, long min_gap_bins);

struct ScanRow {
  long index;
  Scalar alpha;
  Verdict verdict;
  std::vector<EmpiricalGap> empirical;
};

/// Rows at alpha_lo + (alpha_hi - alpha_lo) i/(rows-1), i = 0..rows-1
/// (a single row sits at alpha_lo). Row i draws from stream seed ^ i.
std::vector<ScanRow> scan(long n, const Scalar& alpha_lo, const Scalar& alpha_hi, long rows, const SimConfig& cfg);

inline constexpr long kMaxScanRows = 1000000;

/// Cobweb vertices: (x0, x0), then (x_k, x_{k+1}) and (x_{k+1}, x_{k+1}) for each step.
std::vector<std::pair<Real, Real>> cobweb(const Params& params, const Real& x, long steps);

}  // namespace nexp
