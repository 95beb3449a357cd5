#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace hexspec {

enum class Side { Positive, Negative };
enum class BandKind { Flat, Ac };

struct ScanConfig {
  double grid_step = 1e-2;       // momentum units
  double edge_tolerance = 1e-10; // must be < grid_step
  int max_bisection_iters = 80;  // >= 40
  int partitions = 1;            // concurrent predicate evaluation partitions
};

/// grid_step = pi / (400 * max_edge_length): at least 400 samples per
/// trigonometric period of the secular functions.
ScanConfig default_scan_config(double max_edge_length);

void validate(const ScanConfig& cfg);

/// One closed interval of spectrum on the momentum scale (kappa on the
/// negative side). Flat bands have lo == hi. Energy fields are +-momentum^2
/// with energy_lo <= energy_hi.
struct BandInterval {
  double lo = 0.0;
  double hi = 0.0;
  Side side = Side::Positive;
  BandKind kind = BandKind::Ac;
  double energy_lo = 0.0;
  double energy_hi = 0.0;
};

BandInterval make_band(double lo, double hi, Side side, BandKind kind);

struct GapInterval {
  double lo = 0.0;
  double hi = 0.0;
  Side side = Side::Positive;
  double energy_lo = 0.0;
  double energy_hi = 0.0;
  std::string note;  // optional classification
};

struct ProblemInfo {
  std::string type;
  std::vector<std::pair<std::string, double>> params;
  std::vector<std::string> notes;
};

struct ScanDiagnostics {
  double grid_step = 0.0;
  double edge_tolerance = 0.0;
  double k_window_lo = 0.0, k_window_hi = 0.0;
  double kappa_window_lo = 0.0, kappa_window_hi = 0.0;
};

struct SpectrumReport {
  ProblemInfo problem;
  std::vector<double> flat_bands;       // momenta
  std::vector<BandInterval> ac_bands;   // sorted by energy_lo
  std::vector<GapInterval> gaps;        // complement of the AC bands per side
  double measure_fraction = 0.0;        // |sigma cap [0,E]| / E on the energy scale
  ScanDiagnostics diagnostics;
};

using BandPredicate = std::function<bool(double)>;

/// Bisects the boolean transition between an in-band and an out-of-band point
/// down to cfg.edge_tolerance and returns the in-band end of the final bracket
/// (the spectrum is closed). Throws std::invalid_argument on an inverted
/// bracket and NumericError when max_bisection_iters is exceeded.
double refine_edge(const BandPredicate& in_band, double inside, double outside,
                   const ScanConfig& cfg);

/// Sweeps [lo, hi] on the uniform grid lo + i*grid_step, brackets every
/// boolean transition, bisects each to edge_tolerance and merges runs of
/// in-band samples. Bands narrower than grid_step are found when they contain
/// a grid point. cfg.partitions > 1 evaluates the grid concurrently; the
/// result is identical for any partitioning.
std::vector<BandInterval> extract_bands(const BandPredicate& in_band, double lo,
                                        double hi, const ScanConfig& cfg,
                                        Side side);

/// Lebesgue measure of the energy-scale union intersected with [0, E],
/// divided by E. Flat bands contribute nothing.
double measure_fraction(const std::vector<BandInterval>& bands, double energy_cap);

/// Sorted complement of the AC bands within [window_lo, window_hi].
std::vector<GapInterval> complement_gaps(const std::vector<BandInterval>& bands,
                                         double window_lo, double window_hi,
                                         Side side);

}  // namespace hexspec
