#include "hexspec/bandscan.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "hexspec/coupling.hpp"  // NumericError

namespace hexspec {

ScanConfig default_scan_config(double max_edge_length) {
  ScanConfig cfg;
  cfg.grid_step = std::numbers::pi / (400.0 * max_edge_length);
  cfg.edge_tolerance = 1e-10;
  cfg.max_bisection_iters = 80;
  return cfg;
}

void validate(const ScanConfig& cfg) {
  if (!(cfg.grid_step > 0.0)) throw std::invalid_argument("grid_step must be positive");
  if (!(cfg.edge_tolerance > 0.0 && cfg.edge_tolerance < cfg.grid_step))
    throw std::invalid_argument("edge_tolerance must be in (0, grid_step)");
  if (cfg.max_bisection_iters < 40)
    throw std::invalid_argument("max_bisection_iters must be >= 40");
  if (cfg.partitions < 1) throw std::invalid_argument("partitions must be >= 1");
}

BandInterval make_band(double lo, double hi, Side side, BandKind kind) {
  BandInterval b;
  b.lo = lo;
  b.hi = hi;
  b.side = side;
  b.kind = kind;
  if (side == Side::Positive) {
    b.energy_lo = lo * lo;
    b.energy_hi = hi * hi;
  } else {
    b.energy_lo = -hi * hi;
    b.energy_hi = -lo * lo;
  }
  return b;
}

double refine_edge(const BandPredicate& in_band, double inside, double outside,
                   const ScanConfig& cfg) {
  if (!in_band(inside))
    throw std::invalid_argument("refine_edge: 'inside' point is not in a band");
  if (in_band(outside))
    throw std::invalid_argument("refine_edge: 'outside' point is in a band");
  int iters = 0;
  while (std::abs(inside - outside) > cfg.edge_tolerance) {
    if (++iters > cfg.max_bisection_iters) {
      std::ostringstream msg;
      msg << "refine_edge: no convergence after " << cfg.max_bisection_iters
          << " iterations on bracket [" << std::min(inside, outside) << ", "
          << std::max(inside, outside) << "]";
      throw NumericError(msg.str());
    }
    const double mid = 0.5 * (inside + outside);
    if (mid == inside || mid == outside) break;  // bracket at ulp resolution
    if (in_band(mid))
      inside = mid;
    else
      outside = mid;
  }
  return inside;
}

std::vector<BandInterval> extract_bands(const BandPredicate& in_band, double lo,
                                        double hi, const ScanConfig& cfg,
                                        Side side) {
  validate(cfg);
  if (!(lo < hi)) throw std::invalid_argument("extract_bands: invalid window");

  const std::size_t n_cells =
      static_cast<std::size_t>(std::ceil((hi - lo) / cfg.grid_step));
  std::vector<double> grid(n_cells + 1);
  for (std::size_t i = 0; i < n_cells; ++i) grid[i] = lo + double(i) * cfg.grid_step;
  grid[n_cells] = hi;
  if (n_cells >= 1 && grid[n_cells - 1] >= hi) grid[n_cells - 1] = std::nextafter(hi, lo);

  std::vector<char> flags(grid.size());
  const int parts = std::min<int>(cfg.partitions, static_cast<int>(grid.size()));
  if (parts <= 1) {
    for (std::size_t i = 0; i < grid.size(); ++i) flags[i] = in_band(grid[i]) ? 1 : 0;
  } else {
    std::vector<std::future<void>> jobs;
    const std::size_t chunk = (grid.size() + parts - 1) / parts;
    for (int p = 0; p < parts; ++p) {
      const std::size_t b = std::min(grid.size(), p * chunk);
      const std::size_t e = std::min(grid.size(), b + chunk);
      if (b >= e) break;
      jobs.push_back(std::async(std::launch::async, [&, b, e] {
        for (std::size_t i = b; i < e; ++i) flags[i] = in_band(grid[i]) ? 1 : 0;
      }));
    }
    for (auto& j : jobs) j.get();
  }

  std::vector<BandInterval> bands;
  std::size_t i = 0;
  while (i < grid.size()) {
    if (!flags[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < grid.size() && flags[j + 1]) ++j;
    double band_lo = grid[i];
    double band_hi = grid[j];
    if (i > 0) band_lo = refine_edge(in_band, grid[i], grid[i - 1], cfg);
    if (j + 1 < grid.size()) band_hi = refine_edge(in_band, grid[j], grid[j + 1], cfg);
    bands.push_back(make_band(band_lo, band_hi, side, BandKind::Ac));
    i = j + 1;
  }
  return bands;
}

double measure_fraction(const std::vector<BandInterval>& bands, double energy_cap) {
  if (!(energy_cap > 0.0)) throw std::invalid_argument("energy cap must be positive");
  double covered = 0.0;
  for (const auto& b : bands) {
    if (b.kind == BandKind::Flat) continue;
    const double lo = std::max(0.0, b.energy_lo);
    const double hi = std::min(energy_cap, b.energy_hi);
    if (hi > lo) covered += hi - lo;
  }
  return covered / energy_cap;
}

std::vector<GapInterval> complement_gaps(const std::vector<BandInterval>& bands,
                                         double window_lo, double window_hi,
                                         Side side) {
  std::vector<BandInterval> on_side;
  for (const auto& b : bands)
    if (b.side == side && b.kind == BandKind::Ac) on_side.push_back(b);
  std::sort(on_side.begin(), on_side.end(),
            [](const BandInterval& x, const BandInterval& y) { return x.lo < y.lo; });

  auto mk = [side](double lo, double hi) {
    GapInterval g;
    g.lo = lo;
    g.hi = hi;
    g.side = side;
    if (side == Side::Positive) {
      g.energy_lo = lo * lo;
      g.energy_hi = hi * hi;
    } else {
      g.energy_lo = -hi * hi;
      g.energy_hi = -lo * lo;
    }
    return g;
  };

  std::vector<GapInterval> gaps;
  double cursor = window_lo;
  for (const auto& b : on_side) {
    if (b.lo > cursor) gaps.push_back(mk(cursor, b.lo));
    cursor = std::max(cursor, b.hi);
  }
  if (cursor < window_hi) gaps.push_back(mk(cursor, window_hi));
  return gaps;
}

}  // namespace hexspec
