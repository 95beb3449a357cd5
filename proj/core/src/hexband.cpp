#include "hexspec/hexband.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hexspec {

namespace {

constexpr double kPoleGuard = 1e-13;
constexpr double kScanStart = 1e-7;

bool straddles_zero(double f_lo, double f_hi) {
  return (f_lo <= 0.0 && f_hi >= 0.0) || (f_lo >= 0.0 && f_hi <= 0.0);
}

void check_length(const RegularHexProblem& p) {
  if (!(p.length > 0.0)) throw std::invalid_argument("hexagon edge length must be positive");
}

// Endpoint values of the cleared spectral condition, rewritten through
// cos 2x = 1 - 2 sin^2 x (cosh 2x = 1 + 2 sinh^2 x) and divided by the
// positive factor k^2; the raw forms lose all signal as the momentum -> 0.
struct EndpointPair {
  double at_d_min;  // d = -3/2 endpoint, sign of (cos - h_-) resp. (cosh - g_-)
  double at_d_max;  // d = +3 endpoint
};

EndpointPair positive_endpoints(const RegularHexProblem& p, double k) {
  const double k2 = k * k;
  const double s = std::sin(k * p.length) / k;
  const double q = s * s;
  if (p.coupling == HexCoupling::MinusR) {
    const double f = 3.0 * k2 + 1.0;
    return {18.0 * k2 + 6.0 - 2.0 * f * f * q, 24.0 - 2.0 * f * f * q};
  }
  const double f = k2 + 3.0;
  return {6.0 * f / k2 - 2.0 * f * f * q, 24.0 - 2.0 * f * f * q};
}

EndpointPair negative_endpoints(const RegularHexProblem& p, double kappa) {
  const double k2 = kappa * kappa;
  const double s = std::sinh(kappa * p.length) / kappa;
  const double q = s * s;
  if (p.coupling == HexCoupling::MinusR) {
    const double f = 3.0 * k2 - 1.0;
    return {2.0 * f * f * q + 18.0 * k2 - 6.0, 2.0 * f * f * q - 24.0};
  }
  const double f = k2 - 3.0;
  return {(18.0 - 6.0 * k2) / k2 + 2.0 * f * f * q, 2.0 * f * f * q - 24.0};
}

}  // namespace

EnvelopePair envelope_pair(const RegularHexProblem& p, Side side) {
  check_length(p);
  EnvelopePair e;
  e.side = side;
  if (p.coupling == HexCoupling::MinusR) {
    if (side == Side::Positive) {
      e.plus = [](double k) {
        const double k2 = k * k;
        return (1.0 - 18.0 * k2 + 9.0 * k2 * k2) / ((3.0 * k2 + 1.0) * (3.0 * k2 + 1.0));
      };
      e.minus = [](double k) {
        const double k2 = k * k;
        return (1.0 - 3.0 * k2) / (1.0 + 3.0 * k2);
      };
    } else {
      e.plus = [](double x) {
        const double k2 = x * x;
        return (1.0 + 18.0 * k2 + 9.0 * k2 * k2) / ((3.0 * k2 - 1.0) * (3.0 * k2 - 1.0));
      };
      e.minus = [](double x) {
        const double k2 = x * x;
        return (1.0 + 3.0 * k2) / (1.0 - 3.0 * k2);
      };
    }
    return e;
  }
  if (side == Side::Positive) {
    e.plus = [](double k) {
      const double k2 = k * k;
      return (k2 * k2 - 18.0 * k2 + 9.0) / ((k2 + 3.0) * (k2 + 3.0));
    };
    e.minus = [](double k) {
      const double k2 = k * k;
      return (k2 - 3.0) / (k2 + 3.0);
    };
  } else {
    e.plus = [](double x) {
      const double k2 = x * x;
      return (k2 * k2 + 18.0 * k2 + 9.0) / ((k2 - 3.0) * (k2 - 3.0));
    };
    e.minus = [](double x) {
      const double k2 = x * x;
      return (k2 + 3.0) / (k2 - 3.0);
    };
  }
  return e;
}

double hex_secular_cleared(const RegularHexProblem& p, double k, double d) {
  check_length(p);
  if (p.coupling != HexCoupling::MinusR)
    throw std::invalid_argument(
        "hex_secular_cleared: only the -R variant has this cleared form");
  if (!(k > 0.0)) throw std::invalid_argument("hex_secular_cleared requires k > 0");
  const double k2 = k * k;
  const double f = 3.0 * k2 + 1.0;
  return f * f * std::cos(2.0 * k * p.length) -
         (1.0 - 6.0 * k2 - 3.0 * k2 * k2 + 4.0 * d * k2 * (k2 - 1.0));
}

bool in_positive_band(const RegularHexProblem& p, double k) {
  check_length(p);
  if (!(k > 0.0)) throw std::invalid_argument("in_positive_band requires k > 0");
  const auto e = positive_endpoints(p, k);
  return straddles_zero(e.at_d_min, e.at_d_max);
}

bool in_negative_band(const RegularHexProblem& p, double kappa) {
  check_length(p);
  if (!(kappa > 0.0)) throw std::invalid_argument("in_negative_band requires kappa > 0");
  const double k2 = kappa * kappa;
  const double pole = (p.coupling == HexCoupling::MinusR) ? 3.0 * k2 - 1.0 : k2 - 3.0;
  // At the pole of g_- the cleared form has a spurious zero (clearing factor
  // and d = -3/2 numerator vanish together); the point lies in a gap.
  if (std::abs(pole) < kPoleGuard) return false;
  const auto e = negative_endpoints(p, kappa);
  return straddles_zero(e.at_d_min, e.at_d_max);
}

std::vector<double> flat_band_momenta(const RegularHexProblem& p, double k_max) {
  check_length(p);
  if (!(k_max > 0.0)) throw std::invalid_argument("k_max must be positive");
  std::vector<double> out;
  for (int m = 1; double(m) * std::numbers::pi <= k_max * p.length; ++m)
    out.push_back(double(m) * std::numbers::pi / p.length);
  return out;
}

GapWidthPrediction gap_width_prediction(const RegularHexProblem& p, int m) {
  check_length(p);
  if (m < 1) throw std::invalid_argument("gap index m must be >= 1");
  const double sqrt3 = std::numbers::sqrt3;
  GapWidthPrediction g;
  if (p.coupling == HexCoupling::MinusR) {
    g.gap_energy_width = ((m % 2 == 0) ? 8.0 : 4.0) / (sqrt3 * p.length);
  } else {
    g.gap_energy_width = 4.0 * sqrt3 / p.length;
    g.band_energy_width = 2.0 * sqrt3 / p.length;
  }
  return g;
}

NegativeBandAsymptotics negative_band_asymptotics(const RegularHexProblem& p) {
  check_length(p);
  const double sqrt3 = std::numbers::sqrt3;
  NegativeBandAsymptotics a;
  if (p.coupling == HexCoupling::MinusR) {
    a.width = (2.0 / sqrt3) * std::exp(-p.length / sqrt3);
    a.separation = (2.0 / sqrt3) * std::exp(-2.0 * p.length / sqrt3);
  } else {
    a.width = 2.0 * sqrt3 * std::exp(-sqrt3 * p.length);
    a.separation = 2.0 * sqrt3 * std::exp(-2.0 * sqrt3 * p.length);
  }
  return a;
}

SpectrumReport compute_hex_spectrum(const RegularHexProblem& p, double k_max,
                                    double kappa_max, const ScanConfig& cfg) {
  check_length(p);
  if (!(k_max > kScanStart) || !(kappa_max > kScanStart))
    throw std::invalid_argument("scan windows must be positive");
  validate(cfg);

  SpectrumReport rep;
  rep.problem.type = "hex";
  rep.problem.params = {{"length", p.length},
                        {"k_max", k_max},
                        {"kappa_max", kappa_max}};
  rep.problem.notes.push_back(p.coupling == HexCoupling::MinusR ? "coupling=minus-r"
                                                                : "coupling=r");

  auto pos = extract_bands([&](double k) { return in_positive_band(p, k); },
                           kScanStart, k_max, cfg, Side::Positive);
  auto neg = extract_bands([&](double x) { return in_negative_band(p, x); },
                           kScanStart, kappa_max, cfg, Side::Negative);
  // A band reaching the scan start extends to momentum zero: the endpoint
  // sign pattern is constant below the start (quadratic leading order).
  for (auto& b : pos)
    if (b.lo <= kScanStart) b = make_band(0.0, b.hi, b.side, b.kind);
  for (auto& b : neg)
    if (b.lo <= kScanStart) b = make_band(0.0, b.hi, b.side, b.kind);

  rep.ac_bands = neg;
  rep.ac_bands.insert(rep.ac_bands.end(), pos.begin(), pos.end());
  std::sort(rep.ac_bands.begin(), rep.ac_bands.end(),
            [](const BandInterval& x, const BandInterval& y) {
              return x.energy_lo < y.energy_lo;
            });

  rep.flat_bands = flat_band_momenta(p, k_max);

  auto gaps_neg = complement_gaps(neg, 0.0, kappa_max, Side::Negative);
  auto gaps_pos = complement_gaps(pos, 0.0, k_max, Side::Positive);
  rep.gaps = gaps_neg;
  rep.gaps.insert(rep.gaps.end(), gaps_pos.begin(), gaps_pos.end());

  rep.measure_fraction = measure_fraction(pos, k_max * k_max);

  rep.diagnostics.grid_step = cfg.grid_step;
  rep.diagnostics.edge_tolerance = cfg.edge_tolerance;
  rep.diagnostics.k_window_lo = kScanStart;
  rep.diagnostics.k_window_hi = k_max;
  rep.diagnostics.kappa_window_lo = kScanStart;
  rep.diagnostics.kappa_window_hi = kappa_max;
  return rep;
}

}  // namespace hexspec
