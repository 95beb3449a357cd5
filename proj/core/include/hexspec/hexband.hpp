#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "hexspec/bandscan.hpp"

namespace hexspec {

enum class HexCoupling { MinusR, R };

/// Regular hexagonal lattice with edge length l; the vertex length scale is
/// fixed to 1.
struct RegularHexProblem {
  double length = 1.0;
  HexCoupling coupling = HexCoupling::MinusR;
};

/// Extremal curves bounding the admissible region for cos(2kl) (positive
/// side) or cosh(2 kappa l) (negative side). The ordering of the two curves
/// can swap (at k = 1 for -R), so band tests use the pointwise min/max.
struct EnvelopePair {
  std::function<double(double)> plus;
  std::function<double(double)> minus;
  Side side = Side::Positive;
};

EnvelopePair envelope_pair(const RegularHexProblem& p, Side side);

/// Pole-free form of the -R spectral condition at fixed d = d_theta:
/// (3k^2+1)^2 cos(2kl) - (1 - 6k^2 - 3k^4 + 4 d k^2 (k^2-1)). Affine in d.
/// Only defined for the MinusR variant.
double hex_secular_cleared(const RegularHexProblem& p, double k, double d);

bool in_positive_band(const RegularHexProblem& p, double k);
bool in_negative_band(const RegularHexProblem& p, double kappa);

/// Flat-band momenta m pi / l up to k_max.
std::vector<double> flat_band_momenta(const RegularHexProblem& p, double k_max);

/// Leading-order energy-scale widths of the high-momentum gap/band pattern.
/// MinusR: gaps centered at k = m pi / (2l), width 8/(sqrt3 l) for even m and
/// 4/(sqrt3 l) for odd m. R: a gap of 4 sqrt3 / l between two bands of width
/// 2 sqrt3 / l around k = m pi / l, independent of parity.
struct GapWidthPrediction {
  double gap_energy_width = 0.0;
  std::optional<double> band_energy_width;  // R variant only
};

GapWidthPrediction gap_width_prediction(const RegularHexProblem& p, int m);

/// Momentum-scale estimates for the exponentially narrow negative bands at
/// large l: width (2/sqrt3) e^{-l/sqrt3} and separation (2/sqrt3) e^{-2l/sqrt3}
/// for -R; 2 sqrt3 e^{-sqrt3 l} and 2 sqrt3 e^{-2 sqrt3 l} for R.
struct NegativeBandAsymptotics {
  double width = 0.0;
  double separation = 0.0;
};

NegativeBandAsymptotics negative_band_asymptotics(const RegularHexProblem& p);

SpectrumReport compute_hex_spectrum(const RegularHexProblem& p, double k_max,
                                    double kappa_max, const ScanConfig& cfg);

}  // namespace hexspec
