#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hexspec/bandscan.hpp"
#include "hexspec/hexband.hpp"

namespace hexspec {

/// Hexagonal lattice dilated independently in the three edge directions,
/// -R coupling, length scale 1.
struct GeneralHexProblem {
  double a = 1.0;
  double b = 1.0;
  double c = 1.0;
};

struct QuasiMomentum {
  double theta1 = 0.0;
  double theta2 = 0.0;
};

/// Extrema over the Brillouin torus of
/// T(theta) = sin(bk) cos(theta2) + sin(ck) cos(theta1) + sin(ak) cos(theta2-theta1)
/// at fixed k (sinh coefficients on the negative side).
struct ThetaRange {
  double t_min = 0.0;
  double t_max = 0.0;
};

/// Full left side of the dilated-lattice spectral condition:
/// (3k^4+1) sin(ak) sin(bk) sin(ck) + 2k^2(k^2-1) T(theta)
///   - 2k^2(k^2+1) (cos ak cos bk sin ck + cos bk cos ck sin ak + cos ck cos ak sin bk).
/// Polynomial-cleared: no Dirichlet-point exclusion needed.
double genhex_secular(const GeneralHexProblem& p, double k, const QuasiMomentum& q);

/// Positive side: 96x96 grid seed plus Newton refinement of the gradient to
/// 1e-10. Negative side: the sinh coefficients are positive and the closed
/// forms apply. Throws NumericError on refinement non-convergence.
ThetaRange theta_extrema(const GeneralHexProblem& p, double momentum, Side side);

/// True iff 0 lies between the secular values at t_min and t_max: the secular
/// function is affine in T and T sweeps its full range on the connected torus.
bool in_band_general(const GeneralHexProblem& p, double momentum, Side side);

struct CommensurabilityConfig {
  double tol = 1e-9;               // accept q/p when |x - q/p| < tol / p^2
  long long max_denominator = 1000000;
};

/// Rational reconstruction of b/a and c/a by continued fractions. On success
/// a = p u, b = q u, c = r u with gcd(p,q,r) = 1 and the flat bands are
/// m pi / u. Floating-point inputs can never prove irrationality: the
/// incommensurate verdict means "within tolerance".
struct CommensurabilityResult {
  bool commensurate = false;
  double unit = 0.0;
  long long p = 0, q = 0, r = 0;
  std::vector<double> momenta;
};

CommensurabilityResult flat_bands_general(const GeneralHexProblem& p, double k_max,
                                          const CommensurabilityConfig& cfg = {});

enum class GapCase {
  Incommensurate,    // delta ~ m^-2
  CommensuratePair,  // one partner sine vanishes, delta ~ m^-1
  CotangentLimit,    // one partner cosine vanishes
  InSpectrum,        // both partner cosines vanish: m pi / anchor belongs to sigma
  FlatBand           // all three sines vanish
};

enum class Anchor { A, B, C };

/// Leading-order halfwidth of the gap predicted around k = m pi / anchor.
/// The sign of the underlying expression is kept as metadata; halfwidth is
/// its absolute value. No halfwidth for InSpectrum/FlatBand.
struct GapPrediction {
  GapCase kind = GapCase::Incommensurate;
  std::optional<double> halfwidth;
  int sign = 0;
};

GapPrediction gap_halfwidth_prediction(const GeneralHexProblem& p, Anchor anchor,
                                       int m);

/// Low-energy criterion for spectrum in the vicinity of k = 0.
bool band_at_zero(const GeneralHexProblem& p);

/// Negative spectral bands as kappa intervals; at most two exist, and the one
/// adjacent to kappa = 0 touches zero exactly when band_at_zero holds.
std::vector<BandInterval> negative_bands_general(const GeneralHexProblem& p,
                                                 double kappa_max,
                                                 const ScanConfig& cfg);

SpectrumReport compute_genhex_spectrum(const GeneralHexProblem& p, double k_max,
                                       double kappa_max, const ScanConfig& cfg,
                                       const CommensurabilityConfig& ccfg = {});

namespace detail {

/// Exact range of al*cos(theta2) + be*cos(theta1) + ga*cos(theta2-theta1)
/// over the torus, any signs: shifting theta components by pi reduces an even
/// number of negative coefficients to the all-positive case, an odd number to
/// its negation.
ThetaRange theta_range_closed(double al, double be, double ga);

/// Decomposition of the secular function as constant + t_coeff * T(theta).
struct SecularAffine {
  double constant = 0.0;
  double t_coeff = 0.0;
  double alpha = 0.0, beta = 0.0, gamma = 0.0;  // T coefficients
};

SecularAffine secular_affine(const GeneralHexProblem& p, double momentum, Side side);

}  // namespace detail

}  // namespace hexspec
