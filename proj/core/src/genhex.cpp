#include "hexspec/genhex.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "hexspec/coupling.hpp"  // NumericError

namespace hexspec {

namespace {

constexpr double kScanStart = 1e-7;
constexpr int kGrid = 96;

void check_lengths(const GeneralHexProblem& p) {
  if (!(p.a > 0.0 && p.b > 0.0 && p.c > 0.0))
    throw std::invalid_argument("all three edge lengths must be positive");
}

bool straddles_zero(double f_lo, double f_hi) {
  return (f_lo <= 0.0 && f_hi >= 0.0) || (f_lo >= 0.0 && f_hi <= 0.0);
}

// Range of A cos(t2-t1) + B cos(t2) + C cos(t1) for A, B, C >= 0, not all
// zero and at most a 1e-9 relative spread treated as exact zeros upstream.
ThetaRange positive_coefficient_range(double A, double B, double C) {
  const double mx = A + B + C;
  std::array<double, 3> v{A, B, C};
  const int nonzero = int(A > 0.0) + int(B > 0.0) + int(C > 0.0);
  if (nonzero < 3) return {-mx, mx};  // the surviving angle arguments decouple
  const double ra = 1.0 / A, rb = 1.0 / B, rc = 1.0 / C;
  double mn;
  if (ra + rb + rc <= 2.0 * std::max({ra, rb, rc}))
    mn = -mx + 2.0 * std::min({A, B, C});
  else
    mn = -(A * B * C / 2.0) * (ra * ra + rb * rb + rc * rc);
  return {mn, mx};
}

struct GridTables {
  std::array<double, kGrid> theta;
  std::array<double, kGrid> cosv;
  std::array<double, kGrid> cosdiff;  // cos(2 pi d / kGrid)
  GridTables() {
    for (int i = 0; i < kGrid; ++i) {
      theta[i] = -std::numbers::pi + 2.0 * std::numbers::pi * i / kGrid;
      cosv[i] = std::cos(theta[i]);
      cosdiff[i] = std::cos(2.0 * std::numbers::pi * i / kGrid);
    }
  }
};

double torus_value(double al, double be, double ga, double t1, double t2) {
  return al * std::cos(t2) + be * std::cos(t1) + ga * std::cos(t2 - t1);
}

// Newton iteration on the gradient of T from a grid seed; falls back to
// scaled gradient steps when the Hessian is near singular.
double refine_extremum(double al, double be, double ga, double t1, double t2,
                       bool maximize, double momentum) {
  const double scale = std::abs(al) + std::abs(be) + std::abs(ga);
  for (int iter = 0; iter < 200; ++iter) {
    const double d = t2 - t1;
    const double g1 = -be * std::sin(t1) + ga * std::sin(d);
    const double g2 = -al * std::sin(t2) - ga * std::sin(d);
    if (std::max(std::abs(g1), std::abs(g2)) < 1e-10) return torus_value(al, be, ga, t1, t2);
    const double h11 = -be * std::cos(t1) - ga * std::cos(d);
    const double h22 = -al * std::cos(t2) - ga * std::cos(d);
    const double h12 = ga * std::cos(d);
    const double det = h11 * h22 - h12 * h12;
    double s1, s2;
    if (std::abs(det) > 1e-12 * scale * scale) {
      s1 = -(h22 * g1 - h12 * g2) / det;
      s2 = -(-h12 * g1 + h11 * g2) / det;
      if (std::max(std::abs(s1), std::abs(s2)) > 0.5) {
        const double shrink = 0.5 / std::max(std::abs(s1), std::abs(s2));
        s1 *= shrink;
        s2 *= shrink;
      }
    } else {
      const double lr = (maximize ? 1.0 : -1.0) / scale;
      s1 = lr * g1;
      s2 = lr * g2;
    }
    t1 += s1;
    t2 += s2;
  }
  std::ostringstream msg;
  msg << "theta_extrema: refinement did not converge at momentum " << momentum;
  throw NumericError(msg.str());
}

}  // namespace

namespace detail {

ThetaRange theta_range_closed(double al, double be, double ga) {
  const double scale = std::abs(al) + std::abs(be) + std::abs(ga);
  if (scale == 0.0) return {0.0, 0.0};
  const double cut = 1e-9 * scale;
  const double A = (std::abs(ga) <= cut) ? 0.0 : std::abs(ga);
  const double B = (std::abs(al) <= cut) ? 0.0 : std::abs(al);
  const double C = (std::abs(be) <= cut) ? 0.0 : std::abs(be);
  const int negs = int(al < 0.0) + int(be < 0.0) + int(ga < 0.0);
  ThetaRange r = positive_coefficient_range(A, B, C);
  // Shifting theta components by pi flips coefficient signs pairwise, so an
  // odd number of negatives negates the whole range.
  if (negs % 2 == 1) return {-r.t_max, -r.t_min};
  return r;
}

SecularAffine secular_affine(const GeneralHexProblem& p, double momentum, Side side) {
  SecularAffine f;
  const double k = momentum;
  const double k2 = k * k, k4 = k2 * k2;
  if (side == Side::Positive) {
    const double sa = std::sin(p.a * k), sb = std::sin(p.b * k), sc = std::sin(p.c * k);
    const double ca = std::cos(p.a * k), cb = std::cos(p.b * k), cc = std::cos(p.c * k);
    f.constant = (3.0 * k4 + 1.0) * sa * sb * sc -
                 2.0 * k2 * (k2 + 1.0) * (ca * cb * sc + cb * cc * sa + cc * ca * sb);
    f.t_coeff = 2.0 * k2 * (k2 - 1.0);
    f.alpha = sb;
    f.beta = sc;
    f.gamma = sa;
  } else {
    const double sa = std::sinh(p.a * k), sb = std::sinh(p.b * k), sc = std::sinh(p.c * k);
    const double ca = std::cosh(p.a * k), cb = std::cosh(p.b * k), cc = std::cosh(p.c * k);
    f.constant = -(3.0 * k4 + 1.0) * sa * sb * sc -
                 2.0 * k2 * (k2 - 1.0) * (ca * cb * sc + cb * cc * sa + cc * ca * sb);
    f.t_coeff = 2.0 * k2 * (k2 + 1.0);
    f.alpha = sb;
    f.beta = sc;
    f.gamma = sa;
  }
  return f;
}

}  // namespace detail

double genhex_secular(const GeneralHexProblem& p, double k, const QuasiMomentum& q) {
  check_lengths(p);
  if (!(k > 0.0)) throw std::invalid_argument("genhex_secular requires k > 0");
  const auto f = detail::secular_affine(p, k, Side::Positive);
  const double t = f.alpha * std::cos(q.theta2) + f.beta * std::cos(q.theta1) +
                   f.gamma * std::cos(q.theta2 - q.theta1);
  return f.constant + f.t_coeff * t;
}

ThetaRange theta_extrema(const GeneralHexProblem& p, double momentum, Side side) {
  check_lengths(p);
  if (!(momentum > 0.0)) throw std::invalid_argument("theta_extrema requires momentum > 0");
  const auto f = detail::secular_affine(p, momentum, side);
  if (side == Side::Negative) {
    // sinh coefficients are all positive: closed forms apply directly.
    return positive_coefficient_range(f.gamma, f.alpha, f.beta);
  }
  const double scale = std::abs(f.alpha) + std::abs(f.beta) + std::abs(f.gamma);
  if (scale == 0.0) return {0.0, 0.0};
  const double cut = 1e-9 * scale;
  if (std::abs(f.alpha) <= cut || std::abs(f.beta) <= cut || std::abs(f.gamma) <= cut)
    return detail::theta_range_closed(f.alpha, f.beta, f.gamma);

  static const GridTables tab;
  double best_min = 0.0, best_max = 0.0;
  int imin = 0, jmin = 0, imax = 0, jmax = 0;
  bool first = true;
  for (int i = 0; i < kGrid; ++i) {
    for (int j = 0; j < kGrid; ++j) {
      const double v = f.alpha * tab.cosv[j] + f.beta * tab.cosv[i] +
                       f.gamma * tab.cosdiff[(j - i + kGrid) % kGrid];
      if (first || v < best_min) {
        best_min = v;
        imin = i;
        jmin = j;
      }
      if (first || v > best_max) {
        best_max = v;
        imax = i;
        jmax = j;
      }
      first = false;
    }
  }
  ThetaRange r;
  r.t_min = refine_extremum(f.alpha, f.beta, f.gamma, tab.theta[imin], tab.theta[jmin],
                            false, momentum);
  r.t_max = refine_extremum(f.alpha, f.beta, f.gamma, tab.theta[imax], tab.theta[jmax],
                            true, momentum);
  return r;
}

bool in_band_general(const GeneralHexProblem& p, double momentum, Side side) {
  check_lengths(p);
  if (!(momentum > 0.0)) throw std::invalid_argument("in_band_general requires momentum > 0");
  const auto f = detail::secular_affine(p, momentum, side);
  const auto r = detail::theta_range_closed(f.alpha, f.beta, f.gamma);
  return straddles_zero(f.constant + f.t_coeff * r.t_min,
                        f.constant + f.t_coeff * r.t_max);
}

namespace {

struct Frac {
  long long num = 0;
  long long den = 1;
  bool ok = false;
};

// Continued-fraction convergents of x; accepts the first one with
// |x - num/den| < tol / den^2. Convergents are best approximations, so if any
// such fraction with den <= max_den exists, a convergent realizes it.
Frac rational_approx(double x, double tol, long long max_den) {
  long long h_prev = 1, k_prev = 0;
  long long h = static_cast<long long>(std::floor(x));
  long long k = 1;
  double v = x;
  for (int iter = 0; iter < 64; ++iter) {
    if (k > max_den) break;
    const double err = std::abs(x - double(h) / double(k));
    if (err < tol / (double(k) * double(k))) return {h, k, true};
    const double frac = v - std::floor(v);
    if (frac < 1e-18) break;
    v = 1.0 / frac;
    const double af = std::floor(v);
    if (af > 9e15) break;
    const long long a = static_cast<long long>(af);
    const long long h_next = a * h + h_prev;
    const long long k_next = a * k + k_prev;
    h_prev = h;
    k_prev = k;
    h = h_next;
    k = k_next;
  }
  return {};
}

}  // namespace

CommensurabilityResult flat_bands_general(const GeneralHexProblem& p, double k_max,
                                          const CommensurabilityConfig& cfg) {
  check_lengths(p);
  if (!(k_max > 0.0)) throw std::invalid_argument("k_max must be positive");
  CommensurabilityResult res;
  const Frac fb = rational_approx(p.b / p.a, cfg.tol, cfg.max_denominator);
  const Frac fc = rational_approx(p.c / p.a, cfg.tol, cfg.max_denominator);
  if (!fb.ok || !fc.ok) return res;  // incommensurate within tolerance

  const long long L = std::lcm(fb.den, fc.den);
  long long P = L;
  long long Q = fb.num * (L / fb.den);
  long long R = fc.num * (L / fc.den);
  const long long g = std::gcd(std::gcd(P, Q), R);
  P /= g;
  Q /= g;
  R /= g;
  res.commensurate = true;
  res.p = P;
  res.q = Q;
  res.r = R;
  res.unit = p.a / double(P);
  for (int m = 1; double(m) * std::numbers::pi <= k_max * res.unit; ++m)
    res.momenta.push_back(double(m) * std::numbers::pi / res.unit);
  return res;
}

GapPrediction gap_halfwidth_prediction(const GeneralHexProblem& p, Anchor anchor,
                                       int m) {
  check_lengths(p);
  if (m < 1) throw std::invalid_argument("gap index m must be >= 1");
  double x, y, z;
  switch (anchor) {
    case Anchor::A: x = p.a; y = p.b; z = p.c; break;
    case Anchor::B: x = p.b; y = p.a; z = p.c; break;
    default:        x = p.c; y = p.a; z = p.b; break;
  }
  const double w = double(m) * std::numbers::pi / x;
  const double sy = std::sin(y * w), sz = std::sin(z * w);
  const double cy = std::cos(y * w), cz = std::cos(z * w);
  constexpr double zt = 1e-8;  // same scale as the commensurability tolerance
  const bool sy0 = std::abs(sy) < zt, sz0 = std::abs(sz) < zt;
  const bool cy0 = std::abs(cy) < zt, cz0 = std::abs(cz) < zt;

  GapPrediction g;
  if (sy0 && sz0) {
    g.kind = GapCase::FlatBand;
    return g;
  }
  if (cy0 && cz0) {
    g.kind = GapCase::InSpectrum;
    return g;
  }
  const double mpi = double(m) * std::numbers::pi;
  if (sy0 || sz0) {
    const double partner = sy0 ? y : z;
    const double other = sy0 ? z : y;
    g.kind = GapCase::CommensuratePair;
    g.halfwidth = 2.0 * x /
                  (mpi * std::sqrt(3.0 * x * partner + x * x + partner * partner +
                                   2.0 * partner * other + 2.0 * x * other));
    g.sign = 0;  // symmetric pair of roots
    return g;
  }
  const double denom = (5.0 * x + 2.0 * y + 2.0 * z) * mpi * mpi;
  if (cy0 || cz0) {
    const double other = cy0 ? z : y;
    const double cot = std::cos(other * w) / std::sin(other * w);
    const double val = 4.0 * x * x * cot / denom;
    g.kind = GapCase::CotangentLimit;
    g.halfwidth = std::abs(val);
    g.sign = (val > 0.0) - (val < 0.0);
    return g;
  }
  const double val = 4.0 * x * x * (sy * cz + sz * cy) / (denom * sy * sz);
  g.kind = GapCase::Incommensurate;
  g.halfwidth = std::abs(val);
  g.sign = (val > 0.0) - (val < 0.0);
  return g;
}

bool band_at_zero(const GeneralHexProblem& p) {
  check_lengths(p);
  const double a = p.a, b = p.b, c = p.c;
  const double abc = a * b * c;
  const double sum = a + b + c;
  const double ra = 1.0 / a, rb = 1.0 / b, rc = 1.0 / c;
  if (ra + rb + rc <= 2.0 * std::max({ra, rb, rc}))
    return 4.0 * std::min({a, b, c}) < abc && abc < 4.0 * sum;
  return 2.0 * sum - abc * (ra * ra + rb * rb + rc * rc) < abc && abc < 4.0 * sum;
}

std::vector<BandInterval> negative_bands_general(const GeneralHexProblem& p,
                                                 double kappa_max,
                                                 const ScanConfig& cfg) {
  check_lengths(p);
  if (!(kappa_max > kScanStart)) throw std::invalid_argument("kappa_max must be positive");
  auto bands = extract_bands(
      [&](double x) { return in_band_general(p, x, Side::Negative); }, kScanStart,
      kappa_max, cfg, Side::Negative);
  for (auto& b : bands)
    if (b.lo <= kScanStart) b = make_band(0.0, b.hi, b.side, b.kind);
  return bands;
}

SpectrumReport compute_genhex_spectrum(const GeneralHexProblem& p, double k_max,
                                       double kappa_max, const ScanConfig& cfg,
                                       const CommensurabilityConfig& ccfg) {
  check_lengths(p);
  if (!(k_max > kScanStart) || !(kappa_max > kScanStart))
    throw std::invalid_argument("scan windows must be positive");
  validate(cfg);

  SpectrumReport rep;
  rep.problem.type = "genhex";
  rep.problem.params = {{"a", p.a},
                        {"b", p.b},
                        {"c", p.c},
                        {"k_max", k_max},
                        {"kappa_max", kappa_max}};

  auto pos = extract_bands([&](double k) { return in_band_general(p, k, Side::Positive); },
                           kScanStart, k_max, cfg, Side::Positive);
  for (auto& b : pos)
    if (b.lo <= kScanStart) b = make_band(0.0, b.hi, b.side, b.kind);
  auto neg = negative_bands_general(p, kappa_max, cfg);

  rep.ac_bands = neg;
  rep.ac_bands.insert(rep.ac_bands.end(), pos.begin(), pos.end());
  std::sort(rep.ac_bands.begin(), rep.ac_bands.end(),
            [](const BandInterval& x, const BandInterval& y) {
              return x.energy_lo < y.energy_lo;
            });

  const auto comm = flat_bands_general(p, k_max, ccfg);
  rep.flat_bands = comm.momenta;
  if (comm.commensurate) {
    std::ostringstream note;
    note << "commensurate u=" << comm.unit << " (p,q,r)=(" << comm.p << "," << comm.q
         << "," << comm.r << ")";
    rep.problem.notes.push_back(note.str());
  } else {
    rep.problem.notes.push_back("incommensurate within tolerance");
  }
  rep.problem.notes.push_back(band_at_zero(p) ? "band_at_zero=true"
                                              : "band_at_zero=false");

  auto gaps_neg = complement_gaps(neg, 0.0, kappa_max, Side::Negative);
  auto gaps_pos = complement_gaps(pos, 0.0, k_max, Side::Positive);

  // Label positive gaps whose bracket contains m pi / x for one of the edge
  // lengths with the asymptotic classification.
  const std::array<std::pair<Anchor, double>, 3> anchors{
      {{Anchor::A, p.a}, {Anchor::B, p.b}, {Anchor::C, p.c}}};
  const std::array<const char*, 3> anchor_names{"a", "b", "c"};
  for (auto& gp : gaps_pos) {
    std::ostringstream note;
    bool any = false;
    for (std::size_t i = 0; i < anchors.size(); ++i) {
      const double x = anchors[i].second;
      const int m = static_cast<int>(std::lround(0.5 * (gp.lo + gp.hi) * x /
                                                 std::numbers::pi));
      if (m < 1) continue;
      const double point = double(m) * std::numbers::pi / x;
      if (point < gp.lo || point > gp.hi) continue;
      const auto pred = gap_halfwidth_prediction(p, anchors[i].first, m);
      if (any) note << "; ";
      note << "anchor=" << anchor_names[i] << " m=" << m << " case=";
      switch (pred.kind) {
        case GapCase::Incommensurate:   note << "incommensurate"; break;
        case GapCase::CommensuratePair: note << "commensurate-pair"; break;
        case GapCase::CotangentLimit:   note << "cotangent-limit"; break;
        case GapCase::InSpectrum:       note << "in-spectrum"; break;
        case GapCase::FlatBand:         note << "flat-band"; break;
      }
      if (pred.halfwidth) note << " halfwidth=" << *pred.halfwidth;
      any = true;
    }
    if (any) gp.note = note.str();
  }

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
