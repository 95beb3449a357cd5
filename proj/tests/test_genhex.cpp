#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "hexspec/genhex.hpp"
#include "oracle_bloch.hpp"

using namespace hexspec;
using std::numbers::pi;
using std::numbers::sqrt2;
using std::numbers::sqrt3;

namespace {

double torus_T(const detail::SecularAffine& f, double t1, double t2) {
  return f.alpha * std::cos(t2) + f.beta * std::cos(t1) + f.gamma * std::cos(t2 - t1);
}

bool close_rel(double x, double y, double tol) {
  return std::abs(x - y) <= tol * std::max({1.0, std::abs(x), std::abs(y)});
}

// Term-by-term re-evaluation of the spectral function in extended precision,
// written independently of the library path.
long double secular_reference(double a, double b, double c, double k, double t1,
                              double t2) {
  const long double kk = k;
  const long double sa = std::sin((long double)a * kk), sb = std::sin((long double)b * kk),
                    sc = std::sin((long double)c * kk);
  const long double ca = std::cos((long double)a * kk), cb = std::cos((long double)b * kk),
                    cc = std::cos((long double)c * kk);
  const long double k2 = kk * kk, k4 = k2 * k2;
  const long double tt = sb * std::cos((long double)t2) + sc * std::cos((long double)t1) +
                         sa * std::cos((long double)t2 - (long double)t1);
  return (3.0L * k4 + 1.0L) * sa * sb * sc + 2.0L * k2 * (k2 - 1.0L) * tt -
         2.0L * k2 * (k2 + 1.0L) * (ca * cb * sc + cb * cc * sa + cc * ca * sb);
}

}  // namespace

TEST_SUITE_BEGIN("genhex");

TEST_CASE("secular function values") {
  SUBCASE("all sines vanish at k = pi for lengths (1,2,3)") {
    const GeneralHexProblem p{1.0, 2.0, 3.0};
    for (double t1 : {-2.0, 0.4})
      for (double t2 : {0.0, 1.3})
        CHECK(std::abs(genhex_secular(p, pi, {t1, t2})) < 1e-8);
  }
  SUBCASE("equal lengths reduce to the regular-lattice condition") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> ul(0.3, 3.0), uk(0.2, 5.0), ut(-pi, pi);
    for (int i = 0; i < 200; ++i) {
      const double l = ul(rng), k = uk(rng), t1 = ut(rng), t2 = ut(rng);
      const double d = std::cos(t1) + std::cos(t2) + std::cos(t1 - t2);
      const double lhs = genhex_secular({l, l, l}, k, {t1, t2});
      const double rhs =
          -0.5 * std::sin(k * l) * hex_secular_cleared({l, HexCoupling::MinusR}, k, d);
      CHECK(close_rel(lhs, rhs, 1e-10));
    }
  }
  SUBCASE("independent re-evaluation") {
    const GeneralHexProblem p{1.0, sqrt2, sqrt3};
    const double k = 2.7;
    const double lhs = genhex_secular(p, k, {0.3, -1.1});
    const long double ref = secular_reference(1.0, sqrt2, sqrt3, k, 0.3, -1.1);
    CHECK(std::abs(lhs - double(ref)) <= 1e-12 * std::max(1.0, std::abs(double(ref))));
  }
  SUBCASE("affine in the torus block") {
    std::mt19937 rng(8);
    std::uniform_real_distribution<double> ut(-pi, pi);
    const GeneralHexProblem p{0.8, 1.7, 2.2};
    for (double k : {0.7, 2.3, 4.9}) {
      const auto f = detail::secular_affine(p, k, Side::Positive);
      for (int i = 0; i < 50; ++i) {
        const double t1 = ut(rng), t2 = ut(rng);
        const double via_affine = f.constant + f.t_coeff * torus_T(f, t1, t2);
        CHECK(close_rel(genhex_secular(p, k, {t1, t2}), via_affine, 1e-12));
        // (t1, t2) -> (-t1, -t2) preserves T exactly
        CHECK(genhex_secular(p, k, {t1, t2}) ==
              doctest::Approx(genhex_secular(p, k, {-t1, -t2})).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("Bloch determinant oracle confirms the dilated spectral condition") {
  std::mt19937 rng(12);
  std::uniform_real_distribution<double> ul(0.3, 3.0), uk(0.2, 6.0), ut(-pi, pi);
  const std::complex<double> expected_factor(0.0, 32.0);
  for (int trial = 0; trial < 80; ++trial) {
    const double a = ul(rng), b = ul(rng), c = ul(rng);
    const double t1 = ut(rng), t2 = ut(rng);
    const GeneralHexProblem p{a, b, c};
    if (trial % 2 == 0) {
      const double k = uk(rng);
      // quasimomentum labels in the determinant are swapped w.r.t. the closed form
      const double rhs = genhex_secular(p, k, {t2, t1});
      const auto det = testing::bloch_det_corrected(a, b, c, k, t1, t2, -1.0);
      const auto want = expected_factor * rhs;
      CHECK(std::abs(det - want) <= 1e-9 * (1.0 + std::abs(det) + std::abs(want)));
    } else {
      const double kap = 0.1 + 2.0 * (trial / 80.0);
      const auto f = detail::secular_affine(p, kap, Side::Negative);
      const double rhs = f.constant + f.t_coeff * torus_T(f, t2, t1);
      const auto det = testing::bloch_det_corrected(a, b, c, {0.0, kap}, t1, t2, -1.0);
      const std::complex<double> want(-32.0 * rhs, 0.0);
      CHECK(std::abs(det - want) <= 1e-9 * (1.0 + std::abs(det) + std::abs(want)));
    }
  }
}

TEST_CASE("theta extrema") {
  SUBCASE("closed-form ranges for the lemma cases") {
    const auto equal = detail::theta_range_closed(1.0, 1.0, 1.0);
    CHECK(equal.t_min == doctest::Approx(-1.5).epsilon(1e-12));
    CHECK(equal.t_max == doctest::Approx(3.0).epsilon(1e-12));
    // coefficient 5 on the cos(theta2-theta1) slot: the reciprocal triangle
    // condition holds, so the stationary-point value -(abc/2) sum(1/x^2) wins
    const auto skew = detail::theta_range_closed(1.0, 1.0, 5.0);
    CHECK(skew.t_min == doctest::Approx(-5.1).epsilon(1e-12));
    CHECK(skew.t_max == doctest::Approx(7.0).epsilon(1e-12));
    // dominant reciprocal: corner minimum
    const auto corner = detail::theta_range_closed(10.0, 10.0, 1.0);
    CHECK(corner.t_min == doctest::Approx(-19.0).epsilon(1e-12));
  }
  SUBCASE("negative side maximum is the coefficient sum") {
    const GeneralHexProblem p{0.7, 1.1, 2.9};
    const double kap = 0.9;
    const auto r = theta_extrema(p, kap, Side::Negative);
    const double want = std::sinh(0.7 * kap) + std::sinh(1.1 * kap) + std::sinh(2.9 * kap);
    CHECK(r.t_max == doctest::Approx(want).epsilon(1e-12));
    CHECK(r.t_min < 0.0);
  }
  SUBCASE("grid + refinement agrees with the closed form") {
    std::mt19937 rng(21);
    std::uniform_real_distribution<double> ul(0.3, 3.0), uk(0.2, 8.0);
    for (int i = 0; i < 150; ++i) {
      const GeneralHexProblem p{ul(rng), ul(rng), ul(rng)};
      const double k = uk(rng);
      const auto grid = theta_extrema(p, k, Side::Positive);
      const auto f = detail::secular_affine(p, k, Side::Positive);
      const auto closed = detail::theta_range_closed(f.alpha, f.beta, f.gamma);
      const double scale = std::abs(f.alpha) + std::abs(f.beta) + std::abs(f.gamma) + 1.0;
      CHECK(std::abs(grid.t_min - closed.t_min) < 1e-9 * scale);
      CHECK(std::abs(grid.t_max - closed.t_max) < 1e-9 * scale);
    }
  }
  SUBCASE("extrema bound the torus values") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> ut(-pi, pi), uk(0.2, 8.0);
    const GeneralHexProblem p{1.0, sqrt2, sqrt3};
    for (int rep = 0; rep < 4; ++rep) {
      const double k = uk(rng);
      const auto r = theta_extrema(p, k, Side::Positive);
      const auto f = detail::secular_affine(p, k, Side::Positive);
      CHECK(std::abs(r.t_min) <=
            std::abs(f.alpha) + std::abs(f.beta) + std::abs(f.gamma) + 1e-12);
      for (int i = 0; i < 1000; ++i) {
        const double t = torus_T(f, ut(rng), ut(rng));
        CHECK(t >= r.t_min - 1e-9);
        CHECK(t <= r.t_max + 1e-9);
      }
    }
  }
  SUBCASE("flat-band momentum collapses the range") {
    const auto r = theta_extrema({1.0, 2.0, 3.0}, pi, Side::Positive);
    CHECK(std::abs(r.t_min) < 1e-10);
    CHECK(std::abs(r.t_max) < 1e-10);
  }
}

TEST_CASE("permutation symmetry of band membership") {
  const GeneralHexProblem base{0.9, 1.6, 2.3};
  const GeneralHexProblem perms[] = {{0.9, 2.3, 1.6}, {1.6, 0.9, 2.3}, {2.3, 1.6, 0.9},
                                     {1.6, 2.3, 0.9}, {2.3, 0.9, 1.6}};
  for (int i = 0; i < 2000; ++i) {
    const double k = 0.05 + 0.004 * i;
    const bool want_pos = in_band_general(base, k, Side::Positive);
    const bool want_neg = (k <= 3.0) ? in_band_general(base, k, Side::Negative) : false;
    for (const auto& p : perms) {
      CHECK(in_band_general(p, k, Side::Positive) == want_pos);
      if (k <= 3.0) CHECK(in_band_general(p, k, Side::Negative) == want_neg);
    }
  }
}

TEST_CASE("equal lengths reproduce the regular-lattice predicates") {
  const double l = 1.0;
  const RegularHexProblem hex{l, HexCoupling::MinusR};
  const GeneralHexProblem gen{l, l, l};
  for (int i = 1; i <= 2000; ++i) {
    const double k = 12.0 * i / 2000.0;
    CHECK(in_band_general(gen, k, Side::Positive) == in_positive_band(hex, k));
  }
  for (int i = 1; i <= 2000; ++i) {
    const double kap = 2.5 * i / 2000.0;
    CHECK(in_band_general(gen, kap, Side::Negative) == in_negative_band(hex, kap));
  }
}

TEST_CASE("flat bands and commensurability") {
  SUBCASE("(1,2,3) has unit measure 1") {
    const auto res = flat_bands_general({1.0, 2.0, 3.0}, 7.0);
    REQUIRE(res.commensurate);
    CHECK(res.unit == doctest::Approx(1.0));
    CHECK(res.p == 1);
    CHECK(res.q == 2);
    CHECK(res.r == 3);
    REQUIRE(res.momenta.size() == 2);
    CHECK(res.momenta[0] == doctest::Approx(pi));
    CHECK(res.momenta[1] == doctest::Approx(2.0 * pi));
  }
  SUBCASE("(1, sqrt2, sqrt3) is incommensurate within tolerance") {
    const auto res = flat_bands_general({1.0, sqrt2, sqrt3}, 50.0);
    CHECK(!res.commensurate);
    CHECK(res.momenta.empty());
    // the 11-digit decimal truncations behave the same way
    const auto res2 = flat_bands_general({1.0, 1.41421356237, 1.73205080757}, 50.0);
    CHECK(!res2.commensurate);
  }
  SUBCASE("(0.5, 1.5, 2.5) has unit 0.5") {
    const auto res = flat_bands_general({0.5, 1.5, 2.5}, 13.0);
    REQUIRE(res.commensurate);
    CHECK(res.unit == doctest::Approx(0.5));
    REQUIRE(res.momenta.size() == 2);
    CHECK(res.momenta[0] == doctest::Approx(2.0 * pi));
    CHECK(res.momenta[1] == doctest::Approx(4.0 * pi));
    for (double k : res.momenta) {
      CHECK(std::abs(std::sin(0.5 * k)) < 1e-12);
      CHECK(std::abs(std::sin(1.5 * k)) < 1e-12);
      CHECK(std::abs(std::sin(2.5 * k)) < 1e-12);
    }
  }
}

TEST_CASE("gap halfwidth classification") {
  SUBCASE("incommensurate case") {
    const GeneralHexProblem p{1.0, sqrt2, sqrt3};
    const int m = 20;
    const auto g = gap_halfwidth_prediction(p, Anchor::A, m);
    REQUIRE(g.kind == GapCase::Incommensurate);
    const double sy = std::sin(sqrt2 * m * pi), sz = std::sin(sqrt3 * m * pi);
    const double cy = std::cos(sqrt2 * m * pi), cz = std::cos(sqrt3 * m * pi);
    const double want = 4.0 * (sy * cz + sz * cy) /
                        ((5.0 + 2.0 * sqrt2 + 2.0 * sqrt3) * sy * sz * m * m * pi * pi);
    REQUIRE(g.halfwidth.has_value());
    CHECK(*g.halfwidth == doctest::Approx(std::abs(want)).epsilon(1e-12));
    CHECK(g.sign == (want > 0 ? 1 : -1));
  }
  SUBCASE("commensurate pair") {
    const GeneralHexProblem p{1.0, 2.0, sqrt3};
    const auto g = gap_halfwidth_prediction(p, Anchor::A, 60);
    REQUIRE(g.kind == GapCase::CommensuratePair);
    REQUIRE(g.halfwidth.has_value());
    CHECK(*g.halfwidth ==
          doctest::Approx(2.0 / (60.0 * pi * std::sqrt(11.0 + 6.0 * sqrt3))).epsilon(1e-12));
  }
  SUBCASE("flat band") {
    const auto g = gap_halfwidth_prediction({1.0, 2.0, 3.0}, Anchor::A, 5);
    CHECK(g.kind == GapCase::FlatBand);
    CHECK(!g.halfwidth.has_value());
  }
  SUBCASE("both partner cosines vanish: the point is spectrum") {
    const GeneralHexProblem p{1.0, 0.5, 1.5};
    const auto g = gap_halfwidth_prediction(p, Anchor::A, 1);
    CHECK(g.kind == GapCase::InSpectrum);
    CHECK(in_band_general(p, pi, Side::Positive));
  }
  SUBCASE("cotangent limit") {
    const GeneralHexProblem p{1.0, 0.5, sqrt3};
    const auto g = gap_halfwidth_prediction(p, Anchor::A, 1);
    REQUIRE(g.kind == GapCase::CotangentLimit);
    const double want = 4.0 * (std::cos(sqrt3 * pi) / std::sin(sqrt3 * pi)) /
                        ((5.0 + 1.0 + 2.0 * sqrt3) * pi * pi);
    REQUIRE(g.halfwidth.has_value());
    CHECK(*g.halfwidth == doctest::Approx(std::abs(want)).epsilon(1e-12));
  }
  SUBCASE("anchor permutation") {
    // anchoring on b in (2,1,sqrt3) matches anchoring on a in (1,2,sqrt3)
    // after rescaling m (same physical points k = m pi / 2 need even m on a).
    const auto g = gap_halfwidth_prediction({2.0, 1.0, sqrt3}, Anchor::A, 30);
    CHECK(g.kind == GapCase::CommensuratePair);
  }
  SUBCASE("invalid m") {
    CHECK_THROWS_AS(gap_halfwidth_prediction({1, 1, 1}, Anchor::A, 0), std::invalid_argument);
  }
}

TEST_CASE("low-energy band criterion") {
  CHECK(!band_at_zero({1.0, 1.0, 1.0}));
  CHECK(band_at_zero({2.0, 2.0, 2.0}));
  CHECK(!band_at_zero({4.0, 4.0, 4.0}));
  // direct-scan agreement at a near-zero momentum
  CHECK(in_band_general({2.0, 2.0, 2.0}, 0.01, Side::Positive));
  CHECK(!in_band_general({1.0, 1.0, 1.0}, 0.01, Side::Positive));
}

TEST_CASE("negative bands of the dilated lattice") {
  SUBCASE("(1,1,1) matches the regular lattice") {
    ScanConfig cfg = default_scan_config(1.0);
    const auto gen = negative_bands_general({1.0, 1.0, 1.0}, 3.0, cfg);
    const auto hex = extract_bands(
        [](double x) { return in_negative_band({1.0, HexCoupling::MinusR}, x); }, 1e-7,
        3.0, cfg, Side::Negative);
    REQUIRE(gen.size() == hex.size());
    for (std::size_t i = 0; i < gen.size(); ++i) {
      CHECK(std::abs(gen[i].lo - hex[i].lo) < 10.0 * cfg.edge_tolerance);
      CHECK(std::abs(gen[i].hi - hex[i].hi) < 10.0 * cfg.edge_tolerance);
    }
  }
  SUBCASE("(7,7,7) has two bands") {
    ScanConfig cfg;
    cfg.grid_step = 5e-5;
    cfg.edge_tolerance = 1e-10;
    const auto bands = negative_bands_general({7.0, 7.0, 7.0}, 1.5, cfg);
    CHECK(bands.size() == 2);
  }
  SUBCASE("random triples have one or two bands") {
    std::mt19937 rng(55);
    std::uniform_real_distribution<double> ul(0.3, 8.0);
    ScanConfig cfg;
    cfg.grid_step = 2e-5;
    cfg.edge_tolerance = 1e-10;
    for (int i = 0; i < 20; ++i) {
      const GeneralHexProblem p{ul(rng), ul(rng), ul(rng)};
      const auto bands = negative_bands_general(p, 4.0, cfg);
      CHECK(bands.size() >= 1);
      CHECK(bands.size() <= 2);
    }
  }
}

TEST_CASE("dilated spectrum report") {
  ScanConfig cfg = default_scan_config(3.0);
  const auto rep = compute_genhex_spectrum({1.0, 2.0, 3.0}, 10.0, 2.0, cfg);
  REQUIRE(rep.flat_bands.size() == 3);
  CHECK(rep.flat_bands[0] == doctest::Approx(pi));
  CHECK(rep.flat_bands[2] == doctest::Approx(3.0 * pi));
  bool saw_commensurate = false, saw_zero_flag = false;
  for (const auto& n : rep.problem.notes) {
    if (n.find("commensurate") == 0) saw_commensurate = true;
    if (n.find("band_at_zero=true") != std::string::npos) saw_zero_flag = true;
  }
  CHECK(saw_commensurate);
  CHECK(saw_zero_flag);
  CHECK(rep.measure_fraction > 0.0);
}

TEST_CASE("no gap opens at the Dirichlet points of an incommensurate lattice") {
  // At k ~ m pi / a the condition stays solvable: the theta block reaches
  // sin(bk) cos(t2) + sin(ck) cos(t1) = (k^2+1)/(k^2-1) * sin((b+c)k), whose
  // magnitude is below |sin bk| + |sin ck| whenever both sines are O(1).
  // (Confirmed against the plane-wave determinant oracle above.)
  const GeneralHexProblem p{1.0, sqrt2, sqrt3};
  for (int m : {20, 40, 80}) {
    const auto pred = gap_halfwidth_prediction(p, Anchor::A, m);
    REQUIRE(pred.halfwidth.has_value());
    const double k0 = m * pi;
    CHECK(in_band_general(p, k0, Side::Positive));
    CHECK(in_band_general(p, k0 - 0.5 * *pred.halfwidth, Side::Positive));
    CHECK(in_band_general(p, k0 + 0.5 * *pred.halfwidth, Side::Positive));
  }
}

TEST_SUITE_END();
