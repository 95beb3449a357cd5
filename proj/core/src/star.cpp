#include "hexspec/star.hpp"

#include <cassert>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hexspec {

StarSpectrum star_bound_states(int degree, double ell) {
  if (degree < 2) throw std::invalid_argument("star degree must be >= 2");
  if (!(ell > 0.0)) throw std::invalid_argument("length scale ell must be positive");

  StarSpectrum s;
  s.degree = degree;
  s.ell = ell;
  const int m_max = (degree % 2 == 1) ? degree / 2 : (degree - 1) / 2;
  for (int m = 1; m <= m_max; ++m) {
    const double t = std::tan(m * std::numbers::pi / degree);
    assert(t > 0.0);  // the stated m range never reaches tan <= 0
    const double kappa = 1.0 / (ell * t);
    s.kappas.push_back(kappa);
    s.energies.push_back(-kappa * kappa);
  }
  return s;
}

std::complex<double> star_secular_residual(int degree, double ell, double kappa) {
  const std::complex<double> zm(-1.0, -kappa * ell);
  const std::complex<double> zp(-1.0, kappa * ell);
  std::complex<double> a(1.0, 0.0), b(1.0, 0.0);
  for (int i = 0; i < degree; ++i) {
    a *= zm;
    b *= zp;
  }
  const double sign = (degree % 2 == 1) ? 1.0 : -1.0;
  return a + sign * b;
}

}  // namespace hexspec
