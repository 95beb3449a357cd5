#pragma once

#include <complex>
#include <vector>

namespace hexspec {

/// Discrete negative spectrum of the N-edge star graph with the -R coupling.
/// kappa_m = 1 / (l tan(m pi / N)), m = 1..floor(N/2) for odd N and
/// m = 1..floor((N-1)/2) for even N; energies are -kappa_m^2.
struct StarSpectrum {
  int degree = 0;
  double ell = 1.0;
  std::vector<double> kappas;    // strictly decreasing in m
  std::vector<double> energies;  // -kappa^2, same order
};

StarSpectrum star_bound_states(int degree, double ell);

/// (-1 - i kappa l)^N + (-1)^{N-1} (-1 + i kappa l)^N; vanishes exactly at the
/// bound-state momenta.
std::complex<double> star_secular_residual(int degree, double ell, double kappa);

}  // namespace hexspec
