// Test-only oracle: the full Bloch-Floquet linear system on the hexagonal
// period cell, set up from the plane-wave coefficients directly (12 unknowns:
// C_j^+-, D_j^+- for the three edge directions). Its determinant vanishes
// exactly at the generalized eigenvalues, independently of any closed-form
// spectral condition. The quasimomentum components enter the determinant with
// labels swapped relative to the closed forms (cos(theta2 - theta1) is
// symmetric, so band sets coincide).
#pragma once

#include <array>
#include <complex>

#include <Eigen/Dense>

namespace hexspec::testing {

using Cx = std::complex<double>;

// coupling_sign: -1 builds U = -R, +1 builds U = R.
inline Eigen::MatrixXcd bloch_system(double a, double b, double c, Cx k,
                                     double th1, double th2, double coupling_sign) {
  const Cx i(0.0, 1.0);
  const double s = coupling_sign;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(12, 12);

  // Columns: C1+, C1-, C2+, C2-, C3+, C3-, D1+, D1-, D2+, D2-, D3+, D3-.
  // Smooth matching at the center of edge 1, quasiperiodicity on edges 2, 3.
  m(0, 6) = 1.0; m(0, 0) = -1.0;
  m(1, 7) = 1.0; m(1, 1) = -1.0;
  m(2, 8) = 1.0; m(2, 2) = -std::exp(i * k * b) * std::exp(-i * th2);
  m(3, 9) = 1.0; m(3, 3) = -std::exp(-i * k * b) * std::exp(-i * th2);
  m(4, 10) = 1.0; m(4, 4) = -std::exp(i * k * c) * std::exp(-i * th1);
  m(5, 11) = 1.0; m(5, 5) = -std::exp(-i * k * c) * std::exp(-i * th1);

  struct Trace {
    int col;
    Cx v[2];  // boundary value coefficients for the +, - plane waves
    Cx w[2];  // outward derivative coefficients
  };

  auto value = [&](double x) { return std::array<Cx, 2>{std::exp(i * k * x), std::exp(-i * k * x)}; };
  auto deriv = [&](double x) {
    return std::array<Cx, 2>{i * k * std::exp(i * k * x), -i * k * std::exp(-i * k * x)};
  };

  auto fill_vertex = [&](int first_row, const Trace t[3]) {
    for (int j = 0; j < 3; ++j) {
      const Trace& cur = t[j];
      const Trace& nxt = t[(j + 1) % 3];
      Eigen::RowVectorXcd row = Eigen::RowVectorXcd::Zero(12);
      for (int p = 0; p < 2; ++p) {
        row(nxt.col + p) += s * nxt.v[p] + i * s * nxt.w[p];
        row(cur.col + p) += -cur.v[p] + i * cur.w[p];
      }
      m.row(first_row + j) = row;
    }
  };

  // Vertex where the psi halves meet: edge 1 arrives at x=a/2, edges 2 and 3
  // start at x=0; outward derivatives point away from the vertex.
  {
    Trace t[3];
    auto v1 = value(a / 2), w1 = deriv(a / 2);
    t[0] = {0, {v1[0], v1[1]}, {-w1[0], -w1[1]}};
    auto v0 = value(0.0), w0 = deriv(0.0);
    t[1] = {2, {v0[0], v0[1]}, {w0[0], w0[1]}};
    t[2] = {4, {v0[0], v0[1]}, {w0[0], w0[1]}};
    fill_vertex(6, t);
  }
  // Vertex where the phi halves meet: edge 1 starts at x=-a/2, edges 2 and 3
  // arrive at x=0.
  {
    Trace t[3];
    auto v1 = value(-a / 2), w1 = deriv(-a / 2);
    t[0] = {6, {v1[0], v1[1]}, {w1[0], w1[1]}};
    auto v0 = value(0.0), w0 = deriv(0.0);
    t[1] = {8, {v0[0], v0[1]}, {-w0[0], -w0[1]}};
    t[2] = {10, {v0[0], v0[1]}, {-w0[0], -w0[1]}};
    fill_vertex(9, t);
  }
  return m;
}

// det times the Bloch phase e^{i(th1+th2)}; removes the only theta-dependent
// prefactor, leaving a constant multiple of the secular function.
inline Cx bloch_det_corrected(double a, double b, double c, Cx k, double th1,
                              double th2, double coupling_sign) {
  const Cx det = bloch_system(a, b, c, k, th1, th2, coupling_sign).determinant();
  return det * std::exp(Cx(0.0, th1 + th2));
}

}  // namespace hexspec::testing
