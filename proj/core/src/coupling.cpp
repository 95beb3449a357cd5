#include "hexspec/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace hexspec {

namespace {

void check_degree_ell(int degree, double ell) {
  if (degree < 2) throw std::invalid_argument("coupling degree must be >= 2");
  if (!(ell > 0.0)) throw std::invalid_argument("length scale ell must be positive");
}

}  // namespace

VertexCoupling build_coupling(CouplingKind kind, int degree, double ell, double mu) {
  check_degree_ell(degree, ell);
  Complex amp;
  switch (kind) {
    case CouplingKind::MinusR: amp = Complex(-1.0, 0.0); break;
    case CouplingKind::R:      amp = Complex(1.0, 0.0);  break;
    case CouplingKind::PhasedR: amp = std::polar(1.0, mu); break;
  }
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(degree, degree);
  for (int j = 0; j < degree; ++j) u(j, (j + 1) % degree) = amp;
  return VertexCoupling{degree, ell, std::move(u)};
}

std::vector<Complex> coupling_spectrum(const VertexCoupling& coupling) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(coupling.matrix, false);
  std::vector<Complex> eig(es.eigenvalues().data(),
                           es.eigenvalues().data() + coupling.degree);
  std::sort(eig.begin(), eig.end(), [](const Complex& x, const Complex& y) {
    double ax = std::arg(x), ay = std::arg(y);
    if (ax != ay) return ax < ay;
    return x.real() < y.real();
  });
  return eig;
}

double vertex_residual(const VertexCoupling& coupling, const BoundaryData& data) {
  const int n = coupling.degree;
  if (data.values.size() != n || data.derivatives.size() != n)
    throw std::invalid_argument("boundary data dimension does not match coupling degree");
  const Eigen::MatrixXcd& u = coupling.matrix;
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  Eigen::VectorXcd r = (u - id) * data.values +
                       Complex(0.0, coupling.ell) * ((u + id) * data.derivatives);
  return r.cwiseAbs().maxCoeff();
}

SMatrix s_matrix(const VertexCoupling& coupling, double k) {
  if (!(k > 0.0)) throw std::invalid_argument("s_matrix requires k > 0");
  const int n = coupling.degree;
  const double kl = k * coupling.ell;
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd num = (kl - 1.0) * id + (kl + 1.0) * coupling.matrix;
  Eigen::MatrixXcd den = (kl + 1.0) * id + (kl - 1.0) * coupling.matrix;

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(den);
  const double smin = svd.singularValues()(n - 1);
  const double smax = svd.singularValues()(0);
  if (smin <= 0.0 || smax / smin > 1e12) {
    std::ostringstream msg;
    msg << "singular S-matrix denominator at k = " << k
        << " (-(kl+1)/(kl-1) hits an eigenvalue of U)";
    throw NumericError(msg.str());
  }
  // num and den commute (both polynomials in U), so den^{-1} num = num den^{-1}.
  return SMatrix{k, den.partialPivLu().solve(num)};
}

SMatrixLimits s_matrix_limits(int degree) {
  if (degree < 2) throw std::invalid_argument("coupling degree must be >= 2");
  const int n = degree;
  SMatrixLimits lim;
  lim.limit_inf = Eigen::MatrixXd(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      lim.limit_inf(i, j) = (i == j) ? double(n - 2) / n : -2.0 / n;
  if (n % 2 == 1) {
    lim.zero_is_minus_identity = true;
    lim.limit_zero = -Eigen::MatrixXd::Identity(n, n);
  } else {
    lim.zero_is_minus_identity = false;
    lim.limit_zero = Eigen::MatrixXd(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        lim.limit_zero(i, j) = (i == j) ? double(2 - n) / n
                                        : (((i - j) % 2 == 0) ? 2.0 / n : -2.0 / n);
  }
  return lim;
}

double unitarity_defect(const Eigen::MatrixXcd& m) {
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(m.rows(), m.cols());
  return (m * m.adjoint() - id).cwiseAbs().maxCoeff();
}

}  // namespace hexspec
