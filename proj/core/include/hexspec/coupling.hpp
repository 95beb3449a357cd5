#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace hexspec {

using Complex = std::complex<double>;

/// Thrown when a computation fails for numerical reasons (singular system,
/// non-converged refinement) as opposed to invalid input.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class CouplingKind { MinusR, R, PhasedR };

/// A circulant unitary vertex coupling (U - I) Psi + i l (U + I) Psi' = 0.
/// For MinusR the matrix is the negated cyclic shift: entry (j, j+1 mod N) = -1.
struct VertexCoupling {
  int degree = 0;
  double ell = 1.0;
  Eigen::MatrixXcd matrix;
};

/// Boundary values and outward derivatives of the edge functions at a vertex.
struct BoundaryData {
  Eigen::VectorXcd values;
  Eigen::VectorXcd derivatives;
};

struct SMatrix {
  double k = 0.0;
  Eigen::MatrixXcd entries;
};

/// High- and low-momentum limits of the on-shell S-matrix for the -R coupling.
/// For odd degree the k->0 limit degenerates to -I.
struct SMatrixLimits {
  Eigen::MatrixXd limit_inf;
  bool zero_is_minus_identity = false;
  Eigen::MatrixXd limit_zero;  // meaningful only when !zero_is_minus_identity
};

VertexCoupling build_coupling(CouplingKind kind, int degree, double ell,
                              double mu = 0.0);

/// Eigenvalues of the coupling matrix, sorted by principal argument in
/// (-pi, pi], ties broken by real part.
std::vector<Complex> coupling_spectrum(const VertexCoupling& coupling);

/// Max-norm of (U - I) Psi + i l (U + I) Psi'. Zero exactly on admissible data.
double vertex_residual(const VertexCoupling& coupling, const BoundaryData& data);

/// On-shell S-matrix S(k) = [(kl-1)I + (kl+1)U] [(kl+1)I + (kl-1)U]^{-1}.
/// Throws NumericError if the denominator is numerically singular.
SMatrix s_matrix(const VertexCoupling& coupling, double k);

SMatrixLimits s_matrix_limits(int degree);

/// ||M M* - I||_max, handy for checking unitarity.
double unitarity_defect(const Eigen::MatrixXcd& m);

}  // namespace hexspec
