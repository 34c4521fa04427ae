#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace symctl {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;

// One tolerance policy shared by every rank and zero decision in the
// pipeline. A singular value σ is nonzero iff σ > rank_rel · max(rows, cols)
// · σ_max.
struct Tolerance {
  double rank_rel = 1e-10;
  // Absolute threshold for "entry is nonzero" tests (t_rs ≠ 0, ‖P e_m‖ ≠ 0)
  // and matrix residual checks (equivariance, idempotency, block residual).
  double entry_abs = 1e-9;

  double rank_threshold(double sigma_max, Eigen::Index rows,
                        Eigen::Index cols) const {
    return rank_rel * static_cast<double>(std::max(rows, cols)) * sigma_max;
  }
};

int numerical_rank(const Matrix& m, const Tolerance& tol = {});
int numerical_rank(const ComplexMatrix& m, const Tolerance& tol = {});

// Orthonormal basis of the column space, via SVD.
Matrix orthonormal_range(const Matrix& m, const Tolerance& tol = {});

double max_abs(const Matrix& m);

// Coefficients c_0..c_n of det(xI - M), monic (c_n = 1), c_k multiplies x^k.
std::vector<double> characteristic_polynomial(const Matrix& m);

// Largest relative coefficient discrepancy: max_k |a_k - b_k| / max(1, |a_k|, |b_k|).
double polynomial_discrepancy(const std::vector<double>& a,
                              const std::vector<double>& b);

std::vector<double> polynomial_product(const std::vector<double>& a,
                                       const std::vector<double>& b);

// Eigenvalues grouped into clusters whose members lie within `radius` of
// the cluster's first member. Returns one representative (mean) per cluster
// with the member count.
struct EigenCluster {
  std::complex<double> value;
  int algebraic_multiplicity = 0;
};
std::vector<EigenCluster> cluster_eigenvalues(
    const std::vector<std::complex<double>>& values, double radius);

std::vector<std::complex<double>> eigenvalues(const Matrix& m);

}  // namespace symctl
