#include "symctl/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace symctl {

namespace {

template <typename M>
int rank_impl(const M& m, const Tolerance& tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<M> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  const double thr = tol.rank_threshold(s(0), m.rows(), m.cols());
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > thr) ++r;
  return r;
}

}  // namespace

int numerical_rank(const Matrix& m, const Tolerance& tol) {
  return rank_impl(m, tol);
}

int numerical_rank(const ComplexMatrix& m, const Tolerance& tol) {
  return rank_impl(m, tol);
}

Matrix orthonormal_range(const Matrix& m, const Tolerance& tol) {
  if (m.size() == 0) return Matrix(m.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return Matrix(m.rows(), 0);
  const double thr = tol.rank_threshold(s(0), m.rows(), m.cols());
  Eigen::Index r = 0;
  while (r < s.size() && s(r) > thr) ++r;
  return svd.matrixU().leftCols(r);
}

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

std::vector<std::complex<double>> eigenvalues(const Matrix& m) {
  std::vector<std::complex<double>> out;
  if (m.rows() == 0) return out;
  Eigen::EigenSolver<Matrix> es(m, false);
  const auto& ev = es.eigenvalues();
  out.assign(ev.data(), ev.data() + ev.size());
  return out;
}

std::vector<double> characteristic_polynomial(const Matrix& m) {
  // Expand prod (x - λ_i); conjugate pairs keep the result real.
  std::vector<std::complex<double>> c{1.0};
  for (const auto& lambda : eigenvalues(m)) {
    std::vector<std::complex<double>> next(c.size() + 1, 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= lambda * c[k];
    }
    c = std::move(next);
  }
  std::vector<double> out(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) out[k] = c[k].real();
  return out;
}

double polynomial_discrepancy(const std::vector<double>& a,
                              const std::vector<double>& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double scale = std::max({1.0, std::abs(a[k]), std::abs(b[k])});
    worst = std::max(worst, std::abs(a[k] - b[k]) / scale);
  }
  return worst;
}

std::vector<double> polynomial_product(const std::vector<double>& a,
                                       const std::vector<double>& b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

std::vector<EigenCluster> cluster_eigenvalues(
    const std::vector<std::complex<double>>& values, double radius) {
  std::vector<EigenCluster> clusters;
  std::vector<std::complex<double>> sums;
  std::vector<std::complex<double>> anchors;
  for (const auto& v : values) {
    bool placed = false;
    for (std::size_t c = 0; c < anchors.size(); ++c) {
      if (std::abs(v - anchors[c]) <= radius) {
        sums[c] += v;
        ++clusters[c].algebraic_multiplicity;
        placed = true;
        break;
      }
    }
    if (!placed) {
      anchors.push_back(v);
      sums.push_back(v);
      clusters.push_back({v, 1});
    }
  }
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    clusters[c].value =
        sums[c] / static_cast<double>(clusters[c].algebraic_multiplicity);
  }
  return clusters;
}

}  // namespace symctl
