#include "symctl/kernels.hpp"

#include <stdexcept>
#include <vector>

#include <omp.h>

namespace symctl {

namespace {

void check_shapes(std::span<const double> weights,
                  std::span<const Matrix> mats) {
  if (weights.size() != mats.size())
    throw std::invalid_argument("weighted_sum: weight/matrix count mismatch");
  if (mats.empty())
    throw std::invalid_argument("weighted_sum: empty matrix list");
  for (const auto& m : mats) {
    if (m.rows() != mats[0].rows() || m.cols() != mats[0].cols())
      throw std::invalid_argument("weighted_sum: inconsistent shapes");
  }
}

CommutatorResult commutator_of(const Matrix& a, const Matrix& g,
                               std::size_t idx) {
  CommutatorResult r;
  r.worst = idx;
  const Matrix diff = g * a - a * g;
  if (diff.size() > 0) r.residual = diff.cwiseAbs().maxCoeff(&r.row, &r.col);
  return r;
}

}  // namespace

int max_threads() { return omp_get_max_threads(); }

Matrix weighted_sum(std::span<const double> weights,
                    std::span<const Matrix> mats) {
  check_shapes(weights, mats);
  const Eigen::Index rows = mats[0].rows();
  const Eigen::Index cols = mats[0].cols();
  Matrix out = Matrix::Zero(rows, cols);
  const std::size_t count = mats.size();
#pragma omp parallel for schedule(static)
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (std::size_t g = 0; g < count; ++g) {
      const double w = weights[g];
      if (w == 0.0) continue;
      out.col(j) += w * mats[g].col(j);
    }
  }
  return out;
}

CommutatorResult max_commutator(const Matrix& a,
                                std::span<const Matrix> mats) {
  std::vector<CommutatorResult> per(mats.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t g = 0; g < mats.size(); ++g) {
    per[g] = commutator_of(a, mats[g], g);
  }
  CommutatorResult best;
  for (const auto& r : per)
    if (r.residual > best.residual) best = r;
  return best;
}

namespace reference {

Matrix weighted_sum(std::span<const double> weights,
                    std::span<const Matrix> mats) {
  check_shapes(weights, mats);
  Matrix out = Matrix::Zero(mats[0].rows(), mats[0].cols());
  for (std::size_t g = 0; g < mats.size(); ++g) {
    if (weights[g] == 0.0) continue;
    out += weights[g] * mats[g];
  }
  return out;
}

CommutatorResult max_commutator(const Matrix& a,
                                std::span<const Matrix> mats) {
  CommutatorResult best;
  for (std::size_t g = 0; g < mats.size(); ++g) {
    auto r = commutator_of(a, mats[g], g);
    if (r.residual > best.residual) best = r;
  }
  return best;
}

}  // namespace reference

}  // namespace symctl
