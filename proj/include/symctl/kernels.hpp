#pragma once

// Data-parallel inner loops. Each OpenMP kernel has a serial counterpart in
// symctl::reference with the same summation order, so results agree bitwise.

#include <span>

#include "symctl/linalg.hpp"

namespace symctl {

// Σ_g weights[g] · mats[g]. Parallel over output columns; within an entry
// the terms are accumulated in ascending g.
Matrix weighted_sum(std::span<const double> weights,
                    std::span<const Matrix> mats);

// max over g of ‖mats[g]·A − A·mats[g]‖_max, with the arg-max index.
struct CommutatorResult {
  double residual = 0.0;
  std::size_t worst = 0;
  Eigen::Index row = 0;
  Eigen::Index col = 0;
};
CommutatorResult max_commutator(const Matrix& a, std::span<const Matrix> mats);

int max_threads();

namespace reference {

Matrix weighted_sum(std::span<const double> weights,
                    std::span<const Matrix> mats);
CommutatorResult max_commutator(const Matrix& a, std::span<const Matrix> mats);

}  // namespace reference

}  // namespace symctl
