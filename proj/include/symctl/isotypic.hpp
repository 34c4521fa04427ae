#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "symctl/linalg.hpp"
#include "symctl/network.hpp"
#include "symctl/representations.hpp"

namespace symctl {

class IsotypicError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// P = (n/(|Γ|·⟨χ,χ⟩)) Σ_γ χ(γ) M(γ); ⟨χ,χ⟩ = 1 unless the irrep is of
// complex (2) or quaternionic (4) type.
Matrix isotypic_projection(const IrrepInfo& irrep,
                           std::span<const Matrix> action);

// P^μ = (n/|Γ|) Σ_γ ρ(γ⁻¹)_{μμ} M(γ), μ 0-based. Orthogonal when the rep
// is orthogonal, oblique otherwise.
Matrix sa_projection(const IrrepInfo& irrep, const PermutationGroup& group,
                     std::span<const Matrix> action, int mu);

// Orthonormal basis of range(P) by Gram–Schmidt on P's columns, choosing at
// each step the column with the largest residual norm (leftmost on ties).
// Each basis vector is signed so that its first nonzero entry is positive.
// Throws IsotypicError if ‖P² − P‖_max > tol.entry_abs.
Matrix basis_of_image(const Matrix& p, const Tolerance& tol = {});

// One diagonal block of the transformed matrix: the μ-th copy for an
// absolutely irreducible irrep, or the whole isotypic component otherwise.
struct BlockInfo {
  int component = 0;  // index into IsotypicDecomposition::components
  int mu = 0;         // 0-based
  Eigen::Index offset = 0;
  Eigen::Index size = 0;
};

struct IsotypicComponent {
  std::string label;
  int irrep_dim = 0;     // n_i
  int isotypic_dim = 0;  // m_i
  int multiplicity = 0;  // d_i = m_i / n_i
  FsType fs = FsType::kReal;
  bool abs_irreducible = true;
  bool unitary = true;
  // True when the component is split into n_i symmetry-adapted blocks.
  bool refined = false;
  Matrix projection;
  std::vector<Matrix> sa_projections;  // empty unless refined
  std::vector<Matrix> bases;           // one per block
  std::vector<int> blocks;             // indices into IsotypicDecomposition::blocks

  // The projection attached to block μ of this component.
  const Matrix& block_projection(int mu) const {
    return refined ? sa_projections[mu] : projection;
  }
};

struct IsotypicDecomposition {
  int state_dim = 0;
  std::vector<IsotypicComponent> components;  // same order as the irreps
  std::vector<BlockInfo> blocks;              // T column order
  Matrix transform;                           // T
  bool orthogonal = true;                     // TᵀT = I within tolerance

  // S_i^μ: the block's basis at its T column positions, zeros elsewhere.
  Matrix embedding(int block) const;
  // Column of T where block (component, μ) starts.
  Eigen::Index column_of(int component, int mu) const;
};

struct DecomposeOptions {
  Tolerance tol;
  bool parallel = true;
};

// Isotypic and symmetry-adapted decomposition. Irreps with P = 0 are kept
// with m_i = 0 and contribute no columns to T. Throws IsotypicError when
// Σ m_i ≠ n (incomplete irrep list) or m_i is not a multiple of n_i.
IsotypicDecomposition decompose(const EquivariantSystem& system,
                                const std::vector<IrrepInfo>& irreps,
                                const DecomposeOptions& opts = {});
IsotypicDecomposition decompose(const PermutationGroup& group,
                                std::span<const Matrix> action,
                                const std::vector<IrrepInfo>& irreps,
                                const DecomposeOptions& opts = {});

struct BlockDiagonal {
  Matrix transformed;            // T⁻¹AT
  std::vector<Matrix> blocks;
  std::vector<Eigen::Index> block_sizes;
  double off_block_residual = 0.0;
};

// Ã = TᵀAT (T⁻¹AT when T is not orthogonal), cut into the decomposition's
// blocks. Throws IsotypicError when the off-block residual exceeds
// tol.entry_abs.
BlockDiagonal block_diagonalize(const Matrix& a,
                                const IsotypicDecomposition& dec,
                                const Tolerance& tol = {});
// Same with an externally supplied basis and block sizes; no residual
// check (inspect off_block_residual).
BlockDiagonal block_diagonalize(const Matrix& a, const Matrix& t,
                                const std::vector<Eigen::Index>& block_sizes);

struct IsomorphyReport {
  struct Entry {
    std::string label;
    int copies = 0;
    double discrepancy = 0.0;  // max relative char-poly coefficient gap
  };
  std::vector<Entry> components;
  double max_discrepancy = 0.0;
};

// Compares the characteristic polynomials of the blocks of each refined
// component.
IsomorphyReport verify_block_isomorphy(const IsotypicDecomposition& dec,
                                       const BlockDiagonal& bd);

}  // namespace symctl
