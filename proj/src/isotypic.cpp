#include "symctl/isotypic.hpp"

#include <cmath>

#include "symctl/kernels.hpp"

namespace symctl {

namespace {

std::vector<double> isotypic_weights(const IrrepInfo& irrep,
                                     std::size_t order) {
  // ⟨χ,χ⟩ is 1, 2 or 4 for real, complex or quaternionic type; dividing by
  // it makes P a projection for irreps that are not absolutely irreducible.
  const double norm = std::round(character_norm(irrep.character));
  const double scale = irrep.dim() / (static_cast<double>(order) * norm);
  std::vector<double> w(order);
  for (std::size_t g = 0; g < order; ++g) w[g] = scale * irrep.character(g);
  return w;
}

std::vector<double> sa_weights(const IrrepInfo& irrep,
                               const PermutationGroup& group, int mu) {
  const double scale = irrep.dim() / static_cast<double>(group.order());
  std::vector<double> w(group.order());
  for (std::size_t g = 0; g < group.order(); ++g) {
    w[g] = scale * irrep.rep(group.inverse(g))(mu, mu);
  }
  return w;
}

void check_action(const IrrepInfo& irrep, std::span<const Matrix> action) {
  if (irrep.rep.matrices.size() != action.size()) {
    throw IsotypicError("irrep '" + irrep.label() + "' has " +
                        std::to_string(irrep.rep.matrices.size()) +
                        " elements but the action has " +
                        std::to_string(action.size()));
  }
}

}  // namespace

Matrix isotypic_projection(const IrrepInfo& irrep,
                           std::span<const Matrix> action) {
  check_action(irrep, action);
  const auto w = isotypic_weights(irrep, action.size());
  return weighted_sum(w, action);
}

Matrix sa_projection(const IrrepInfo& irrep, const PermutationGroup& group,
                     std::span<const Matrix> action, int mu) {
  check_action(irrep, action);
  if (mu < 0 || mu >= irrep.dim()) {
    throw IsotypicError("sa_projection: mu out of range for '" +
                        irrep.label() + "'");
  }
  const auto w = sa_weights(irrep, group, mu);
  return weighted_sum(w, action);
}

Matrix basis_of_image(const Matrix& p, const Tolerance& tol) {
  if (p.rows() != p.cols()) throw IsotypicError("basis_of_image: P not square");
  const double idem = max_abs(p * p - p);
  if (idem > tol.entry_abs) {
    throw IsotypicError("basis_of_image: ‖P² − P‖ = " + std::to_string(idem) +
                        " exceeds tolerance");
  }
  const Eigen::Index n = p.rows();
  Matrix residual = p;
  std::vector<Vector> basis;
  const double scale = std::max(1.0, p.colwise().norm().maxCoeff());
  const double stop = tol.entry_abs * scale;
  for (Eigen::Index step = 0; step < n; ++step) {
    const Vector norms = residual.colwise().norm();
    const double best = norms.maxCoeff();
    if (best <= stop) break;
    Eigen::Index pivot = 0;
    while (norms(pivot) < best * (1.0 - 1e-12)) ++pivot;
    Vector q = residual.col(pivot) / norms(pivot);
    // Reorthogonalize once against the accepted vectors.
    for (const auto& b : basis) q -= b.dot(q) * b;
    q.normalize();
    residual -= q * (q.transpose() * residual);
    basis.push_back(std::move(q));
  }
  Matrix out(n, static_cast<Eigen::Index>(basis.size()));
  for (std::size_t k = 0; k < basis.size(); ++k) {
    Vector v = basis[k];
    for (Eigen::Index r = 0; r < n; ++r) {
      if (std::abs(v(r)) > tol.entry_abs) {
        if (v(r) < 0) v = -v;
        break;
      }
    }
    out.col(static_cast<Eigen::Index>(k)) = v;
  }
  return out;
}

Matrix IsotypicDecomposition::embedding(int block) const {
  const auto& b = blocks.at(block);
  Matrix s = Matrix::Zero(state_dim, state_dim);
  s.middleCols(b.offset, b.size) = transform.middleCols(b.offset, b.size);
  return s;
}

Eigen::Index IsotypicDecomposition::column_of(int component, int mu) const {
  for (const auto& b : blocks)
    if (b.component == component && b.mu == mu) return b.offset;
  throw IsotypicError("no block for component " + std::to_string(component) +
                      ", mu " + std::to_string(mu));
}

IsotypicDecomposition decompose(const EquivariantSystem& system,
                                const std::vector<IrrepInfo>& irreps,
                                const DecomposeOptions& opts) {
  return decompose(system.group(), system.lifted_action(), irreps, opts);
}

IsotypicDecomposition decompose(const PermutationGroup& group,
                                std::span<const Matrix> action,
                                const std::vector<IrrepInfo>& irreps,
                                const DecomposeOptions& opts) {
  if (action.empty()) throw IsotypicError("decompose: empty action");
  const auto n = action.front().rows();

  // Every projection needed, as independent weighted sums.
  struct Task {
    std::size_t irrep;
    int mu;  // -1 for the isotypic projection
  };
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < irreps.size(); ++i) {
    check_action(irreps[i], action);
    tasks.push_back({i, -1});
    if (irreps[i].abs_irreducible) {
      for (int mu = 0; mu < irreps[i].dim(); ++mu) tasks.push_back({i, mu});
    }
  }
  std::vector<Matrix> results(tasks.size());
  auto run = [&](std::size_t t) {
    const auto& task = tasks[t];
    const auto& irrep = irreps[task.irrep];
    const auto w = task.mu < 0 ? isotypic_weights(irrep, group.order())
                               : sa_weights(irrep, group, task.mu);
    results[t] = reference::weighted_sum(w, action);
  };
  if (opts.parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::size_t t = 0; t < tasks.size(); ++t) run(t);
  } else {
    for (std::size_t t = 0; t < tasks.size(); ++t) run(t);
  }

  IsotypicDecomposition dec;
  dec.state_dim = static_cast<int>(n);
  std::size_t next = 0;
  int total = 0;
  std::vector<Matrix> columns;
  Eigen::Index offset = 0;
  for (std::size_t i = 0; i < irreps.size(); ++i) {
    const auto& irrep = irreps[i];
    IsotypicComponent c;
    c.label = irrep.label();
    c.irrep_dim = irrep.dim();
    c.fs = irrep.fs;
    c.abs_irreducible = irrep.abs_irreducible;
    c.unitary = irrep.rep.unitary;
    c.projection = std::move(results[next++]);
    std::vector<Matrix> sa;
    if (irrep.abs_irreducible) {
      for (int mu = 0; mu < irrep.dim(); ++mu) sa.push_back(std::move(results[next++]));
    }
    // Eigenvalues of a projection are 0 or 1, so rank = trace.
    const double tr = c.projection.trace();
    c.isotypic_dim = static_cast<int>(std::lround(tr));
    if (std::abs(tr - c.isotypic_dim) > 1e-6) {
      throw IsotypicError("component '" + c.label + "': trace of projection " +
                          std::to_string(tr) +
                          " is not an integer (irrep inconsistent with the action)");
    }
    if (c.isotypic_dim % c.irrep_dim != 0) {
      throw IsotypicError("component '" + c.label + "' has dimension " +
                          std::to_string(c.isotypic_dim) +
                          ", not a multiple of the irrep dimension " +
                          std::to_string(c.irrep_dim));
    }
    c.multiplicity = c.isotypic_dim / c.irrep_dim;
    total += c.isotypic_dim;

    const int ci = static_cast<int>(dec.components.size());
    if (c.isotypic_dim > 0) {
      c.refined = irrep.abs_irreducible;
      if (c.refined) {
        c.sa_projections = std::move(sa);
        for (int mu = 0; mu < c.irrep_dim; ++mu) {
          Matrix b = basis_of_image(c.sa_projections[mu], opts.tol);
          if (b.cols() != c.multiplicity) {
            throw IsotypicError("component '" + c.label + "', mu " +
                                std::to_string(mu + 1) + ": rank " +
                                std::to_string(b.cols()) + " != multiplicity " +
                                std::to_string(c.multiplicity));
          }
          c.bases.push_back(std::move(b));
        }
      } else {
        c.bases.push_back(basis_of_image(c.projection, opts.tol));
      }
      for (std::size_t mu = 0; mu < c.bases.size(); ++mu) {
        const auto size = c.bases[mu].cols();
        c.blocks.push_back(static_cast<int>(dec.blocks.size()));
        dec.blocks.push_back({ci, static_cast<int>(mu), offset, size});
        offset += size;
        columns.push_back(c.bases[mu]);
      }
    }
    dec.components.push_back(std::move(c));
  }

  if (total != n) {
    throw IsotypicError("incomplete irrep list: isotypic dimensions sum to " +
                        std::to_string(total) + " of " + std::to_string(n) +
                        " (residual dimension " + std::to_string(n - total) +
                        ")");
  }
  dec.transform.resize(n, n);
  Eigen::Index col = 0;
  for (const auto& b : columns) {
    dec.transform.middleCols(col, b.cols()) = b;
    col += b.cols();
  }
  dec.orthogonal =
      max_abs(dec.transform.transpose() * dec.transform -
              Matrix::Identity(n, n)) <= opts.tol.entry_abs;
  return dec;
}

BlockDiagonal block_diagonalize(const Matrix& a, const Matrix& t,
                                const std::vector<Eigen::Index>& block_sizes) {
  if (a.rows() != t.rows() || t.rows() != t.cols()) {
    throw IsotypicError("block_diagonalize: shape mismatch");
  }
  BlockDiagonal bd;
  const Eigen::Index n = a.rows();
  const bool orthogonal =
      max_abs(t.transpose() * t - Matrix::Identity(n, n)) <= 1e-12 * n;
  bd.transformed = orthogonal ? Matrix(t.transpose() * a * t)
                              : Matrix(t.fullPivLu().solve(a * t));
  Matrix mask = Matrix::Ones(n, n);
  Eigen::Index off = 0;
  for (auto size : block_sizes) {
    bd.blocks.push_back(bd.transformed.block(off, off, size, size));
    bd.block_sizes.push_back(size);
    mask.block(off, off, size, size).setZero();
    off += size;
  }
  if (off != n) throw IsotypicError("block_diagonalize: block sizes do not sum to n");
  bd.off_block_residual = max_abs(bd.transformed.cwiseProduct(mask));
  return bd;
}

BlockDiagonal block_diagonalize(const Matrix& a,
                                const IsotypicDecomposition& dec,
                                const Tolerance& tol) {
  std::vector<Eigen::Index> sizes;
  for (const auto& b : dec.blocks) sizes.push_back(b.size);
  BlockDiagonal bd = block_diagonalize(a, dec.transform, sizes);
  if (bd.off_block_residual > tol.entry_abs) {
    throw IsotypicError(
        "block_diagonalize: off-block residual " +
        std::to_string(bd.off_block_residual) +
        " exceeds tolerance (A is not equivariant or the decomposition is inconsistent)");
  }
  return bd;
}

IsomorphyReport verify_block_isomorphy(const IsotypicDecomposition& dec,
                                       const BlockDiagonal& bd) {
  IsomorphyReport report;
  for (const auto& c : dec.components) {
    if (c.blocks.empty()) continue;
    IsomorphyReport::Entry e;
    e.label = c.label;
    e.copies = static_cast<int>(c.blocks.size());
    const auto ref = characteristic_polynomial(bd.blocks[c.blocks.front()]);
    for (std::size_t k = 1; k < c.blocks.size(); ++k) {
      e.discrepancy = std::max(
          e.discrepancy,
          polynomial_discrepancy(ref, characteristic_polynomial(bd.blocks[c.blocks[k]])));
    }
    report.max_discrepancy = std::max(report.max_discrepancy, e.discrepancy);
    report.components.push_back(e);
  }
  return report;
}

}  // namespace symctl
