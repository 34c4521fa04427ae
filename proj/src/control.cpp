#include "symctl/control.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace symctl {

const char* to_string(RankMethod m) {
  switch (m) {
    case RankMethod::kKalman:
      return "kalman";
    case RankMethod::kSubspace:
      return "subspace";
    case RankMethod::kPbh:
      return "pbh";
  }
  return "?";
}

RankMethod parse_rank_method(const std::string& name) {
  if (name == "kalman") return RankMethod::kKalman;
  if (name == "subspace") return RankMethod::kSubspace;
  if (name == "pbh") return RankMethod::kPbh;
  throw std::invalid_argument("unknown rank method '" + name +
                              "' (expected kalman, subspace or pbh)");
}

Matrix controllability_matrix(const Matrix& a, const Matrix& b) {
  if (a.rows() != a.cols() || b.rows() != a.rows()) {
    throw std::invalid_argument("controllability_matrix: shape mismatch");
  }
  const Eigen::Index n = a.rows();
  const Eigen::Index p = b.cols();
  Matrix k(n, n * p);
  if (p == 0) return k;
  k.leftCols(p) = b;
  for (Eigen::Index i = 1; i < n; ++i) {
    k.middleCols(i * p, p) = a * k.middleCols((i - 1) * p, p);
  }
  return k;
}

Matrix observability_matrix(const Matrix& a, const Matrix& c) {
  return controllability_matrix(a.transpose(), c.transpose()).transpose();
}

Matrix unit_columns(int n, const std::vector<int>& indices) {
  Matrix b = Matrix::Zero(n, static_cast<Eigen::Index>(indices.size()));
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (indices[k] < 0 || indices[k] >= n) {
      throw std::out_of_range("unit_columns: index " +
                              std::to_string(indices[k] + 1) +
                              " outside 1.." + std::to_string(n));
    }
    b(indices[k], static_cast<Eigen::Index>(k)) = 1.0;
  }
  return b;
}

namespace {

Matrix unit_norm_scaled(const Matrix& a) {
  if (a.size() == 0) return a;
  const double norm = a.operatorNorm();
  return norm > 0.0 ? Matrix(a / norm) : a;
}

}  // namespace

int controllable_subspace_dim(const Matrix& a, const Matrix& b,
                              const Tolerance& tol) {
  if (b.cols() == 0) return 0;
  const Matrix as = unit_norm_scaled(a);
  Matrix v = orthonormal_range(b, tol);
  while (v.cols() < a.rows()) {
    Matrix stacked(a.rows(), 2 * v.cols());
    stacked << v, as * v;
    Matrix w = orthonormal_range(stacked, tol);
    if (w.cols() <= v.cols()) break;
    v = std::move(w);
  }
  return static_cast<int>(v.cols());
}

int pbh_rank(const Matrix& a, const Matrix& b, std::complex<double> s,
             const Tolerance& tol) {
  const Eigen::Index n = a.rows();
  ComplexMatrix m(n, n + b.cols());
  m.leftCols(n) = s * ComplexMatrix::Identity(n, n) - a.cast<std::complex<double>>();
  m.rightCols(b.cols()) = b.cast<std::complex<double>>();
  return numerical_rank(m, tol);
}

int geometric_multiplicity(const Matrix& a, std::complex<double> lambda,
                           const Tolerance& tol) {
  const Eigen::Index n = a.rows();
  ComplexMatrix m =
      lambda * ComplexMatrix::Identity(n, n) - a.cast<std::complex<double>>();
  // rank 0 would be judged relative to σ_max = 0; treat A = λI explicitly.
  if (m.cwiseAbs().maxCoeff() <= tol.entry_abs) return static_cast<int>(n);
  return static_cast<int>(n) - numerical_rank(m, tol);
}

RankReport is_controllable(const Matrix& a, const Matrix& b,
                           RankMethod method, const Tolerance& tol,
                           const std::vector<Matrix>* eigen_source) {
  if (a.rows() != a.cols() || b.rows() != a.rows()) {
    throw std::invalid_argument("is_controllable: shape mismatch");
  }
  RankReport report;
  report.method = method;
  report.state_dim = static_cast<int>(a.rows());
  report.tol = tol;
  switch (method) {
    case RankMethod::kKalman: {
      Matrix k = controllability_matrix(unit_norm_scaled(a), b);
      for (Eigen::Index j = 0; j < k.cols(); ++j) {
        const double nrm = k.col(j).norm();
        if (nrm > 0.0) k.col(j) /= nrm;
      }
      report.rank = numerical_rank(k, tol);
      break;
    }
    case RankMethod::kSubspace:
      report.rank = controllable_subspace_dim(a, b, tol);
      break;
    case RankMethod::kPbh: {
      std::vector<std::complex<double>> ev;
      if (eigen_source) {
        for (const auto& blk : *eigen_source) {
          auto e = eigenvalues(blk);
          ev.insert(ev.end(), e.begin(), e.end());
        }
      } else {
        ev = eigenvalues(a);
      }
      double scale = 1.0;
      for (const auto& e : ev) scale = std::max(scale, std::abs(e));
      report.rank = report.state_dim;
      for (const auto& c : cluster_eigenvalues(ev, 1e-8 * scale)) {
        PbhEntry entry{c.value, c.algebraic_multiplicity, pbh_rank(a, b, c.value, tol)};
        report.rank = std::min(report.rank, entry.rank);
        report.pbh.push_back(entry);
      }
      break;
    }
  }
  return report;
}

RankReport is_observable(const Matrix& a, const Matrix& c, RankMethod method,
                         const Tolerance& tol) {
  return is_controllable(a.transpose(), c.transpose(), method, tol);
}

int price(const IsotypicComponent& c) {
  return c.fs == FsType::kReal ? c.irrep_dim : c.irrep_dim / 2;
}

int n_gamma(const IsotypicDecomposition& dec) {
  int best = 0;
  for (const auto& c : dec.components)
    if (c.isotypic_dim > 0) best = std::max(best, price(c));
  return best;
}

std::vector<std::string> n_gamma_warnings(const IsotypicDecomposition& dec) {
  std::vector<std::string> out;
  for (const auto& c : dec.components) {
    if (c.isotypic_dim > 0 && c.fs == FsType::kQuaternionic) {
      out.push_back("component '" + c.label +
                    "' is of quaternionic type; its N_Gamma contribution n/2 "
                    "is an extrapolation beyond the absolutely irreducible case");
    }
    if (c.isotypic_dim > 0 && c.fs == FsType::kReal && !c.abs_irreducible) {
      out.push_back("component '" + c.label +
                    "' has real FS type but is not absolutely irreducible");
    }
  }
  return out;
}

namespace {

bool contains(const std::vector<int>& v, int x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

}  // namespace

ControlDesign design_input_matrix(const EquivariantSystem& system,
                                  const IsotypicDecomposition& dec,
                                  const DesignOptions& opts) {
  return design_input_matrix(system.a(), dec, opts);
}

ControlDesign design_input_matrix(const Matrix& a,
                                  const IsotypicDecomposition& dec,
                                  const DesignOptions& opts) {
  const int n = static_cast<int>(a.rows());
  if (dec.state_dim != n) {
    throw std::invalid_argument("design_input_matrix: decomposition size mismatch");
  }
  ControlDesign design;
  design.n_gamma = n_gamma(dec);
  design.method = opts.method;

  std::vector<int> order;
  for (int i = 0; i < static_cast<int>(dec.components.size()); ++i)
    if (dec.components[i].isotypic_dim > 0) order.push_back(i);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    return price(dec.components[x]) > price(dec.components[y]);
  });

  auto verdict = [&]() {
    return is_controllable(a, unit_columns(n, design.selected), opts.method,
                           opts.tol)
        .rank;
  };
  int current_dim = 0;
  auto accept = [&](int r) {
    if (!opts.rank_greedy) return true;
    std::vector<int> trial = design.selected;
    trial.push_back(r);
    const int dim = controllable_subspace_dim(a, unit_columns(n, trial), opts.tol);
    if (dim <= current_dim) return false;
    current_dim = dim;
    return true;
  };

  const Matrix& t = dec.transform;
  bool done = false;
  for (int ci : order) {
    const auto& comp = dec.components[ci];
    // Candidate columns s: the first column of each μ-block, or, for an
    // unrefined component, every d_i-th column up to its price. The counter
    // is local to the component, the exclusion set V is global.
    std::vector<std::pair<int, Eigen::Index>> columns;
    if (comp.refined) {
      for (int bi : comp.blocks) {
        columns.push_back({dec.blocks[bi].mu, dec.blocks[bi].offset});
      }
    } else {
      const auto& blk = dec.blocks[comp.blocks.front()];
      for (int k = 0; k < price(comp); ++k) {
        columns.push_back({0, blk.offset + k * comp.multiplicity});
      }
    }
    for (const auto& [mu, s] : columns) {
      for (int r = 0; r < n; ++r) {
        if (std::abs(t(r, s)) <= opts.tol.entry_abs || contains(design.selected, r))
          continue;
        if (!accept(r)) continue;
        design.selected.push_back(r);
        design.trace.push_back({ci, mu, s, r});
        break;
      }
    }
    design.rank = verdict();
    if (design.rank == n) {
      done = true;
      break;
    }
  }
  for (int r = 0; !done && r < n; ++r) {
    if (contains(design.selected, r) || !accept(r)) continue;
    design.selected.push_back(r);
    design.rank = verdict();
    done = design.rank == n;
  }
  design.controllable = done;
  design.matrix = unit_columns(n, design.selected);
  return design;
}

ControlDesign design_output_matrix(const EquivariantSystem& system,
                                   const IsotypicDecomposition& dec,
                                   const DesignOptions& opts) {
  ControlDesign d = design_input_matrix(Matrix(system.a().transpose()), dec, opts);
  d.output = true;
  d.matrix.transposeInPlace();
  return d;
}

EmCondition em_condition(const IsotypicDecomposition& dec, int component,
                         int mu, int m, const Tolerance& tol) {
  const auto& c = dec.components.at(component);
  if (c.blocks.empty()) return {};
  const int block_index = c.refined ? c.blocks.at(mu) : c.blocks.front();
  const auto& blk = dec.blocks[block_index];
  EmCondition out;
  out.projection_norm = c.block_projection(c.refined ? mu : 0).col(m).norm();
  out.projection_nonzero = out.projection_norm > tol.entry_abs;
  for (Eigen::Index j = blk.offset; j < blk.offset + blk.size; ++j) {
    if (std::abs(dec.transform(m, j)) > tol.entry_abs) out.t_entry_nonzero = true;
  }
  return out;
}

bool check_em_condition(const IsotypicDecomposition& dec, int component,
                        int mu, int m, const Tolerance& tol) {
  return em_condition(dec, component, mu, m, tol).projection_nonzero;
}

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

namespace {

// idx-th k-subset of {0..n−1} in lexicographic order.
std::vector<int> unrank_combination(long long idx, int n, int k) {
  std::vector<int> out;
  out.reserve(k);
  int c = 0;
  for (int pos = 0; pos < k; ++pos) {
    for (;; ++c) {
      const long long count = binomial(n - c - 1, k - pos - 1);
      if (idx < count) break;
      idx -= count;
    }
    out.push_back(c++);
  }
  return out;
}

long long checked_count(int n, int k, long long cap) {
  if (k < 0 || k > n) {
    throw std::invalid_argument("enumerate_input_configs: k must be in 0.." +
                                std::to_string(n));
  }
  const long long total = binomial(n, k);
  if (total > cap) {
    throw CapExceeded("enumerate_input_configs: C(" + std::to_string(n) + "," +
                      std::to_string(k) + ") = " + std::to_string(total) +
                      " exceeds cap " + std::to_string(cap));
  }
  return total;
}

ConfigResult test_subset(const Matrix& a, std::vector<int> subset,
                         const Tolerance& tol) {
  const int n = static_cast<int>(a.rows());
  const bool ok =
      controllable_subspace_dim(a, unit_columns(n, subset), tol) == n;
  return {std::move(subset), ok};
}

}  // namespace

std::vector<ConfigResult> enumerate_input_configs(const Matrix& a, int k,
                                                  long long cap,
                                                  const Tolerance& tol) {
  const int n = static_cast<int>(a.rows());
  const long long total = checked_count(n, k, cap);
  std::vector<ConfigResult> out(static_cast<std::size_t>(total));
#pragma omp parallel for schedule(dynamic, 16)
  for (long long i = 0; i < total; ++i) {
    out[static_cast<std::size_t>(i)] =
        test_subset(a, unrank_combination(i, n, k), tol);
  }
  return out;
}

namespace reference {

std::vector<ConfigResult> enumerate_input_configs(const Matrix& a, int k,
                                                  long long cap,
                                                  const Tolerance& tol) {
  const int n = static_cast<int>(a.rows());
  const long long total = checked_count(n, k, cap);
  std::vector<ConfigResult> out;
  out.reserve(static_cast<std::size_t>(total));
  std::vector<int> subset(k);
  std::iota(subset.begin(), subset.end(), 0);
  for (long long i = 0; i < total; ++i) {
    out.push_back(test_subset(a, subset, tol));
    // Advance to the next combination.
    int pos = k - 1;
    while (pos >= 0 && subset[pos] == n - k + pos) --pos;
    if (pos < 0) break;
    ++subset[pos];
    for (int j = pos + 1; j < k; ++j) subset[j] = subset[j - 1] + 1;
  }
  return out;
}

}  // namespace reference

}  // namespace symctl
