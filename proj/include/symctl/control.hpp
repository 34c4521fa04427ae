#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "symctl/isotypic.hpp"
#include "symctl/linalg.hpp"
#include "symctl/network.hpp"

namespace symctl {

class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class RankMethod { kKalman, kSubspace, kPbh };

const char* to_string(RankMethod m);
RankMethod parse_rank_method(const std::string& name);

struct PbhEntry {
  std::complex<double> eigenvalue;
  int algebraic_multiplicity = 0;
  int rank = 0;
};

struct RankReport {
  RankMethod method = RankMethod::kSubspace;
  int rank = 0;  // for pbh: the smallest rank over eigenvalues
  int state_dim = 0;
  Tolerance tol;
  std::vector<PbhEntry> pbh;

  bool controllable() const { return rank == state_dim; }
};

// [B, AB, …, A^{n−1}B] as defined, no rescaling.
Matrix controllability_matrix(const Matrix& a, const Matrix& b);
// [C; CA; …; CA^{n−1}].
Matrix observability_matrix(const Matrix& a, const Matrix& c);

// n × |indices| matrix of canonical unit columns e_m (0-based indices).
Matrix unit_columns(int n, const std::vector<int>& indices);

// Dimension of the controllable subspace by iterating V ← V + A·V with
// re-orthonormalization until the dimension stabilizes.
int controllable_subspace_dim(const Matrix& a, const Matrix& b,
                              const Tolerance& tol = {});

// kalman: rank of the Krylov matrix after rescaling A to unit norm and each
// column to unit length (both rank-preserving). subspace: see above. pbh:
// min over eigenvalue clusters λ of rank [λI − A, B]. When `eigen_source`
// is provided (e.g. the blocks of a symmetry-adapted decomposition), PBH
// eigenvalues are taken from those blocks.
RankReport is_controllable(const Matrix& a, const Matrix& b,
                           RankMethod method, const Tolerance& tol = {},
                           const std::vector<Matrix>* eigen_source = nullptr);
RankReport is_observable(const Matrix& a, const Matrix& c, RankMethod method,
                         const Tolerance& tol = {});

// Numerical rank of [sI − A, B].
int pbh_rank(const Matrix& a, const Matrix& b, std::complex<double> s,
             const Tolerance& tol = {});

// n − rank(λI − A).
int geometric_multiplicity(const Matrix& a, std::complex<double> lambda,
                           const Tolerance& tol = {});

// Minimum number of inputs a component forces: n_i for real type, n_i/2 for
// complex and quaternionic type (the latter an extrapolation, flagged by
// n_gamma_warnings).
int price(const IsotypicComponent& c);
int n_gamma(const IsotypicDecomposition& dec);
std::vector<std::string> n_gamma_warnings(const IsotypicDecomposition& dec);

struct DesignStep {
  int component = 0;
  int mu = 0;              // 0-based
  Eigen::Index column = 0; // 0-based column s of T
  int row = 0;             // 0-based state index r
};

struct DesignOptions {
  Tolerance tol;
  RankMethod method = RankMethod::kSubspace;
  // Skip a candidate unit vector that does not enlarge the controllable
  // subspace.
  bool rank_greedy = false;
};

struct ControlDesign {
  std::vector<int> selected;  // 0-based state indices, in selection order
  Matrix matrix;              // B (n × p), or C = Bᵀ for output designs
  int n_gamma = 0;
  bool controllable = false;  // observable, for output designs
  bool output = false;
  int rank = 0;
  RankMethod method = RankMethod::kSubspace;
  std::vector<DesignStep> trace;
};

// Projection-guided input selection: components sorted by (price desc,
// declaration order asc); for each, walk its blocks' first T columns and
// take the first nonzero row not yet selected; stop once (A, B) is
// controllable. Remaining indices are appended in ascending order if the
// pass over all components does not reach full rank.
ControlDesign design_input_matrix(const EquivariantSystem& system,
                                  const IsotypicDecomposition& dec,
                                  const DesignOptions& opts = {});
ControlDesign design_input_matrix(const Matrix& a,
                                  const IsotypicDecomposition& dec,
                                  const DesignOptions& opts = {});

// Runs the input design on Aᵀ and returns C = Bᵀ.
ControlDesign design_output_matrix(const EquivariantSystem& system,
                                   const IsotypicDecomposition& dec,
                                   const DesignOptions& opts = {});

struct EmCondition {
  double projection_norm = 0.0;  // ‖P^μ_i e_m‖
  bool projection_nonzero = false;
  bool t_entry_nonzero = false;  // t_{mj} ≠ 0 for some column j of the block
};
// component, mu, m all 0-based.
EmCondition em_condition(const IsotypicDecomposition& dec, int component,
                         int mu, int m, const Tolerance& tol = {});
bool check_em_condition(const IsotypicDecomposition& dec, int component,
                        int mu, int m, const Tolerance& tol = {});

struct ConfigResult {
  std::vector<int> subset;  // 0-based, ascending
  bool controllable = false;
};

long long binomial(int n, int k);

// Every k-subset of state indices, lexicographic, tested with the subspace
// method. Throws CapExceeded when C(n, k) > cap.
std::vector<ConfigResult> enumerate_input_configs(const Matrix& a, int k,
                                                  long long cap = 1000000,
                                                  const Tolerance& tol = {});

namespace reference {
std::vector<ConfigResult> enumerate_input_configs(const Matrix& a, int k,
                                                  long long cap = 1000000,
                                                  const Tolerance& tol = {});
}  // namespace reference

}  // namespace symctl
