#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "symctl/linalg.hpp"
#include "symctl/permgroup.hpp"

namespace symctl {

class RepresentationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Real matrix representation of a PermutationGroup; matrices()[g] is the
// image of group.element(g).
struct MatrixRep {
  std::string label;
  int dim = 0;
  std::vector<Matrix> matrices;
  bool unitary = false;

  const Matrix& operator()(std::size_t g) const { return matrices[g]; }
};

struct Character {
  std::vector<double> values;
  double operator()(std::size_t g) const { return values[g]; }
};

// Frobenius–Schur type of a real irreducible representation.
enum class FsType { kReal, kComplex, kQuaternionic };

const char* to_string(FsType t);

struct IrrepInfo {
  MatrixRep rep;
  Character character;
  bool abs_irreducible = true;
  FsType fs = FsType::kReal;

  int dim() const { return rep.dim; }
  const std::string& label() const { return rep.label; }
};

// Extends generator matrices to every element via the group's word table.
MatrixRep make_rep(const PermutationGroup& group, std::string label,
                   const std::vector<Matrix>& generator_matrices);

// Homomorphism defect: max over (element, generator) pairs of
// ‖ρ(gs) − ρ(g)ρ(s)‖_max, together with the offending pair.
struct HomomorphismCheck {
  double defect = 0.0;
  std::size_t g = 0;
  std::size_t h = 0;
};
HomomorphismCheck homomorphism_defect(const PermutationGroup& group,
                                      const MatrixRep& rep);

// max over g of ‖ρ(g)ᵀρ(g) − I‖_max.
double unitarity_defect(const MatrixRep& rep);

Character character_of(const MatrixRep& rep);

// Dimension of {X : Xρ(g) = ρ(g)X for all g}.
int commutant_dimension(const MatrixRep& rep, const Tolerance& tol = {});
int commutant_dimension(const MatrixRep& rep,
                        const std::vector<std::size_t>& elements,
                        const Tolerance& tol = {});
// Constraints from the generators only; same solution space.
int commutant_dimension(const PermutationGroup& group, const MatrixRep& rep,
                        const Tolerance& tol = {});
bool is_absolutely_irreducible(const MatrixRep& rep, const Tolerance& tol = {});

// (1/|Γ|) Σ χ(g)².
double character_norm(const Character& chi);

// Classifies by s = (1/|Γ|) Σ χ(g²) normalized for real forms: a
// quaternionic irrep realized over ℝ carries two copies of its complex
// constituent, so its raw sum is −2 and its norm 4. Throws
// RepresentationError when (norm, s) fits none of the three types within
// 1e-6.
FsType fs_indicator(const Character& chi, const PermutationGroup& group);

// Builds an IrrepInfo (character, commutant test, FS type) from a rep.
IrrepInfo classify(const PermutationGroup& group, MatrixRep rep,
                   const Tolerance& tol = {});

// Conjugates rep into an orthogonal one: with H = Σ ρ(g)ᵀρ(g) = L Lᵀ
// (Cholesky), ρ'(g) = Lᵀ ρ(g) L⁻ᵀ. Equivalent to Gram–Schmidt of the
// standard basis in the group-averaged inner product.
MatrixRep unitarize(const MatrixRep& rep);

// Built-in families. The group must be generated in the stated order:
//   cyclic:    {R}              with R of order k
//   dihedral:  {R, S}           rotation of order k, reflection
//   symmetric: {(1 2), (1 2 … n)}
// The generator images are checked against the group (homomorphism test).
std::vector<IrrepInfo> cyclic_irreps(const PermutationGroup& group, int k);
std::vector<IrrepInfo> dihedral_irreps(const PermutationGroup& group, int k);
std::vector<IrrepInfo> symmetric_irreps(const PermutationGroup& group, int n);

// Generator images only (no group needed).
struct GeneratorRep {
  std::string label;
  std::vector<Matrix> generators;
  bool abs_irreducible = true;
};
std::vector<GeneratorRep> cyclic_generator_reps(int k);
std::vector<GeneratorRep> dihedral_generator_reps(int k);
// Young's orthogonal form on standard tableaux, one rep per partition of n
// (partitions in reverse lexicographic order, tableaux in lexicographic
// order of their row words). Generators: (1 2), (1 2 … n).
std::vector<GeneratorRep> symmetric_generator_reps(int n);

std::vector<std::vector<int>> partitions(int n);
// Number of standard Young tableaux, by the hook length formula.
long hook_length_dimension(const std::vector<int>& shape);

struct ImportResult {
  std::vector<IrrepInfo> irreps;
  std::vector<std::string> warnings;
};

struct ImportOptions {
  double homomorphism_tol = 1e-9;
  // Overrides per-file "unitarize" when set.
  std::optional<bool> unitarize;
};

// Irrep file: JSON array of {label, dim, generator_matrices: [[row-major]]},
// or an object {"convention": "column"|"row", "unitarize": bool,
// "irreps": [...]}. "row" means matrices act on row vectors (GAP); they are
// transposed on import.
ImportResult import_irreps(const std::filesystem::path& source,
                           const PermutationGroup& group,
                           const ImportOptions& opts = {});
ImportResult import_irreps_json(const std::string& text,
                                const PermutationGroup& group,
                                const ImportOptions& opts = {});

}  // namespace symctl
