#include "symctl/representations.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include <json.hpp>

namespace symctl {

using nlohmann::json;

const char* to_string(FsType t) {
  switch (t) {
    case FsType::kReal:
      return "real";
    case FsType::kComplex:
      return "complex";
    case FsType::kQuaternionic:
      return "quaternionic";
  }
  return "?";
}

MatrixRep make_rep(const PermutationGroup& group, std::string label,
                   const std::vector<Matrix>& generator_matrices) {
  if (generator_matrices.size() != group.generators().size()) {
    throw RepresentationError(
        "rep '" + label + "': " + std::to_string(generator_matrices.size()) +
        " generator matrices for " +
        std::to_string(group.generators().size()) + " generators");
  }
  int dim = generator_matrices.empty()
                ? 1
                : static_cast<int>(generator_matrices.front().rows());
  for (const auto& m : generator_matrices) {
    if (m.rows() != dim || m.cols() != dim) {
      throw RepresentationError("rep '" + label +
                                "': generator matrices must be square of equal size");
    }
    Eigen::FullPivLU<Matrix> lu(m);
    if (!lu.isInvertible()) {
      throw RepresentationError("rep '" + label +
                                "': non-invertible generator image");
    }
  }
  MatrixRep rep;
  rep.label = std::move(label);
  rep.dim = dim;
  rep.matrices = extend_by_words<Matrix>(
      group, generator_matrices, Matrix::Identity(dim, dim),
      [](const Matrix& m) -> Matrix { return m.inverse(); });
  rep.unitary = unitarity_defect(rep) <= 1e-9;
  return rep;
}

HomomorphismCheck homomorphism_defect(const PermutationGroup& group,
                                      const MatrixRep& rep) {
  // ρ(g·s) = ρ(g)ρ(s) for every element g and generator s implies the
  // full homomorphism property by induction on word length.
  HomomorphismCheck worst;
  std::vector<std::size_t> gen_index;
  for (const auto& s : group.generators()) {
    gen_index.push_back(static_cast<std::size_t>(group.index_of(s)));
  }
  for (std::size_t g = 0; g < group.order(); ++g) {
    for (std::size_t s : gen_index) {
      const double d = max_abs(rep(group.product(g, s)) - rep(g) * rep(s));
      if (d > worst.defect) worst = {d, g, s};
    }
  }
  return worst;
}

double unitarity_defect(const MatrixRep& rep) {
  double worst = 0.0;
  for (const auto& m : rep.matrices) {
    worst = std::max(
        worst, max_abs(m.transpose() * m - Matrix::Identity(rep.dim, rep.dim)));
  }
  return worst;
}

Character character_of(const MatrixRep& rep) {
  Character chi;
  chi.values.reserve(rep.matrices.size());
  for (const auto& m : rep.matrices) chi.values.push_back(m.trace());
  return chi;
}

int commutant_dimension(const MatrixRep& rep,
                        const std::vector<std::size_t>& elements,
                        const Tolerance& tol) {
  const int n = rep.dim;
  const Matrix id = Matrix::Identity(n, n);
  // vec(Xρ − ρX) = (ρᵀ ⊗ I − I ⊗ ρ) vec(X), column-major vec.
  Matrix stacked(static_cast<Eigen::Index>(elements.size()) * n * n, n * n);
  for (std::size_t g = 0; g < elements.size(); ++g) {
    const Matrix& r = rep.matrices[elements[g]];
    Matrix block = Matrix::Zero(n * n, n * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        block.block(i * n, j * n, n, n) += r(j, i) * id;
        block.block(i * n, j * n, n, n) -= id(i, j) * r;
      }
    stacked.middleRows(static_cast<Eigen::Index>(g) * n * n, n * n) = block;
  }
  return n * n - numerical_rank(stacked, tol);
}

int commutant_dimension(const MatrixRep& rep, const Tolerance& tol) {
  std::vector<std::size_t> all(rep.matrices.size());
  for (std::size_t g = 0; g < all.size(); ++g) all[g] = g;
  return commutant_dimension(rep, all, tol);
}

int commutant_dimension(const PermutationGroup& group, const MatrixRep& rep,
                        const Tolerance& tol) {
  std::vector<std::size_t> gens;
  for (const auto& s : group.generators()) {
    gens.push_back(static_cast<std::size_t>(group.index_of(s)));
  }
  if (gens.empty()) gens.push_back(0);
  return commutant_dimension(rep, gens, tol);
}

bool is_absolutely_irreducible(const MatrixRep& rep, const Tolerance& tol) {
  return commutant_dimension(rep, tol) == 1;
}

double character_norm(const Character& chi) {
  double s = 0.0;
  for (double v : chi.values) s += v * v;
  return s / static_cast<double>(chi.values.size());
}

FsType fs_indicator(const Character& chi, const PermutationGroup& group) {
  if (chi.values.size() != group.order()) {
    throw RepresentationError("fs_indicator: character/group size mismatch");
  }
  double s = 0.0;
  for (std::size_t g = 0; g < group.order(); ++g) {
    s += chi(group.product(g, g));
  }
  s /= static_cast<double>(group.order());
  const double norm = character_norm(chi);
  constexpr double kTol = 1e-6;
  auto near = [](double a, double b) { return std::abs(a - b) <= kTol; };
  if (near(norm, 1.0) && near(s, 1.0)) return FsType::kReal;
  if (near(norm, 2.0) && near(s, 0.0)) return FsType::kComplex;
  if (near(norm, 4.0) && near(s / 2.0, -1.0)) return FsType::kQuaternionic;
  std::ostringstream os;
  os << "fs_indicator: indicator " << s << " with character norm " << norm
     << " matches no irreducible type (representation likely reducible)";
  throw RepresentationError(os.str());
}

IrrepInfo classify(const PermutationGroup& group, MatrixRep rep,
                   const Tolerance& tol) {
  IrrepInfo info;
  info.character = character_of(rep);
  info.abs_irreducible = commutant_dimension(group, rep, tol) == 1;
  info.fs = fs_indicator(info.character, group);
  info.rep = std::move(rep);
  return info;
}

MatrixRep unitarize(const MatrixRep& rep) {
  Matrix h = Matrix::Zero(rep.dim, rep.dim);
  for (const auto& m : rep.matrices) h += m.transpose() * m;
  Eigen::LLT<Matrix> llt(h);
  if (llt.info() != Eigen::Success) {
    throw RepresentationError("unitarize: averaged Gram matrix not positive definite");
  }
  const Matrix lt = llt.matrixU();  // Lᵀ
  const Matrix lt_inv = lt.inverse();
  MatrixRep out = rep;
  for (auto& m : out.matrices) m = lt * m * lt_inv;
  out.unitary = unitarity_defect(out) <= 1e-9;
  return out;
}

// --- built-in families -----------------------------------------------------

namespace {

Matrix rotation(double angle) {
  Matrix r(2, 2);
  r << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return r;
}

Matrix scalar(double v) { return Matrix::Constant(1, 1, v); }

std::vector<IrrepInfo> realize(const PermutationGroup& group,
                               const std::vector<GeneratorRep>& gens,
                               const std::string& family) {
  std::vector<IrrepInfo> out;
  out.reserve(gens.size());
  for (const auto& g : gens) {
    MatrixRep rep = make_rep(group, g.label, g.generators);
    const auto hom = homomorphism_defect(group, rep);
    if (hom.defect > 1e-9) {
      throw RepresentationError(
          family + " irrep '" + g.label +
          "' is not a homomorphism on this group (defect " +
          std::to_string(hom.defect) + " at elements " +
          group.element(hom.g).perm.ToCycles() + ", " +
          group.element(hom.h).perm.ToCycles() +
          "); check generator order and group family");
    }
    out.push_back(classify(group, std::move(rep)));
  }
  return out;
}

}  // namespace

std::vector<GeneratorRep> cyclic_generator_reps(int k) {
  if (k < 1) throw RepresentationError("cyclic_irreps: k must be >= 1");
  std::vector<GeneratorRep> out;
  out.push_back({"trivial", {scalar(1.0)}, true});
  if (k % 2 == 0) out.push_back({"sign", {scalar(-1.0)}, true});
  for (int j = 1; 2 * j < k; ++j) {
    out.push_back({"rot" + std::to_string(j),
                   {rotation(2.0 * std::numbers::pi * j / k)},
                   false});
  }
  return out;
}

std::vector<GeneratorRep> dihedral_generator_reps(int k) {
  if (k < 2) throw RepresentationError("dihedral_irreps: k must be >= 2");
  const Matrix flip = Eigen::Vector2d(1.0, -1.0).asDiagonal();
  std::vector<GeneratorRep> reps;
  reps.push_back({"", {scalar(1.0), scalar(1.0)}, true});
  if (k % 2 == 0) reps.push_back({"", {scalar(-1.0), scalar(1.0)}, true});
  for (int j = 1; j < (k + 1) / 2; ++j) {
    reps.push_back({"", {rotation(2.0 * std::numbers::pi * j / k), flip}, true});
  }
  reps.push_back({"", {scalar(1.0), scalar(-1.0)}, true});
  if (k % 2 == 0) reps.push_back({"", {scalar(-1.0), scalar(-1.0)}, true});
  for (std::size_t i = 0; i < reps.size(); ++i) {
    reps[i].label = "theta" + std::to_string(i + 1);
  }
  return reps;
}

std::vector<std::vector<int>> partitions(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int remaining, int max_part) -> void {
    if (remaining == 0) {
      out.push_back(cur);
      return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
      cur.push_back(p);
      self(self, remaining - p, p);
      cur.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

long hook_length_dimension(const std::vector<int>& shape) {
  int n = 0;
  for (int r : shape) n += r;
  // n! / Π hooks, computed in double then rounded (n is small).
  double num = 1.0;
  for (int i = 2; i <= n; ++i) num *= i;
  double den = 1.0;
  for (std::size_t r = 0; r < shape.size(); ++r) {
    for (int c = 0; c < shape[r]; ++c) {
      int below = 0;
      for (std::size_t rr = r + 1; rr < shape.size(); ++rr)
        if (shape[rr] > c) ++below;
      den *= (shape[r] - c - 1) + below + 1;
    }
  }
  return std::lround(num / den);
}

namespace {

using Tableau = std::vector<std::vector<int>>;

std::vector<Tableau> standard_tableaux(const std::vector<int>& shape) {
  int n = 0;
  for (int r : shape) n += r;
  std::vector<Tableau> out;
  Tableau t(shape.size());
  auto rec = [&](auto&& self, int k) -> void {
    if (k > n) {
      out.push_back(t);
      return;
    }
    for (std::size_t r = 0; r < shape.size(); ++r) {
      const bool room = static_cast<int>(t[r].size()) < shape[r];
      const bool above_ok = r == 0 || t[r - 1].size() > t[r].size();
      if (room && above_ok) {
        t[r].push_back(k);
        self(self, k + 1);
        t[r].pop_back();
      }
    }
  };
  rec(rec, 1);
  std::sort(out.begin(), out.end());
  return out;
}

std::pair<int, int> position(const Tableau& t, int k) {
  for (std::size_t r = 0; r < t.size(); ++r)
    for (std::size_t c = 0; c < t[r].size(); ++c)
      if (t[r][c] == k) return {static_cast<int>(r), static_cast<int>(c)};
  return {-1, -1};
}

Tableau swap_entries(Tableau t, int i) {
  for (auto& row : t)
    for (int& v : row) {
      if (v == i)
        v = i + 1;
      else if (v == i + 1)
        v = i;
    }
  return t;
}

bool is_standard(const Tableau& t) {
  for (std::size_t r = 0; r < t.size(); ++r)
    for (std::size_t c = 0; c < t[r].size(); ++c) {
      if (c > 0 && t[r][c - 1] > t[r][c]) return false;
      if (r > 0 && t[r - 1][c] > t[r][c]) return false;
    }
  return true;
}

// Young's orthogonal form for the adjacent transposition (i i+1), 1-based.
Matrix young_adjacent(const std::vector<Tableau>& tabs, int i) {
  const auto d = static_cast<Eigen::Index>(tabs.size());
  std::map<Tableau, Eigen::Index> index;
  for (Eigen::Index k = 0; k < d; ++k) index[tabs[k]] = k;
  Matrix m = Matrix::Zero(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    const auto [r1, c1] = position(tabs[k], i);
    const auto [r2, c2] = position(tabs[k], i + 1);
    const double axial = (c2 - r2) - (c1 - r1);
    m(k, k) = 1.0 / axial;
    Tableau swapped = swap_entries(tabs[k], i);
    if (is_standard(swapped)) {
      m(index.at(swapped), k) = std::sqrt(1.0 - 1.0 / (axial * axial));
    }
  }
  return m;
}

}  // namespace

std::vector<GeneratorRep> symmetric_generator_reps(int n) {
  if (n < 2 || n > 6) {
    throw RepresentationError("symmetric_irreps: n must be in 2..6, got " +
                              std::to_string(n));
  }
  std::vector<GeneratorRep> out;
  for (const auto& shape : partitions(n)) {
    const auto tabs = standard_tableaux(shape);
    std::vector<Matrix> adj;
    for (int i = 1; i < n; ++i) adj.push_back(young_adjacent(tabs, i));
    // (1 2 … n) = (1 2)(2 3)…(n−1 n) under right-to-left composition.
    Matrix cycle = adj.front();
    for (std::size_t i = 1; i < adj.size(); ++i) cycle = cycle * adj[i];
    std::string label = "[";
    for (std::size_t r = 0; r < shape.size(); ++r) {
      label += (r ? "," : "") + std::to_string(shape[r]);
    }
    label += "]";
    out.push_back({label, {adj.front(), cycle}, true});
  }
  return out;
}

std::vector<IrrepInfo> cyclic_irreps(const PermutationGroup& group, int k) {
  return realize(group, cyclic_generator_reps(k), "cyclic");
}

std::vector<IrrepInfo> dihedral_irreps(const PermutationGroup& group, int k) {
  return realize(group, dihedral_generator_reps(k), "dihedral");
}

std::vector<IrrepInfo> symmetric_irreps(const PermutationGroup& group, int n) {
  return realize(group, symmetric_generator_reps(n), "symmetric");
}

// --- import ------------------------------------------------------------------

namespace {

Matrix parse_matrix(const json& j, int dim, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim) {
    throw RepresentationError(where + ": expected " + std::to_string(dim) +
                              " rows");
  }
  Matrix m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const auto& row = j[r];
    if (!row.is_array() || static_cast<int>(row.size()) != dim) {
      throw RepresentationError(where + ": row " + std::to_string(r + 1) +
                                " must have " + std::to_string(dim) +
                                " entries");
    }
    for (int c = 0; c < dim; ++c) {
      if (!row[c].is_number()) {
        throw RepresentationError(where + ": non-numeric entry at (" +
                                  std::to_string(r + 1) + "," +
                                  std::to_string(c + 1) + ")");
      }
      m(r, c) = row[c].get<double>();
    }
  }
  return m;
}

}  // namespace

ImportResult import_irreps_json(const std::string& text,
                                const PermutationGroup& group,
                                const ImportOptions& opts) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw RepresentationError(std::string("irrep file: ") + e.what());
  }
  bool row_convention = false;
  bool do_unitarize = false;
  json list = doc;
  if (doc.is_object()) {
    const std::string conv = doc.value("convention", "column");
    if (conv != "column" && conv != "row") {
      throw RepresentationError("irrep file: convention must be 'column' or 'row'");
    }
    row_convention = conv == "row";
    do_unitarize = doc.value("unitarize", false);
    if (!doc.contains("irreps")) {
      throw RepresentationError("irrep file: missing 'irreps' array");
    }
    list = doc["irreps"];
  }
  if (opts.unitarize) do_unitarize = *opts.unitarize;
  if (!list.is_array()) throw RepresentationError("irrep file: expected an array");

  ImportResult result;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto& entry = list[i];
    const std::string where = "irrep file entry " + std::to_string(i + 1);
    if (!entry.is_object() || !entry.contains("dim") ||
        !entry.contains("generator_matrices")) {
      throw RepresentationError(where + ": needs 'dim' and 'generator_matrices'");
    }
    const std::string label = entry.value("label", "irrep" + std::to_string(i + 1));
    const int dim = entry["dim"].get<int>();
    if (dim < 1) throw RepresentationError(where + ": dim must be >= 1");
    const auto& gm = entry["generator_matrices"];
    if (!gm.is_array() || gm.size() != group.generators().size()) {
      throw RepresentationError(
          where + ": expected " + std::to_string(group.generators().size()) +
          " generator matrices");
    }
    std::vector<Matrix> gens;
    for (std::size_t g = 0; g < gm.size(); ++g) {
      Matrix m = parse_matrix(gm[g], dim,
                              where + " ('" + label + "'), generator " +
                                  std::to_string(g + 1));
      gens.push_back(row_convention ? Matrix(m.transpose()) : m);
    }
    MatrixRep rep = make_rep(group, label, gens);
    const auto hom = homomorphism_defect(group, rep);
    if (hom.defect > opts.homomorphism_tol) {
      std::ostringstream os;
      os << where << " ('" << label << "'): homomorphism violated by "
         << hom.defect << " at pair (" << group.element(hom.g).perm.ToCycles()
         << ", " << group.element(hom.h).perm.ToCycles() << ")";
      throw RepresentationError(os.str());
    }
    if (do_unitarize && !rep.unitary) rep = unitarize(rep);

    IrrepInfo info;
    info.character = character_of(rep);
    const int commutant = commutant_dimension(group, rep);
    info.abs_irreducible = commutant == 1;
    try {
      info.fs = fs_indicator(info.character, group);
    } catch (const RepresentationError& e) {
      result.warnings.push_back("'" + label + "' appears reducible: " + e.what());
      info.fs = FsType::kReal;
      info.abs_irreducible = false;
    }
    if (commutant > 2 && info.fs != FsType::kQuaternionic) {
      result.warnings.push_back("'" + label + "' has commutant dimension " +
                                std::to_string(commutant) +
                                "; representation is likely reducible");
    }
    info.rep = std::move(rep);
    result.irreps.push_back(std::move(info));
  }
  return result;
}

ImportResult import_irreps(const std::filesystem::path& source,
                           const PermutationGroup& group,
                           const ImportOptions& opts) {
  std::ifstream in(source);
  if (!in) throw RepresentationError("cannot open irrep file " + source.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return import_irreps_json(ss.str(), group, opts);
}

}  // namespace symctl
