#pragma once

// Network-spec ingestion, report serialization and the subcommands behind
// the `symctl` executable. Every user-facing index is 1-based.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "symctl/control.hpp"
#include "symctl/isotypic.hpp"
#include "symctl/network.hpp"
#include "symctl/representations.hpp"

namespace symctl::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,           // usage, parse or validation error
  kExhausted = 2,       // design ran out of unit vectors
  kCapExceeded = 3,     // enumeration larger than --cap
  kNotControllable = 4, // `check` verdict negative
};

// Malformed input; the message names the line/column or the JSON field.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LoadOptions {
  // Replaces the irreps named in the spec.
  std::optional<std::filesystem::path> irreps_path;
  double equivariance_tol = 1e-9;
};

struct LoadedNetwork {
  NetworkSpec spec;
  std::optional<EquivariantSystem> system;
  std::vector<IrrepInfo> irreps;
  std::vector<std::string> warnings;
};

// Network spec JSON:
//   {node_count, node_dim, internal_block, coupling_labels: {name: matrix},
//    edges: [[from, to, "label"], …],
//    group: {generators: [cycle string | 1-based image array, …],
//            degree?, vertex_action?: [...],
//            irreps?: {family: "cyclic"|"dihedral"|"symmetric", order: k}
//                   | {file: "path relative to the spec"}}}
// or {preset: "petersen", b, c, group?: {irreps: …}}. A group without
// generators is trivial and gets the trivial irrep by default.
LoadedNetwork parse_network(const std::string& text,
                            const std::filesystem::path& base_dir,
                            const LoadOptions& opts = {});
LoadedNetwork load_network(const std::filesystem::path& path,
                           const LoadOptions& opts = {});

// Row-major nested arrays; a bare number is a 1×1 matrix.
Matrix matrix_from_json(const nlohmann::json& j, const std::string& field);
nlohmann::json matrix_to_json(const Matrix& m);
// Reads `key` (e.g. "T") from a JSON file holding an object, or the whole
// document when it is an array.
Matrix load_matrix(const std::filesystem::path& path, const std::string& key);

nlohmann::json decomposition_report(const EquivariantSystem& system,
                                    const IsotypicDecomposition& dec,
                                    const BlockDiagonal& bd);
nlohmann::json design_report(const IsotypicDecomposition& dec,
                             const ControlDesign& design);

enum class Format { kText, kJson, kCsv };

struct RunConfig {
  std::string command;  // analyze | design | check | enumerate
  std::filesystem::path input;
  Tolerance tol;
  RankMethod method = RankMethod::kSubspace;
  std::optional<Format> format;  // command default when unset
  long long cap = 1000000;
  bool observe = false;
  bool rank_greedy = false;
  std::optional<std::filesystem::path> irreps;
  std::vector<int> inputs;                     // check, 1-based
  std::optional<std::filesystem::path> design; // check: re-read a report
  int k = 0;                                   // enumerate
};

Format parse_format(const std::string& name);

// Runs one subcommand; returns its exit code. Errors are reported on `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace symctl::cli
