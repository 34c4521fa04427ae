#include "symctl/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace symctl::cli {

using nlohmann::json;

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // The message carries the line and column.
    throw ParseError(source + ": " + e.what());
  }
}

const json& require(const json& obj, const std::string& key,
                    const std::string& path) {
  if (!obj.is_object()) throw ParseError("field '" + path + "': expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ParseError("field '" + (path.empty() ? key : path + "." + key) +
                     "': missing");
  }
  return *it;
}

template <typename T>
T get_as(const json& j, const std::string& field) {
  try {
    return j.get<T>();
  } catch (const json::exception& e) {
    throw ParseError("field '" + field + "': " + e.what());
  }
}

int get_int(const json& j, const std::string& field) {
  if (!j.is_number_integer()) throw ParseError("field '" + field + "': expected an integer");
  return j.get<int>();
}

Permutation parse_permutation(const json& j, int degree, const std::string& field) {
  try {
    if (j.is_string()) return Permutation::FromCycles(j.get<std::string>(), degree);
    if (j.is_array()) {
      const auto images = get_as<std::vector<int>>(j, field);
      if (static_cast<int>(images.size()) != degree) {
        throw ParseError("field '" + field + "': image array has " +
                         std::to_string(images.size()) + " entries, expected " +
                         std::to_string(degree));
      }
      return Permutation::FromOneBased(images);
    }
  } catch (const GroupError& e) {
    throw ParseError("field '" + field + "': " + e.what());
  }
  throw ParseError("field '" + field +
                   "': expected a cycle string or a 1-based image array");
}

// Largest symbol mentioned by a generator, for groups on abstract points.
int max_symbol(const json& j) {
  int best = 0;
  if (j.is_array()) return static_cast<int>(j.size());
  if (!j.is_string()) return 0;
  const std::string s = j.get<std::string>();
  int cur = 0;
  bool in_number = false;
  for (char ch : s) {
    if (ch >= '0' && ch <= '9') {
      cur = cur * 10 + (ch - '0');
      in_number = true;
    } else {
      if (in_number) best = std::max(best, cur);
      cur = 0;
      in_number = false;
    }
  }
  if (in_number) best = std::max(best, cur);
  return best;
}

std::vector<IrrepInfo> trivial_irreps(const PermutationGroup& group) {
  std::vector<Matrix> gens(group.generators().size(), Matrix::Ones(1, 1));
  return {classify(group, make_rep(group, "trivial", gens))};
}

std::vector<IrrepInfo> resolve_irreps(const json* spec_irreps,
                                      const PermutationGroup& group,
                                      const std::filesystem::path& base_dir,
                                      const LoadOptions& opts,
                                      std::vector<std::string>& warnings) {
  auto import_file = [&](const std::filesystem::path& p) {
    try {
      auto res = import_irreps(p, group);
      warnings.insert(warnings.end(), res.warnings.begin(), res.warnings.end());
      return res.irreps;
    } catch (const RepresentationError& e) {
      throw ParseError(p.string() + ": " + e.what());
    }
  };
  if (opts.irreps_path) return import_file(*opts.irreps_path);
  if (spec_irreps == nullptr) {
    if (group.order() == 1) return trivial_irreps(group);
    throw ParseError(
        "field 'group.irreps': missing (give a family, a file, or --irreps)");
  }
  const json& ir = *spec_irreps;
  if (ir.contains("file")) {
    std::filesystem::path p = get_as<std::string>(ir["file"], "group.irreps.file");
    if (p.is_relative()) p = base_dir / p;
    return import_file(p);
  }
  const auto family = get_as<std::string>(require(ir, "family", "group.irreps"),
                                          "group.irreps.family");
  const int order = get_int(require(ir, "order", "group.irreps"), "group.irreps.order");
  try {
    if (family == "cyclic") return cyclic_irreps(group, order);
    if (family == "dihedral") return dihedral_irreps(group, order);
    if (family == "symmetric") return symmetric_irreps(group, order);
    if (family == "trivial") return trivial_irreps(group);
  } catch (const RepresentationError& e) {
    throw ParseError("field 'group.irreps': " + std::string(e.what()));
  }
  throw ParseError("field 'group.irreps.family': unknown family '" + family +
                   "' (expected cyclic, dihedral, symmetric or trivial)");
}

NetworkSpec parse_spec_fields(const json& doc) {
  NetworkSpec spec;
  spec.node_count = get_int(require(doc, "node_count", ""), "node_count");
  spec.node_dim = doc.contains("node_dim") ? get_int(doc["node_dim"], "node_dim") : 1;
  spec.internal_block =
      matrix_from_json(require(doc, "internal_block", ""), "internal_block");
  if (doc.contains("coupling_labels")) {
    const auto& labels = doc["coupling_labels"];
    if (!labels.is_object()) throw ParseError("field 'coupling_labels': expected an object");
    for (const auto& [name, m] : labels.items()) {
      spec.coupling_labels[name] = matrix_from_json(m, "coupling_labels." + name);
    }
  }
  if (doc.contains("edges")) {
    const auto& edges = doc["edges"];
    if (!edges.is_array()) throw ParseError("field 'edges': expected an array");
    for (std::size_t k = 0; k < edges.size(); ++k) {
      const std::string field = "edges[" + std::to_string(k) + "]";
      const auto& e = edges[k];
      if (!e.is_array() || e.size() != 3 || !e[2].is_string()) {
        throw ParseError("field '" + field + "': expected [from, to, \"label\"]");
      }
      spec.edges.push_back({get_int(e[0], field + "[0]") - 1,
                            get_int(e[1], field + "[1]") - 1,
                            e[2].get<std::string>()});
    }
  }
  try {
    spec.validate();
  } catch (const NetworkError& e) {
    throw ParseError(e.what());
  }
  return spec;
}

std::string fmt_num(double x) {
  if (std::abs(x) < 5e-13) x = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string fmt_complex(std::complex<double> z) {
  if (std::abs(z.imag()) <= 1e-9 * std::max(1.0, std::abs(z))) return fmt_num(z.real());
  return fmt_num(z.real()) + (z.imag() < 0 ? " - " : " + ") +
         fmt_num(std::abs(z.imag())) + "i";
}

json complex_to_json(std::complex<double> z) {
  return json{{"re", z.real()}, {"im", z.imag()}};
}

std::string join_one_based(const std::vector<int>& v, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    s += (i ? sep : "") + std::to_string(v[i] + 1);
  }
  return s;
}

struct Analysis {
  LoadedNetwork net;
  IsotypicDecomposition dec;
  BlockDiagonal bd;
};

Analysis analyze_network(const RunConfig& cfg) {
  LoadOptions lo;
  lo.irreps_path = cfg.irreps;
  lo.equivariance_tol = cfg.tol.entry_abs;
  Analysis an{load_network(cfg.input, lo), {}, {}};
  DecomposeOptions dopts;
  dopts.tol = cfg.tol;
  an.dec = decompose(*an.net.system, an.net.irreps, dopts);
  an.bd = block_diagonalize(an.net.system->a(), an.dec, cfg.tol);
  return an;
}

struct SpectrumEntry {
  std::complex<double> value;
  int algebraic = 0;
  int geometric = 0;
};

std::vector<SpectrumEntry> spectrum(const Matrix& a, const BlockDiagonal& bd,
                                    const Tolerance& tol) {
  std::vector<std::complex<double>> ev;
  for (const auto& b : bd.blocks) {
    const auto e = eigenvalues(b);
    ev.insert(ev.end(), e.begin(), e.end());
  }
  double scale = 1.0;
  for (const auto& e : ev) scale = std::max(scale, std::abs(e));
  std::vector<SpectrumEntry> out;
  for (const auto& c : cluster_eigenvalues(ev, 1e-8 * scale)) {
    out.push_back({c.value, c.algebraic_multiplicity,
                   geometric_multiplicity(a, c.value, tol)});
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (x.value.real() != y.value.real()) return x.value.real() > y.value.real();
    return x.value.imag() > y.value.imag();
  });
  return out;
}

int cmd_analyze(const RunConfig& cfg, Format format, std::ostream& out) {
  const Analysis an = analyze_network(cfg);
  const auto& sys = *an.net.system;
  const auto spec = spectrum(sys.a(), an.bd, cfg.tol);
  if (format == Format::kJson) {
    json report = decomposition_report(sys, an.dec, an.bd);
    report["warnings"] = an.net.warnings;
    for (const auto& w : n_gamma_warnings(an.dec)) report["warnings"].push_back(w);
    json sp = json::array();
    for (const auto& e : spec) {
      sp.push_back({{"eigenvalue", complex_to_json(e.value)},
                    {"algebraic_multiplicity", e.algebraic},
                    {"geometric_multiplicity", e.geometric}});
    }
    report["spectrum"] = sp;
    out << report.dump(2) << "\n";
    return kOk;
  }
  out << "state dimension: " << sys.state_dim() << " (" << an.net.spec.node_count
      << " nodes x " << sys.node_dim() << ")\n";
  out << "group order: " << sys.group().order() << "\n";
  out << "equivariance residual: " << fmt_num(sys.equivariance().residual) << "\n\n";
  out << "irrep          n_i  d_i  m_i  type           abs.irr\n";
  for (const auto& c : an.dec.components) {
    out << std::left << std::setw(14) << c.label << std::right << std::setw(4)
        << c.irrep_dim << std::setw(5) << c.multiplicity << std::setw(5)
        << c.isotypic_dim << "  " << std::left << std::setw(15) << to_string(c.fs)
        << (c.abs_irreducible ? "yes" : "no") << std::right << "\n";
  }
  out << "\nN_Gamma = " << n_gamma(an.dec) << "\n";
  for (const auto& w : an.net.warnings) out << "warning: " << w << "\n";
  for (const auto& w : n_gamma_warnings(an.dec)) out << "warning: " << w << "\n";
  out << "\nblocks (T columns):\n";
  for (std::size_t b = 0; b < an.dec.blocks.size(); ++b) {
    const auto& blk = an.dec.blocks[b];
    const auto& c = an.dec.components[blk.component];
    out << "  " << c.label;
    if (c.refined) out << " mu=" << blk.mu + 1;
    out << "  cols " << blk.offset + 1 << ".." << blk.offset + blk.size
        << "  eigenvalues:";
    for (const auto& e : eigenvalues(an.bd.blocks[b])) out << " " << fmt_complex(e);
    out << "\n";
  }
  out << "off-block residual: " << fmt_num(an.bd.off_block_residual) << "\n";
  out << "\nspectrum (eigenvalue: algebraic/geometric multiplicity):\n";
  for (const auto& e : spec) {
    out << "  " << fmt_complex(e.value) << ": " << e.algebraic << "/" << e.geometric
        << "\n";
  }
  return kOk;
}

int cmd_design(const RunConfig& cfg, Format format, std::ostream& out,
               std::ostream& err) {
  const Analysis an = analyze_network(cfg);
  DesignOptions opts{cfg.tol, cfg.method, cfg.rank_greedy};
  const ControlDesign d = cfg.observe
                              ? design_output_matrix(*an.net.system, an.dec, opts)
                              : design_input_matrix(*an.net.system, an.dec, opts);
  const char* what = d.output ? "observable" : "controllable";
  std::ostringstream summary;
  summary << (d.output ? "sensors" : "inputs") << " at state indices {"
          << join_one_based(d.selected, ", ") << "}; N_Gamma = " << d.n_gamma
          << "; rank " << d.rank << "/" << an.dec.state_dim << " ("
          << to_string(d.method) << "); " << (d.controllable ? "" : "NOT ") << what
          << "\n";
  if (format == Format::kJson) {
    out << design_report(an.dec, d).dump(2) << "\n";
    err << summary.str();
  } else {
    for (const auto& s : d.trace) {
      const auto& c = an.dec.components[s.component];
      out << "  " << c.label << " mu=" << s.mu + 1 << ": column " << s.column + 1
          << " -> e" << s.row + 1 << "\n";
    }
    out << summary.str();
  }
  if (!d.controllable) {
    err << "design exhausted all " << an.dec.state_dim
        << " unit vectors without reaching full rank\n";
    return kExhausted;
  }
  return kOk;
}

int cmd_check(const RunConfig& cfg, Format format, std::ostream& out,
              std::ostream& err) {
  LoadOptions lo;
  lo.irreps_path = cfg.irreps;
  lo.equivariance_tol = cfg.tol.entry_abs;
  // The group action is not needed for a rank test, but loading validates
  // the spec the same way the other commands do.
  const LoadedNetwork net = load_network(cfg.input, lo);
  const Matrix& a = net.system->a();
  const int n = static_cast<int>(a.rows());

  std::vector<int> indices;
  bool observe = cfg.observe;
  if (cfg.design) {
    const json doc = parse_json(read_file(*cfg.design), cfg.design->string());
    for (int i : get_as<std::vector<int>>(
             require(doc, "selected_state_indices", ""), "selected_state_indices")) {
      indices.push_back(i - 1);
    }
    if (doc.contains("kind")) observe = doc["kind"] == "output";
  } else {
    for (int i : cfg.inputs) indices.push_back(i - 1);
  }
  if (indices.empty()) throw ParseError("check: no indices (use --inputs or --design)");
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] < 0 || indices[i] >= n) {
      throw ParseError("check: index " + std::to_string(indices[i] + 1) +
                       " outside 1.." + std::to_string(n));
    }
    if (std::count(indices.begin(), indices.end(), indices[i]) > 1) {
      throw ParseError("check: index " + std::to_string(indices[i] + 1) + " repeated");
    }
  }
  const Matrix at = a.transpose();
  const Matrix& sys = observe ? at : a;
  const Matrix b = unit_columns(n, indices);

  std::vector<RankReport> reports;
  for (auto m : {RankMethod::kKalman, RankMethod::kSubspace, RankMethod::kPbh}) {
    reports.push_back(is_controllable(sys, b, m, cfg.tol));
  }
  const RankReport& chosen = reports[static_cast<int>(cfg.method)];
  const bool agree = std::all_of(reports.begin(), reports.end(), [&](const auto& r) {
    return r.controllable() == chosen.controllable();
  });
  const char* what = observe ? "observable" : "controllable";
  if (format == Format::kJson) {
    json j;
    j["kind"] = observe ? "output" : "input";
    j["selected_state_indices"] = json::array();
    for (int i : indices) j["selected_state_indices"].push_back(i + 1);
    j["state_dim"] = n;
    j["method"] = to_string(cfg.method);
    j["controllable"] = chosen.controllable();
    j["rank"] = chosen.rank;
    j["methods_agree"] = agree;
    for (const auto& r : reports) {
      json e{{"rank", r.rank}, {"controllable", r.controllable()}};
      if (!r.pbh.empty()) {
        e["eigenvalues"] = json::array();
        for (const auto& p : r.pbh) {
          e["eigenvalues"].push_back({{"eigenvalue", complex_to_json(p.eigenvalue)},
                                      {"algebraic_multiplicity", p.algebraic_multiplicity},
                                      {"rank", p.rank}});
        }
      }
      j["methods"][to_string(r.method)] = e;
    }
    out << j.dump(2) << "\n";
  } else {
    out << (observe ? "sensors" : "inputs") << " at {" << join_one_based(indices, ", ")
        << "}\n";
    for (const auto& r : reports) {
      out << "  " << std::left << std::setw(9) << to_string(r.method) << std::right
          << " rank " << r.rank << "/" << n << "  "
          << (r.controllable() ? "" : "NOT ") << what << "\n";
      for (const auto& p : r.pbh) {
        if (p.rank < n) {
          out << "            lambda = " << fmt_complex(p.eigenvalue) << ": rank "
              << p.rank << "\n";
        }
      }
    }
  }
  if (!agree) err << "warning: rank methods disagree; verdict from " << to_string(cfg.method) << "\n";
  return chosen.controllable() ? kOk : kNotControllable;
}

int cmd_enumerate(const RunConfig& cfg, Format format, std::ostream& out,
                  std::ostream& err) {
  LoadOptions lo;
  lo.irreps_path = cfg.irreps;
  lo.equivariance_tol = cfg.tol.entry_abs;
  const LoadedNetwork net = load_network(cfg.input, lo);
  const Matrix a = cfg.observe ? Matrix(net.system->a().transpose()) : net.system->a();
  std::vector<ConfigResult> results;
  try {
    results = enumerate_input_configs(a, cfg.k, cfg.cap, cfg.tol);
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kCapExceeded;
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  const auto positive = std::count_if(results.begin(), results.end(),
                                      [](const auto& r) { return r.controllable; });
  const char* flag = cfg.observe ? "observable" : "controllable";
  std::ostringstream summary;
  summary << positive << " of " << results.size() << " " << cfg.k << "-subsets "
          << flag << "\n";
  if (format == Format::kJson) {
    json j;
    j["k"] = cfg.k;
    j["total"] = results.size();
    j[std::string(flag) + "_count"] = positive;
    j["subsets"] = json::array();
    for (const auto& r : results) {
      json s = json::array();
      for (int i : r.subset) s.push_back(i + 1);
      j["subsets"].push_back({{"subset", s}, {flag, r.controllable}});
    }
    out << j.dump(2) << "\n";
  } else {
    out << "subset," << flag << "\n";
    for (const auto& r : results) {
      out << join_one_based(r.subset, " ") << "," << (r.controllable ? 1 : 0) << "\n";
    }
    if (format == Format::kText) out << summary.str();
  }
  if (format != Format::kText) err << summary.str();
  return kOk;
}

}  // namespace

Matrix matrix_from_json(const json& j, const std::string& field) {
  if (j.is_number()) return Matrix::Constant(1, 1, j.get<double>());
  if (!j.is_array() || j.empty()) {
    throw ParseError("field '" + field + "': expected a non-empty array of rows");
  }
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (!j[0].is_array()) throw ParseError("field '" + field + "[0]': expected an array");
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = j[r];
    const std::string rf = field + "[" + std::to_string(r) + "]";
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw ParseError("field '" + rf + "': expected " + std::to_string(cols) +
                       " entries");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      if (!row[c].is_number()) {
        throw ParseError("field '" + rf + "[" + std::to_string(c) +
                         "]': expected a number");
      }
      m(r, c) = row[c].get<double>();
    }
  }
  return m;
}

json matrix_to_json(const Matrix& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

Matrix load_matrix(const std::filesystem::path& path, const std::string& key) {
  const json doc = parse_json(read_file(path), path.string());
  if (doc.is_array()) return matrix_from_json(doc, key);
  return matrix_from_json(require(doc, key, ""), key);
}

LoadedNetwork parse_network(const std::string& text,
                            const std::filesystem::path& base_dir,
                            const LoadOptions& opts) {
  const json doc = parse_json(text, "network spec");
  if (!doc.is_object()) throw ParseError("network spec: expected a JSON object");
  LoadedNetwork net;
  const json* group_json = doc.contains("group") ? &doc["group"] : nullptr;
  const json* irreps_json =
      group_json && group_json->contains("irreps") ? &(*group_json)["irreps"] : nullptr;

  PermutationGroup group;
  std::vector<Permutation> vertex_generators;
  Matrix a;
  if (doc.contains("preset")) {
    const auto preset = get_as<std::string>(doc["preset"], "preset");
    if (preset != "petersen") {
      throw ParseError("field 'preset': unknown preset '" + preset + "'");
    }
    const double b = doc.contains("b") ? get_as<double>(doc["b"], "b") : 0.0;
    const double c = doc.contains("c") ? get_as<double>(doc["c"], "c") : 1.0;
    auto pet = petersen(b, c);
    net.spec = std::move(pet.spec);
    group = std::move(pet.group);
    vertex_generators = std::move(pet.vertex_generators);
  } else {
    net.spec = parse_spec_fields(doc);
    std::vector<Permutation> gens;
    int degree = net.spec.node_count;
    if (group_json) {
      const bool has_vertex = group_json->contains("vertex_action");
      const json empty = json::array();
      const json& gj = group_json->contains("generators") ? (*group_json)["generators"] : empty;
      if (!gj.is_array()) throw ParseError("field 'group.generators': expected an array");
      if (group_json->contains("degree")) {
        degree = get_int((*group_json)["degree"], "group.degree");
      } else if (has_vertex) {
        degree = 0;
        for (const auto& g : gj) degree = std::max(degree, max_symbol(g));
      }
      for (std::size_t k = 0; k < gj.size(); ++k) {
        gens.push_back(parse_permutation(gj[k], degree,
                                         "group.generators[" + std::to_string(k) + "]"));
      }
      if (has_vertex) {
        const auto& vj = (*group_json)["vertex_action"];
        if (!vj.is_array()) throw ParseError("field 'group.vertex_action': expected an array");
        for (std::size_t k = 0; k < vj.size(); ++k) {
          vertex_generators.push_back(parse_permutation(
              vj[k], net.spec.node_count,
              "group.vertex_action[" + std::to_string(k) + "]"));
        }
      }
    }
    try {
      group = closure(std::move(gens), degree);
    } catch (const GroupError& e) {
      throw ParseError("field 'group.generators': " + std::string(e.what()));
    }
  }

  try {
    a = assemble(net.spec);
    EquivariantSystem::Options so;
    so.tol = opts.equivariance_tol;
    net.system.emplace(std::move(a), group, net.spec.node_dim, vertex_generators, so);
  } catch (const NetworkError& e) {
    throw ParseError(e.what());
  }
  net.irreps = resolve_irreps(irreps_json, net.system->group(), base_dir, opts,
                              net.warnings);
  return net;
}

LoadedNetwork load_network(const std::filesystem::path& path,
                           const LoadOptions& opts) {
  const std::string text = read_file(path);
  try {
    return parse_network(text, path.parent_path(), opts);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

json decomposition_report(const EquivariantSystem& system,
                          const IsotypicDecomposition& dec,
                          const BlockDiagonal& bd) {
  json j;
  j["state_dim"] = dec.state_dim;
  j["group_order"] = system.group().order();
  j["n_gamma"] = n_gamma(dec);
  j["irreps"] = json::array();
  for (const auto& c : dec.components) {
    j["irreps"].push_back({{"label", c.label},
                           {"n_i", c.irrep_dim},
                           {"d_i", c.multiplicity},
                           {"m_i", c.isotypic_dim},
                           {"type", to_string(c.fs)},
                           {"abs_irreducible", c.abs_irreducible}});
  }
  j["T"] = matrix_to_json(dec.transform);
  j["blocks"] = json::array();
  for (std::size_t b = 0; b < dec.blocks.size(); ++b) {
    const auto& blk = dec.blocks[b];
    json e{{"irrep", dec.components[blk.component].label},
           {"mu", blk.mu + 1},
           {"first_column", blk.offset + 1},
           {"size", blk.size},
           {"matrix", matrix_to_json(bd.blocks[b])}};
    e["eigenvalues"] = json::array();
    for (const auto& z : eigenvalues(bd.blocks[b])) e["eigenvalues"].push_back(complex_to_json(z));
    j["blocks"].push_back(std::move(e));
  }
  const auto n = dec.transform.rows();
  j["residuals"] = {
      {"equivariance", system.equivariance().residual},
      {"off_block", bd.off_block_residual},
      {"orthogonality",
       max_abs(dec.transform.transpose() * dec.transform - Matrix::Identity(n, n))}};
  return j;
}

json design_report(const IsotypicDecomposition& dec, const ControlDesign& d) {
  json j;
  j["kind"] = d.output ? "output" : "input";
  j["n_gamma"] = d.n_gamma;
  j["selected_state_indices"] = json::array();
  for (int i : d.selected) j["selected_state_indices"].push_back(i + 1);
  j["controllable"] = d.controllable;
  j["rank"] = d.rank;
  j["state_dim"] = dec.state_dim;
  j["method"] = to_string(d.method);
  j["trace"] = json::array();
  for (const auto& s : d.trace) {
    j["trace"].push_back({{"irrep", dec.components[s.component].label},
                          {"mu", s.mu + 1},
                          {"column", s.column + 1},
                          {"row", s.row + 1}});
  }
  j["matrix"] = matrix_to_json(d.matrix);
  return j;
}

Format parse_format(const std::string& name) {
  if (name == "text") return Format::kText;
  if (name == "json") return Format::kJson;
  if (name == "csv") return Format::kCsv;
  throw ParseError("unknown format '" + name + "' (expected text, json or csv)");
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (!(cfg.tol.rank_rel > 0.0) || !(cfg.tol.entry_abs > 0.0)) {
      throw ParseError("tolerances must be positive");
    }
    const bool enumerate = cfg.command == "enumerate";
    const Format format = cfg.format.value_or(enumerate ? Format::kCsv : Format::kText);
    if (format == Format::kCsv && !enumerate) {
      throw ParseError("--format csv is only available for enumerate");
    }
    if (cfg.command == "analyze") return cmd_analyze(cfg, format, out);
    if (cfg.command == "design") return cmd_design(cfg, format, out, err);
    if (cfg.command == "check") return cmd_check(cfg, format, out, err);
    if (enumerate) return cmd_enumerate(cfg, format, out, err);
    throw ParseError("unknown command '" + cfg.command + "'");
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kCapExceeded;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace symctl::cli
