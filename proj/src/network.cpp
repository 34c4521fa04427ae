#include "symctl/network.hpp"

#include <algorithm>
#include <set>

#include "symctl/kernels.hpp"

namespace symctl {

void NetworkSpec::validate() const {
  if (node_count < 1) throw NetworkError("network: node_count must be >= 1");
  if (node_dim < 1) throw NetworkError("network: node_dim must be >= 1");
  if (internal_block.rows() != node_dim || internal_block.cols() != node_dim) {
    throw NetworkError("network: internal_block must be " +
                       std::to_string(node_dim) + "x" +
                       std::to_string(node_dim));
  }
  for (const auto& [name, m] : coupling_labels) {
    if (m.rows() != node_dim || m.cols() != node_dim) {
      throw NetworkError("network: coupling '" + name + "' must be " +
                         std::to_string(node_dim) + "x" +
                         std::to_string(node_dim));
    }
  }
  std::set<std::pair<int, int>> seen;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const auto& e = edges[k];
    const std::string where = "network: edge " + std::to_string(k + 1);
    if (e.from < 0 || e.from >= node_count || e.to < 0 || e.to >= node_count) {
      throw NetworkError(where + " references a node outside 1.." +
                         std::to_string(node_count));
    }
    if (e.from == e.to) {
      throw NetworkError(where + " is a self-loop; use internal_block");
    }
    if (!coupling_labels.contains(e.label)) {
      throw NetworkError(where + " uses unknown label '" + e.label + "'");
    }
    if (!seen.insert({e.from, e.to}).second) {
      throw NetworkError(where + " duplicates (" + std::to_string(e.from + 1) +
                         " -> " + std::to_string(e.to + 1) + ")");
    }
  }
}

Matrix assemble(const NetworkSpec& spec) {
  spec.validate();
  const int d = spec.node_dim;
  Matrix a = Matrix::Zero(spec.state_dim(), spec.state_dim());
  for (int i = 0; i < spec.node_count; ++i) {
    a.block(i * d, i * d, d, d) = spec.internal_block;
  }
  for (const auto& e : spec.edges) {
    a.block(e.to * d, e.from * d, d, d) = spec.coupling_labels.at(e.label);
  }
  return a;
}

Matrix lift(const Permutation& perm, int node_dim) {
  const int n = perm.degree() * node_dim;
  Matrix m = Matrix::Zero(n, n);
  for (int j = 0; j < perm.degree(); ++j) {
    for (int k = 0; k < node_dim; ++k) {
      m(perm(j) * node_dim + k, j * node_dim + k) = 1.0;
    }
  }
  return m;
}

EquivarianceReport check_equivariance(const Matrix& a,
                                      const std::vector<Matrix>& action,
                                      double tol) {
  for (const auto& g : action) {
    if (g.rows() != a.rows() || g.cols() != a.cols()) {
      throw NetworkError("check_equivariance: action/matrix size mismatch");
    }
  }
  EquivarianceReport rep;
  if (action.empty()) return rep;
  const auto worst = max_commutator(a, action);
  rep.residual = worst.residual;
  rep.worst_element = worst.worst;
  rep.row = worst.row;
  rep.col = worst.col;
  rep.pass = rep.residual <= tol;
  return rep;
}

EquivariantSystem::EquivariantSystem(Matrix a, PermutationGroup group,
                                     int node_dim,
                                     std::vector<Permutation> vertex_generators)
    : EquivariantSystem(std::move(a), std::move(group), node_dim,
                        std::move(vertex_generators), Options{}) {}

EquivariantSystem::EquivariantSystem(Matrix a, PermutationGroup group,
                                     int node_dim,
                                     std::vector<Permutation> vertex_generators,
                                     const Options& opts)
    : a_(std::move(a)),
      group_(std::move(group)),
      node_dim_(node_dim),
      vertex_generators_(std::move(vertex_generators)) {
  if (a_.rows() != a_.cols()) throw NetworkError("system matrix must be square");
  if (node_dim_ < 1 || a_.rows() % node_dim_ != 0) {
    throw NetworkError("state dimension not divisible by node_dim");
  }
  const int nodes = static_cast<int>(a_.rows()) / node_dim_;

  if (vertex_generators_.empty()) {
    if (group_.degree() != nodes) {
      throw NetworkError("group acts on " + std::to_string(group_.degree()) +
                         " points but the network has " +
                         std::to_string(nodes) +
                         " nodes; supply a vertex action");
    }
    for (const auto& el : group_.elements()) vertex_action_.push_back(el.perm);
  } else {
    if (vertex_generators_.size() != group_.generators().size()) {
      throw NetworkError("vertex action needs one permutation per generator");
    }
    for (const auto& v : vertex_generators_) {
      if (v.degree() != nodes) {
        throw NetworkError("vertex action " + v.ToCycles() + " has degree " +
                           std::to_string(v.degree()) + ", expected " +
                           std::to_string(nodes));
      }
    }
    vertex_action_ = extend_by_words<Permutation>(
        group_, vertex_generators_, Permutation::Identity(nodes),
        [](const Permutation& p) { return p.inverse(); });
    // The induced map must respect the group law on generators.
    for (std::size_t g = 0; g < group_.order(); ++g) {
      for (std::size_t s = 0; s < group_.generators().size(); ++s) {
        const auto gs = group_.product(
            g, static_cast<std::size_t>(group_.index_of(group_.generators()[s])));
        if (vertex_action_[gs] != compose(vertex_action_[g], vertex_generators_[s])) {
          throw NetworkError(
              "vertex action is not a homomorphism of the group (fails at " +
              group_.element(g).perm.ToCycles() + " · generator " +
              std::to_string(s + 1) + ")");
        }
      }
    }
  }
  lifted_.reserve(vertex_action_.size());
  for (const auto& p : vertex_action_) lifted_.push_back(lift(p, node_dim_));

  if (opts.check) {
    std::vector<Matrix> to_check;
    std::vector<std::size_t> indices;
    if (opts.check_all_elements) {
      to_check = lifted_;
      for (std::size_t g = 0; g < lifted_.size(); ++g) indices.push_back(g);
    } else {
      for (const auto& s : group_.generators()) {
        const auto g = static_cast<std::size_t>(group_.index_of(s));
        indices.push_back(g);
        to_check.push_back(lifted_[g]);
      }
    }
    report_ = check_equivariance(a_, to_check, opts.tol);
    if (!indices.empty()) report_.worst_element = indices[report_.worst_element];
    if (!report_.pass) {
      throw NetworkError(
          "system is not equivariant: ‖γA − Aγ‖ = " +
          std::to_string(report_.residual) + " for γ = " +
          group_.element(report_.worst_element).perm.ToCycles() + " at (" +
          std::to_string(report_.row + 1) + "," +
          std::to_string(report_.col + 1) + ")");
    }
  }
}

EquivariantSystem EquivariantSystem::transposed() const {
  EquivariantSystem t = *this;
  t.a_ = a_.transpose();
  return t;
}

namespace {

const std::vector<std::vector<int>>& petersen_subsets() {
  static const std::vector<std::vector<int>> kSubsets = {
      {1, 2}, {3, 4}, {1, 5}, {2, 3}, {4, 5},
      {3, 5}, {2, 5}, {2, 4}, {1, 4}, {1, 3}};
  return kSubsets;
}

int petersen_vertex_of(int a, int b) {
  const auto& s = petersen_subsets();
  for (std::size_t v = 0; v < s.size(); ++v) {
    if ((s[v][0] == a && s[v][1] == b) || (s[v][0] == b && s[v][1] == a)) {
      return static_cast<int>(v);
    }
  }
  throw NetworkError("petersen: invalid 2-subset");
}

}  // namespace

Permutation petersen_vertex_action(const Permutation& symbols) {
  if (symbols.degree() != 5) {
    throw NetworkError("petersen: symbol permutation must have degree 5");
  }
  std::vector<int> im;
  for (const auto& s : petersen_subsets()) {
    im.push_back(petersen_vertex_of(symbols(s[0] - 1) + 1, symbols(s[1] - 1) + 1));
  }
  return Permutation(std::move(im));
}

PetersenNetwork petersen(double b, double c) {
  PetersenNetwork net;
  net.subsets = petersen_subsets();
  net.spec.node_count = 10;
  net.spec.node_dim = 1;
  net.spec.internal_block = Matrix::Constant(1, 1, b);
  net.spec.coupling_labels["C"] = Matrix::Constant(1, 1, c);
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) {
      const auto& si = net.subsets[i];
      const auto& sj = net.subsets[j];
      const bool disjoint = std::none_of(si.begin(), si.end(), [&](int x) {
        return std::find(sj.begin(), sj.end(), x) != sj.end();
      });
      if (i != j && disjoint) net.spec.edges.push_back({j, i, "C"});
    }
  }
  std::vector<Permutation> gens = {Permutation::FromCycles("(1 2)", 5),
                                   Permutation::FromCycles("(1 2 3 4 5)", 5)};
  for (const auto& g : gens) {
    net.vertex_generators.push_back(petersen_vertex_action(g));
  }
  net.group = closure(std::move(gens), 5);
  return net;
}

}  // namespace symctl
