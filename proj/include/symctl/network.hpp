#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "symctl/linalg.hpp"
#include "symctl/permgroup.hpp"

namespace symctl {

class NetworkError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Directed coupling: the state of node `from` enters the equation of node
// `to` through the labeled block. 0-based.
struct Edge {
  int from = 0;
  int to = 0;
  std::string label;
};

struct NetworkSpec {
  int node_count = 0;
  int node_dim = 1;
  Matrix internal_block;
  std::map<std::string, Matrix> coupling_labels;
  std::vector<Edge> edges;

  // Throws NetworkError on out-of-range nodes, unknown labels, wrong block
  // sizes or duplicate (from, to) pairs.
  void validate() const;
  int state_dim() const { return node_count * node_dim; }
};

// Block (i, i) is the internal block; block (to, from) is the edge's
// coupling block. Row block i collects the influences on node i.
Matrix assemble(const NetworkSpec& spec);

// Permutation matrix of `perm` (column j has its 1 in row perm(j)), Kronecker
// I_d. lift(p ∘ q) = lift(p) · lift(q).
Matrix lift(const Permutation& perm, int node_dim);

struct EquivarianceReport {
  double residual = 0.0;
  bool pass = true;
  std::size_t worst_element = 0;  // index into the checked list
  Eigen::Index row = 0;
  Eigen::Index col = 0;
};

// max over the given matrices of ‖γA − Aγ‖_max.
EquivarianceReport check_equivariance(const Matrix& a,
                                      const std::vector<Matrix>& action,
                                      double tol = 1e-9);

// A together with a group acting on its nodes. `vertex_action[g]` is the
// node permutation of group element g; `lifted[g]` its state-space matrix.
class EquivariantSystem {
 public:
  struct Options {
    double tol = 1e-9;
    bool check = true;
    // Check every element instead of the generators only.
    bool check_all_elements = false;
  };

  // The group may act on abstract points (e.g. S5 on 5 symbols) with a
  // separate induced vertex action given per generator; when
  // `vertex_generators` is empty the group acts directly on the nodes.
  EquivariantSystem(Matrix a, PermutationGroup group, int node_dim,
                    std::vector<Permutation> vertex_generators,
                    const Options& opts);
  EquivariantSystem(Matrix a, PermutationGroup group, int node_dim,
                    std::vector<Permutation> vertex_generators = {});

  const Matrix& a() const { return a_; }
  const PermutationGroup& group() const { return group_; }
  int node_dim() const { return node_dim_; }
  int state_dim() const { return static_cast<int>(a_.rows()); }
  const std::vector<Permutation>& vertex_action() const { return vertex_action_; }
  const std::vector<Matrix>& lifted_action() const { return lifted_; }
  const EquivarianceReport& equivariance() const { return report_; }

  // Same group action with A replaced by Aᵀ (still equivariant).
  EquivariantSystem transposed() const;

 private:
  EquivariantSystem() = default;
  Matrix a_;
  PermutationGroup group_;
  int node_dim_ = 1;
  std::vector<Permutation> vertex_generators_;
  std::vector<Permutation> vertex_action_;
  std::vector<Matrix> lifted_;
  EquivarianceReport report_;
};

// Petersen graph on the 2-subsets of {1..5}, numbered
//   1:{1,2} 2:{3,4} 3:{1,5} 4:{2,3} 5:{4,5} 6:{3,5} 7:{2,5} 8:{2,4}
//   9:{1,4} 10:{1,3}
// with edges between disjoint subsets, internal value b and coupling c.
struct PetersenNetwork {
  NetworkSpec spec;
  PermutationGroup group;                  // S5 on 5 symbols
  std::vector<Permutation> vertex_generators;  // induced on 10 vertices
  std::vector<std::vector<int>> subsets;   // 1-based symbol pairs per vertex
};
PetersenNetwork petersen(double b, double c);

// Induced action of a symbol permutation on the Petersen vertices.
Permutation petersen_vertex_action(const Permutation& symbols);

}  // namespace symctl
