#include "symctl/control.hpp"

#include <random>

#include <gtest/gtest.h>

#include "symctl/cli.hpp"
#include "test_util.hpp"

namespace symctl {
namespace {

using testing::data_path;

constexpr RankMethod kMethods[] = {RankMethod::kKalman, RankMethod::kSubspace,
                                   RankMethod::kPbh};

struct Loaded {
  cli::LoadedNetwork net;
  IsotypicDecomposition dec;
};

Loaded load(const std::string& name) {
  auto net = cli::load_network(data_path(name));
  auto dec = decompose(*net.system, net.irreps);
  return {std::move(net), std::move(dec)};
}

std::vector<int> one_based(const std::vector<int>& v) {
  std::vector<int> out;
  for (int i : v) out.push_back(i + 1);
  return out;
}

GTEST_TEST(ControllabilityMatrix, StacksPowers) {
  const Matrix k = controllability_matrix(Matrix::Zero(3, 3), unit_columns(3, {0}));
  ASSERT_EQ(k.cols(), 3);
  EXPECT_EQ(k.col(0), Vector::Unit(3, 0));
  EXPECT_EQ(k.col(1), Vector::Zero(3));
  EXPECT_EQ(numerical_rank(k), 1);
  Matrix a(2, 2);
  a << 1, 2, 3, 4;
  Matrix b(2, 1);
  b << 1, 1;
  const Matrix k2 = controllability_matrix(a, b);
  EXPECT_EQ(k2.col(1), a * b);
  const Matrix o = observability_matrix(a, b.transpose());
  EXPECT_EQ(o.row(1), b.transpose() * a);
}

GTEST_TEST(UnitColumns, RejectsOutOfRange) {
  EXPECT_THROW(unit_columns(3, {3}), std::out_of_range);
  EXPECT_EQ(unit_columns(3, {}).cols(), 0);
}

GTEST_TEST(IsControllable, IdentityWithOneInput) {
  for (auto m : kMethods) {
    EXPECT_FALSE(is_controllable(Matrix::Identity(3, 3), unit_columns(3, {0}), m).controllable())
        << to_string(m);
  }
}

GTEST_TEST(IsControllable, DrakeStyleDiagonalCases) {
  Matrix a(2, 2);
  a << -2, 0, 0, -1;
  Matrix b(2, 1);
  b << 2, 1;
  Matrix b0(2, 1);
  b0 << 2, 0;
  for (auto m : kMethods) {
    EXPECT_TRUE(is_controllable(a, b, m).controllable());
    EXPECT_FALSE(is_controllable(a, b0, m).controllable());
  }
}

GTEST_TEST(IsControllable, RingNeedsTwoInputs) {
  const Matrix a = testing::d4_matrix();
  for (int k = 0; k < 8; ++k) {
    for (auto m : kMethods) {
      const auto r = is_controllable(a, unit_columns(8, {k}), m);
      EXPECT_FALSE(r.controllable()) << "e" << k + 1 << " " << to_string(m);
      // Krylov dimension 6; PBH loses one rank at each doubled eigenvalue.
      EXPECT_EQ(r.rank, m == RankMethod::kPbh ? 7 : 6) << "e" << k + 1 << " " << to_string(m);
    }
  }
  for (auto m : kMethods) EXPECT_TRUE(is_controllable(a, unit_columns(8, {0, 2}), m).controllable());
}

GTEST_TEST(IsControllable, Z4RingFromAnyNode) {
  const auto l = load("z4_ring.json");
  const Matrix& a = l.net.system->a();
  for (int k = 0; k < 8; ++k) {
    for (auto m : kMethods) {
      EXPECT_TRUE(is_controllable(a, unit_columns(8, {k}), m).controllable())
          << "e" << k + 1 << " " << to_string(m);
    }
    EXPECT_TRUE(testing::controllable_oracle(a, unit_columns(8, {k})));
  }
}

GTEST_TEST(IsControllable, PbhFromBlocksMatchesDense) {
  const auto l = load("d4_ring.json");
  const auto bd = block_diagonalize(l.net.system->a(), l.dec);
  const Matrix b = unit_columns(8, {0, 2});
  const auto dense = is_controllable(l.net.system->a(), b, RankMethod::kPbh);
  const auto blocks = is_controllable(l.net.system->a(), b, RankMethod::kPbh, {}, &bd.blocks);
  EXPECT_EQ(dense.rank, blocks.rank);
  EXPECT_EQ(dense.pbh.size(), blocks.pbh.size());
  EXPECT_EQ(dense.pbh.size(), 6u);
}

GTEST_TEST(PbhRank, PetersenCases) {
  const Matrix a = testing::petersen_adjacency_oracle();
  EXPECT_EQ(pbh_rank(a, Matrix(10, 0), 1.0), 5);
  EXPECT_EQ(pbh_rank(a, unit_columns(10, {0, 1, 2, 5, 8}), 1.0), 10);
  EXPECT_EQ(pbh_rank(a, Matrix(10, 0), 0.5), 10);
  // Dense rank oracle on the 10 × 15 matrix.
  Matrix m(10, 15);
  m << Matrix::Identity(10, 10) - a, unit_columns(10, {0, 1, 2, 5, 8});
  EXPECT_EQ(testing::qr_rank(m), 10);
}

GTEST_TEST(GeometricMultiplicity, PetersenSpectrum) {
  const Matrix a = testing::petersen_adjacency_oracle();
  EXPECT_EQ(geometric_multiplicity(a, 3.0), 1);
  EXPECT_EQ(geometric_multiplicity(a, 1.0), 5);
  EXPECT_EQ(geometric_multiplicity(a, -2.0), 4);
  EXPECT_EQ(geometric_multiplicity(a, 7.0), 0);
  EXPECT_EQ(geometric_multiplicity(Matrix::Identity(3, 3), 1.0), 3);
}

GTEST_TEST(NGamma, ReferenceNetworks) {
  EXPECT_EQ(n_gamma(load("d4_ring.json").dec), 2);
  EXPECT_EQ(n_gamma(load("z4_ring.json").dec), 1);
  EXPECT_EQ(n_gamma(load("petersen.json").dec), 5);
  EXPECT_EQ(n_gamma(load("petersen_young.json").dec), 5);
  EXPECT_EQ(n_gamma(load("trivial5.json").dec), 1);
  EXPECT_TRUE(n_gamma_warnings(load("z4_ring.json").dec).empty());
}

GTEST_TEST(Design, RingSelectsThreeThenOne) {
  const auto l = load("d4_ring.json");
  for (auto m : kMethods) {
    DesignOptions opts;
    opts.method = m;
    const auto d = design_input_matrix(*l.net.system, l.dec, opts);
    EXPECT_EQ(one_based(d.selected), (std::vector<int>{3, 1})) << to_string(m);
    EXPECT_TRUE(d.controllable);
    ASSERT_EQ(d.trace.size(), 2u);
    EXPECT_EQ(d.trace[0].column, 4);  // column 5 of T
    EXPECT_EQ(d.trace[1].column, 6);  // column 7 of T
    EXPECT_GE(static_cast<int>(d.selected.size()), d.n_gamma);
    for (const auto& s : d.trace) {
      EXPECT_TRUE(check_em_condition(l.dec, s.component, s.mu, s.row));
      EXPECT_TRUE(em_condition(l.dec, s.component, s.mu, s.row).t_entry_nonzero);
    }
  }
}

GTEST_TEST(Design, PetersenSelectsPrintedNodes) {
  const auto l = load("petersen.json");
  const auto d = design_input_matrix(*l.net.system, l.dec);
  EXPECT_EQ(one_based(d.selected), (std::vector<int>{1, 2, 3, 6, 9}));
  EXPECT_TRUE(d.controllable);
  EXPECT_EQ(d.matrix, unit_columns(10, d.selected));
  EXPECT_TRUE(testing::controllable_oracle(l.net.system->a(), d.matrix));
  for (const auto& s : d.trace) EXPECT_TRUE(check_em_condition(l.dec, s.component, s.mu, s.row));
}

GTEST_TEST(Design, Z4SingleColumn) {
  const auto l = load("z4_ring.json");
  const auto d = design_input_matrix(*l.net.system, l.dec);
  EXPECT_EQ(one_based(d.selected), (std::vector<int>{1}));
  EXPECT_TRUE(d.controllable);
}

GTEST_TEST(Design, TrivialGroupSingleNode) {
  const auto l = load("trivial5.json");
  const auto d = design_input_matrix(*l.net.system, l.dec);
  EXPECT_EQ(d.selected.size(), 1u);
  EXPECT_TRUE(d.controllable);
  EXPECT_TRUE(testing::controllable_oracle(l.net.system->a(), d.matrix));
}

GTEST_TEST(Design, OutputDesignOnSymmetricMatrixMatchesInput) {
  const auto l = load("petersen.json");
  const auto in = design_input_matrix(*l.net.system, l.dec);
  const auto out = design_output_matrix(*l.net.system, l.dec);
  EXPECT_EQ(in.selected, out.selected);
  EXPECT_TRUE(out.output);
  EXPECT_EQ(out.matrix.rows(), 5);
  EXPECT_EQ(testing::qr_rank(observability_matrix(l.net.system->a(), out.matrix)), 10);
}

GTEST_TEST(Design, RingOutputDesignNeedsTwoSensors) {
  const auto l = load("d4_ring.json");
  const auto d = design_output_matrix(*l.net.system, l.dec);
  EXPECT_EQ(d.selected.size(), 2u);
  EXPECT_TRUE(d.controllable);
  EXPECT_TRUE(is_observable(l.net.system->a(), d.matrix, RankMethod::kKalman).controllable());
  // Unscaled powers up to A^7 defeat a fixed QR threshold; use the scaled
  // oracle on the dual pair.
  EXPECT_TRUE(testing::controllable_oracle(l.net.system->a().transpose(), d.matrix.transpose()));
}

GTEST_TEST(Design, ZeroDynamicsNeedsEveryIndex) {
  // With A = 0 only B = I controls; the design falls back to appending the
  // remaining indices in ascending order.
  const auto g = closure({}, 3);
  EquivariantSystem sys(Matrix::Zero(3, 3), g, 1);
  const std::vector<IrrepInfo> irreps = {classify(g, make_rep(g, "trivial", {}))};
  const auto dec = decompose(sys, irreps);
  const auto d = design_input_matrix(sys, dec);
  EXPECT_TRUE(d.controllable);
  EXPECT_EQ(one_based(d.selected), (std::vector<int>{1, 2, 3}));
  EXPECT_THROW(design_input_matrix(Matrix::Zero(4, 4), dec), std::invalid_argument);
}

GTEST_TEST(Design, RankGreedySkipsUselessCandidates) {
  const auto l = load("d4_ring.json");
  DesignOptions opts;
  opts.rank_greedy = true;
  const auto d = design_input_matrix(*l.net.system, l.dec, opts);
  EXPECT_TRUE(d.controllable);
  EXPECT_EQ(one_based(d.selected), (std::vector<int>{3, 1}));
}

GTEST_TEST(EmCondition, RingPrintedCases) {
  const auto l = load("d4_ring.json");
  EXPECT_TRUE(check_em_condition(l.dec, 2, 0, 2));  // P^1_{θ3} e3
  EXPECT_TRUE(check_em_condition(l.dec, 2, 1, 0));  // P^2_{θ3} e1
  EXPECT_FALSE(check_em_condition(l.dec, 2, 0, 0)); // P^1_{θ3} e1 = 0
  const auto e = em_condition(l.dec, 2, 0, 0);
  EXPECT_FALSE(e.t_entry_nonzero);
  // Components with no columns.
  EXPECT_FALSE(check_em_condition(l.dec, 3, 0, 0));
}

GTEST_TEST(Enumerate, PetersenFourInputsAllFail) {
  const Matrix a = testing::petersen_adjacency_oracle();
  const auto res = enumerate_input_configs(a, 4);
  EXPECT_EQ(res.size(), 210u);
  for (const auto& r : res) EXPECT_FALSE(r.controllable);
}

GTEST_TEST(Enumerate, PetersenFiveInputsRegressionCount) {
  const Matrix a = testing::petersen_adjacency_oracle();
  const auto res = enumerate_input_configs(a, 5);
  ASSERT_EQ(res.size(), 252u);
  int count = 0;
  for (const auto& r : res) {
    count += r.controllable;
    // Independent QR-based oracle per subset.
    EXPECT_EQ(r.controllable, testing::controllable_oracle(a, unit_columns(10, r.subset)));
    if (r.subset == std::vector<int>{0, 1, 2, 5, 8}) {
      EXPECT_TRUE(r.controllable);
    }
  }
  EXPECT_EQ(count, 162);
}

GTEST_TEST(Enumerate, CapAndRange) {
  const Matrix a = testing::petersen_adjacency_oracle();
  EXPECT_THROW(enumerate_input_configs(a, 5, 100), CapExceeded);
  EXPECT_THROW(enumerate_input_configs(a, 11), std::invalid_argument);
  const auto all = enumerate_input_configs(a, 10);
  ASSERT_EQ(all.size(), 1u);
  EXPECT_TRUE(all[0].controllable);
  EXPECT_EQ(binomial(10, 5), 252);
  EXPECT_EQ(binomial(30, 15), 155117520);
  EXPECT_EQ(binomial(3, 4), 0);
}

GTEST_TEST(Duality, ObservableIffTransposeControllable) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> dist;
  for (int trial = 0; trial < 20; ++trial) {
    Matrix a(5, 5), c(2, 5);
    for (int i = 0; i < 25; ++i) a(i / 5, i % 5) = dist(rng);
    for (int i = 0; i < 10; ++i) c(i / 5, i % 5) = trial % 3 == 0 && i >= 5 ? 0.0 : dist(rng);
    if (trial % 4 == 0) a = Matrix::Identity(5, 5);
    for (auto m : kMethods) {
      EXPECT_EQ(is_observable(a, c, m).controllable(),
                is_controllable(a.transpose(), c.transpose(), m).controllable());
    }
  }
}

}  // namespace
}  // namespace symctl
