#include <gtest/gtest.h>

#include <nlohmann/json.hpp>
#include <set>

#include "lielab/errors.hpp"
#include "lielab/root_system.hpp"

using namespace lielab;

namespace {

struct TypeFacts {
  const char* label;
  std::size_t positive_roots;
  std::size_t weyl_order;
  int dim;
  int dual_coxeter;
};

class RootSystemFacts : public ::testing::TestWithParam<TypeFacts> {};

TEST_P(RootSystemFacts, CountsMatchKnownValues) {
  const auto& f = GetParam();
  const RootSystem rs = RootSystem::build(f.label);
  EXPECT_EQ(rs.num_positive_roots(), f.positive_roots);
  EXPECT_EQ(rs.weyl_group_order(), f.weyl_order);
  EXPECT_EQ(rs.algebra_dimension(), f.dim);
  EXPECT_EQ(rs.dual_coxeter_number(), f.dual_coxeter);
  EXPECT_EQ(generate_weyl_group(rs).size(), f.weyl_order);
}

TEST_P(RootSystemFacts, CartanMatrixShape) {
  const RootSystem rs = RootSystem::build(GetParam().label);
  const IntMatrix& a = rs.cartan_matrix();
  for (int i = 0; i < rs.rank(); ++i) {
    for (int j = 0; j < rs.rank(); ++j) {
      if (i == j) {
        EXPECT_EQ(a[i][j], 2);
      } else {
        EXPECT_LE(a[i][j], 0);
        EXPECT_EQ(a[i][j] == 0, a[j][i] == 0);
      }
    }
  }
}

TEST_P(RootSystemFacts, EuclideanRealizationReproducesCartan) {
  const RootSystem rs = RootSystem::build(GetParam().label);
  const Eigen::MatrixXd& s = rs.simple_roots();
  double longest = 0.0;
  for (int i = 0; i < rs.rank(); ++i) {
    longest = std::max(longest, s.row(i).squaredNorm());
    for (int j = 0; j < rs.rank(); ++j) {
      const double pairing = 2.0 * s.row(i).dot(s.row(j)) / s.row(j).squaredNorm();
      EXPECT_NEAR(pairing, rs.cartan_matrix()[i][j], 1e-12);
    }
  }
  EXPECT_NEAR(longest, 2.0, 1e-12);
}

TEST_P(RootSystemFacts, WeylVectorTwoWays) {
  const RootSystem rs = RootSystem::build(GetParam().label);
  const Eigen::VectorXd sum_fund = rs.fundamental_weights().colwise().sum().transpose();
  const Eigen::VectorXd half_pos = 0.5 * rs.positive_roots().colwise().sum().transpose();
  EXPECT_LT((sum_fund - half_pos).norm(), 1e-12);
  EXPECT_LT((rs.weyl_vector() - half_pos).norm(), 1e-12);
}

TEST_P(RootSystemFacts, FundamentalWeightsDualToCoroots) {
  const RootSystem rs = RootSystem::build(GetParam().label);
  for (int i = 0; i < rs.rank(); ++i) {
    const Eigen::VectorXd a = rs.simple_roots().row(i).transpose();
    const Eigen::VectorXd coroot = 2.0 * a / a.squaredNorm();
    for (int j = 0; j < rs.rank(); ++j) {
      EXPECT_NEAR(rs.fundamental_weights().row(j).dot(coroot), i == j ? 1.0 : 0.0, 1e-12);
    }
  }
}

TEST_P(RootSystemFacts, WeylGroupPermutesRoots) {
  const RootSystem rs = RootSystem::build(GetParam().label);
  const auto group = generate_weyl_group(rs);
  const Eigen::MatrixXd& pos = rs.positive_roots();
  int identity_count = 0;
  for (const WeylElement& w : group) {
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(rs.rank(), rs.rank());
    EXPECT_LT((w.matrix.transpose() * w.matrix - id).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_EQ(w.sign, (w.word.size() % 2 == 0) ? 1 : -1);
    EXPECT_NEAR(w.matrix.determinant(), w.sign, 1e-12);
    if ((w.matrix - id).norm() < 1e-12) ++identity_count;
    for (Eigen::Index r = 0; r < pos.rows(); ++r) {
      const Eigen::VectorXd image = w.matrix * pos.row(r).transpose();
      double best = 1e9;
      for (Eigen::Index s = 0; s < pos.rows(); ++s) {
        best = std::min({best, (image - pos.row(s).transpose()).norm(), (image + pos.row(s).transpose()).norm()});
      }
      EXPECT_LT(best, 1e-12);
    }
  }
  EXPECT_EQ(identity_count, 1);
}

TEST_P(RootSystemFacts, RootsLieInRootLattice) {
  const RootSystem rs = RootSystem::build(GetParam().label);
  for (const IntVector& c : rs.positive_roots_simple()) {
    const Weight w = rs.weight_from_simple_coords(c);
    EXPECT_TRUE(is_in_root_lattice(rs, w)) << w.str();
    const auto back = rs.simple_coords(w);
    ASSERT_TRUE(back.has_value());
    EXPECT_EQ(*back, c);
  }
}

TEST_P(RootSystemFacts, AdjointEnumerationMatchesBruteForce) {
  const RootSystem rs = RootSystem::build(GetParam().label);
  if (rs.rank() > 4) GTEST_SKIP() << "brute force scan kept to small ranks";
  const int bound = 5;
  const auto listed = enumerate_adjoint_dominant_weights(rs, bound);
  std::set<Weight> oracle;
  // All dominant weights with label sum <= bound, filtered by solving A^T c = lambda in doubles.
  std::vector<int> c(static_cast<std::size_t>(rs.rank()), 0);
  Eigen::MatrixXd at(rs.rank(), rs.rank());
  for (int i = 0; i < rs.rank(); ++i)
    for (int j = 0; j < rs.rank(); ++j) at(i, j) = rs.cartan_matrix()[j][i];
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == rs.rank()) {
      Eigen::VectorXd lam(rs.rank());
      for (int i = 0; i < rs.rank(); ++i) lam(i) = c[static_cast<std::size_t>(i)];
      const Eigen::VectorXd sol = at.fullPivLu().solve(lam);
      bool integral = true;
      for (int i = 0; i < rs.rank(); ++i) integral = integral && std::abs(sol(i) - std::round(sol(i))) < 1e-9;
      if (integral) oracle.insert(Weight(c));
      return;
    }
    for (int v = 0; v <= left; ++v) {
      c[static_cast<std::size_t>(pos)] = v;
      rec(pos + 1, left - v);
    }
    c[static_cast<std::size_t>(pos)] = 0;
  };
  rec(0, bound);
  EXPECT_EQ(std::set<Weight>(listed.begin(), listed.end()), oracle);
  EXPECT_TRUE(std::is_sorted(listed.begin(), listed.end()));
  for (const Weight& w : listed) {
    EXPECT_TRUE(w.is_dominant());
    EXPECT_TRUE(is_in_root_lattice(rs, w));
  }
}

TEST_P(RootSystemFacts, OrbitAndDominantRepresentative) {
  const RootSystem rs = RootSystem::build(GetParam().label);
  Weight rho(std::vector<int>(static_cast<std::size_t>(rs.rank()), 1));
  // The orbit of a regular weight is free.
  EXPECT_EQ(rs.weyl_orbit(rho).size(), rs.weyl_group_order());
  for (const Weight& w : rs.weyl_orbit(rho)) EXPECT_EQ(rs.dominant_representative(w), rho);
  for (int i = 0; i < rs.rank(); ++i) EXPECT_EQ(rs.reflect(rs.reflect(rho, i), i), rho);
}

INSTANTIATE_TEST_SUITE_P(Types, RootSystemFacts,
                         ::testing::Values(TypeFacts{"A1", 1, 2, 3, 2}, TypeFacts{"A2", 3, 6, 8, 3},
                                           TypeFacts{"B2", 4, 8, 10, 3}, TypeFacts{"C2", 4, 8, 10, 3},
                                           TypeFacts{"G2", 6, 12, 14, 4}, TypeFacts{"A3", 6, 24, 15, 4},
                                           TypeFacts{"B3", 9, 48, 21, 5}, TypeFacts{"C3", 9, 48, 21, 4},
                                           TypeFacts{"D4", 12, 192, 28, 6}),
                         [](const auto& info) { return std::string(info.param.label); });

}  // namespace

TEST(RootSystem, G2CartanConvention) {
  const RootSystem rs = RootSystem::build("G2");
  // alpha_1 short: <alpha_1, alpha_2^vee> = -1, <alpha_2, alpha_1^vee> = -3.
  EXPECT_EQ(rs.cartan_matrix()[0][1], -1);
  EXPECT_EQ(rs.cartan_matrix()[1][0], -3);
  EXPECT_NEAR(rs.simple_root_squared_lengths()[0], 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(rs.simple_root_squared_lengths()[1], 2.0, 1e-12);
}

TEST(RootSystem, A2WeylSigns) {
  const auto group = generate_weyl_group(RootSystem::build("A2"));
  int even = 0;
  for (const auto& w : group) even += w.sign == 1;
  EXPECT_EQ(group.size(), 6u);
  EXPECT_EQ(even, 3);
}

TEST(RootSystem, RootLatticeMembership) {
  const RootSystem a1 = RootSystem::build("A1");
  EXPECT_FALSE(is_in_root_lattice(a1, Weight{1}));
  EXPECT_TRUE(is_in_root_lattice(a1, Weight{2}));
  const RootSystem a2 = RootSystem::build("A2");
  EXPECT_TRUE(is_in_root_lattice(a2, Weight{1, 1}));
  EXPECT_FALSE(is_in_root_lattice(a2, Weight{1, 0}));
  EXPECT_TRUE(is_in_root_lattice(a2, Weight{3, 0}));
  const RootSystem g2 = RootSystem::build("G2");
  EXPECT_TRUE(is_in_root_lattice(g2, Weight{1, 0}));
}

TEST(RootSystem, AdjointEnumerationExamples) {
  const RootSystem a1 = RootSystem::build("A1");
  EXPECT_EQ(enumerate_adjoint_dominant_weights(a1, 4), (std::vector<Weight>{{0}, {2}, {4}}));
  EXPECT_EQ(enumerate_adjoint_dominant_weights(a1, 1), (std::vector<Weight>{{0}}));
  const RootSystem a2 = RootSystem::build("A2");
  EXPECT_EQ(enumerate_adjoint_dominant_weights(a2, 2), (std::vector<Weight>{{0, 0}, {1, 1}}));
}

TEST(RootSystem, UnsupportedLabels) {
  for (const char* bad : {"E6", "A0", "D3", "B1", "G3", "A9", "", "x2"}) {
    EXPECT_THROW(RootSystem::build(bad), UnsupportedTypeError) << bad;
  }
}

TEST(RootSystem, ScaledFormIsExact) {
  const RootSystem rs = RootSystem::build("B2");
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      Weight wi{0, 0}, wj{0, 0};
      wi.coeffs[static_cast<std::size_t>(i)] = 1;
      wj.coeffs[static_cast<std::size_t>(j)] = 1;
      const double exact = static_cast<double>(rs.scaled_inner_product(wi, wj)) / rs.form_scale();
      EXPECT_NEAR(exact, rs.fundamental_weights().row(i).dot(rs.fundamental_weights().row(j)), 1e-12);
    }
  }
}

TEST(RootSystem, JsonHasCoreFields) {
  const auto j = to_json(RootSystem::build("A2"));
  EXPECT_EQ(j.at("type_label"), "A2");
  EXPECT_EQ(j.at("rank"), 2);
  EXPECT_EQ(j.at("positive_roots").size(), 3u);
}
