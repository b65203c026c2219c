#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <nlohmann/json.hpp>
#include <numbers>
#include <random>
#include <sstream>

#include "lielab/character.hpp"
#include "lielab/errors.hpp"

using namespace lielab;

namespace {

constexpr double kPi = std::numbers::pi;

TorusPoint a1_point(double alpha_value) {
  // <alpha, theta> = 2 theta_1 in A1.
  return TorusPoint(Eigen::VectorXd::Constant(1, alpha_value / 2.0));
}

// Independent A_n oracle: Weyl character formula is avoided; instead the
// multiplicities of sl(3) irreps (a, b) are counted by Gelfand-Tsetlin
// patterns, grouped by weight.
std::map<Weight, std::int64_t> gelfand_tsetlin_a2(int a, int b) {
  std::map<Weight, std::int64_t> out;
  const int m1 = a + b, m2 = b, m3 = 0;
  for (int p1 = m2; p1 <= m1; ++p1) {
    for (int p2 = m3; p2 <= m2; ++p2) {
      for (int r = p2; r <= p1; ++r) {
        // Row sums give the weight in the e_i basis: (r, p1 + p2 - r, m1 + m2 + m3 - p1 - p2).
        const int x1 = r, x2 = p1 + p2 - r, x3 = m1 + m2 + m3 - p1 - p2;
        ++out[Weight{x1 - x2, x2 - x3}];
      }
    }
  }
  return out;
}

}  // namespace

TEST(WeylDimension, KnownValues) {
  const RootSystem a1 = RootSystem::build("A1");
  EXPECT_EQ(weyl_dimension(a1, Weight{0}), 1);
  EXPECT_EQ(weyl_dimension(a1, Weight{2}), 3);
  EXPECT_EQ(weyl_dimension(a1, Weight{40}), 41);
  const RootSystem a2 = RootSystem::build("A2");
  EXPECT_EQ(weyl_dimension(a2, Weight{1, 1}), 8);
  EXPECT_EQ(weyl_dimension(a2, Weight{3, 0}), 10);
  EXPECT_EQ(weyl_dimension(a2, Weight{2, 2}), 27);
  const RootSystem g2 = RootSystem::build("G2");
  EXPECT_EQ(weyl_dimension(g2, Weight{1, 0}), 7);
  EXPECT_EQ(weyl_dimension(g2, Weight{0, 1}), 14);
  const RootSystem b2 = RootSystem::build("B2");
  EXPECT_EQ(weyl_dimension(b2, Weight{1, 0}), 5);
  EXPECT_EQ(weyl_dimension(b2, Weight{0, 2}), 10);  // adjoint of so(5)
  EXPECT_EQ(weyl_dimension(b2, Weight{0, 1}), 4);
  EXPECT_THROW(weyl_dimension(a2, Weight{-1, 2}), PreconditionError);
}

TEST(Multiplicities, A1Adjoint) {
  const RootSystem a1 = RootSystem::build("A1");
  const IrrepTable t = weight_multiplicities(a1, Weight{2});
  EXPECT_EQ(t.dim, 3);
  EXPECT_EQ(t.mults, (std::map<Weight, std::int64_t>{{Weight{-2}, 1}, {Weight{0}, 1}, {Weight{2}, 1}}));
}

TEST(Multiplicities, A2AdjointZeroWeight) {
  const RootSystem a2 = RootSystem::build("A2");
  const IrrepTable t = weight_multiplicities(a2, Weight{1, 1});
  EXPECT_EQ(t.dim, 8);
  EXPECT_EQ(t.mults.at(Weight{0, 0}), 2);
  EXPECT_EQ(t.mults.size(), 7u);
}

TEST(Multiplicities, TrivialEverywhere) {
  for (const char* label : {"A1", "A2", "B2", "C2", "G2", "D4"}) {
    const RootSystem rs = RootSystem::build(label);
    const IrrepTable t = weight_multiplicities(rs, Weight(std::vector<int>(static_cast<std::size_t>(rs.rank()), 0)));
    EXPECT_EQ(t.dim, 1);
    EXPECT_EQ(t.mults.size(), 1u);
  }
}

TEST(Multiplicities, A2AgreesWithGelfandTsetlin) {
  const RootSystem a2 = RootSystem::build("A2");
  for (int a = 0; a <= 5; ++a) {
    for (int b = 0; b <= 5; ++b) {
      const IrrepTable t = weight_multiplicities(a2, Weight{a, b});
      EXPECT_EQ(t.mults, gelfand_tsetlin_a2(a, b)) << a << "," << b;
    }
  }
}

TEST(Multiplicities, G2SevenAndAdjoint) {
  const RootSystem g2 = RootSystem::build("G2");
  const IrrepTable seven = weight_multiplicities(g2, Weight{1, 0});
  EXPECT_EQ(seven.mults.at(Weight{0, 0}), 1);
  const IrrepTable adj = weight_multiplicities(g2, Weight{0, 1});
  EXPECT_EQ(adj.mults.at(Weight{0, 0}), 2);
  EXPECT_EQ(adj.mults.size(), 13u);
}

class TableInvariants : public ::testing::TestWithParam<std::pair<const char*, Weight>> {};

TEST_P(TableInvariants, SumWeylInvarianceHighestWeight) {
  const RootSystem rs = RootSystem::build(GetParam().first);
  const Weight& lambda = GetParam().second;
  const IrrepTable t = weight_multiplicities(rs, lambda);
  std::int64_t total = 0;
  for (const auto& [mu, m] : t.mults) {
    total += m;
    EXPECT_GT(m, 0);
    for (int i = 0; i < rs.rank(); ++i) EXPECT_EQ(t.mults.at(rs.reflect(mu, i)), m);
  }
  EXPECT_EQ(total, t.dim);
  EXPECT_EQ(t.dim, weyl_dimension(rs, lambda));
  EXPECT_EQ(t.mults.at(lambda), 1);
}

INSTANTIATE_TEST_SUITE_P(
    Irreps, TableInvariants,
    ::testing::Values(std::make_pair("A2", Weight{2, 2}), std::make_pair("A2", Weight{4, 1}),
                      std::make_pair("B2", Weight{2, 1}), std::make_pair("C2", Weight{1, 2}),
                      std::make_pair("G2", Weight{2, 1}), std::make_pair("G2", Weight{0, 3}),
                      std::make_pair("A3", Weight{1, 1, 1}), std::make_pair("B3", Weight{1, 0, 2}),
                      std::make_pair("D4", Weight{0, 1, 0, 0})),
    [](const auto& info) {
      std::string name = info.param.first;
      for (int c : info.param.second.coeffs) name += "_" + std::to_string(c);
      return name;
    });

TEST(CharacterValue, A1Examples) {
  const RootSystem a1 = RootSystem::build("A1");
  const IrrepTable t = weight_multiplicities(a1, Weight{2});
  EXPECT_NEAR(std::abs(character_value(t, a1_point(0.0)) - 3.0), 0.0, 1e-15);
  EXPECT_NEAR(character_value(t, a1_point(kPi)).real(), -1.0, 1e-14);
  EXPECT_NEAR(std::abs(character_value(t, a1_point(2 * kPi / 3))), 0.0, 1e-14);
  EXPECT_NEAR(normalized_character(t, a1_point(kPi)).z.real(), -1.0 / 3.0, 1e-14);
}

TEST(CharacterValue, SymmetriesOnRandomPoints) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (const auto& [label, lambda] : {std::make_pair("A2", Weight{4, 1}), std::make_pair("G2", Weight{1, 1}),
                                      std::make_pair("B2", Weight{1, 2})}) {
    const RootSystem rs = RootSystem::build(label);
    ASSERT_TRUE(is_in_root_lattice(rs, lambda)) << label;
    const IrrepTable t = weight_multiplicities(rs, lambda);
    const auto group = generate_weyl_group(rs);
    // Coweight generators in coroot coordinates: columns of A^{-1} (Dynkin pairing).
    Eigen::MatrixXd a(rs.rank(), rs.rank());
    for (int i = 0; i < rs.rank(); ++i)
      for (int j = 0; j < rs.rank(); ++j) a(i, j) = rs.cartan_matrix()[i][j];
    const Eigen::MatrixXd coweights = a.inverse();
    for (int trial = 0; trial < 50; ++trial) {
      Eigen::VectorXd th(rs.rank());
      for (int j = 0; j < rs.rank(); ++j) th(j) = u(rng);
      const TorusPoint p(th);
      const auto v = character_value(t, p);
      EXPECT_LT(std::abs(character_value(t, TorusPoint(-th)) - std::conj(v)), 1e-10);
      for (int g = 0; g < rs.rank(); ++g) {
        const TorusPoint shifted(th + 2 * kPi * coweights.col(g));
        EXPECT_LT(std::abs(character_value(t, shifted) - v), 1e-10);
      }
      EXPECT_LT(std::abs(character_value(t, p.canonical(rs)) - v), 1e-10);
      EXPECT_LE(std::abs(normalized_character(t, p).z), 1.0 + 1e-9);
      // Weyl invariance: act on theta through the transpose of the Dynkin action.
      for (const WeylElement& w : group) {
        const Eigen::VectorXd wth = w.weight_action.cast<double>().transpose() * th;
        EXPECT_LT(std::abs(character_value(t, TorusPoint(wth)) - v), 1e-9);
      }
    }
  }
}

TEST(CharacterGrid, MatchesPointwiseEvaluation) {
  for (const auto& [label, lambda] : {std::make_pair("A1", Weight{4}), std::make_pair("A2", Weight{1, 1}),
                                      std::make_pair("G2", Weight{1, 0})}) {
    const RootSystem rs = RootSystem::build(label);
    const IrrepTable t = weight_multiplicities(rs, lambda);
    const int n = 12;
    const auto grid = character_on_grid(rs, t, n);
    for (std::size_t flat = 0; flat < grid.size(); flat += 5) {
      const auto idx = grid_index(rs.rank(), n, flat);
      Eigen::VectorXd y(rs.rank());
      for (int j = 0; j < rs.rank(); ++j) y(j) = static_cast<double>(idx[static_cast<std::size_t>(j)]) / n;
      const auto direct = character_value(t, TorusPoint::from_root_values(rs, y));
      EXPECT_LT(std::abs(grid[flat] - direct), 1e-9) << label << " flat " << flat;
    }
  }
}

TEST(HaarIntegral, TrivialIsOne) {
  for (const char* label : {"A1", "A2", "B2", "G2"}) {
    const RootSystem rs = RootSystem::build(label);
    const IrrepTable t = weight_multiplicities(rs, Weight(std::vector<int>(static_cast<std::size_t>(rs.rank()), 0)));
    EXPECT_NEAR(std::abs(haar_character_integral(rs, t, 16) - 1.0), 0.0, 1e-9) << label;
  }
}

TEST(HaarIntegral, NontrivialVanish) {
  const RootSystem a1 = RootSystem::build("A1");
  EXPECT_LE(std::abs(haar_character_integral(a1, weight_multiplicities(a1, Weight{2}), 2048)), 1e-6);
  const RootSystem a2 = RootSystem::build("A2");
  EXPECT_LE(std::abs(haar_character_integral(a2, weight_multiplicities(a2, Weight{1, 1}), 256)), 1e-4);
  const RootSystem g2 = RootSystem::build("G2");
  EXPECT_LE(std::abs(haar_character_integral(g2, weight_multiplicities(g2, Weight{1, 0}), 64)), 1e-9);
}

TEST(HaarIntegral, RejectsHighRank) {
  const RootSystem a3 = RootSystem::build("A3");
  EXPECT_THROW(haar_character_integral(a3, weight_multiplicities(a3, Weight{0, 0, 0}), 8), PreconditionError);
}

TEST(IrrepCache, RoundTripsThroughDisk) {
  const auto dir = std::filesystem::temp_directory_path() / "lielab_cache_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const RootSystem g2 = RootSystem::build("G2");
  {
    IrrepCache cache(dir);
    const auto t = cache.get(g2, Weight{1, 1});
    EXPECT_TRUE(std::filesystem::exists(cache.file_for("G2", Weight{1, 1})));
    EXPECT_EQ(t->dim, 64);
  }
  IrrepCache fresh(dir);
  const auto again = fresh.get(g2, Weight{1, 1});
  EXPECT_EQ(again->mults, weight_multiplicities(g2, Weight{1, 1}).mults);
  std::filesystem::remove_all(dir);
}

TEST(IrrepCache, RejectsInconsistentJson) {
  auto j = to_json(weight_multiplicities(RootSystem::build("A1"), Weight{2}));
  j["dim"] = 4;
  EXPECT_ANY_THROW(irrep_table_from_json(j));
}

TEST(CharacterCsv, HeaderAndRows) {
  const RootSystem a1 = RootSystem::build("A1");
  const IrrepTable t = weight_multiplicities(a1, Weight{2});
  std::ostringstream os;
  write_character_csv(os, "A1", {normalized_character(t, a1_point(kPi))});
  EXPECT_EQ(os.str().rfind("type,lambda,theta_1,re_z,im_z\nA1,\"(2)\",1.5707963267948966,-0.33333333333333331,", 0), 0u);
}
