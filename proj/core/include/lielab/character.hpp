#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "lielab/root_system.hpp"

namespace lielab {

/// Weight multiplicities of one irreducible representation.
struct IrrepTable {
  std::string type_label;
  Weight highest;
  std::map<Weight, std::int64_t> mults;  // every weight with nonzero multiplicity
  std::int64_t dim = 0;
};

/// A point on the maximal torus in simple-coroot coordinates:
/// the element exp(sum_j theta_j alpha_j^vee), paired with a weight mu as
/// <mu, theta> = sum_j theta_j mu_j.
struct TorusPoint {
  Eigen::VectorXd theta;

  TorusPoint() = default;
  explicit TorusPoint(Eigen::VectorXd t) : theta(std::move(t)) {}

  /// Representative with every root value alpha_k(theta) reduced to [0, 2 pi),
  /// i.e. modulo 2 pi times the coweight lattice.
  TorusPoint canonical(const RootSystem& rs) const;
  /// Torus point with root values 2 pi * y_k.
  static TorusPoint from_root_values(const RootSystem& rs, const Eigen::VectorXd& y);
  /// The fractions y_k = alpha_k(theta) / (2 pi).
  Eigen::VectorXd root_values(const RootSystem& rs) const;
};

struct CharacterSample {
  Weight lambda;
  TorusPoint theta;
  std::complex<double> z;
};

/// Weyl dimension formula, exact. Throws PreconditionError for non-dominant weights.
std::int64_t weyl_dimension(const RootSystem& rs, const Weight& lambda);

/// Freudenthal recursion over dominant weights, extended by Weyl orbits.
IrrepTable weight_multiplicities(const RootSystem& rs, const Weight& lambda);

/// sum_mu m_mu exp(i <mu, theta>).
std::complex<double> character_value(const IrrepTable& table, const TorusPoint& theta);

CharacterSample normalized_character(const IrrepTable& table, const TorusPoint& theta);

/// Character values on the uniform grid y in {0, 1/N, ..., (N-1)/N}^rank of
/// root-value coordinates, flattened with the first coordinate slowest.
/// Requires a root-lattice highest weight. Phases are looked up in an exact
/// table of N-th roots of unity.
std::vector<std::complex<double>> character_on_grid(const RootSystem& rs, const IrrepTable& table, int n);

/// Multi-index of a flattened grid position.
std::vector<int> grid_index(int rank, int n, std::size_t flat);

/// Integral of the character over the adjoint group, by the Weyl integration
/// formula on a uniform N^rank grid of the torus. Rank <= 2.
std::complex<double> haar_character_integral(const RootSystem& rs, const IrrepTable& table, int n);

/// Memory and disk cache of multiplicity tables keyed by (type, lambda).
/// Thread-safe. A null directory disables the disk layer.
class IrrepCache {
 public:
  explicit IrrepCache(std::optional<std::filesystem::path> directory = std::nullopt);

  /// Directory from the LIELAB_CACHE_DIR environment variable, if set.
  static IrrepCache from_environment();

  std::shared_ptr<const IrrepTable> get(const RootSystem& rs, const Weight& lambda);

  std::filesystem::path file_for(const std::string& type_label, const Weight& lambda) const;

 private:
  std::optional<std::filesystem::path> dir_;
  std::mutex mutex_;
  std::map<std::pair<std::string, Weight>, std::shared_ptr<const IrrepTable>> memory_;
};

nlohmann::json to_json(const IrrepTable& table);
IrrepTable irrep_table_from_json(const nlohmann::json& j);

/// Writes "type,lambda,theta_1..theta_r,re_z,im_z" rows with 17 significant digits.
void write_character_csv(std::ostream& os, const std::string& type_label, const std::vector<CharacterSample>& samples);

}  // namespace lielab
