#include "lielab/character.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <numeric>
#include <nlohmann/json.hpp>
#include <set>

#include "lielab/errors.hpp"
#include "lielab/format.hpp"

namespace lielab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Eigen::MatrixXd cartan_as_double(const RootSystem& rs) {
  const int n = rs.rank();
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = static_cast<double>(rs.cartan_matrix()[i][j]);
  return a;
}

void require_dominant(const RootSystem& rs, const Weight& lambda, const char* what) {
  if (static_cast<int>(lambda.rank()) != rs.rank()) throw PreconditionError(std::string(what) + ": weight rank mismatch");
  if (!lambda.is_dominant()) throw PreconditionError(std::string(what) + ": weight " + lambda.str() + " is not dominant");
}

/// exp(2 pi i k / n) for k = 0..n-1, with exact values at the quarter points.
std::vector<std::complex<double>> roots_of_unity(int n) {
  std::vector<std::complex<double>> tab(n);
  for (int k = 0; k < n; ++k) {
    const double angle = kTwoPi * k / n;
    tab[k] = {std::cos(angle), std::sin(angle)};
    if (4 * k == n) tab[k] = {0.0, 1.0};
    if (2 * k == n) tab[k] = {-1.0, 0.0};
    if (4 * k == 3 * n) tab[k] = {0.0, -1.0};
  }
  return tab;
}

int mod(std::int64_t a, int n) {
  const std::int64_t r = a % n;
  return static_cast<int>(r < 0 ? r + n : r);
}

struct GridTerm {
  IntVector coords;  // simple-root coordinates
  double mult;
};

std::vector<GridTerm> grid_terms(const RootSystem& rs, const IrrepTable& table) {
  std::vector<GridTerm> terms;
  terms.reserve(table.mults.size());
  for (const auto& [mu, m] : table.mults) {
    auto c = rs.simple_coords(mu);
    if (!c) throw PreconditionError("character_on_grid: weight " + mu.str() + " is not in the root lattice");
    terms.push_back({*c, static_cast<double>(m)});
  }
  return terms;
}

}  // namespace

// ---------------------------------------------------------------------------
// TorusPoint

Eigen::VectorXd TorusPoint::root_values(const RootSystem& rs) const {
  return cartan_as_double(rs) * theta / kTwoPi;
}

TorusPoint TorusPoint::from_root_values(const RootSystem& rs, const Eigen::VectorXd& y) {
  return TorusPoint(cartan_as_double(rs).fullPivLu().solve(kTwoPi * y));
}

TorusPoint TorusPoint::canonical(const RootSystem& rs) const {
  Eigen::VectorXd y = root_values(rs);
  for (Eigen::Index k = 0; k < y.size(); ++k) {
    y(k) -= std::floor(y(k));
    if (y(k) >= 1.0) y(k) = 0.0;
  }
  return from_root_values(rs, y);
}

// ---------------------------------------------------------------------------

std::int64_t weyl_dimension(const RootSystem& rs, const Weight& lambda) {
  require_dominant(rs, lambda, "weyl_dimension");
  Int128 num = 1;
  Int128 den = 1;
  for (const IntVector& k : rs.positive_coroots_simple()) {
    std::int64_t a = 0;
    std::int64_t b = 0;
    for (int j = 0; j < rs.rank(); ++j) {
      a += k[j] * (lambda.coeffs[j] + 1);
      b += k[j];
    }
    num *= a;
    den *= b;
    // Reduce to keep the running fraction small.
    Int128 x = num < 0 ? -num : num;
    Int128 y = den;
    while (y != 0) {
      Int128 t = x % y;
      x = y;
      y = t;
    }
    if (x > 1) {
      num /= x;
      den /= x;
    }
  }
  if (den != 1) throw Error("weyl_dimension: non-integral result");
  if (num > static_cast<Int128>(INT64_MAX)) throw CapacityError("weyl_dimension: dimension exceeds 64 bits");
  return static_cast<std::int64_t>(num);
}

IrrepTable weight_multiplicities(const RootSystem& rs, const Weight& lambda) {
  require_dominant(rs, lambda, "weight_multiplicities");
  const int n = rs.rank();

  std::vector<Weight> root_weights;
  std::vector<std::int64_t> root_heights;
  for (const IntVector& c : rs.positive_roots_simple()) {
    root_weights.push_back(rs.weight_from_simple_coords(c));
    root_heights.push_back(std::accumulate(c.begin(), c.end(), std::int64_t{0}));
  }

  // Dominant weights below lambda, each tagged with the height of lambda - mu.
  std::map<Weight, std::int64_t> depth{{lambda, 0}};
  std::vector<Weight> frontier{lambda};
  while (!frontier.empty()) {
    std::vector<Weight> next;
    for (const Weight& mu : frontier) {
      for (std::size_t r = 0; r < root_weights.size(); ++r) {
        Weight nu = mu - root_weights[r];
        if (!nu.is_dominant() || depth.count(nu)) continue;
        depth[nu] = depth[mu] + root_heights[r];
        next.push_back(std::move(nu));
      }
    }
    frontier = std::move(next);
  }
  std::vector<Weight> order;
  order.reserve(depth.size());
  for (const auto& [w, d] : depth) order.push_back(w);
  std::stable_sort(order.begin(), order.end(), [&](const Weight& a, const Weight& b) { return depth[a] < depth[b]; });

  const Weight rho(std::vector<int>(n, 1));
  const Weight lr = lambda + rho;
  const std::int64_t top = rs.scaled_inner_product(lr, lr);

  std::map<Weight, std::int64_t> dominant_mult;
  dominant_mult[lambda] = 1;
  for (const Weight& mu : order) {
    if (mu == lambda) continue;
    const std::int64_t mu_depth = depth[mu];
    Int128 numerator = 0;
    for (std::size_t r = 0; r < root_weights.size(); ++r) {
      Weight w = mu;
      for (std::int64_t k = 1; mu_depth - k * root_heights[r] >= 0; ++k) {
        w = w + root_weights[r];
        auto it = dominant_mult.find(rs.dominant_representative(w));
        if (it == dominant_mult.end()) continue;
        numerator += static_cast<Int128>(it->second) * rs.scaled_inner_product(w, root_weights[r]);
      }
    }
    const Weight mr = mu + rho;
    const std::int64_t denominator = top - rs.scaled_inner_product(mr, mr);
    if (denominator <= 0) throw Error("weight_multiplicities: nonpositive Freudenthal denominator");
    numerator *= 2;
    if (numerator % denominator != 0) throw Error("weight_multiplicities: non-integral multiplicity at " + mu.str());
    dominant_mult[mu] = static_cast<std::int64_t>(numerator / denominator);
  }

  IrrepTable table;
  table.type_label = rs.label();
  table.highest = lambda;
  std::int64_t total = 0;
  for (const auto& [mu, m] : dominant_mult) {
    if (m == 0) continue;
    for (const Weight& w : rs.weyl_orbit(mu)) {
      table.mults[w] = m;
      total += m;
    }
  }
  table.dim = weyl_dimension(rs, lambda);
  if (total != table.dim)
    throw Error("weight_multiplicities: multiplicities sum to " + std::to_string(total) + " but dimension is " +
                std::to_string(table.dim));
  return table;
}

std::complex<double> character_value(const IrrepTable& table, const TorusPoint& theta) {
  std::complex<double> acc = 0.0;
  for (const auto& [mu, m] : table.mults) {
    double phase = 0.0;
    bool zero = true;
    for (std::size_t j = 0; j < mu.rank(); ++j) {
      if (mu.coeffs[j] == 0) continue;
      zero = false;
      phase += theta.theta(static_cast<Eigen::Index>(j)) * mu.coeffs[j];
    }
    acc += static_cast<double>(m) * (zero ? std::complex<double>(1.0, 0.0) : std::polar(1.0, phase));
  }
  return acc;
}

CharacterSample normalized_character(const IrrepTable& table, const TorusPoint& theta) {
  return {table.highest, theta, character_value(table, theta) / static_cast<double>(table.dim)};
}

std::vector<int> grid_index(int rank, int n, std::size_t flat) {
  std::vector<int> idx(rank);
  for (int k = rank - 1; k >= 0; --k) {
    idx[k] = static_cast<int>(flat % static_cast<std::size_t>(n));
    flat /= static_cast<std::size_t>(n);
  }
  return idx;
}

std::vector<std::complex<double>> character_on_grid(const RootSystem& rs, const IrrepTable& table, int n) {
  if (n < 1) throw PreconditionError("character_on_grid: grid size must be positive");
  const int rank = rs.rank();
  const auto tab = roots_of_unity(n);
  const auto terms = grid_terms(rs, table);
  std::size_t total = 1;
  for (int k = 0; k < rank; ++k) total *= static_cast<std::size_t>(n);
  std::vector<std::complex<double>> out(total, 0.0);

  if (rank == 2) {
    // Separable evaluation: group by the first coordinate.
    std::map<int, std::vector<std::complex<double>>> partial;
    for (const GridTerm& t : terms) {
      auto& row = partial.try_emplace(mod(t.coords[0], n), std::vector<std::complex<double>>(n, 0.0)).first->second;
      const int c1 = mod(t.coords[1], n);
      for (int j = 0; j < n; ++j) row[j] += t.mult * tab[mod(static_cast<std::int64_t>(c1) * j, n)];
    }
    for (int i = 0; i < n; ++i) {
      for (const auto& [c0, row] : partial) {
        const std::complex<double> f = tab[mod(static_cast<std::int64_t>(c0) * i, n)];
        std::complex<double>* dst = out.data() + static_cast<std::size_t>(i) * n;
        for (int j = 0; j < n; ++j) dst[j] += f * row[j];
      }
    }
    return out;
  }

  for (std::size_t flat = 0; flat < total; ++flat) {
    const auto idx = grid_index(rank, n, flat);
    std::complex<double> acc = 0.0;
    for (const GridTerm& t : terms) {
      std::int64_t k = 0;
      for (int j = 0; j < rank; ++j) k += t.coords[j] * idx[j];
      acc += t.mult * tab[mod(k, n)];
    }
    out[flat] = acc;
  }
  return out;
}

std::complex<double> haar_character_integral(const RootSystem& rs, const IrrepTable& table, int n) {
  if (rs.rank() > 2) throw PreconditionError("haar_character_integral: tensor grids are limited to rank <= 2");
  if (n < 1) throw PreconditionError("haar_character_integral: need at least one quadrature point");
  const auto values = character_on_grid(rs, table, n);
  std::vector<double> density_tab(n);
  for (int k = 0; k < n; ++k) density_tab[k] = 2.0 - 2.0 * std::cos(kTwoPi * k / n);
  const int rank = rs.rank();
  std::complex<double> acc = 0.0;
  for (std::size_t flat = 0; flat < values.size(); ++flat) {
    const auto idx = grid_index(rank, n, flat);
    double density = 1.0;
    for (const IntVector& c : rs.positive_roots_simple()) {
      std::int64_t k = 0;
      for (int j = 0; j < rank; ++j) k += c[j] * idx[j];
      density *= density_tab[mod(k, n)];
    }
    acc += values[flat] * density;
  }
  return acc / (static_cast<double>(values.size()) * static_cast<double>(rs.weyl_group_order()));
}

// ---------------------------------------------------------------------------
// Cache

IrrepCache::IrrepCache(std::optional<std::filesystem::path> directory) : dir_(std::move(directory)) {}

IrrepCache IrrepCache::from_environment() {
  const char* env = std::getenv("LIELAB_CACHE_DIR");
  if (env && *env) return IrrepCache(std::filesystem::path(env));
  return IrrepCache();
}

std::filesystem::path IrrepCache::file_for(const std::string& type_label, const Weight& lambda) const {
  std::string name = type_label;
  for (int c : lambda.coeffs) name += "_" + std::to_string(c);
  return (dir_ ? *dir_ : std::filesystem::path(".")) / (name + ".json");
}

std::shared_ptr<const IrrepTable> IrrepCache::get(const RootSystem& rs, const Weight& lambda) {
  const auto key = std::make_pair(rs.label(), lambda);
  {
    std::lock_guard lock(mutex_);
    if (auto it = memory_.find(key); it != memory_.end()) return it->second;
  }
  std::shared_ptr<const IrrepTable> table;
  if (dir_) {
    const auto path = file_for(rs.label(), lambda);
    std::ifstream in(path);
    if (in) {
      try {
        auto j = nlohmann::json::parse(in);
        auto loaded = irrep_table_from_json(j);
        if (loaded.type_label == rs.label() && loaded.highest == lambda) table = std::make_shared<IrrepTable>(loaded);
      } catch (const nlohmann::json::exception&) {
        table.reset();  // stale or corrupt entry; recompute
      }
    }
  }
  if (!table) {
    table = std::make_shared<IrrepTable>(weight_multiplicities(rs, lambda));
    if (dir_) {
      std::error_code ec;
      std::filesystem::create_directories(*dir_, ec);
      const auto path = file_for(rs.label(), lambda);
      const auto tmp = path.string() + ".tmp";
      {
        std::ofstream out(tmp);
        out << to_json(*table).dump() << '\n';
      }
      std::filesystem::rename(tmp, path, ec);
    }
  }
  std::lock_guard lock(mutex_);
  return memory_.emplace(key, table).first->second;
}

nlohmann::json to_json(const IrrepTable& table) {
  nlohmann::json weights = nlohmann::json::array();
  for (const auto& [mu, m] : table.mults) weights.push_back({mu.coeffs, m});
  return {{"schema", 1}, {"type", table.type_label}, {"lambda", table.highest.coeffs}, {"dim", table.dim},
          {"weights", weights}};
}

IrrepTable irrep_table_from_json(const nlohmann::json& j) {
  IrrepTable t;
  t.type_label = j.at("type").get<std::string>();
  t.highest = Weight(j.at("lambda").get<std::vector<int>>());
  t.dim = j.at("dim").get<std::int64_t>();
  std::int64_t total = 0;
  for (const auto& entry : j.at("weights")) {
    Weight w(entry.at(0).get<std::vector<int>>());
    const auto m = entry.at(1).get<std::int64_t>();
    t.mults[w] = m;
    total += m;
  }
  if (total != t.dim) throw nlohmann::json::other_error::create(501, "multiplicities do not sum to dim", &j);
  return t;
}

void write_character_csv(std::ostream& os, const std::string& type_label, const std::vector<CharacterSample>& samples) {
  std::size_t rank = samples.empty() ? 0 : static_cast<std::size_t>(samples.front().theta.theta.size());
  os << "type,lambda";
  for (std::size_t j = 0; j < rank; ++j) os << ",theta_" << (j + 1);
  os << ",re_z,im_z\n";
  for (const CharacterSample& s : samples) {
    os << type_label << ",\"" << s.lambda.str() << '"';
    for (Eigen::Index j = 0; j < s.theta.theta.size(); ++j) os << ',' << format_double(s.theta.theta(j));
    os << ',' << format_double(s.z.real()) << ',' << format_double(s.z.imag()) << '\n';
  }
}

}  // namespace lielab
