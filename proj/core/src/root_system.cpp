#include "lielab/root_system.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <nlohmann/json.hpp>
#include <numeric>
#include <set>
#include <sstream>

#include "lielab/errors.hpp"

namespace lielab {

// ---------------------------------------------------------------------------
// Weight

bool Weight::is_dominant() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](int c) { return c >= 0; });
}

bool Weight::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](int c) { return c == 0; });
}

Weight Weight::operator+(const Weight& other) const {
  Weight out = *this;
  for (std::size_t i = 0; i < coeffs.size(); ++i) out.coeffs[i] += other.coeffs[i];
  return out;
}

Weight Weight::operator-(const Weight& other) const {
  Weight out = *this;
  for (std::size_t i = 0; i < coeffs.size(); ++i) out.coeffs[i] -= other.coeffs[i];
  return out;
}

std::string Weight::str() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (i) os << ',';
    os << coeffs[i];
  }
  os << ')';
  return os.str();
}

std::size_t WeightHash::operator()(const Weight& w) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  for (int c : w.coeffs) h ^= std::hash<int>{}(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

// ---------------------------------------------------------------------------
// TypeLabel

TypeLabel TypeLabel::parse(std::string_view label) {
  if (label.size() < 2) throw UnsupportedTypeError("unsupported type label '" + std::string(label) + "'");
  TypeLabel t;
  switch (label[0]) {
    case 'A': t.family = Family::A; break;
    case 'B': t.family = Family::B; break;
    case 'C': t.family = Family::C; break;
    case 'D': t.family = Family::D; break;
    case 'G': t.family = Family::G; break;
    default: throw UnsupportedTypeError("unsupported type label '" + std::string(label) + "'");
  }
  int rank = 0;
  for (char ch : label.substr(1)) {
    if (ch < '0' || ch > '9') throw UnsupportedTypeError("unsupported type label '" + std::string(label) + "'");
    rank = rank * 10 + (ch - '0');
    if (rank > 100) break;
  }
  t.rank = rank;
  bool ok = rank >= 1 && rank <= 8;
  switch (t.family) {
    case Family::A: break;
    case Family::B:
    case Family::C: ok = ok && rank >= 2; break;
    case Family::D: ok = ok && rank >= 4; break;
    case Family::G: ok = rank == 2; break;
  }
  if (!ok) throw UnsupportedTypeError("unsupported type label '" + std::string(label) + "'");
  return t;
}

std::string TypeLabel::str() const {
  const char letter = "ABCDG"[static_cast<int>(family)];
  return std::string(1, letter) + std::to_string(rank);
}

// ---------------------------------------------------------------------------
// RootSystem construction

namespace {

struct CartanData {
  IntMatrix cartan;
  std::vector<int> length_ratio;
};

CartanData cartan_data(const TypeLabel& t) {
  const int n = t.rank;
  CartanData d;
  d.cartan.assign(n, IntVector(n, 0));
  d.length_ratio.assign(n, 1);
  for (int i = 0; i < n; ++i) d.cartan[i][i] = 2;
  auto link = [&](int i, int j) {
    d.cartan[i][j] = -1;
    d.cartan[j][i] = -1;
  };
  switch (t.family) {
    case Family::A:
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      break;
    case Family::B:
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      // alpha_n short
      for (int i = 0; i + 1 < n; ++i) d.length_ratio[i] = 2;
      d.cartan[n - 2][n - 1] = -2;
      break;
    case Family::C:
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      // alpha_n long
      d.length_ratio[n - 1] = 2;
      d.cartan[n - 1][n - 2] = -2;
      break;
    case Family::D:
      for (int i = 0; i + 2 < n; ++i) link(i, i + 1);
      link(n - 3, n - 1);
      break;
    case Family::G:
      // alpha_1 short, alpha_2 long
      d.length_ratio = {1, 3};
      d.cartan[0][1] = -1;
      d.cartan[1][0] = -3;
      break;
  }
  return d;
}

}  // namespace

RootSystem RootSystem::build(std::string_view type_label) { return build(TypeLabel::parse(type_label)); }

RootSystem RootSystem::build(const TypeLabel& type) {
  RootSystem rs;
  rs.type_ = type;
  const int n = type.rank;
  CartanData data = cartan_data(type);
  rs.cartan_ = data.cartan;
  rs.length_ratio_ = data.length_ratio;
  const int max_ratio = *std::max_element(rs.length_ratio_.begin(), rs.length_ratio_.end());

  rs.squared_lengths_.resize(n);
  for (int i = 0; i < n; ++i) rs.squared_lengths_[i] = 2.0 * rs.length_ratio_[i] / max_ratio;

  // Gram matrix of simple roots: (alpha_i, alpha_j) = A(i,j) * |alpha_j|^2 / 2.
  Eigen::MatrixXd gram(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) gram(i, j) = rs.cartan_[i][j] * rs.squared_lengths_[j] / 2.0;
  gram = 0.5 * (gram + gram.transpose()).eval();
  Eigen::LLT<Eigen::MatrixXd> llt(gram);
  if (llt.info() != Eigen::Success) throw Error("root system: Gram matrix not positive definite");
  rs.simple_roots_ = llt.matrixL();

  // Positive roots by alpha-strings, processed in order of height.
  std::set<IntVector> found;
  std::vector<IntVector> roots;
  for (int i = 0; i < n; ++i) {
    IntVector e(n, 0);
    e[i] = 1;
    roots.push_back(e);
    found.insert(e);
  }
  for (std::size_t idx = 0; idx < roots.size(); ++idx) {
    const IntVector beta = roots[idx];
    for (int i = 0; i < n; ++i) {
      IntVector simple(n, 0);
      simple[i] = 1;
      if (beta == simple) continue;
      int r = 0;
      IntVector down = beta;
      while (true) {
        down[i] -= 1;
        if (down[i] < 0 || !found.count(down)) break;
        ++r;
      }
      std::int64_t pairing = 0;  // <beta, alpha_i^vee>
      for (int j = 0; j < n; ++j) pairing += beta[j] * rs.cartan_[j][i];
      const std::int64_t q = r - pairing;
      if (q > 0) {
        IntVector up = beta;
        up[i] += 1;
        if (found.insert(up).second) roots.push_back(up);
      }
    }
  }
  std::stable_sort(roots.begin(), roots.end(), [](const IntVector& a, const IntVector& b) {
    return std::accumulate(a.begin(), a.end(), std::int64_t{0}) < std::accumulate(b.begin(), b.end(), std::int64_t{0});
  });
  rs.positive_roots_simple_ = roots;

  rs.positive_roots_.resize(static_cast<Eigen::Index>(roots.size()), n);
  for (std::size_t k = 0; k < roots.size(); ++k) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
    for (int j = 0; j < n; ++j) v += static_cast<double>(roots[k][j]) * rs.simple_roots_.row(j).transpose();
    rs.positive_roots_.row(static_cast<Eigen::Index>(k)) = v.transpose();
  }

  // Coroots: alpha^vee = sum_j c_j (|alpha_j|^2/|alpha|^2) alpha_j^vee.
  for (const IntVector& c : roots) {
    std::int64_t twice_ratio = 0;  // |alpha|^2 * max_ratio, an even integer
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) twice_ratio += c[i] * c[j] * rs.cartan_[i][j] * rs.length_ratio_[j];
    const std::int64_t ratio = twice_ratio / 2;
    IntVector k(n);
    for (int j = 0; j < n; ++j) {
      const std::int64_t num = c[j] * rs.length_ratio_[j];
      if (num % ratio != 0) throw Error("root system: non-integral coroot coordinate");
      k[j] = num / ratio;
    }
    rs.positive_coroots_simple_.push_back(k);
  }

  // Fundamental weights: <omega_i, alpha_j^vee> = delta_ij.
  Eigen::MatrixXd coroots(n, n);
  for (int j = 0; j < n; ++j) coroots.row(j) = 2.0 * rs.simple_roots_.row(j) / rs.squared_lengths_[j];
  rs.fundamental_weights_ = coroots.transpose().fullPivLu().solve(Eigen::MatrixXd::Identity(n, n));
  rs.weyl_vector_ = rs.fundamental_weights_.colwise().sum().transpose();

  // Exact weight form.
  rs.cartan_det_ = integer_determinant(rs.cartan_);
  rs.cartan_t_adjugate_ = integer_adjugate(transpose(rs.cartan_));
  rs.form_scale_ = rs.cartan_det_ * max_ratio;
  rs.scaled_form_.assign(n, IntVector(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) rs.scaled_form_[i][j] = rs.cartan_t_adjugate_[i][j] * rs.length_ratio_[i];
  return rs;
}

int RootSystem::algebra_dimension() const { return rank() + 2 * static_cast<int>(num_positive_roots()); }

int RootSystem::dual_coxeter_number() const {
  const int n = rank();
  switch (type_.family) {
    case Family::A: return n + 1;
    case Family::B: return 2 * n - 1;
    case Family::C: return n + 1;
    case Family::D: return 2 * n - 2;
    case Family::G: return 4;
  }
  return 0;
}

std::size_t RootSystem::weyl_group_order() const {
  const int n = rank();
  std::size_t fact = 1;
  for (int i = 2; i <= n; ++i) fact *= static_cast<std::size_t>(i);
  switch (type_.family) {
    case Family::A: return fact * static_cast<std::size_t>(n + 1);
    case Family::B:
    case Family::C: return fact << n;
    case Family::D: return fact << (n - 1);
    case Family::G: return 12;
  }
  return 0;
}

Weight RootSystem::simple_root_weight(int i) const {
  Weight w;
  w.coeffs.resize(rank());
  for (int k = 0; k < rank(); ++k) w.coeffs[k] = static_cast<int>(cartan_[i][k]);
  return w;
}

Weight RootSystem::weight_from_simple_coords(const IntVector& coords) const {
  Weight w;
  w.coeffs.assign(rank(), 0);
  for (int j = 0; j < rank(); ++j)
    for (int k = 0; k < rank(); ++k) w.coeffs[k] += static_cast<int>(coords[j] * cartan_[j][k]);
  return w;
}

std::optional<IntVector> RootSystem::simple_coords(const Weight& w) const {
  if (static_cast<int>(w.rank()) != rank()) throw PreconditionError("weight rank mismatch");
  IntVector b(w.coeffs.begin(), w.coeffs.end());
  return solve_integer_system(transpose(cartan_), b);
}

Eigen::VectorXd RootSystem::to_euclidean(const Weight& w) const {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(rank());
  for (int i = 0; i < rank(); ++i) v += static_cast<double>(w.coeffs[i]) * fundamental_weights_.row(i).transpose();
  return v;
}

std::int64_t RootSystem::scaled_inner_product(const Weight& mu, const Weight& nu) const {
  std::int64_t acc = 0;
  for (int i = 0; i < rank(); ++i)
    for (int j = 0; j < rank(); ++j) acc += static_cast<std::int64_t>(mu.coeffs[i]) * scaled_form_[i][j] * nu.coeffs[j];
  return acc;
}

Weight RootSystem::reflect(const Weight& w, int i) const {
  Weight out = w;
  const int mi = w.coeffs[i];
  for (int k = 0; k < rank(); ++k) out.coeffs[k] -= mi * static_cast<int>(cartan_[i][k]);
  return out;
}

Weight RootSystem::dominant_representative(Weight w) const {
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < rank(); ++i) {
      if (w.coeffs[i] < 0) {
        w = reflect(w, i);
        changed = true;
      }
    }
  }
  return w;
}

std::vector<Weight> RootSystem::weyl_orbit(const Weight& w) const {
  std::set<Weight> seen{w};
  std::vector<Weight> frontier{w};
  while (!frontier.empty()) {
    std::vector<Weight> next;
    for (const Weight& u : frontier) {
      for (int i = 0; i < rank(); ++i) {
        Weight v = reflect(u, i);
        if (seen.insert(v).second) next.push_back(std::move(v));
      }
    }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

int RootSystem::level(const Weight& w) const { return std::accumulate(w.coeffs.begin(), w.coeffs.end(), 0); }

// ---------------------------------------------------------------------------

std::vector<WeylElement> generate_weyl_group(const RootSystem& rs, std::size_t cap) {
  const int n = rs.rank();
  std::vector<Eigen::MatrixXd> reflections(n);
  std::vector<Eigen::MatrixXi> weight_reflections(n);
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXd a = rs.simple_roots().row(i).transpose();
    reflections[i] = Eigen::MatrixXd::Identity(n, n) - 2.0 * a * a.transpose() / a.squaredNorm();
    Eigen::MatrixXi s = Eigen::MatrixXi::Identity(n, n);
    for (int k = 0; k < n; ++k) s(k, i) -= static_cast<int>(rs.cartan_matrix()[i][k]);
    weight_reflections[i] = s;
  }
  auto key = [](const Eigen::MatrixXi& m) { return std::vector<int>(m.data(), m.data() + m.size()); };

  std::vector<WeylElement> elements;
  std::map<std::vector<int>, std::size_t> index;
  WeylElement id{Eigen::MatrixXd::Identity(n, n), Eigen::MatrixXi::Identity(n, n), {}, 1};
  index[key(id.weight_action)] = 0;
  elements.push_back(id);
  for (std::size_t head = 0; head < elements.size(); ++head) {
    for (int i = 0; i < n; ++i) {
      const WeylElement& w = elements[head];
      Eigen::MatrixXi action = weight_reflections[i] * w.weight_action;
      auto k = key(action);
      if (index.count(k)) continue;
      if (elements.size() >= cap) throw CapacityError("Weyl group closure exceeded cap " + std::to_string(cap));
      WeylElement next;
      next.matrix = reflections[i] * w.matrix;
      next.weight_action = std::move(action);
      next.word.reserve(w.word.size() + 1);
      next.word.push_back(i);
      next.word.insert(next.word.end(), w.word.begin(), w.word.end());
      next.sign = -w.sign;
      index[k] = elements.size();
      elements.push_back(std::move(next));
    }
  }
  return elements;
}

bool is_in_root_lattice(const RootSystem& rs, const Weight& lambda) { return rs.simple_coords(lambda).has_value(); }

std::vector<Weight> enumerate_adjoint_dominant_weights(const RootSystem& rs, int bound) {
  if (bound < 0) throw PreconditionError("enumerate_adjoint_dominant_weights: bound must be nonnegative");
  const int n = rs.rank();
  std::vector<Weight> out;
  std::vector<int> c(n, 0);
  // Odometer over compositions with sum <= bound, visited in lexicographic order.
  std::function<void(int, int)> rec = [&](int pos, int remaining) {
    if (pos == n) {
      Weight w(c);
      if (is_in_root_lattice(rs, w)) out.push_back(std::move(w));
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      c[pos] = v;
      rec(pos + 1, remaining - v);
    }
    c[pos] = 0;
  };
  rec(0, bound);
  return out;
}

nlohmann::json to_json(const RootSystem& rs) {
  using nlohmann::json;
  auto rows = [](const Eigen::MatrixXd& m) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      json row = json::array();
      for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
      arr.push_back(row);
    }
    return arr;
  };
  json j;
  j["schema"] = 1;
  j["type_label"] = rs.label();
  j["rank"] = rs.rank();
  j["simple_roots"] = rows(rs.simple_roots());
  j["cartan_matrix"] = rs.cartan_matrix();
  j["positive_roots"] = rows(rs.positive_roots());
  j["positive_roots_simple"] = rs.positive_roots_simple();
  j["fundamental_weights"] = rows(rs.fundamental_weights());
  j["weyl_vector"] = std::vector<double>(rs.weyl_vector().data(), rs.weyl_vector().data() + rs.weyl_vector().size());
  j["weyl_group_order"] = rs.weyl_group_order();
  return j;
}

}  // namespace lielab
