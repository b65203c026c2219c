#include "lielab/disk.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <nlohmann/json.hpp>
#include <sstream>

#include "lielab/errors.hpp"
#include "lielab/format.hpp"
#include "lielab/parallel.hpp"

namespace lielab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kExcludeNearOne = 1e-12;

// Distance from x to the nearest integer.
double nearest_int_distance(double x) { return std::abs(x - std::round(x)); }

double frac(double x) { return x - std::floor(x); }

bool in_quarter_band(double x) {
  const double f = frac(x);
  return f >= 0.25 && f <= 0.75;
}

}  // namespace

double disk_requirement(std::complex<double> z) {
  const double x = z.real();
  if (!(x < 1.0)) throw PreconditionError("disk_requirement: Re z must be < 1");
  // (|z|^2 - x) / (x - 1) rewritten as x + y^2 / (x - 1): exact on the real axis.
  const double y = z.imag();
  return x + y * y / (x - 1.0);
}

void for_each_grid_value(const RootSystem& rs, IrrepCache& cache, const std::vector<Weight>& weights, int grid,
                         const GridVisitor& visit) {
  const std::size_t batch = std::max<std::size_t>(1, default_worker_count());
  for (std::size_t start = 0; start < weights.size(); start += batch) {
    const std::size_t count = std::min(batch, weights.size() - start);
    std::vector<std::shared_ptr<const IrrepTable>> tables(count);
    std::vector<std::vector<std::complex<double>>> values(count);
    parallel_for(count, [&](std::size_t i) {
      tables[i] = cache.get(rs, weights[start + i]);
      values[i] = character_on_grid(rs, *tables[i], grid);
      const double inv = 1.0 / static_cast<double>(tables[i]->dim);
      for (auto& z : values[i]) z *= inv;
    });
    for (std::size_t i = 0; i < count; ++i) {
      for (std::size_t flat = 0; flat < values[i].size(); ++flat) visit(*tables[i], flat, values[i][flat]);
    }
  }
}

DiskEstimate empirical_disk_constant(const RootSystem& rs, IrrepCache& cache, const std::vector<Weight>& weights,
                                     int grid) {
  DiskEstimate est;
  est.type = rs.label();
  est.grid = grid;
  std::vector<Weight> nontrivial;
  for (const Weight& w : weights) {
    if (!w.is_zero()) nontrivial.push_back(w);
  }
  est.irreps = nontrivial.size();
  const Weight* best_lambda = nullptr;
  std::size_t best_flat = 0;
  for_each_grid_value(rs, cache, nontrivial, grid, [&](const IrrepTable& table, std::size_t flat, std::complex<double> z) {
    if (flat == 0 || z.real() >= 1.0 - kExcludeNearOne) return;
    ++est.samples;
    const double h = disk_requirement(z);
    if (h < est.c_hat) {
      est.c_hat = h;
      est.attaining.lambda = table.highest;
      est.attaining.z = z;
      best_lambda = &table.highest;
      best_flat = flat;
    }
  });
  est.empty = est.samples == 0;
  if (best_lambda != nullptr) {
    const auto idx = grid_index(rs.rank(), grid, best_flat);
    Eigen::VectorXd y(rs.rank());
    for (int j = 0; j < rs.rank(); ++j) y(j) = static_cast<double>(idx[static_cast<std::size_t>(j)]) / grid;
    est.attaining_root_values = y;
    est.attaining.theta = TorusPoint::from_root_values(rs, y);
  }
  return est;
}

DiskEstimate empirical_disk_constant(const RootSystem& rs, IrrepCache& cache, int weight_bound, int grid) {
  DiskEstimate est = empirical_disk_constant(rs, cache, enumerate_adjoint_dominant_weights(rs, weight_bound), grid);
  est.weight_bound = weight_bound;
  return est;
}

std::vector<DiskEstimate> disk_constant_series(const RootSystem& rs, IrrepCache& cache,
                                               const std::vector<int>& weight_bounds, const std::vector<int>& grids) {
  std::vector<DiskEstimate> out;
  for (int b : weight_bounds) {
    for (int n : grids) out.push_back(empirical_disk_constant(rs, cache, b, n));
  }
  return out;
}

bool ArcSpec::contains(double x) const {
  const double f = frac(x);
  return f >= lo && f <= hi;
}

std::int64_t brute_force_k(double x) {
  for (std::int64_t k = 1;; ++k) {
    if (std::cos(kTwoPi * frac(static_cast<double>(k) * x)) <= 0.0) return k;
    if (k > (std::int64_t{1} << 40)) throw CapacityError("brute_force_k: x too close to an integer");
  }
}

ArcConstants arc_constants(const ArcSpec& arc, std::int64_t class_power_bound) {
  if (!(arc.lo > 0.0) || !(arc.hi < 1.0) || !(arc.lo <= arc.hi))
    throw PreconditionError("arc_constants: need 0 < lo <= hi < 1 (the arc must avoid 1)");
  if (class_power_bound < 0) throw PreconditionError("arc_constants: class-power bound must be nonnegative");
  ArcConstants c;
  c.arc = arc;
  c.class_power_bound = class_power_bound;
  c.m = std::min(arc.lo, 1.0 - arc.hi);
  c.q = std::max<std::int64_t>(class_power_bound + 1, 2);
  while (!(1.0 / static_cast<double>(c.q) < c.m)) ++c.q;

  // For each t/s in S take the j in [q, 2q] whose band margin per unit of x is
  // largest; the whole ball of that radius is then served by that one j.
  double delta0 = std::numeric_limits<double>::infinity();
  for (std::int64_t s = 2; s <= c.q; ++s) {
    for (std::int64_t t = 1; t < s; ++t) {
      double best = 0.0;
      for (std::int64_t j = c.q; j <= 2 * c.q; ++j) {
        const double f = static_cast<double>((j * t) % s) / static_cast<double>(s);
        const double margin = std::min(f - 0.25, 0.75 - f);
        if (margin >= 0.0) best = std::max(best, margin / static_cast<double>(j));
      }
      delta0 = std::min(delta0, best);
    }
  }
  if (!(delta0 > 0.0)) throw Error("arc_constants: no positive delta found");
  c.delta = 0.9 * delta0;
  // Grid verification of the covering property on each ball.
  const double step = std::min(1e-4, c.delta / 8.0);
  for (std::int64_t s = 2; s <= c.q; ++s) {
    for (std::int64_t t = 1; t < s; ++t) {
      const double center = static_cast<double>(t) / static_cast<double>(s);
      for (double h = -c.delta; h <= c.delta; h += step) {
        bool ok = false;
        for (std::int64_t j = c.q; j <= 2 * c.q && !ok; ++j) ok = in_quarter_band(static_cast<double>(j) * (center + h));
        if (!ok) throw Error("arc_constants: delta verification failed");
      }
    }
  }
  c.p = static_cast<std::int64_t>(std::floor(1.0 / c.delta)) + 1;
  const double two_pq = 2.0 * static_cast<double>(c.p) * static_cast<double>(c.q);
  c.epsilon = 1.0 / (two_pq * two_pq);

  constexpr int kArcSamples = 10000;
  for (int i = 0; i <= kArcSamples; ++i) {
    const double x = arc.lo + (arc.hi - arc.lo) * i / kArcSamples;
    c.sharp_k = std::max(c.sharp_k, brute_force_k(x));
  }
  c.sharp_epsilon = 1.0 / static_cast<double>(c.sharp_k * c.sharp_k);
  return c;
}

PigeonholeResult pigeonhole_k(double x, const ArcConstants& consts) {
  if (!consts.arc.contains(x)) throw PreconditionError("pigeonhole_k: x is not in the arc");
  PigeonholeResult r;
  r.brute_force = brute_force_k(x);
  const std::int64_t q = consts.q;
  const std::int64_t p = consts.p;

  // k0 <= q with |k0 x| <= 1/q (Dirichlet); k0 = 1 is excluded by 1/q < m.
  for (std::int64_t k = 1; k <= q; ++k) {
    if (nearest_int_distance(static_cast<double>(k) * x) <= 1.0 / static_cast<double>(q)) {
      r.first_multiple = k;
      break;
    }
  }
  // L <= p with |L k0 x| <= 1/p. Records of |L y| are continued-fraction
  // denominators, so walking the convergents finds the smallest such L.
  if (r.first_multiple > 0) {
    const double y = frac(static_cast<double>(r.first_multiple) * x);
    std::int64_t h_prev = 0, h = 1;
    double rest = y;
    for (int iter = 0; iter < 64 && h <= p; ++iter) {
      if (nearest_int_distance(static_cast<double>(h) * y) <= 1.0 / static_cast<double>(p)) {
        r.multiplier = h;
        break;
      }
      if (rest == 0.0) break;
      const double inv = 1.0 / rest;
      const double a = std::floor(inv);
      rest = inv - a;
      if (iter == 0) {
        // y = [0; a1, ...]: first denominator is a1.
        h_prev = 1;
        h = static_cast<std::int64_t>(a);
        continue;
      }
      const std::int64_t h_next = static_cast<std::int64_t>(a) * h + h_prev;
      h_prev = h;
      h = h_next;
    }
  }

  auto scan = [&](std::int64_t l) -> std::int64_t {
    for (std::int64_t j = q; j <= 2 * q; ++j) {
      if (in_quarter_band(frac(static_cast<double>(j * l) * x))) return j * l;
    }
    return 0;
  };
  if (r.multiplier > 0) r.k = scan(r.multiplier);
  if (r.k == 0) {
    r.used_fallback = true;
    r.multiplier = 1;
    r.k = scan(1);
  }
  if (r.k == 0) throw Error("pigeonhole_k: construction failed");
  return r;
}

FrobeniusDeviation frobenius_deviation(const Eigen::MatrixXcd& p, std::complex<double> omega) {
  const auto n = p.rows();
  if (p.cols() != n || n == 0) throw PreconditionError("frobenius_deviation: square matrix required");
  if ((p.adjoint() * p - Eigen::MatrixXcd::Identity(n, n)).norm() > 1e-9)
    throw PreconditionError("frobenius_deviation: matrix is not unitary");
  if (std::abs(std::abs(omega) - 1.0) > 1e-12) throw PreconditionError("frobenius_deviation: |omega| must be 1");
  FrobeniusDeviation d;
  d.norm = (p - omega * Eigen::MatrixXcd::Identity(n, n)).norm();
  d.delta = 1.0 - (std::conj(omega) * p.trace()).real() / static_cast<double>(n);
  return d;
}

TelescopingCheck telescoping_check(const std::vector<Eigen::MatrixXcd>& ps, std::complex<double> omega) {
  TelescopingCheck t;
  if (ps.empty()) {
    t.holds = true;
    return t;
  }
  const auto n = ps.front().rows();
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd prod = id;
  std::complex<double> wk = 1.0;
  for (const auto& p : ps) {
    prod = (prod * p).eval();
    wk *= omega;
    t.rhs += (p - omega * id).norm();
  }
  t.lhs = (prod - wk * id).norm();
  t.holds = t.lhs <= t.rhs + 1e-10;
  return t;
}

Eigen::MatrixXcd random_unitary(int n, Rng& rng) {
  std::normal_distribution<double> gauss;
  Eigen::MatrixXcd z(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) z(i, j) = {gauss(rng), gauss(rng)};
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const std::complex<double> d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

DeltaBoundAccumulator::DeltaBoundAccumulator(const ArcConstants& consts) : consts_(consts) {
  rep_.epsilon = consts.epsilon;
}

void DeltaBoundAccumulator::add(std::complex<double> z) {
  const double r = std::abs(z);
  if (r == 0.0) return;  // no direction; delta = 1
  const double x = frac(std::arg(z) / kTwoPi);
  if (!consts_.arc.contains(x)) return;
  const double delta = 1.0 - r;
  ++rep_.in_arc;
  rep_.vacuous = false;
  rep_.min_delta = std::min(rep_.min_delta, delta);
  if (delta < consts_.epsilon) ++rep_.violations;
}

DeltaBoundReport DeltaBoundAccumulator::report() const {
  DeltaBoundReport r = rep_;
  r.margin = r.min_delta - r.epsilon;
  return r;
}

DeltaBoundReport delta_lower_bound_check(const std::vector<CharacterSample>& samples, const ArcConstants& consts) {
  DeltaBoundAccumulator acc(consts);
  for (const auto& s : samples) acc.add(s.z);
  return acc.report();
}

FinalInequality final_inequality_check(int k, double c) {
  if (k < 1 || !(c > 0.0 && c < 1.0)) throw PreconditionError("final_inequality_check: need k >= 1, 0 < c < 1");
  FinalInequality f;
  const double kk = static_cast<double>(k);
  const double angle = std::numbers::pi / (2.0 * kk);
  f.c_one_minus_c = c * (1.0 - c);
  f.bound = 4.0 / (std::numbers::pi * std::numbers::pi);
  f.lhs = 1.0 - 1.0 / (kk * kk);
  f.rhs = 1.0 - f.c_one_minus_c * angle * angle;
  f.contradiction = f.c_one_minus_c < f.bound && f.rhs > f.lhs;
  return f;
}

void write_disk_csv(std::ostream& os, const std::string& type_label, const std::vector<CharacterSample>& samples) {
  const std::size_t rank = samples.empty() ? 0 : static_cast<std::size_t>(samples.front().theta.theta.size());
  os << "type,lambda";
  for (std::size_t j = 0; j < rank; ++j) os << ",theta_" << (j + 1);
  os << ",re_z,im_z,h\n";
  for (const CharacterSample& s : samples) {
    os << type_label << ",\"" << s.lambda.str() << '"';
    for (Eigen::Index j = 0; j < s.theta.theta.size(); ++j) os << ',' << format_double(s.theta.theta(j));
    os << ',' << format_double(s.z.real()) << ',' << format_double(s.z.imag()) << ',';
    os << (s.z.real() < 1.0 ? format_double(disk_requirement(s.z)) : std::string("nan")) << '\n';
  }
}

std::string disk_svg(const std::vector<std::complex<double>>& zs, double c_hat, int size) {
  const double half = size / 2.0;
  const double scale = half / 1.1;
  auto px = [&](double x) { return format_double(std::round((half + scale * x) * 100.0) / 100.0); };
  auto py = [&](double y) { return format_double(std::round((half - scale * y) * 100.0) / 100.0); };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\" viewBox=\"0 0 "
     << size << ' ' << size << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<line x1=\"0\" y1=\"" << py(0) << "\" x2=\"" << size << "\" y2=\"" << py(0) << "\" stroke=\"#ccc\"/>\n";
  os << "<line x1=\"" << px(0) << "\" y1=\"0\" x2=\"" << px(0) << "\" y2=\"" << size << "\" stroke=\"#ccc\"/>\n";
  os << "<circle cx=\"" << px(0) << "\" cy=\"" << py(0) << "\" r=\"" << format_double(scale)
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  const DiskParam disk{c_hat};
  os << "<circle cx=\"" << px(disk.center()) << "\" cy=\"" << py(0) << "\" r=\""
     << format_double(std::round(scale * disk.radius() * 100.0) / 100.0)
     << "\" fill=\"none\" stroke=\"#c00\" stroke-dasharray=\"4 3\"/>\n";
  for (const auto& z : zs) {
    os << "<circle cx=\"" << px(z.real()) << "\" cy=\"" << py(z.imag()) << "\" r=\"1\" fill=\"#1f5fbf\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

nlohmann::json to_json(const DiskEstimate& est) {
  nlohmann::json j{{"type", est.type},
                   {"weight_bound", est.weight_bound},
                   {"grid", est.grid},
                   {"samples", est.samples},
                   {"irreps", est.irreps},
                   {"empty", est.empty}};
  if (est.empty) {
    j["c_hat"] = nullptr;
    return j;
  }
  j["c_hat"] = est.c_hat;
  const auto& th = est.attaining.theta.theta;
  j["attaining_sample"] = {
      {"lambda", est.attaining.lambda.coeffs},
      {"theta", std::vector<double>(th.data(), th.data() + th.size())},
      {"root_values",
       std::vector<double>(est.attaining_root_values.data(),
                           est.attaining_root_values.data() + est.attaining_root_values.size())},
      {"re_z", est.attaining.z.real()},
      {"im_z", est.attaining.z.imag()}};
  return j;
}

nlohmann::json to_json(const ArcConstants& c) {
  return {{"arc", {c.arc.lo, c.arc.hi}},
          {"class_power_bound", c.class_power_bound},
          {"m", c.m},
          {"q", c.q},
          {"delta", c.delta},
          {"p", c.p},
          {"epsilon", c.epsilon},
          {"sharp_k", c.sharp_k},
          {"sharp_epsilon", c.sharp_epsilon}};
}

nlohmann::json to_json(const DeltaBoundReport& r) {
  return {{"in_arc", r.in_arc},   {"min_delta", r.min_delta},     {"epsilon", r.epsilon},
          {"margin", r.margin},   {"violations", r.violations}, {"vacuous", r.vacuous}};
}

}  // namespace lielab
