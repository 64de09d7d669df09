#include "scatrec/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>

#include "scatrec/csv.hpp"
#include "scatrec/errors.hpp"

namespace scatrec {

namespace {

constexpr double pi = std::numbers::pi;

void check_k_list(const std::vector<double>& ks) {
  if (ks.empty()) throw DomainError("plan: empty wavenumber list");
  for (double k : ks)
    if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("plan: wavenumbers must be positive");
}

MeasurementPlan offset_plan(PlanKind kind, int n_angles, int N, int u_count, const std::vector<double>& ks) {
  if (N < 1) throw DomainError("plan: N must be positive");
  if (u_count < 1) throw DomainError("plan: need at least one offset");
  check_k_list(ks);
  MeasurementPlan p;
  p.kind = kind;
  p.N = N;
  p.u_count = u_count;
  const double width = 2.0 * pi / 5.0;
  for (double k : ks)
    for (int i = 1; i <= n_angles; ++i) {
      const double t = 2.0 * pi * i / n_angles;
      for (int u = 0; u < u_count; ++u) {
        const double off = -pi / 5.0 + (u + 0.5) * width / u_count;
        p.triples.push_back({reduce_angle(t), reduce_angle(t + pi + off), k});
        p.indices.emplace_back(i, u);
      }
    }
  return p;
}

}  // namespace

std::string to_string(PlanKind k) {
  switch (k) {
    case PlanKind::Optimal: return "optimal";
    case PlanKind::Set1: return "set1";
    case PlanKind::Set2: return "set2";
    case PlanKind::Set3: return "set3";
    default: return "custom";
  }
}

std::string to_string(NoiseSpec::Model m) {
  return m == NoiseSpec::Model::MultiplicativeUniform ? "multiplicative" : "gaussian";
}

double reduce_angle(double theta) {
  double t = std::fmod(theta, 2.0 * pi);
  if (t < 0.0) t += 2.0 * pi;
  if (t >= 2.0 * pi) t -= 2.0 * pi;
  return t;
}

double plan_wavenumber(int m0, int J, double R) {
  if (!(R > 0.0)) throw DomainError("plan: radius must be positive");
  return (4.0 * m0 + 2.0 * J + 1.0) / (8.0 * R);
}

std::vector<double> plan_wavenumbers(int m0, int j_first, int j_last, double R) {
  std::vector<double> ks;
  for (int J = j_first; J <= j_last; ++J) ks.push_back(plan_wavenumber(m0, J, R));
  return ks;
}

MeasurementPlan transmission_plan(int n_angles, const std::vector<int>& j_values, int m0, double R) {
  if (n_angles < 1 || j_values.empty()) throw DomainError("transmission_plan: empty plan");
  if (m0 < 1) throw DomainError("transmission_plan: m0 must be positive");
  MeasurementPlan p;
  p.kind = PlanKind::Optimal;
  p.m0 = m0;
  p.N = n_angles;
  for (int i = 1; i <= n_angles; ++i) {
    const double t = 2.0 * pi * i / n_angles;
    for (int J : j_values) {
      p.triples.push_back({reduce_angle(t), reduce_angle(t + pi), plan_wavenumber(m0, J, R)});
      p.indices.emplace_back(i, J);
    }
  }
  return p;
}

MeasurementPlan optimal_plan(int N, int m0, double R) {
  if (N < 1) throw DomainError("optimal_plan: N must be positive");
  std::vector<int> js(N);
  for (int j = 0; j < N; ++j) js[j] = j + 1;
  return transmission_plan(N, js, m0, R);
}

MeasurementPlan set1_plan(int N0, const std::vector<double>& k_list) {
  if (N0 < 1) throw DomainError("set1_plan: N0 must be positive");
  check_k_list(k_list);
  MeasurementPlan p;
  p.kind = PlanKind::Set1;
  p.N = N0;
  for (double k : k_list)
    for (int i = 1; i <= N0; ++i)
      for (int j = 1; j <= N0; ++j) {
        p.triples.push_back({reduce_angle(2.0 * pi * i / N0), reduce_angle(2.0 * pi * j / N0), k});
        p.indices.emplace_back(i, j);
      }
  return p;
}

MeasurementPlan set2_plan(int N, int u_count, const std::vector<double>& k_list) {
  return offset_plan(PlanKind::Set2, N, N, u_count, k_list);
}

MeasurementPlan set3_plan(int N, int u_count, const std::vector<double>& k_list) {
  return offset_plan(PlanKind::Set3, (N + 1) / 2, N, u_count, k_list);
}

std::vector<double> distinct_wavenumbers(const MeasurementPlan& plan) {
  std::vector<double> ks;
  for (const auto& t : plan.triples)
    if (std::find(ks.begin(), ks.end(), t.k) == ks.end()) ks.push_back(t.k);
  return ks;
}

void write_plan_csv(std::ostream& out, const MeasurementPlan& plan) {
  csv::Writer w(out, {"theta_inc", "theta_obs", "k"});
  for (const auto& t : plan.triples) {
    w << t.theta_inc << t.theta_obs << t.k;
    w.end_row();
  }
}

MeasurementPlan read_plan_csv(std::istream& in) {
  const auto t = csv::read(in);
  const auto a = t.column("theta_inc"), b = t.column("theta_obs"), c = t.column("k");
  MeasurementPlan p;
  for (const auto& row : t.rows)
    p.triples.push_back({csv::parse_double(row[a]), csv::parse_double(row[b]), csv::parse_double(row[c])});
  return p;
}

FarFieldData synthesize_from_sc(const MeasurementPlan& plan, const std::vector<ScatteringMatrix>& per_k) {
  FarFieldData data;
  data.points = plan.triples;
  data.values.assign(plan.size(), 0.0);
  std::map<double, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < plan.size(); ++i) groups[plan.triples[i].k].push_back(i);
  for (const auto& [k, idx] : groups) {
    auto it = std::find_if(per_k.begin(), per_k.end(), [k = k](const auto& w) { return w.wavenumber() == k; });
    if (it == per_k.end()) throw DataError("synthesize: no scattering matrix for k = " + csv::format(k));
    std::vector<std::pair<double, double>> angles;
    for (auto i : idx) angles.emplace_back(plan.triples[i].theta_inc, plan.triples[i].theta_obs);
    const auto a = far_field_from_sc(*it, angles);
    for (std::size_t j = 0; j < idx.size(); ++j) data.values[idx[j]] = a[j];
  }
  data.magnitudes.resize(plan.size());
  for (std::size_t i = 0; i < plan.size(); ++i) data.magnitudes[i] = std::abs(data.values[i]);
  return data;
}

FarFieldData synthesize_born(const StarDomain& d, double eps, const MeasurementPlan& plan, int band,
                             const BornQuadrature& q) {
  std::vector<ScatteringMatrix> ws;
  for (double k : distinct_wavenumbers(plan)) ws.push_back(born_matrix(d, eps, k, band, q));
  return synthesize_from_sc(plan, ws);
}

FarFieldData synthesize_linearized(const StarDomain& d, double eps, const MeasurementPlan& plan) {
  FarFieldData data;
  data.points = plan.triples;
  for (const auto& t : plan.triples) {
    data.values.push_back(far_field_linearized(d, eps, t.theta_inc, t.theta_obs, t.k));
    data.magnitudes.push_back(std::abs(data.values.back()));
  }
  return data;
}

FarFieldData magnitudes_only(const FarFieldData& data) {
  FarFieldData out = data;
  out.values.clear();
  return out;
}

std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

FarFieldData apply_noise(const FarFieldData& data, const NoiseSpec& spec) {
  if (!(spec.sigma >= 0.0) || !std::isfinite(spec.sigma)) throw DataError("apply_noise: sigma must be >= 0");
  FarFieldData out = data;
  out.noise = spec;
  if (spec.model == NoiseSpec::Model::MultiplicativeUniform) {
    if (data.phased()) throw DataError("apply_noise: multiplicative magnitude noise on complex data");
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (out.magnitudes[i] < 0.0) throw DataError("apply_noise: negative magnitude");
      auto g = substream(spec.seed, i);
      std::uniform_real_distribution<double> xi(-1.0, 1.0);
      out.magnitudes[i] *= 1.0 + spec.sigma * xi(g);
    }
  } else {
    if (!data.phased()) throw DataError("apply_noise: Gaussian far-field noise needs complex data");
    for (std::size_t i = 0; i < out.size(); ++i) {
      auto g = substream(spec.seed, i);
      const double k = out.points[i].k;
      std::normal_distribution<double> n(0.0, spec.sigma * k * k / std::sqrt(2.0));
      const double re = n(g), im = n(g);
      out.values[i] += std::complex<double>(re, im);
      out.magnitudes[i] = std::abs(out.values[i]);
    }
  }
  return out;
}

ScatteringMatrix add_coefficient_noise(const ScatteringMatrix& w, double sigma, std::uint64_t seed) {
  if (!(sigma >= 0.0)) throw DataError("add_coefficient_noise: sigma must be >= 0");
  ScatteringMatrix out = w;
  const double k = w.wavenumber();
  auto& e = out.entries();
  for (Eigen::Index j = 0; j < e.cols(); ++j)
    for (Eigen::Index i = 0; i < e.rows(); ++i) {
      auto g = substream(seed, static_cast<std::uint64_t>(j * e.rows() + i));
      std::normal_distribution<double> n(0.0, sigma * k * k / std::sqrt(2.0));
      const double re = n(g), im = n(g);
      e(i, j) += std::complex<double>(re, im);
    }
  return out;
}

ResolutionBudget resolution_limit(double snr, double R, double alpha, double constant_c) {
  if (!(snr > 0.0) || !(R > 0.0) || !(constant_c > 0.0)) throw DomainError("resolution_limit: inputs must be positive");
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("resolution_limit: alpha must lie in (0, 1)");
  ResolutionBudget b{snr, R, alpha, constant_c, 0};
  const double rhs = (1.0 + 0.5 * alpha) * std::log(snr);
  auto lhs = [&](int N) { return std::log(constant_c) + 4.0 * N * std::log(N) - (2.0 + 4.0 * N) * std::log(R); };
  // d/dN lhs = 4 (log N + 1 - log R) > 0 once N > R / e; past that point the
  // first failure is final.
  const double rising = R / std::numbers::e;
  for (int N = 1; N < 1000000; ++N) {
    if (lhs(N) < rhs)
      b.n_max = N;
    else if (N > rising)
      break;
  }
  return b;
}

void write_farfield_csv(std::ostream& out, const FarFieldData& data) {
  csv::Writer w(out, {"theta_inc", "theta_obs", "k", "re", "im", "magnitude"});
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto& p = data.points[i];
    w << p.theta_inc << p.theta_obs << p.k;
    if (data.phased())
      w << data.values[i].real() << data.values[i].imag();
    else
      w << std::string() << std::string();
    w << data.magnitudes[i];
    w.end_row();
  }
}

FarFieldData read_farfield_csv(std::istream& in) {
  const auto t = csv::read(in);
  const auto a = t.column("theta_inc"), b = t.column("theta_obs"), c = t.column("k"), re = t.column("re"),
             im = t.column("im"), mag = t.column("magnitude");
  FarFieldData d;
  bool phased = !t.rows.empty() && !t.rows.front()[re].empty();
  for (const auto& row : t.rows) {
    d.points.push_back({csv::parse_double(row[a]), csv::parse_double(row[b]), csv::parse_double(row[c])});
    if (phased) {
      if (row[re].empty() || row[im].empty()) throw DataError("farfield csv: mixed phased and magnitude rows");
      d.values.emplace_back(csv::parse_double(row[re]), csv::parse_double(row[im]));
    }
    d.magnitudes.push_back(csv::parse_double(row[mag]));
  }
  return d;
}

}  // namespace scatrec
