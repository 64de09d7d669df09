#include "scatrec/phased.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <ostream>

#include "scatrec/bessel.hpp"
#include "scatrec/csv.hpp"
#include "scatrec/embedding.hpp"
#include "scatrec/errors.hpp"
#include "scatrec/linalg.hpp"

namespace scatrec {

namespace {

constexpr double pi = std::numbers::pi;

std::complex<double> ipow(int p) {
  static const std::complex<double> t[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return t[((p % 4) + 4) % 4];
}

double signed_j(const std::vector<double>& seq, int n) {
  const int a = std::abs(n);
  return (n < 0 && (a & 1)) ? -seq[a] : seq[a];
}

// pi R^2 k^2 (J_n^2 - J_{n-1} J_{n+1})(kR)
double disk_profile(double R, double k, int n) {
  const int a = std::abs(n);
  const auto s = bessel_j_sequence(a + 1, k * R);
  const double jm1 = a == 0 ? -s[1] : s[a - 1];
  return pi * R * R * k * k * (s[a] * s[a] - jm1 * s[a + 1]);
}

}  // namespace

double minimize_on_interval(const std::function<double(double)>& f, double lo, double hi, int grid) {
  if (!(hi > lo) || grid < 3) throw DomainError("minimize_on_interval: bad interval");
  int best = 0;
  double fbest = INFINITY;
  for (int i = 0; i <= grid; ++i) {
    const double v = f(lo + (hi - lo) * i / grid);
    if (v < fbest) {
      fbest = v;
      best = i;
    }
  }
  double a = lo + (hi - lo) * std::max(best - 1, 0) / grid;
  double b = lo + (hi - lo) * std::min(best + 1, grid) / grid;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > 1e-13 * (std::abs(a) + std::abs(b))) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  return f(x) <= fbest ? x : lo + (hi - lo) * best / grid;
}

std::complex<double> CoefficientEstimate::at(int l) const {
  if (l == 0 || std::abs(l) > band()) return 0.0;
  const auto c = positive[std::abs(l) - 1];
  return l > 0 ? c : std::conj(c);
}

void write_coefficients_csv(std::ostream& out, const CoefficientEstimate& c) {
  csv::Writer w(out, {"l", "re", "im"});
  for (int l = -c.band(); l <= c.band(); ++l) {
    if (l == 0) continue;
    w << l << c.at(l).real() << c.at(l).imag();
    w.end_row();
  }
}

ScatteringMatrix dft_far_field(const Eigen::MatrixXcd& grid, double eps, double k, int band) {
  const Eigen::Index n0 = grid.rows();
  if (grid.cols() != n0 || n0 == 0) throw DataError("dft_far_field: grid must be square and nonempty");
  if (2 * band + 1 > n0) throw DataError("dft_far_field: band too large for the grid");
  const int S = 2 * band + 1;
  // E(p, i) = e^{-i p theta_i} for p = -band..band
  Eigen::MatrixXcd E(S, n0);
  for (int p = -band; p <= band; ++p)
    for (Eigen::Index i = 0; i < n0; ++i) E(p + band, i) = std::polar(1.0, -p * 2.0 * pi * (i + 1) / n0);
  // F(p, q) for p, q in -band..band
  const Eigen::MatrixXcd F = E * grid * E.transpose() / double(n0 * n0);
  ScatteringMatrix w(band, eps, k);
  for (int n = -band; n <= band; ++n)
    for (int m = -band; m <= band; ++m) w(n, m) = ipow(n - m) * F(-m + band, n + band);
  return w;
}

ScatteringMatrix dft_far_field(const FarFieldData& data, double k, int band) {
  if (!data.phased()) throw DataError("dft_far_field: needs complex far-field data");
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < data.size(); ++i)
    if (data.points[i].k == k) idx.push_back(i);
  const auto n0 = static_cast<Eigen::Index>(std::llround(std::sqrt(double(idx.size()))));
  if (n0 == 0 || static_cast<std::size_t>(n0 * n0) != idx.size())
    throw DataError("dft_far_field: sample count is not a square grid");
  Eigen::MatrixXcd grid(n0, n0);
  Eigen::MatrixXi filled = Eigen::MatrixXi::Zero(n0, n0);
  auto slot = [&](double theta) {
    const double pos = reduce_angle(theta) * n0 / (2.0 * pi);
    const long long r = std::llround(pos);
    if (std::abs(pos - r) > 1e-8) throw DataError("dft_far_field: sample off the uniform grid");
    return static_cast<Eigen::Index>(((r - 1) % n0 + n0) % n0);
  };
  for (auto i : idx) {
    const auto a = slot(data.points[i].theta_inc), b = slot(data.points[i].theta_obs);
    if (filled(a, b)++) throw DataError("dft_far_field: duplicate grid sample");
    grid(a, b) = data.values[i];
  }
  // contrast unknown at this point
  return dft_far_field(grid, 0.0, k, band);
}

BallFit fit_ball_params_phased(const ScatteringMatrix& w, int N) {
  if (N < 1 || N - 1 > w.band()) throw DomainError("fit_ball_params_phased: band outside the matrix");
  const double k = w.wavenumber();
  std::vector<double> diag;
  double total = 0.0;
  for (int n = -(N - 1); n <= N - 1; ++n) {
    diag.push_back(w(n, n).real());
    total += std::norm(w(n, n));
  }
  if (!(total > 1e-300)) throw DegenerateFit("fit_ball_params_phased: all diagonal coefficients vanish");

  // Profit of the closed-form eps at radius R: (sum g Re W)^2 / sum g^2.
  auto eps_at = [&](double R, double& gg) {
    double gw = 0.0;
    gg = 0.0;
    for (int n = -(N - 1); n <= N - 1; ++n) {
      const double g = disk_profile(R, k, n);
      gw += g * diag[n + N - 1];
      gg += g * g;
    }
    return gg > 0.0 ? gw / gg : 0.0;
  };
  auto objective = [&](double R) {
    double gg;
    const double e = eps_at(R, gg);
    return total - e * e * gg;
  };
  BallFit fit;
  fit.R = minimize_on_interval(objective);
  double gg;
  fit.eps = eps_at(fit.R, gg);
  fit.objective = std::max(objective(fit.R), 0.0);
  if (!(fit.eps > 0.0)) throw DegenerateFit("fit_ball_params_phased: no positive contrast fits the data");
  return fit;
}

PhasedReconResult estimate_perturbation_phased(const ScatteringMatrix& w, double R, double eps, int N) {
  if (N < 1 || N - 1 > w.band()) throw DomainError("estimate_perturbation_phased: band outside the matrix");
  const double k = w.wavenumber();
  const auto J = bessel_j_sequence(N, k * R);
  const double scale = 2.0 * pi * R * R * eps * k * k;
  PhasedReconResult res;
  res.R_est = R;
  res.eps_est = eps;

  auto average = [&](int l) {
    std::complex<double> sum = 0.0;
    int count = 0;
    for (int n = -(N - 1); n <= N - 1; ++n) {
      const int m = n + l;
      if (m <= -N || m >= N) continue;
      const double jj = signed_j(J, n) * signed_j(J, m);
      if (std::abs(jj) < 1e-8) {
        ++res.skipped_terms;
        continue;
      }
      // the disk contributes only on the diagonal, and l != 0 here
      sum += w(n, m) / (scale * jj);
      ++count;
    }
    return count ? sum / double(count) : std::complex<double>(0.0);
  };

  res.coeffs.positive.resize(N);
  for (int l = 1; l <= N; ++l) res.coeffs.positive[l - 1] = 0.5 * (average(l) + std::conj(average(-l)));
  return res;
}

PhasedReconResult reconstruct_phased(const FarFieldData& data, int N) {
  MeasurementPlan plan;
  plan.triples = data.points;
  const auto ks = distinct_wavenumbers(plan);
  if (ks.empty()) throw DataError("reconstruct_phased: empty dataset");
  PhasedReconResult out;
  out.coeffs.positive.assign(N, 0.0);
  for (double k : ks) {
    const auto w = dft_far_field(data, k, N);
    const auto fit = fit_ball_params_phased(w, N);
    const auto r = estimate_perturbation_phased(w, fit.R, fit.eps, N);
    out.R_est += fit.R / ks.size();
    out.eps_est += fit.eps / ks.size();
    out.fit_residual += std::sqrt(fit.objective) / ks.size();
    out.skipped_terms += r.skipped_terms;
    for (int l = 0; l < N; ++l) out.coeffs.positive[l] += r.coeffs.positive[l] / double(ks.size());
  }
  return out;
}

Eigen::MatrixXcd phased_operator_Ttilde(const MeasurementPlan& plan, double R, int N) {
  Eigen::MatrixXcd T(plan.size(), 2 * N);
  for (std::size_t i = 0; i < plan.size(); ++i) {
    const auto& t = plan.triples[i];
    const auto K = farfield_kernel(R, t.theta_inc, t.theta_obs, t.k, N);
    for (int l = -N; l <= N; ++l)
      if (l != 0) T(i, mode_slot(l, N)) = std::conj(K.s_at(l));
  }
  return T;
}

Eigen::VectorXcd phased_operator_G(const std::vector<std::complex<double>>& values, const MeasurementPlan& plan,
                                   double R, double eps) {
  if (values.size() != plan.size()) throw DataError("phased_operator_G: data and plan sizes differ");
  Eigen::VectorXcd g(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto& t = plan.triples[i];
    const double k2 = t.k * t.k;
    const double P = farfield_kernel(R, t.theta_inc, t.theta_obs, t.k, 0).p;
    g[i] = (values[i] - pi * R * R * eps * k2 * P) / (2.0 * pi * R * R * eps * k2);
  }
  return g;
}

Eigen::MatrixXd phased_operator_real_part(const MeasurementPlan& plan, double R, int N) {
  const Eigen::MatrixXd full = realify(phased_operator_Ttilde(plan, R, N));
  Eigen::MatrixXd out(plan.size(), 4 * N);
  for (Eigen::Index i = 0; i < out.rows(); ++i) out.row(i) = full.row(2 * i);
  return out;
}

CoefficientEstimate solve_phased_operator(const std::vector<std::complex<double>>& values,
                                          const MeasurementPlan& plan, double R, double eps, int N) {
  const Eigen::MatrixXd A = realify(phased_operator_Ttilde(plan, R, N)) * constraint_basis(N);
  const Eigen::VectorXd b = realify(phased_operator_G(values, plan, R, eps));
  CoefficientEstimate c;
  c.positive = coeffs_from_constrained(tsvd_solve(A, b));
  return c;
}

}  // namespace scatrec
