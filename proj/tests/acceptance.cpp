// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "scatrec/bessel.hpp"
#include "scatrec/experiment.hpp"
#include "scatrec/forward.hpp"
#include "scatrec/geometry.hpp"
#include "scatrec/measurement.hpp"
#include "scatrec/phased.hpp"
#include "scatrec/phaseless.hpp"
#include "scatrec/stability.hpp"

using namespace scatrec;
using std::numbers::pi;
using cd = std::complex<double>;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome special_functions() {
  const auto t0 = std::chrono::steady_clock::now();
  double lommel_worst = 0.0;
  const double R = 1.0;
  for (int l = 0; l <= 20; ++l)
    for (int i = 0; i <= 59; ++i) {
      const double k = (0.5 + 0.5 * i) / R;
      const double q = oracle::integrate([&](double r) { return std::pow(oracle::jn(l, k * r), 2) * r; }, 0, R);
      lommel_worst = std::max(lommel_worst, std::abs(lommel_integral(l, k, R) - q) / std::abs(q));
    }
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> xy(0.1, 10.0), th(0.0, 2 * pi);
  std::uniform_int_distribution<int> ll(-6, 6);
  double graf_worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double x = xy(rng), y = xy(rng), t = th(rng);
    const int l = ll(rng);
    graf_worst = std::max(graf_worst, std::abs(graf_partial_sum(x, y, t, l, 80) - graf_closed_form(x, y, t, l)));
  }
  const double secs = seconds_since(t0);
  return {lommel_worst <= 1e-10 && graf_worst <= 1e-8 && secs < 10.0,
          fmt("Lommel max rel err %.2e (<= 1e-10), Graf max err %.2e (<= 1e-8), %.1f s (< 10 s)", lommel_worst,
              graf_worst, secs)};
}

Outcome forward_consistency() {
  const auto t0 = std::chrono::steady_clock::now();
  const double R = 0.2, eps = 0.05, k = 31.875;
  const auto w = born_matrix(StarDomain::disk(R), eps, k, 20);
  double disk_worst = 0.0;
  for (int n = -20; n <= 20; ++n) {
    const double ref = sc_ball_closed_form(R, eps, k, n);
    disk_worst = std::max(disk_worst, std::abs(w(n, n) - ref) / std::abs(ref));
  }
  // || W(B^d) - W(B) - first-order part ||, which should scale as d^2
  const std::vector<double> ds{0.1, 0.05, 0.025};
  std::vector<double> res;
  for (double d : ds) {
    const auto dom = make_flower(R, d, 3);
    res.push_back((born_matrix(dom, eps, k, 12).entries() - first_order_matrix(dom, eps, k, 12).entries()).norm());
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const double x = std::log(ds[i]), y = std::log(res[i]);
    sx += x, sy += y, sxx += x * x, sxy += x * y;
  }
  const double n = ds.size();
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double secs = seconds_since(t0);
  return {disk_worst <= 1e-8 && std::abs(slope - 2.0) <= 0.2 && secs < 60.0,
          fmt("disk max rel err %.2e (<= 1e-8), residual slope %.3f (2 +- 0.2), %.1f s (< 60 s)", disk_worst, slope,
              secs)};
}

Outcome dft_link() {
  const int band = 20, n0 = 64;
  std::mt19937_64 rng(77);
  std::normal_distribution<double> g;
  double worst_w = 0.0, worst_a = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    ScatteringMatrix w(band, 0.05, 20.0);
    for (int a = -band; a <= band; ++a)
      for (int b = -band; b <= band; ++b) w(a, b) = {g(rng), g(rng)};
    const Eigen::MatrixXcd grid = far_field_grid(w, n0);
    const auto back = dft_far_field(grid, 0.05, 20.0, band);
    const Eigen::MatrixXcd again = far_field_grid(back, n0);
    worst_w = std::max(worst_w, (back.entries() - w.entries()).cwiseAbs().maxCoeff() /
                                    w.entries().cwiseAbs().maxCoeff());
    worst_a = std::max(worst_a, (again - grid).cwiseAbs().maxCoeff() / grid.cwiseAbs().maxCoeff());
  }
  return {worst_w <= 1e-10 && worst_a <= 1e-10,
          fmt("coefficients max rel err %.2e, far field max rel err %.2e (<= 1e-10)", worst_w, worst_a)};
}

Outcome kernel_special_cases() {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> th(0.0, 2 * pi), kk(1.0, 80.0), rr(0.05, 1.0);
  double p_dev = 0.0, s_dev = 0.0;
  for (int i = 0; i < 500; ++i) {
    const double t = th(rng);
    const auto f = farfield_kernel(rr(rng), t, t, kk(rng), 30);
    p_dev = std::max(p_dev, std::abs(f.p - 1.0));
    for (int l = -30; l <= 30; ++l) s_dev = std::max(s_dev, std::abs(f.s_at(l) - (l == 0 ? 1.0 : 0.0)));
  }
  const double tol = 4 * std::numeric_limits<double>::epsilon();
  return {p_dev <= tol && s_dev <= tol, fmt("max |P - 1| = %.2e, max |S_l - delta_l0| = %.2e (<= %.1e)", p_dev, s_dev, tol)};
}

Outcome condition_figure() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto c = preset("figure-kappa");
  const auto reps = run_condition_sweep(c);
  const double secs = seconds_since(t0);
  int infinite = 0;
  bool decreasing = true;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    if (!std::isfinite(reps[i].kappa)) ++infinite;
    if (i > 0 && !(reps[i].kappa < reps[i - 1].kappa)) decreasing = false;
  }
  double slope = std::numeric_limits<double>::quiet_NaN();
  if (infinite == 0) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& r : reps) {
      const double x = std::log(double(*r.m0)), y = std::log(r.kappa - 1.0);
      sx += x, sy += y, sxx += x * x, sxy += x * y;
    }
    const double n = reps.size();
    slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  }
  const bool pass = infinite == 0 && decreasing && reps.back().kappa < reps.front().kappa && slope <= -0.8 &&
                    secs < 300.0;
  return {pass, fmt("N=%d, m0=%d..%d: %d of %zu kappa values infinite (rank deficient), strictly decreasing: %s, "
                    "log-log slope %.3f (<= -0.8), %.1f s",
                    c.sweep_N, c.sweep_m0_first, c.sweep_m0_last, infinite, reps.size(), decreasing ? "yes" : "no",
                    slope, secs)};
}

Outcome k_sum_bounds() {
  int lower_fail = 0, upper_fail = 0, total = 0;
  std::string first;
  for (int p : {0, 1})
    for (int m0 = 1; m0 <= 50; ++m0)
      for (int M = 1; M <= 25; ++M) {
        const auto k = k_sum(p, m0, M);
        ++total;
        if (!k.lower_ok) ++lower_fail;
        if (!k.upper_ok) ++upper_fail;
        if (!k.holds() && first.empty())
          first = fmt(" (first: parity %d, m0=%d, M=%d: K=%.6f, bounds [%.6f, %.6f])", p, m0, M, k.value, k.lower,
                      k.upper);
      }
  return {lower_fail == 0 && upper_fail == 0,
          fmt("%d cases: lower bound fails %d, upper bound fails %d", total, lower_fail, upper_fail) + first};
}

Outcome regularized_inverse() {
  std::mt19937_64 rng(1000);
  std::uniform_real_distribution<double> th(0.0, 2 * pi), kk(0.5, 120.0), rr(0.02, 1.0);
  std::uniform_int_distribution<int> sz(1, 60);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    MeasurementPlan plan;
    const int m = sz(rng);
    for (int j = 0; j < m; ++j) plan.triples.push_back({th(rng), th(rng), kk(rng)});
    worst = std::max(worst, cond_L(plan, rr(rng), 1e-3).kappa_reg);
  }
  return {worst <= 2000.0, fmt("max kappa(L_alpha^-1) over 1000 random plans = %.1f (<= 2000)", worst)};
}

Outcome exact_phaseless() {
  const double R = 0.2, eps = 0.05, delta = 0.1;
  const int N = 6;
  const std::vector<cd> F{{0.3, 0.1}, {0.25, -0.2}, {0.2, 0.15}, {-0.15, 0.1}, {0.1, 0.05}, {0.08, 0.0}};
  const StarDomain dom(R, delta, F);
  const auto plan = optimal_plan(N, 10, R);
  const auto data = magnitudes_only(synthesize_linearized(dom, eps, plan));
  const auto r = reconstruct_phaseless_known(data, plan, N, R, eps, 1e-3, 0.0);
  double worst = 0.0, worst_even = 0.0;
  for (int l = 1; l <= N; ++l) {
    const double e = std::abs(r.coeffs.at(l) - delta * F[l - 1]);
    worst = std::max(worst, e);
    if (l % 2 == 0) worst_even = std::max(worst_even, e);
  }
  return {worst <= 1e-8, fmt("N=%d, m0=10, %zu samples: max |c_l - delta F(l)| = %.2e (<= 1e-8); even modes only "
                             "%.2e; kappa(T E) = %g",
                             N, plan.size(), worst, worst_even, r.kappa_TE)};
}

std::string peaks(const SetSummary& s) {
  std::string out;
  for (const auto& r : s.runs) out += std::to_string(r.peak_mode());
  return out;
}

Outcome example1() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto c = preset("example1");
  const auto s1 = run_set(c, PlanKind::Set1);
  const auto s3 = run_set(c, PlanKind::Set3);
  const double secs = seconds_since(t0);
  const auto hits = std::count_if(s1.runs.begin(), s1.runs.end(), [](const auto& r) { return r.peak_mode() == 3; });
  const bool pass = s1.runs.size() >= 10 && s1.median >= 0.01 && s1.median <= 0.08 && s1.median < s3.median &&
                    hits >= 8 && secs < 600.0;
  return {pass, fmt("%zu seeds: median rel err Set1 %.4f (in [0.01, 0.08]), Set3 %.4f (Set1 < Set3); "
                    "peak |l|=3 in %ld/%zu (>= 8), peaks %s; %.0f s (< 600 s)",
                    s1.runs.size(), s1.median, s3.median, long(hits), s1.runs.size(), peaks(s1).c_str(), secs)};
}

Outcome examples2_3() {
  const auto c2 = preset("example2");
  std::string detail;
  bool pass = true;
  for (auto kind : {PlanKind::Set1, PlanKind::Set2}) {
    const auto s = run_set(c2, kind);
    const auto hits = std::count_if(s.runs.begin(), s.runs.end(), [](const auto& r) { return r.peak_mode() == 5; });
    pass = pass && hits >= 8;
    detail += fmt("example2 %s peak |l|=5 in %ld/%zu (>= 8), peaks %s; ", to_string(kind).c_str(), long(hits),
                  s.runs.size(), peaks(s).c_str());
  }
  const auto s = run_set(preset("example3"), PlanKind::Set1);
  long hits = 0;
  std::string tops;
  for (const auto& r : s.runs) {
    const auto [a, b] = r.top_two();
    if (std::set<int>{a, b} == std::set<int>{3, 6}) ++hits;
    tops += fmt("{%d,%d}", a, b);
  }
  pass = pass && hits >= 7;
  detail += fmt("example3 set1 top two = {3,6} in %ld/%zu (>= 7), tops %s", hits, s.runs.size(), tops.c_str());
  return {pass, detail};
}

Outcome resolution() {
  const double R = 0.2, eps = 0.05, delta = 0.1, k = 31.875, alpha = 0.5;
  const int N = 3;
  // smallest SNR with n_max >= N, by bisection in log SNR
  double lo = 0.0, hi = 200.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (resolution_limit(std::exp(mid), R, alpha).n_max >= N ? hi : lo) = mid;
  }
  const double snr_in = 2.0 * std::exp(hi), snr_low = snr_in / 100.0;
  const int n_in = resolution_limit(snr_in, R, alpha).n_max, n_low = resolution_limit(snr_low, R, alpha).n_max;

  const std::vector<cd> F{{0.5, 0.0}, {0.4, -0.3}, {0.0, 0.5}};
  const StarDomain dom(R, delta, F);
  const auto w = first_order_matrix(dom, eps, k, 8);
  auto mse = [&](double snr) {
    const double sigma = eps / std::sqrt(snr);
    std::vector<double> acc(N, 0.0);
    const int draws = 200;
    for (int s = 0; s < draws; ++s) {
      const auto noisy = add_coefficient_noise(w, sigma, 9000 + s);
      const auto fit = fit_ball_params_phased(noisy, N);
      const auto est = estimate_perturbation_phased(noisy, fit.R, fit.eps, N);
      for (int l = 1; l <= N; ++l) acc[l - 1] += std::norm(est.coeffs.at(l) / delta - F[l - 1]);
    }
    for (auto& a : acc) a /= draws;
    return acc;
  };
  const auto in = mse(snr_in), low = mse(snr_low);
  const double in_max = *std::max_element(in.begin(), in.end());
  const bool pass = n_in >= N && in_max < 1.0 && low[N - 1] > in[N - 1];
  return {pass, fmt("SNR %.3g (n_max %d): per-mode MSE %.2e %.2e %.2e (< 1); SNR %.3g (n_max %d): mode %d MSE %.2e "
                    "(> %.2e)",
                    snr_in, n_in, in[0], in[1], in[2], snr_low, n_low, N, low[N - 1], in[N - 1])};
}

bool bitwise_equal(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         std::memcmp(a.data(), b.data(), sizeof(double) * a.size()) == 0;
}

Outcome operator_coincidence() {
  const double R = 0.2;
  const auto ks = plan_wavenumbers(10, 5, 10, R);
  const std::vector<std::pair<const char*, MeasurementPlan>> plans{
      {"optimal", optimal_plan(6, 10, R)}, {"set1", set1_plan(16, ks)}, {"set2", set2_plan(6, 5, ks)}};
  bool pass = true;
  std::string detail;
  for (const auto& [name, plan] : plans)
    for (int N : {3, 6}) {
      const auto a = phased_operator_real_part(plan, R, N);
      const auto b = phaseless_operator_T(plan, R, N);
      const bool eq = bitwise_equal(a, b);
      pass = pass && eq;
      detail += fmt("%s N=%d %ldx%ld %s; ", name, N, long(a.rows()), long(a.cols()), eq ? "identical" : "DIFFERENT");
    }
  detail.resize(detail.size() - 2);
  return {pass, detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"special-function identities", special_functions},
      {"forward consistency", forward_consistency},
      {"DFT link", dft_link},
      {"kernel special cases", kernel_special_cases},
      {"condition-number figure", condition_figure},
      {"K-sum bounds", k_sum_bounds},
      {"regularized-inverse bound", regularized_inverse},
      {"exact phaseless recovery", exact_phaseless},
      {"example 1 reproduction", example1},
      {"examples 2 and 3 peak modes", examples2_3},
      {"resolution / SNR", resolution},
      {"phased/phaseless operator coincidence", operator_coincidence},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("[%s] %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
