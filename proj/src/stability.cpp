#include "scatrec/stability.hpp"

#include <cmath>
#include <future>
#include <limits>
#include <numeric>

#include "scatrec/csv.hpp"
#include "scatrec/embedding.hpp"
#include "scatrec/errors.hpp"
#include "scatrec/forward.hpp"
#include "scatrec/linalg.hpp"
#include "scatrec/phased.hpp"
#include "scatrec/phaseless.hpp"

namespace scatrec {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

void check(const MeasurementPlan& plan, double R, int N) {
  if (plan.size() == 0) throw DomainError("condition number of an empty plan");
  if (!(R > 0.0) || N < 1) throw DomainError("condition number needs R > 0 and N >= 1");
}

}  // namespace

ConditionReport condition_of(const Eigen::MatrixXd& a, const MeasurementPlan& plan, int N) {
  ConditionReport r;
  r.plan_kind = plan.kind;
  if (plan.m0 > 0) r.m0 = plan.m0;
  r.N = N;
  const Eigen::VectorXd sv = singular_values(a);
  r.s_max = sv[0];
  r.s_min = sv[sv.size() - 1];
  r.rank_deficient = !(r.s_min > 1e-12 * r.s_max);
  r.kappa = r.rank_deficient ? inf : r.s_max / r.s_min;
  return r;
}

ConditionReport cond_T_E(const MeasurementPlan& plan, double R, int N) {
  check(plan, R, N);
  return condition_of(phaseless_operator_T(plan, R, N) * constraint_basis(N), plan, N);
}

LConditioning cond_L(const MeasurementPlan& plan, double R, double alpha) {
  if (plan.size() == 0) throw DomainError("cond_L: empty plan");
  if (!(alpha > 0.0)) throw DomainError("cond_L: alpha must be positive");
  double pmax = 0.0, pmin = inf, wmax = 0.0, wmin = inf;
  for (const auto& t : plan.triples) {
    const double p = std::abs(farfield_kernel(R, t.theta_inc, t.theta_obs, t.k, 0).p);
    pmax = std::max(pmax, p);
    pmin = std::min(pmin, p);
    const double w = p > alpha ? 1.0 / p : 1.0 / alpha;
    wmax = std::max(wmax, w);
    wmin = std::min(wmin, w);
  }
  LConditioning out;
  out.kappa_plain = pmin > 0.0 ? pmax / pmin : inf;
  out.kappa_reg = wmax / wmin;
  return out;
}

KSum k_sum(int parity, int m0, int Mtilde) {
  if (m0 < 1 || Mtilde < 1 || (parity != 0 && parity != 1)) throw DomainError("k_sum: need m0, Mtilde >= 1, parity 0|1");
  KSum k;
  for (int J = 1; J <= Mtilde; ++J) k.value += 1.0 / (4.0 * m0 + 1 + 4.0 * J + 2.0 * parity);
  k.lower = 0.25 * std::log1p(double(Mtilde) / (m0 + 2));
  k.upper = 0.25 * std::log1p(double(Mtilde) / (m0 + 1));
  k.lower_ok = k.lower <= k.value;
  k.upper_ok = k.value <= k.upper;
  return k;
}

ConditionReport cond_phased(const MeasurementPlan& plan, double R, int N, PhasedVariant variant) {
  check(plan, R, N);
  const Eigen::MatrixXd E = constraint_basis(N);
  if (variant == PhasedVariant::Complex) return condition_of(realify(phased_operator_Ttilde(plan, R, N)) * E, plan, N);
  return condition_of(phased_operator_real_part(plan, R, N) * E, plan, N);
}

std::vector<ConditionReport> condition_sweep(int N, double R, int j_first, int j_last, const std::vector<int>& m0s) {
  std::vector<int> js(j_last - j_first + 1);
  std::iota(js.begin(), js.end(), j_first);
  std::vector<std::future<ConditionReport>> jobs;
  for (int m0 : m0s)
    jobs.push_back(std::async(std::launch::async, [=] {
      return cond_T_E(transmission_plan(N, js, m0, R), R, N);
    }));
  std::vector<ConditionReport> out;
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

void write_sweep_csv(std::ostream& out, const std::vector<ConditionReport>& reports) {
  csv::Writer w(out, {"m0", "kappa", "s_max", "s_min"});
  for (const auto& r : reports) {
    w << (r.m0 ? *r.m0 : -1) << r.kappa << r.s_max << r.s_min;
    w.end_row();
  }
}

}  // namespace scatrec
