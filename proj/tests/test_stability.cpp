#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "scatrec/errors.hpp"
#include "scatrec/phased.hpp"
#include "scatrec/phaseless.hpp"
#include "scatrec/stability.hpp"

using namespace scatrec;
using std::numbers::pi;

TEST_CASE("K sums") {
  CHECK(k_sum(0, 1, 1).value == doctest::Approx(1.0 / 9));
  CHECK(k_sum(1, 1, 1).value == doctest::Approx(1.0 / 11));
  for (int p : {0, 1})
    for (int m0 = 1; m0 <= 50; ++m0)
      for (int M = 1; M <= 25; ++M) {
        const auto k = k_sum(p, m0, M);
        CHECK(k.lower_ok);
        if (p == 1) CHECK(k.upper_ok);
        if (M > 1) CHECK(k.value > k_sum(p, m0, M - 1).value);
        if (m0 > 1) CHECK(k.value < k_sum(p, m0 - 1, M).value);
      }
  // the stated upper bound is too tight for parity 0
  const auto k = k_sum(0, 1, 1);
  CHECK_FALSE(k.upper_ok);
  CHECK(k.upper == doctest::Approx(0.25 * std::log(1.5)));
  CHECK_THROWS_AS(k_sum(2, 1, 1), DomainError);
}

TEST_CASE("L conditioning") {
  MeasurementPlan same;
  same.triples.assign(5, {0.4, 2.0, 17.0});
  CHECK(cond_L(same, 0.2).kappa_plain == 1.0);

  // transmission at small 2kR: P = 2 J_1(z)/z stays positive for z < 3.83
  const auto tp = transmission_plan(8, {1, 2, 3}, 1, 0.2);
  const auto c = cond_L(tp, 0.2);
  CHECK(std::isfinite(c.kappa_plain));
  CHECK(c.kappa_plain == doctest::Approx(c.kappa_reg));

  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> ang(0, 2 * pi), kk(1, 60);
  for (int trial = 0; trial < 100; ++trial) {
    MeasurementPlan plan;
    for (int i = 0; i < 30; ++i) plan.triples.push_back({ang(rng), ang(rng), kk(rng)});
    const auto r = cond_L(plan, 0.2, 1e-3);
    CHECK(r.kappa_reg <= 2000.0 * (1 + 1e-12));
    CHECK(r.kappa_reg <= r.kappa_plain * (1 + 1e-12));
  }
}

TEST_CASE("kappa(T E)") {
  MeasurementPlan one;
  one.triples = {{0.0, pi, 10.0}};
  const auto r1 = cond_T_E(one, 0.2, 1);
  CHECK(r1.rank_deficient);
  CHECK(std::isinf(r1.kappa));

  // odd modes never reach the magnitudes: rank deficient for any plan
  const auto r = cond_T_E(optimal_plan(6, 10, 0.2), 0.2, 6);
  CHECK(r.rank_deficient);
  CHECK(r.m0 == 10);
  CHECK(r.plan_kind == PlanKind::Optimal);
  CHECK(r.s_max > 0.0);
  CHECK_THROWS_AS(cond_T_E(MeasurementPlan{}, 0.2, 1), DomainError);
}

TEST_CASE("phased conditioning") {
  const double R = 0.2;
  SUBCASE("real-part operator is the phaseless T") {
    for (const auto& plan : {optimal_plan(5, 3, R), set2_plan(4, 3, {20.0, 30.0})}) {
      const Eigen::MatrixXd a = phased_operator_real_part(plan, R, 5), b = phaseless_operator_T(plan, R, 5);
      CHECK(a == b);
    }
  }
  SUBCASE("single triple, N = 1") {
    MeasurementPlan one;
    one.triples = {{0.0, pi, 10.0}};
    // v -> conj(S_1) v + conj(S_-1) conj(v) = 2i Im(conj(S_1) v): rank one
    CHECK(cond_phased(one, R, 1, PhasedVariant::Complex).rank_deficient);
  }
  SUBCASE("complex variant") {
    // N uniform angles alias l = N with l = -N
    CHECK(cond_phased(optimal_plan(6, 10, R), R, 6, PhasedVariant::Complex).rank_deficient);
    // 2N + 1 angles resolve every mode; kappa falls with m0
    double prev = INFINITY;
    for (int m0 : {2, 5, 10, 20, 40}) {
      const auto c = cond_phased(transmission_plan(13, {1, 2, 3, 4, 5, 6}, m0, R), R, 6, PhasedVariant::Complex);
      CHECK_FALSE(c.rank_deficient);
      CHECK(c.kappa >= 1.0);
      CHECK(c.kappa < prev);
      // 1 + O(1/m0)
      if (m0 >= 10) CHECK((c.kappa - 1.0) * m0 < 3.0);
      prev = c.kappa;
    }
  }
}

TEST_CASE("sweep CSV") {
  const auto reps = condition_sweep(4, 0.2, 1, 3, {1, 2, 3});
  REQUIRE(reps.size() == 3);
  for (int i = 0; i < 3; ++i) CHECK(reps[i].m0 == i + 1);
  std::stringstream ss;
  write_sweep_csv(ss, reps);
  std::string line;
  std::getline(ss, line);
  CHECK(line == "m0,kappa,s_max,s_min");
  std::getline(ss, line);
  CHECK(line.rfind("1,", 0) == 0);
}
