#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "scatrec/errors.hpp"
#include "scatrec/measurement.hpp"

using namespace scatrec;
using std::numbers::pi;

TEST_CASE("optimal plan") {
  SUBCASE("single triple") {
    const auto p = optimal_plan(1, 10, 0.2);
    REQUIRE(p.size() == 1);
    CHECK(p.triples[0].theta_inc == 0.0);
    CHECK(p.triples[0].theta_obs == doctest::Approx(pi));
    CHECK(p.triples[0].k == (40.0 + 2 + 1) / 1.6);
    CHECK(plan_wavenumber(10, 5, 0.2) == 31.875);
    CHECK(p.kind == PlanKind::Optimal);
  }
  SUBCASE("N = 3 enumerates 3 angles x 3 wavenumbers") {
    const auto p = optimal_plan(3, 4, 0.2);
    REQUIRE(p.size() == 9);
    std::set<double> angles, ks;
    for (const auto& t : p.triples) {
      angles.insert(t.theta_inc);
      ks.insert(t.k);
      CHECK(reduce_angle(t.theta_obs - t.theta_inc) == doctest::Approx(pi));
    }
    CHECK(angles.size() == 3);
    CHECK(ks.size() == 3);
  }
  SUBCASE("wavenumbers increase with J and 2kR sits at (4 m0 + 2J + 1)/4") {
    const double R = 0.3;
    for (int J = 1; J < 8; ++J) {
      CHECK(plan_wavenumber(5, J, R) < plan_wavenumber(5, J + 1, R));
      CHECK(2 * plan_wavenumber(5, J, R) * R == doctest::Approx((4.0 * 5 + 2 * J + 1) / 4));
    }
  }
  SUBCASE("angles reduced") {
    for (const auto& t : optimal_plan(7, 2, 0.2).triples) {
      CHECK(t.theta_inc >= 0.0);
      CHECK(t.theta_inc < 2 * pi);
      CHECK(t.theta_obs >= 0.0);
      CHECK(t.theta_obs < 2 * pi);
    }
  }
}

TEST_CASE("measurement sets") {
  const auto ks = plan_wavenumbers(10, 5, 10, 0.2);
  REQUIRE(ks.size() == 6);
  CHECK(ks.front() == doctest::Approx((40.0 + 10 + 1) / 1.6));

  const auto s1 = set1_plan(50, ks);
  CHECK(s1.size() == 15000);
  std::set<std::tuple<double, double, double>> uniq;
  for (const auto& t : s1.triples) uniq.emplace(t.theta_inc, t.theta_obs, t.k);
  CHECK(uniq.size() == 15000);

  const auto one = set1_plan(1, {3.0});
  REQUIRE(one.size() == 1);
  CHECK(one.triples[0].theta_inc == 0.0);
  CHECK(one.triples[0].theta_obs == 0.0);

  CHECK(set2_plan(6, 5, {1.0}).size() == 30);
  CHECK(set3_plan(6, 5, {1.0}).size() == 15);
  CHECK(set3_plan(7, 5, {1.0}).size() == 20);
  CHECK(set2_plan(6, 5, ks).size() == 180);

  const auto tr = set2_plan(4, 1, {2.0});
  for (const auto& t : tr.triples) CHECK(reduce_angle(t.theta_obs - t.theta_inc) == doctest::Approx(pi));

  // offsets strictly inside (-pi/5, pi/5), symmetric about zero
  const auto s2 = set2_plan(1, 5, {2.0});
  for (const auto& t : s2.triples) {
    const double u = reduce_angle(t.theta_obs - t.theta_inc) - pi;
    CHECK(std::abs(u) < pi / 5);
  }
  CHECK(reduce_angle(s2.triples[2].theta_obs - s2.triples[2].theta_inc) == doctest::Approx(pi));
}

TEST_CASE("plan CSV round trip") {
  const auto p = set2_plan(5, 3, {12.5, 31.875});
  std::stringstream ss;
  write_plan_csv(ss, p);
  const auto q = read_plan_csv(ss);
  REQUIRE(q.size() == p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    CHECK(q.triples[i].theta_inc == p.triples[i].theta_inc);
    CHECK(q.triples[i].theta_obs == p.triples[i].theta_obs);
    CHECK(q.triples[i].k == p.triples[i].k);
  }
}

TEST_CASE("synthesis") {
  const auto d = make_flower(0.2, 0.1, 3);
  const auto plan = set2_plan(4, 2, {20.0, 25.0});
  const auto lin = synthesize_linearized(d, 0.05, plan);
  std::vector<ScatteringMatrix> ws{first_order_matrix(d, 0.05, 20.0, 50), first_order_matrix(d, 0.05, 25.0, 50)};
  const auto sc = synthesize_from_sc(plan, ws);
  for (std::size_t i = 0; i < plan.size(); ++i)
    CHECK(std::abs(lin.values[i] - sc.values[i]) <= 1e-12 * std::abs(lin.values[i]));
  CHECK_THROWS_AS(synthesize_from_sc(plan, {ws[0]}), DataError);
  CHECK_FALSE(magnitudes_only(lin).phased());
}

TEST_CASE("noise") {
  const auto d = make_flower(0.2, 0.1, 3);
  const auto plan = set1_plan(10, {20.0});
  const auto clean = synthesize_linearized(d, 0.05, plan);
  const auto mags = magnitudes_only(clean);

  SUBCASE("sigma = 0 leaves data unchanged") {
    const auto out = apply_noise(mags, {NoiseSpec::Model::MultiplicativeUniform, 0.0, 3});
    CHECK(out.magnitudes == mags.magnitudes);
    const auto g = apply_noise(clean, {NoiseSpec::Model::GaussianFarField, 0.0, 3});
    CHECK(g.values == clean.values);
  }
  SUBCASE("deterministic and bounded") {
    const NoiseSpec spec{NoiseSpec::Model::MultiplicativeUniform, 0.05, 42};
    const auto a = apply_noise(mags, spec), b = apply_noise(mags, spec);
    CHECK(a.magnitudes == b.magnitudes);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a.magnitudes[i] / mags.magnitudes[i] - 1) <= 0.05);
    const auto c = apply_noise(mags, {NoiseSpec::Model::MultiplicativeUniform, 0.05, 43});
    CHECK(a.magnitudes != c.magnitudes);
  }
  SUBCASE("independent of the rest of the dataset") {
    // the noise on sample i depends only on (seed, i)
    auto head = mags;
    head.points.resize(10);
    head.magnitudes.resize(10);
    const NoiseSpec spec{NoiseSpec::Model::MultiplicativeUniform, 0.05, 9};
    const auto a = apply_noise(mags, spec), b = apply_noise(head, spec);
    for (int i = 0; i < 10; ++i) CHECK(a.magnitudes[i] == b.magnitudes[i]);
  }
  SUBCASE("model/data mismatch") {
    CHECK_THROWS_AS(apply_noise(clean, {NoiseSpec::Model::MultiplicativeUniform, 0.05, 1}), DataError);
    CHECK_THROWS_AS(apply_noise(mags, {NoiseSpec::Model::GaussianFarField, 0.05, 1}), DataError);
    CHECK_THROWS_AS(apply_noise(mags, {NoiseSpec::Model::MultiplicativeUniform, -0.1, 1}), DataError);
  }
  SUBCASE("Gaussian variance") {
    FarFieldData zeros;
    const double k = 3.0, sigma = 0.01;
    zeros.points.assign(100000, {0.0, 0.0, k});
    zeros.values.assign(100000, 0.0);
    zeros.magnitudes.assign(100000, 0.0);
    const auto n = apply_noise(zeros, {NoiseSpec::Model::GaussianFarField, sigma, 5});
    double s2 = 0.0, re2 = 0.0;
    std::complex<double> mean = 0.0;
    for (const auto& v : n.values) {
      s2 += std::norm(v);
      re2 += v.real() * v.real();
      mean += v;
    }
    s2 /= n.size();
    re2 /= n.size();
    const double target = sigma * sigma * k * k * k * k;
    CHECK(std::abs(s2 / target - 1.0) < 0.02);
    CHECK(std::abs(re2 / (0.5 * target) - 1.0) < 0.03);
    CHECK(std::abs(mean) / n.size() < 0.01 * std::sqrt(target));
  }
  SUBCASE("coefficient noise") {
    ScatteringMatrix w(30, 0.05, 2.0);
    const auto a = add_coefficient_noise(w, 0.1, 1), b = add_coefficient_noise(w, 0.1, 1);
    CHECK(a.entries() == b.entries());
    const double var = a.entries().squaredNorm() / a.entries().size();
    CHECK(var == doctest::Approx(0.01 * 16).epsilon(0.1));
  }
}

TEST_CASE("far-field CSV round trip") {
  const auto d = make_flower(0.2, 0.1, 3);
  const auto data = synthesize_linearized(d, 0.05, set2_plan(3, 2, {20.0}));
  for (const auto& src : {data, magnitudes_only(data)}) {
    std::stringstream ss;
    write_farfield_csv(ss, src);
    const auto back = read_farfield_csv(ss);
    CHECK(back.phased() == src.phased());
    CHECK(back.values == src.values);
    CHECK(back.magnitudes == src.magnitudes);
  }
}

TEST_CASE("resolution budget") {
  auto brute = [](double snr, double R, double alpha, double c) {
    int best = 0;
    for (int N = 1; N <= 50; ++N)
      if (c * std::pow(N, 4.0 * N) / std::pow(R, 2.0 + 4 * N) < std::pow(snr, 1 + alpha / 2)) best = N;
    return best;
  };
  CHECK(resolution_limit(1e6, 0.2, 0.5, 1.0).n_max == brute(1e6, 0.2, 0.5, 1.0));
  for (double snr : {1e2, 1e8, 1e15, 1e30, 1e60})
    for (double R : {0.1, 0.2, 0.5, 0.9})
      CHECK(resolution_limit(snr, R, 0.5, 1.0).n_max == brute(snr, R, 0.5, 1.0));

  int prev = 0;
  for (double snr = 1.0; snr < 1e200; snr *= 1e10) {
    const int n = resolution_limit(snr, 0.2, 0.5, 1.0).n_max;
    CHECK(n >= prev);
    prev = n;
  }
  CHECK(prev >= 10);
  for (double R : {0.05, 0.1, 0.2, 0.4})
    CHECK(resolution_limit(1e20, 2 * R, 0.5, 1.0).n_max >= resolution_limit(1e20, R, 0.5, 1.0).n_max);
  CHECK(resolution_limit(1.0, 0.2, 0.5, 1.0).n_max == 0);
  CHECK_THROWS_AS(resolution_limit(1e6, 0.2, 1.5, 1.0), DomainError);
}
