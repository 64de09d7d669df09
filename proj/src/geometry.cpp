#include "scatrec/geometry.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

#include "scatrec/csv.hpp"
#include "scatrec/errors.hpp"

namespace scatrec {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
}

StarDomain::StarDomain(double base_radius, double delta, std::vector<std::complex<double>> coeffs,
                       std::optional<double> exponent)
    : R_(base_radius), delta_(delta), coeffs_(std::move(coeffs)), exponent_(exponent) {
  if (!(R_ > 0.0) || !std::isfinite(R_)) throw InvalidGeometry("StarDomain: base radius must be positive");
  if (!(delta_ >= 0.0) || !std::isfinite(delta_))
    throw InvalidGeometry("StarDomain: perturbation amplitude must be nonnegative");
  if (exponent_ && !(*exponent_ > 0.0 && *exponent_ < 1.0))
    throw InvalidGeometry("StarDomain: perturbation exponent must lie in (0, 1)");
  for (const auto& c : coeffs_)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw InvalidGeometry("StarDomain: non-finite Fourier coefficient");
  // trailing zeros carry no information
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();

  const int grid = 4096;
  for (int i = 0; i < grid; ++i) {
    const double t = two_pi * (i + 1) / grid;
    if (!(radius(t) > 0.0))
      throw InvalidGeometry("StarDomain: boundary radius not positive at theta = " + std::to_string(t));
  }
}

std::complex<double> StarDomain::coeff(int l) const {
  if (l == 0 || std::abs(l) > harmonic_band()) return 0.0;
  const auto c = coeffs_[std::abs(l) - 1];
  return l > 0 ? c : std::conj(c);
}

double StarDomain::profile(double theta) const {
  // h = 2 Re sum_{l>0} F(l) e^{i l theta}
  double h = 0.0;
  for (int l = 1; l <= harmonic_band(); ++l) {
    const auto c = coeffs_[l - 1];
    h += 2.0 * (c.real() * std::cos(l * theta) - c.imag() * std::sin(l * theta));
  }
  return h;
}

double StarDomain::radius(double theta) const { return R_ * (1.0 + delta_ * profile(theta)); }

StarDomain make_flower(double R, double delta, int n, std::optional<double> second_harmonic) {
  if (n < 1) throw InvalidGeometry("make_flower: petal count must be positive");
  const int band = second_harmonic ? 2 * n : n;
  std::vector<std::complex<double>> c(band, 0.0);
  c[n - 1] = 0.5;
  if (second_harmonic) c[2 * n - 1] = 0.5 * *second_harmonic;
  return StarDomain(R, delta, std::move(c));
}

double area(const StarDomain& d) {
  double s = 0.0;
  for (const auto& c : d.positive_coeffs()) s += std::norm(c);
  const double R = d.base_radius(), delta = d.delta();
  return std::numbers::pi * R * R * (1.0 + 2.0 * delta * delta * s);
}

double relative_error(const StarDomain& exact, const StarDomain& approx) {
  // Trapezoid on g = r1^2 - r2^2 with the kinks of |g| resolved by locating
  // sign changes linearly inside each cell.
  const int n = 1 << 16;
  const double h = two_pi / n;
  auto g = [&](double t) {
    const double a = exact.radius(t), b = approx.radius(t);
    return a * a - b * b;
  };
  double sum = 0.0;
  double g0 = g(0.0);
  for (int i = 1; i <= n; ++i) {
    const double g1 = g(i * h);
    if ((g0 > 0.0 && g1 < 0.0) || (g0 < 0.0 && g1 > 0.0)) {
      const double s = g0 / (g0 - g1);
      sum += 0.5 * (std::abs(g0) * s + std::abs(g1) * (1.0 - s)) * h;
    } else {
      sum += 0.5 * (std::abs(g0) + std::abs(g1)) * h;
    }
    g0 = g1;
  }
  return 0.5 * sum / area(exact);
}

BoundaryCurve boundary_curve(const StarDomain& d, int samples) {
  if (samples < 1) throw DomainError("boundary_curve: need at least one sample");
  BoundaryCurve c;
  c.samples.reserve(samples);
  for (int i = 1; i <= samples; ++i) {
    const double t = two_pi * i / samples;
    c.samples.emplace_back(t, d.radius(t));
  }
  return c;
}

void write_boundary_csv(std::ostream& out, const BoundaryCurve& c) {
  csv::Writer w(out, {"theta", "r"});
  for (const auto& [t, r] : c.samples) {
    w << t << r;
    w.end_row();
  }
}

}  // namespace scatrec
