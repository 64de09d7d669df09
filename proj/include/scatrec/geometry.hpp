#pragma once

#include <complex>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

namespace scatrec {

// Perturbed disk r(theta) = R (1 + delta h(theta)) with
// h(theta) = sum_{0 < |l| <= N} F(l) e^{i l theta}, F(-l) = conj(F(l)).
// Only F(1..N) is stored; the negative half and F(0) = 0 are implied.
class StarDomain {
 public:
  StarDomain() = default;
  // coeffs[j] = F(j + 1). Throws InvalidGeometry if R <= 0, delta < 0 or
  // r(theta) <= 0 anywhere on a 4096-point grid.
  StarDomain(double base_radius, double delta, std::vector<std::complex<double>> coeffs,
             std::optional<double> exponent = std::nullopt);

  static StarDomain disk(double R) { return StarDomain(R, 0.0, {}); }

  double base_radius() const { return R_; }
  double delta() const { return delta_; }
  std::optional<double> exponent() const { return exponent_; }
  int harmonic_band() const { return static_cast<int>(coeffs_.size()); }
  const std::vector<std::complex<double>>& positive_coeffs() const { return coeffs_; }

  // F(l) for any integer l (zero outside the support).
  std::complex<double> coeff(int l) const;

  double profile(double theta) const;  // h(theta)
  double radius(double theta) const;   // r(theta)

 private:
  double R_ = 1.0;
  double delta_ = 0.0;
  std::vector<std::complex<double>> coeffs_;
  std::optional<double> exponent_;
};

// r = R (1 + delta cos(n theta)), plus second_harmonic * delta * cos(2 n theta)
// when given (2.0 reproduces the two-mode flower with amplitude 2 delta).
StarDomain make_flower(double R, double delta, int n, std::optional<double> second_harmonic = std::nullopt);

// pi R^2 (1 + 2 delta^2 sum_{l>0} |F(l)|^2). Exact: h has no mean, so the
// cross term vanishes.
double area(const StarDomain& d);

// Area of the symmetric difference divided by area(exact); both domains are
// star-shaped about the origin so this is (1/2) int |r1^2 - r2^2| dtheta.
double relative_error(const StarDomain& exact, const StarDomain& approx);

struct BoundaryCurve {
  std::vector<std::pair<double, double>> samples;  // (theta, r), theta in (0, 2 pi]
};

BoundaryCurve boundary_curve(const StarDomain& d, int samples = 512);
void write_boundary_csv(std::ostream& out, const BoundaryCurve& c);

}  // namespace scatrec
