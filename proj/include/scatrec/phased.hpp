#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <iosfwd>
#include <vector>

#include "scatrec/forward.hpp"
#include "scatrec/measurement.hpp"

namespace scatrec {

struct BallFit {
  double R = 0.0;
  double eps = 0.0;
  double objective = 0.0;
};

// Global minimiser of f on [lo, hi]: scan on a uniform grid, then
// golden-section search between the neighbours of the best grid point.
double minimize_on_interval(const std::function<double(double)>& f, double lo = 0.01, double hi = 1.0,
                            int grid = 500);

// Estimated delta F(l) for l = 1..N; negative modes are the conjugates.
struct CoefficientEstimate {
  std::vector<std::complex<double>> positive;  // positive[l - 1]

  int band() const { return static_cast<int>(positive.size()); }
  std::complex<double> at(int l) const;
};

void write_coefficients_csv(std::ostream& out, const CoefficientEstimate& c);

struct PhasedReconResult {
  double R_est = 0.0;
  double eps_est = 0.0;
  CoefficientEstimate coeffs;
  double fit_residual = 0.0;  // sqrt of the diagonal fit objective
  int skipped_terms = 0;      // anti-diagonal terms dropped for |J_n J_m| < 1e-8
};

// Scattering coefficients from far-field samples on the full grid
// theta = 2 pi (i + 1) / n0 (rows incident, columns observation):
//   W_nm = i^{n-m} F[A](-m, n),  F[A](p, q) = n0^-2 sum A e^{-i p theta_d} e^{-i q theta_x}.
// Requires 2 band + 1 <= n0.
ScatteringMatrix dft_far_field(const Eigen::MatrixXcd& grid, double eps, double k, int band);

// Same from a dataset: picks the samples at wavenumber k and arranges them
// on the grid. Throws DataError if they do not fill a uniform square grid.
ScatteringMatrix dft_far_field(const FarFieldData& data, double k, int band);

// Minimises sum_{|n| < N} |W_nn - eps pi R^2 k^2 (J_n^2 - J_{n-1} J_{n+1})(kR)|^2;
// eps in closed form per R, R by minimize_on_interval over [0.01, 1].
BallFit fit_ball_params_phased(const ScatteringMatrix& w, int N);

// Anti-diagonal averages over -N < n, m < N with m - n = l of
// W_nm / (2 pi R^2 eps k^2 J_n(kR) J_m(kR)), then symmetrised.
PhasedReconResult estimate_perturbation_phased(const ScatteringMatrix& w, double R, double eps, int N);

// Algorithm 1 for every wavenumber in a full-grid complex dataset; per-k
// estimates (and fitted R, eps) are averaged uniformly.
PhasedReconResult reconstruct_phased(const FarFieldData& data, int N);

// T~ (M x 2N): row i holds conj(S_l) for l = -N..-1, 1..N, so that
// (T~ v)_i = <v, S>.
Eigen::MatrixXcd phased_operator_Ttilde(const MeasurementPlan& plan, double R, int N);

// (v_i - pi R^2 eps k^2 P_i) / (2 pi R^2 eps k^2)
Eigen::VectorXcd phased_operator_G(const std::vector<std::complex<double>>& values, const MeasurementPlan& plan,
                                   double R, double eps);

// Real-part rows of realify(T~) (M x 4N).
Eigen::MatrixXd phased_operator_real_part(const MeasurementPlan& plan, double R, int N);

// Least-squares solve of realify(T~) E y = realify(G) (truncated SVD).
CoefficientEstimate solve_phased_operator(const std::vector<std::complex<double>>& values,
                                          const MeasurementPlan& plan, double R, double eps, int N);

}  // namespace scatrec
