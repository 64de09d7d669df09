#pragma once

#include <Eigen/Dense>
#include <optional>

#include "scatrec/geometry.hpp"
#include "scatrec/measurement.hpp"
#include "scatrec/phased.hpp"

namespace scatrec {

// Linear system for the phaseless step, one row per measurement i:
//   (|A_i|^2 - pi^2 R^4 eps^2 k_i^4 P_i^2) / (4 pi^2 R^4 eps^2 k_i^4 P_i) = sum_l Re(conj(S_l) v_l)
// with v_l = delta F(l). Unknowns in the real layout of embedding.hpp.
struct PhaselessSystem {
  Eigen::MatrixXd t_matrix;  // M x 4N, row i = (Re S_l, Im S_l) for l = -N..-1, 1..N
  Eigen::VectorXd p_values;  // P_i
  Eigen::VectorXd scales;    // 4 pi^2 R^4 eps^2 k_i^4
  Eigen::VectorXd rhs_F;     // |A_i|^2 - pi^2 R^4 eps^2 k_i^4 P_i^2
  Eigen::MatrixXd e_basis;   // 4N x 2N
  double R = 0.0;
  double eps = 0.0;
  int N = 0;
  double alpha = 1e-3;  // threshold of the regularised inverse
  double beta = 0.0;    // L1 weight

  // l_weights: scales .* P
  Eigen::VectorXd l_weights() const { return scales.cwiseProduct(p_values); }
};

// Row i = (Re S_l, Im S_l), l = -N..-1, 1..N, at the i-th triple (M x 4N).
Eigen::MatrixXd phaseless_operator_T(const MeasurementPlan& plan, double R, int N);

// Minimises sum_i (|A_i|^2 - pi^2 R^4 k_i^4 eps^2 P_i^2)^2 with eps^2 in closed
// form (clamped at 0) per R and R by minimize_on_interval over [0.01, 1].
// All measurements, at every wavenumber, enter one objective.
BallFit fit_ball_params_phaseless(const FarFieldData& magnitudes, const MeasurementPlan& plan);

PhaselessSystem assemble_system(const FarFieldData& magnitudes, const MeasurementPlan& plan, double R, double eps,
                                int N, double alpha, double beta);

// rhs_i / scale_i times 1/P_i if |P_i| > alpha, else sign(P_i)/alpha (sign(0) = +1).
Eigen::VectorXd regularized_L_inverse(const PhaselessSystem& s);

struct ConstrainedSolution {
  Eigen::VectorXd y;  // E-coordinates (a_1, b_1, ..., a_N, b_N)
  int iterations = 0;
  bool converged = true;
  double residual = 0.0;  // ||(T E) y - b||
};

// beta = 0: truncated SVD (cutoff 1e-10 s_max) of (T E) y = b.
// beta > 0: split Bregman on ||(T E) y - b||^2 + beta ||y||_1, stopping when
// the max change of the iterate is <= 1e-8 or after 500 iterations.
ConstrainedSolution solve_constrained(const PhaselessSystem& s);

struct PhaselessReconResult {
  double R_est = 0.0;
  double eps_est = 0.0;
  CoefficientEstimate coeffs;
  double kappa_TE = 0.0;  // +inf when T E is rank deficient
  double kappa_L_alpha = 0.0;
  // r = R_est (1 + sum coeff(l) e^{il theta}); empty when that radius is not
  // positive everywhere (then rel_error is empty too)
  std::optional<StarDomain> domain_out;
  std::optional<double> rel_error;
  ConstrainedSolution solve;
};

// Fit, assemble, regularised inverse, solve, map back. rel_error is filled
// when the exact domain is given.
PhaselessReconResult reconstruct_phaseless(const FarFieldData& magnitudes, const MeasurementPlan& plan, int N,
                                           double alpha = 1e-3, double beta = 0.05,
                                           const std::optional<StarDomain>& exact = std::nullopt);

// Same with (R, eps) supplied instead of fitted.
PhaselessReconResult reconstruct_phaseless_known(const FarFieldData& magnitudes, const MeasurementPlan& plan, int N,
                                                 double R, double eps, double alpha = 1e-3, double beta = 0.05,
                                                 const std::optional<StarDomain>& exact = std::nullopt);

}  // namespace scatrec
