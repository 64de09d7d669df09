#include "scatrec/phaseless.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "scatrec/embedding.hpp"
#include "scatrec/errors.hpp"
#include "scatrec/forward.hpp"
#include "scatrec/linalg.hpp"

namespace scatrec {

namespace {

constexpr double pi = std::numbers::pi;

void check_sizes(const FarFieldData& m, const MeasurementPlan& plan) {
  if (m.magnitudes.size() != plan.size()) throw DataError("phaseless: magnitudes and plan sizes differ");
  if (plan.size() < 2) throw DataError("phaseless: need at least two measurements");
}

double reg_factor(double p, double alpha) {
  if (std::abs(p) > alpha) return 1.0 / p;
  return (p < 0.0 ? -1.0 : 1.0) / alpha;
}

double shrink(double x, double t) {
  if (x > t) return x - t;
  if (x < -t) return x + t;
  return 0.0;
}

}  // namespace

Eigen::MatrixXd phaseless_operator_T(const MeasurementPlan& plan, double R, int N) {
  Eigen::MatrixXd T(plan.size(), 4 * N);
  for (std::size_t i = 0; i < plan.size(); ++i) {
    const auto& t = plan.triples[i];
    const auto K = farfield_kernel(R, t.theta_inc, t.theta_obs, t.k, N);
    for (int l = -N; l <= N; ++l) {
      if (l == 0) continue;
      const auto S = K.s_at(l);
      T(i, 2 * mode_slot(l, N)) = S.real();
      T(i, 2 * mode_slot(l, N) + 1) = S.imag();
    }
  }
  return T;
}

BallFit fit_ball_params_phaseless(const FarFieldData& magnitudes, const MeasurementPlan& plan) {
  check_sizes(magnitudes, plan);
  const std::size_t M = plan.size();
  Eigen::VectorXd y(M), p2k4(M);
  for (std::size_t i = 0; i < M; ++i) {
    const auto& t = plan.triples[i];
    y[i] = magnitudes.magnitudes[i] * magnitudes.magnitudes[i];
    p2k4[i] = std::pow(t.k, 4);
  }
  const double total = y.squaredNorm();
  if (!(total > 0.0)) throw DegenerateFit("fit_ball_params_phaseless: all magnitudes vanish");

  // g_i(R) = pi^2 R^4 k^4 P^2; best eps^2 = max(0, <g, y> / <g, g>)
  auto e2_at = [&](double R, double& gg) {
    double gy = 0.0;
    gg = 0.0;
    for (std::size_t i = 0; i < M; ++i) {
      const auto& t = plan.triples[i];
      const double P = farfield_kernel(R, t.theta_inc, t.theta_obs, t.k, 0).p;
      const double g = pi * pi * std::pow(R, 4) * p2k4[i] * P * P;
      gy += g * y[i];
      gg += g * g;
    }
    return gg > 0.0 ? std::max(gy / gg, 0.0) : 0.0;
  };
  auto objective = [&](double R) {
    double gg;
    const double e2 = e2_at(R, gg);
    // ||y - e2 g||^2 with e2 optimal
    return total - e2 * e2 * gg;
  };
  BallFit fit;
  fit.R = minimize_on_interval(objective);
  double gg;
  const double e2 = e2_at(fit.R, gg);
  fit.eps = std::sqrt(e2);
  fit.objective = std::max(objective(fit.R), 0.0);
  if (!(fit.eps > 0.0)) throw DegenerateFit("fit_ball_params_phaseless: no positive contrast fits the data");
  return fit;
}

PhaselessSystem assemble_system(const FarFieldData& magnitudes, const MeasurementPlan& plan, double R, double eps,
                                int N, double alpha, double beta) {
  check_sizes(magnitudes, plan);
  if (N < 1) throw DomainError("assemble_system: band must be positive");
  if (!(alpha > 0.0) || beta < 0.0) throw DomainError("assemble_system: need alpha > 0 and beta >= 0");
  const auto M = static_cast<Eigen::Index>(plan.size());
  PhaselessSystem s;
  s.R = R;
  s.eps = eps;
  s.N = N;
  s.alpha = alpha;
  s.beta = beta;
  s.t_matrix = phaseless_operator_T(plan, R, N);
  s.p_values.resize(M);
  s.scales.resize(M);
  s.rhs_F.resize(M);
  for (Eigen::Index i = 0; i < M; ++i) {
    const auto& t = plan.triples[i];
    const double P = farfield_kernel(R, t.theta_inc, t.theta_obs, t.k, 0).p;
    const double k4 = std::pow(t.k, 4);
    const double a = magnitudes.magnitudes[i];
    s.p_values[i] = P;
    s.scales[i] = 4.0 * pi * pi * std::pow(R, 4) * eps * eps * k4;
    s.rhs_F[i] = a * a - pi * pi * std::pow(R, 4) * eps * eps * k4 * P * P;
  }
  s.e_basis = constraint_basis(N);
  return s;
}

Eigen::VectorXd regularized_L_inverse(const PhaselessSystem& s) {
  Eigen::VectorXd b(s.rhs_F.size());
  for (Eigen::Index i = 0; i < b.size(); ++i) b[i] = s.rhs_F[i] / s.scales[i] * reg_factor(s.p_values[i], s.alpha);
  return b;
}

ConstrainedSolution solve_constrained(const PhaselessSystem& s) {
  const Eigen::MatrixXd A = s.t_matrix * s.e_basis;
  const Eigen::VectorXd b = regularized_L_inverse(s);
  ConstrainedSolution out;
  if (s.beta == 0.0) {
    out.y = tsvd_solve(A, b);
    out.residual = (A * out.y - b).norm();
    return out;
  }

  const Eigen::Index n = A.cols();
  const Eigen::MatrixXd H = 2.0 * A.transpose() * A;
  const Eigen::VectorXd Atb2 = 2.0 * A.transpose() * b;
  const double lambda = std::max(H.trace() / n, std::numeric_limits<double>::min());
  const Eigen::LDLT<Eigen::MatrixXd> solver(H + lambda * Eigen::MatrixXd::Identity(n, n));
  Eigen::VectorXd d = Eigen::VectorXd::Zero(n), c = Eigen::VectorXd::Zero(n), y(n);
  const double t = s.beta / lambda;
  out.converged = false;
  for (out.iterations = 1; out.iterations <= 500; ++out.iterations) {
    y = solver.solve(Atb2 + lambda * (d - c));
    Eigen::VectorXd dn(n);
    for (Eigen::Index j = 0; j < n; ++j) dn[j] = shrink(y[j] + c[j], t);
    c += y - dn;
    const double change = (dn - d).cwiseAbs().maxCoeff();
    d = dn;
    if (change <= 1e-8 && (y - d).cwiseAbs().maxCoeff() <= 1e-8) {
      out.converged = true;
      break;
    }
  }
  out.iterations = std::min(out.iterations, 500);
  out.y = d;
  out.residual = (A * d - b).norm();
  return out;
}

PhaselessReconResult reconstruct_phaseless_known(const FarFieldData& magnitudes, const MeasurementPlan& plan, int N,
                                                 double R, double eps, double alpha, double beta,
                                                 const std::optional<StarDomain>& exact) {
  const auto sys = assemble_system(magnitudes, plan, R, eps, N, alpha, beta);
  PhaselessReconResult res;
  res.R_est = R;
  res.eps_est = eps;
  res.solve = solve_constrained(sys);
  res.coeffs.positive = coeffs_from_constrained(res.solve.y);

  const Eigen::VectorXd sv = singular_values(sys.t_matrix * sys.e_basis);
  const double smin = sv[sv.size() - 1];
  res.kappa_TE = smin > 1e-12 * sv[0] ? sv[0] / smin : std::numeric_limits<double>::infinity();
  double wmax = 0.0, wmin = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < sys.p_values.size(); ++i) {
    const double w = std::abs(reg_factor(sys.p_values[i], alpha));
    wmax = std::max(wmax, w);
    wmin = std::min(wmin, w);
  }
  res.kappa_L_alpha = wmax / wmin;

  try {
    res.domain_out = StarDomain(R, 1.0, res.coeffs.positive);
  } catch (const InvalidGeometry&) {
    return res;
  }
  if (exact) res.rel_error = relative_error(*exact, *res.domain_out);
  return res;
}

PhaselessReconResult reconstruct_phaseless(const FarFieldData& magnitudes, const MeasurementPlan& plan, int N,
                                           double alpha, double beta, const std::optional<StarDomain>& exact) {
  const auto fit = fit_ball_params_phaseless(magnitudes, plan);
  return reconstruct_phaseless_known(magnitudes, plan, N, fit.R, fit.eps, alpha, beta, exact);
}

}  // namespace scatrec
