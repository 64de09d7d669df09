#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "scatrec/measurement.hpp"

namespace scatrec {

struct ConditionReport {
  double s_max = 0.0;
  double s_min = 0.0;
  double kappa = 1.0;  // +inf when rank deficient
  bool rank_deficient = false;  // s_min below 1e-12 s_max (or fewer rows than columns)
  PlanKind plan_kind = PlanKind::Custom;
  std::optional<int> m0;
  int N = 0;
};

// From a matrix with at least one nonzero entry.
ConditionReport condition_of(const Eigen::MatrixXd& a, const MeasurementPlan& plan, int N);

// kappa(T E) with the block E of embedding.hpp.
ConditionReport cond_T_E(const MeasurementPlan& plan, double R, int N);

struct LConditioning {
  double kappa_plain = 1.0;  // max|P| / min|P|, +inf if some P = 0
  double kappa_reg = 1.0;    // same for the regularised factors
};

LConditioning cond_L(const MeasurementPlan& plan, double R, double alpha = 1e-3);

// K = sum_{J=1}^{Mt} 1/(4 m0 + 1 + 4J + 2 parity), checked against
// (1/4) log(1 + Mt/(m0 + 2)) <= K <= (1/4) log(1 + Mt/(m0 + 1)).
struct KSum {
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  bool lower_ok = false;
  bool upper_ok = false;
  bool holds() const { return lower_ok && upper_ok; }
};

KSum k_sum(int parity, int m0, int Mtilde);

enum class PhasedVariant { Complex, RealPart };

// kappa of realify(T~) E or of the real-part rows times E.
ConditionReport cond_phased(const MeasurementPlan& plan, double R, int N, PhasedVariant variant);

// kappa(T E) for transmission plans with N incident angles and wavenumbers
// J in [j_first, j_last], one report per m0.
std::vector<ConditionReport> condition_sweep(int N, double R, int j_first, int j_last, const std::vector<int>& m0s);

void write_sweep_csv(std::ostream& out, const std::vector<ConditionReport>& reports);

}  // namespace scatrec
