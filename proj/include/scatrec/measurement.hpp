#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "scatrec/forward.hpp"
#include "scatrec/geometry.hpp"

namespace scatrec {

struct Measurement {
  double theta_inc = 0.0;
  double theta_obs = 0.0;
  double k = 1.0;
};

enum class PlanKind { Optimal, Set1, Set2, Set3, Custom };

std::string to_string(PlanKind k);

struct MeasurementPlan {
  PlanKind kind = PlanKind::Custom;
  std::vector<Measurement> triples;
  // Generating indices per triple: (I, J) for optimal plans, (I, K) for
  // Set 1, (I, offset index) for Sets 2 and 3.
  std::vector<std::pair<int, int>> indices;
  int m0 = 0;       // optimal plans
  int N = 0;        // angle count (optimal, Sets 2/3) or N0 (Set 1)
  int u_count = 0;  // Sets 2/3

  std::size_t size() const { return triples.size(); }
};

// Into [0, 2 pi).
double reduce_angle(double theta);

// k = (4 m0 + 2 J + 1) / (8 R)
double plan_wavenumber(int m0, int J, double R);
std::vector<double> plan_wavenumbers(int m0, int j_first, int j_last, double R);

// Transmission triples (2 pi I / n_angles, . + pi, k_J) for I = 1..n_angles
// and J in j_values.
MeasurementPlan transmission_plan(int n_angles, const std::vector<int>& j_values, int m0, double R);

// The N x N arrangement: I, J = 1..N.
MeasurementPlan optimal_plan(int N, int m0, double R);

// Full grid (2 pi I / N0, 2 pi K / N0), I, K = 1..N0, for every k.
MeasurementPlan set1_plan(int N0, const std::vector<double>& k_list);

// Incident 2 pi I / N, I = 1..N, observed at theta + pi + u with u on the
// midpoints of u_count equal cells of (-pi/5, pi/5).
MeasurementPlan set2_plan(int N, int u_count, const std::vector<double>& k_list);

// As set2 with ceil(N/2) incident angles.
MeasurementPlan set3_plan(int N, int u_count, const std::vector<double>& k_list);

// Distinct wavenumbers in order of first appearance.
std::vector<double> distinct_wavenumbers(const MeasurementPlan& plan);

void write_plan_csv(std::ostream& out, const MeasurementPlan& plan);
MeasurementPlan read_plan_csv(std::istream& in);

struct NoiseSpec {
  enum class Model { MultiplicativeUniform, GaussianFarField };
  Model model = Model::MultiplicativeUniform;
  double sigma = 0.0;
  std::uint64_t seed = 0;
};

std::string to_string(NoiseSpec::Model m);

struct FarFieldData {
  std::vector<Measurement> points;
  std::vector<std::complex<double>> values;  // empty for magnitude-only data
  std::vector<double> magnitudes;            // always filled
  std::optional<NoiseSpec> noise;

  bool phased() const { return !values.empty(); }
  std::size_t size() const { return points.size(); }
};

// Complex data synthesised from one scattering matrix per distinct
// wavenumber, matched on ScatteringMatrix::wavenumber().
FarFieldData synthesize_from_sc(const MeasurementPlan& plan, const std::vector<ScatteringMatrix>& per_k);

// Born-approximation data (one born_matrix per distinct wavenumber).
FarFieldData synthesize_born(const StarDomain& d, double eps, const MeasurementPlan& plan, int band = 50,
                             const BornQuadrature& q = {});

// Data from the linearised far field.
FarFieldData synthesize_linearized(const StarDomain& d, double eps, const MeasurementPlan& plan);

// Drops the phase.
FarFieldData magnitudes_only(const FarFieldData& data);

// One generator per measurement index, so the noise on sample i depends only
// on (seed, i) and not on evaluation order.
std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index);

// Multiplicative: |A| (1 + sigma xi), xi ~ U[-1, 1], magnitude-only data.
// Gaussian: complex circular noise of variance sigma^2 k^4 on complex data.
// Throws DataError on a model/data mismatch or sigma < 0.
FarFieldData apply_noise(const FarFieldData& data, const NoiseSpec& spec);

// Circular complex Gaussian of variance sigma^2 k^4 added to every entry.
ScatteringMatrix add_coefficient_noise(const ScatteringMatrix& w, double sigma, std::uint64_t seed);

struct ResolutionBudget {
  double snr = 1.0;
  double R = 1.0;
  double alpha = 0.5;
  double constant_c = 1.0;
  int n_max = 0;
};

// Largest N with c N^{4N} / R^{2 + 4N} < snr^{1 + alpha/2}; 0 if N = 1 fails.
ResolutionBudget resolution_limit(double snr, double R, double alpha, double constant_c = 1.0);

// Far-field CSV: theta_inc,theta_obs,k,re,im,magnitude (re/im empty when
// magnitude-only).
void write_farfield_csv(std::ostream& out, const FarFieldData& data);
FarFieldData read_farfield_csv(std::istream& in);

}  // namespace scatrec
