#pragma once

#include <Eigen/Dense>
#include <complex>
#include <iosfwd>
#include <utility>
#include <vector>

#include "scatrec/geometry.hpp"

namespace scatrec {

// Truncated scattering coefficients W_nm, |n|, |m| <= band.
class ScatteringMatrix {
 public:
  ScatteringMatrix(int band, double contrast, double wavenumber);

  int band() const { return band_; }
  double contrast() const { return contrast_; }
  double wavenumber() const { return k_; }

  std::complex<double>& operator()(int n, int m) { return w_(n + band_, m + band_); }
  const std::complex<double>& operator()(int n, int m) const { return w_(n + band_, m + band_); }

  // Row n + band, column m + band.
  const Eigen::MatrixXcd& entries() const { return w_; }
  Eigen::MatrixXcd& entries() { return w_; }

 private:
  int band_;
  double contrast_, k_;
  Eigen::MatrixXcd w_;
};

struct BornQuadrature {
  int radial_nodes = 64;     // Gauss-Legendre per ray
  int angular_nodes = 1024;  // trapezoid in theta
  bool refine = true;        // repeat with both counts doubled and compare
  double refine_tol = 1e-6;  // max |W1 - W2| / max |W2|
};

// Born approximation W_nm = eps k^2 int_D J_n(kr) J_m(kr) e^{i(n-m)theta} dx
// for the whole band at once. With refinement on, returns the refined matrix
// and throws ConvergenceError if the two levels disagree by more than
// refine_tol.
ScatteringMatrix born_matrix(const StarDomain& d, double eps, double k, int band,
                             const BornQuadrature& q = {});

std::complex<double> sc_born_quadrature(const StarDomain& d, double eps, double k, int n, int m,
                                        const BornQuadrature& q = {});

// pi R^2 eps k^2 [J_n(kR)^2 - J_{n-1}(kR) J_{n+1}(kR)]
double sc_ball_closed_form(double R, double eps, double k, int n);

ScatteringMatrix disk_matrix(double R, double eps, double k, int band);

// Disk term plus 2 pi R^2 k^2 eps delta J_n(kR) J_m(kR) F(m - n).
std::complex<double> sc_perturbation_first_order(const StarDomain& d, double eps, double k, int n, int m);
ScatteringMatrix first_order_matrix(const StarDomain& d, double eps, double k, int band);

// A(theta_d, theta_x) = sum i^{m-n} e^{-i m theta_d} e^{i n theta_x} W_nm
std::complex<double> far_field_from_sc(const ScatteringMatrix& w, double theta_d, double theta_x);

// Same for a list of (theta_d, theta_x) pairs.
std::vector<std::complex<double>> far_field_from_sc(const ScatteringMatrix& w,
                                                    const std::vector<std::pair<double, double>>& angles);

// A on the uniform grid theta = 2 pi (i + 1) / n0, row = incident index,
// column = observation index.
Eigen::MatrixXcd far_field_grid(const ScatteringMatrix& w, int n0);

// Kernels of the linearised far field around the disk of radius R, for
// incident angle theta and observation angle theta_t. With
// z = 2 k R sin((theta_t - theta) / 2):
//   P   = J_0(z) + J_2(z)
//   S_l = (-1)^l e^{i l (theta_t + theta) / 2} J_l(z)
struct FarFieldKernel {
  double p = 1.0;
  int band = 0;
  std::vector<std::complex<double>> s;  // s[l + band]

  std::complex<double> s_at(int l) const { return s[l + band]; }
};

FarFieldKernel farfield_kernel(double R, double theta, double theta_t, double k, int band);

// pi R^2 eps k^2 P + 2 pi R^2 eps delta k^2 sum_l F(l) conj(S_l)
std::complex<double> far_field_linearized(const StarDomain& d, double eps, double theta, double theta_t,
                                          double k);

// CSV with header n,m,re,im; every entry of the band is written.
void write_matrix_csv(std::ostream& out, const ScatteringMatrix& w);
ScatteringMatrix read_matrix_csv(std::istream& in, double contrast, double wavenumber);

}  // namespace scatrec
