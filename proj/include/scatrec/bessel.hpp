#pragma once

#include <complex>
#include <vector>

namespace scatrec {

// Largest |n| accepted by the integer-order Bessel routines.
inline constexpr int kMaxBesselOrder = 200;

// J_n(x) for integer n and real x.
//
// Evaluated by Miller's backward recurrence normalised with the Neumann
// series identities, which is stable on both sides of the turning point
// n ~ x. Negative orders and arguments use J_{-n} = (-1)^n J_n and
// J_n(-x) = (-1)^n J_n(x). Throws DomainError for non-finite x or
// |n| > kMaxBesselOrder.
double bessel_j(int n, double x);

// J_0(x), ..., J_nmax(x) from a single recurrence pass.
std::vector<double> bessel_j_sequence(int nmax, double x);

// J_n'(x) = (J_{n-1}(x) - J_{n+1}(x)) / 2.
double bessel_j_prime(int n, double x);

struct ExtremumLocation {
  int order = 0;
  int extremum_index = 0;
  double location = 0.0;
};

// Stationary point b_{l,m0} of J_l associated with the large-argument
// asymptote (4 m0 + 2 l + 1) pi / 4: the (m0 + 1)-th positive zero of J_l'
// for l >= 1, the m0-th positive zero of J_1 for l = 0. The root is located
// by counting sign changes of J_l' from the origin, bisected to 1e-6 and
// polished by Newton until |J_l'(b)| <= 1e-11. Throws ConvergenceError if
// the polish fails.
ExtremumLocation bessel_extremum(int l, int m0);

// Second Lommel integral in closed form:
//   int_0^R J_l(k r)^2 r dr = R^2/2 [J_l(kR)^2 - J_{l-1}(kR) J_{l+1}(kR)].
// Requires k, R > 0 and kR <= 1e4.
double lommel_integral(int l, double k, double R);

// sum_{|n| <= band} J_n(x) J_{n-l}(y) e^{i n theta}.
std::complex<double> graf_partial_sum(double x, double y, double theta, int l,
                                      int band = 80);

// Closed form of the full Graf sum:
//   e^{i l theta} ((x - y e^{-i theta}) / rho)^l J_l(rho),  rho = |x - y e^{-i theta}|.
std::complex<double> graf_closed_form(double x, double y, double theta, int l);

}  // namespace scatrec
