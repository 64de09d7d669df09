#include "scatrec/forward.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <string>

#include "scatrec/bessel.hpp"
#include "scatrec/csv.hpp"
#include "scatrec/errors.hpp"

namespace scatrec {

namespace {

constexpr double pi = std::numbers::pi;

// i^p for integer p
std::complex<double> ipow(int p) {
  switch (((p % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

double signed_j(const std::vector<double>& seq, int n) {
  const int a = std::abs(n);
  return (n < 0 && (a & 1)) ? -seq[a] : seq[a];
}

// Gauss-Legendre nodes and weights on [-1, 1] by Newton on P_n.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
}

ScatteringMatrix born_once(const StarDomain& d, double eps, double k, int band, int nr, int nt) {
  std::vector<double> gx, gw;
  gauss_legendre(nr, gx, gw);
  const int B = band + 1;

  // Per ray, G_ab = int_0^{r(theta)} J_a(kr) J_b(kr) r dr for a, b >= 0.
  // Accumulate its Fourier sums at the two frequencies the matrix needs:
  // minus(a,b) at b - a and plus(a,b) at a + b (a <= b).
  Eigen::MatrixXcd minus = Eigen::MatrixXcd::Zero(B, B), plus = Eigen::MatrixXcd::Zero(B, B);
  Eigen::MatrixXd G(B, B);
  Eigen::MatrixXd J(B, nr);
  Eigen::VectorXd wr(nr);
  std::vector<std::complex<double>> phase(2 * band + 1);

  for (int j = 0; j < nt; ++j) {
    const double theta = 2.0 * pi * j / nt;
    const double rmax = d.radius(theta);
    for (int q = 0; q < nr; ++q) {
      const double r = 0.5 * rmax * (gx[q] + 1.0);
      wr[q] = 0.5 * rmax * gw[q] * r;
      const auto seq = bessel_j_sequence(band, k * r);
      for (int a = 0; a < B; ++a) J(a, q) = seq[a];
    }
    G.noalias() = J * wr.asDiagonal() * J.transpose();
    for (int p = 0; p <= 2 * band; ++p) phase[p] = std::polar(1.0, p * theta);
    for (int b = 0; b < B; ++b)
      for (int a = 0; a <= b; ++a) {
        minus(a, b) += G(a, b) * phase[b - a];
        plus(a, b) += G(a, b) * phase[a + b];
      }
  }

  // Sum over rays of G_ab e^{i p theta} for p in {+-(b-a), +-(a+b)}.
  auto fhat = [&](int a, int b, int p) -> std::complex<double> {
    const int lo = std::min(a, b), hi = std::max(a, b);
    if (p == hi - lo) return minus(lo, hi);
    if (p == lo - hi) return std::conj(minus(lo, hi));
    if (p == lo + hi) return plus(lo, hi);
    return std::conj(plus(lo, hi));
  };

  ScatteringMatrix w(band, eps, k);
  const double scale = eps * k * k * 2.0 * pi / nt;
  for (int n = -band; n <= band; ++n)
    for (int m = -band; m <= band; ++m) {
      const int a = std::abs(n), b = std::abs(m);
      const double sgn = ((n < 0 && (a & 1)) ? -1.0 : 1.0) * ((m < 0 && (b & 1)) ? -1.0 : 1.0);
      w(n, m) = scale * sgn * fhat(a, b, n - m);
    }
  return w;
}

void check_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(what) + " must be positive");
}

}  // namespace

ScatteringMatrix::ScatteringMatrix(int band, double contrast, double wavenumber)
    : band_(band), contrast_(contrast), k_(wavenumber) {
  if (band < 0) throw DomainError("ScatteringMatrix: negative band");
  w_ = Eigen::MatrixXcd::Zero(2 * band + 1, 2 * band + 1);
}

ScatteringMatrix born_matrix(const StarDomain& d, double eps, double k, int band, const BornQuadrature& q) {
  check_positive(eps, "contrast");
  check_positive(k, "wavenumber");
  if (band < 0 || band > kMaxBesselOrder) throw DomainError("born_matrix: band outside [0, 200]");
  if (q.radial_nodes < 1 || q.angular_nodes < 1) throw DomainError("born_matrix: empty quadrature");
  auto coarse = born_once(d, eps, k, band, q.radial_nodes, q.angular_nodes);
  if (!q.refine) return coarse;
  auto fine = born_once(d, eps, k, band, 2 * q.radial_nodes, 2 * q.angular_nodes);
  const double scale = fine.entries().cwiseAbs().maxCoeff();
  const double diff = (fine.entries() - coarse.entries()).cwiseAbs().maxCoeff();
  if (diff > q.refine_tol * scale)
    throw ConvergenceError("born_matrix: refinement changed entries by " + csv::format(diff / scale) +
                           " relative");
  return fine;
}

std::complex<double> sc_born_quadrature(const StarDomain& d, double eps, double k, int n, int m,
                                        const BornQuadrature& q) {
  const int band = std::max(std::abs(n), std::abs(m));
  return born_matrix(d, eps, k, band, q)(n, m);
}

double sc_ball_closed_form(double R, double eps, double k, int n) {
  return 2.0 * pi * eps * k * k * lommel_integral(n, k, R);
}

ScatteringMatrix disk_matrix(double R, double eps, double k, int band) {
  ScatteringMatrix w(band, eps, k);
  for (int n = -band; n <= band; ++n) w(n, n) = sc_ball_closed_form(R, eps, k, n);
  return w;
}

std::complex<double> sc_perturbation_first_order(const StarDomain& d, double eps, double k, int n, int m) {
  const double R = d.base_radius();
  const int top = std::max(std::abs(n), std::abs(m));
  const auto seq = bessel_j_sequence(top, k * R);
  std::complex<double> v =
      2.0 * pi * R * R * k * k * eps * d.delta() * signed_j(seq, n) * signed_j(seq, m) * d.coeff(m - n);
  if (n == m) v += sc_ball_closed_form(R, eps, k, n);
  return v;
}

ScatteringMatrix first_order_matrix(const StarDomain& d, double eps, double k, int band) {
  const double R = d.base_radius();
  const auto seq = bessel_j_sequence(band + 1, k * R);
  ScatteringMatrix w(band, eps, k);
  const double c = 2.0 * pi * R * R * k * k * eps * d.delta();
  for (int n = -band; n <= band; ++n)
    for (int m = -band; m <= band; ++m) {
      w(n, m) = c * signed_j(seq, n) * signed_j(seq, m) * d.coeff(m - n);
      if (n == m) {
        const double jn = signed_j(seq, n);
        w(n, n) += pi * R * R * eps * k * k * (jn * jn - signed_j(seq, n - 1) * signed_j(seq, n + 1));
      }
    }
  return w;
}

std::complex<double> far_field_from_sc(const ScatteringMatrix& w, double theta_d, double theta_x) {
  return far_field_from_sc(w, {{theta_d, theta_x}}).front();
}

std::vector<std::complex<double>> far_field_from_sc(const ScatteringMatrix& w,
                                                    const std::vector<std::pair<double, double>>& angles) {
  const int N = w.band(), S = 2 * N + 1;
  Eigen::VectorXcd u(S), v(S);
  std::vector<std::complex<double>> out;
  out.reserve(angles.size());
  for (const auto& [td, tx] : angles) {
    for (int m = -N; m <= N; ++m) u[m + N] = ipow(m) * std::polar(1.0, -m * td);
    for (int n = -N; n <= N; ++n) v[n + N] = ipow(-n) * std::polar(1.0, n * tx);
    out.push_back(v.transpose() * w.entries() * u);
  }
  return out;
}

Eigen::MatrixXcd far_field_grid(const ScatteringMatrix& w, int n0) {
  if (n0 < 1) throw DomainError("far_field_grid: empty grid");
  const int N = w.band(), S = 2 * N + 1;
  Eigen::MatrixXcd U(n0, S), V(n0, S);
  for (int i = 0; i < n0; ++i) {
    const double t = 2.0 * pi * (i + 1) / n0;
    for (int m = -N; m <= N; ++m) U(i, m + N) = ipow(m) * std::polar(1.0, -m * t);
    for (int n = -N; n <= N; ++n) V(i, n + N) = ipow(-n) * std::polar(1.0, n * t);
  }
  return U * w.entries().transpose() * V.transpose();
}

FarFieldKernel farfield_kernel(double R, double theta, double theta_t, double k, int band) {
  if (band < 0 || band > kMaxBesselOrder) throw DomainError("farfield_kernel: band outside [0, 200]");
  const double z = 2.0 * k * R * std::sin(0.5 * (theta_t - theta));
  const auto seq = bessel_j_sequence(std::max(band, 2), z);
  FarFieldKernel K;
  K.band = band;
  K.p = seq[0] + seq[2];
  K.s.resize(2 * band + 1);
  const double half = 0.5 * (theta_t + theta);
  for (int l = -band; l <= band; ++l) {
    const double sign = (l & 1) ? -1.0 : 1.0;
    K.s[l + band] = sign * std::polar(1.0, l * half) * signed_j(seq, l);
  }
  return K;
}

std::complex<double> far_field_linearized(const StarDomain& d, double eps, double theta, double theta_t,
                                          double k) {
  const double R = d.base_radius();
  const int N = d.harmonic_band();
  const auto K = farfield_kernel(R, theta, theta_t, k, N);
  std::complex<double> inner = 0.0;
  for (int l = -N; l <= N; ++l) inner += d.coeff(l) * std::conj(K.s_at(l));
  return pi * R * R * eps * k * k * K.p + 2.0 * pi * R * R * eps * d.delta() * k * k * inner;
}

void write_matrix_csv(std::ostream& out, const ScatteringMatrix& w) {
  csv::Writer wr(out, {"n", "m", "re", "im"});
  const int N = w.band();
  for (int n = -N; n <= N; ++n)
    for (int m = -N; m <= N; ++m) {
      wr << n << m << w(n, m).real() << w(n, m).imag();
      wr.end_row();
    }
}

ScatteringMatrix read_matrix_csv(std::istream& in, double contrast, double wavenumber) {
  const auto t = csv::read(in);
  const auto cn = t.column("n"), cm = t.column("m"), cr = t.column("re"), ci = t.column("im");
  int band = 0;
  for (const auto& row : t.rows)
    band = std::max<int>(band, std::max(std::abs(csv::parse_int(row[cn])), std::abs(csv::parse_int(row[cm]))));
  ScatteringMatrix w(band, contrast, wavenumber);
  for (const auto& row : t.rows)
    w(static_cast<int>(csv::parse_int(row[cn])), static_cast<int>(csv::parse_int(row[cm]))) = {
        csv::parse_double(row[cr]), csv::parse_double(row[ci])};
  return w;
}

}  // namespace scatrec
