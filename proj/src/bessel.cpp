#include "scatrec/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "scatrec/errors.hpp"

namespace scatrec {

namespace {

constexpr double kBig = 1e100;
constexpr double kSmall = 1e-100;

void check_argument(double x) {
  if (!std::isfinite(x)) throw DomainError("bessel: non-finite argument");
}

void check_order(int n) {
  if (std::abs(n) > kMaxBesselOrder)
    throw DomainError("bessel: order " + std::to_string(n) + " outside supported band");
}

// J_0..J_nmax at x > 0 by Miller's algorithm. The recurrence is started far
// enough above max(nmax, x) that the seed error has decayed below double
// precision by the time it reaches the orders we keep.
std::vector<double> miller(int nmax, double x) {
  const double top = std::max(static_cast<double>(nmax), x);
  int start = static_cast<int>(top + std::sqrt(400.0 * std::max(top, 1.0))) + 20;
  start += start & 1;

  std::vector<double> out(nmax + 1, 0.0);
  double jp1 = 0.0, j = 1.0;
  double sumsq = 0.0, sumeven = 0.0;
  const double two_over_x = 2.0 / x;
  for (int k = start; k >= 1; --k) {
    // j = J_k, jp1 = J_{k+1}  ->  J_{k-1}
    const double jm1 = k * two_over_x * j - jp1;
    jp1 = j;
    j = jm1;
    const int order = k - 1;
    if (order <= nmax) out[order] = j;
    if (order > 0) {
      sumsq += 2.0 * j * j;
      if ((order & 1) == 0) sumeven += 2.0 * j;
    }
    if (std::abs(j) > kBig) {
      j *= kSmall;
      jp1 *= kSmall;
      sumsq *= kSmall * kSmall;
      sumeven *= kSmall;
      for (int i = order; i <= nmax; ++i) out[i] *= kSmall;
    }
  }
  // J_0^2 + 2 sum J_k^2 = 1 fixes the scale; J_0 + 2 sum J_2k = 1 fixes the sign.
  sumsq += j * j;
  sumeven += j;
  double scale = 1.0 / std::sqrt(sumsq);
  if (sumeven < 0.0) scale = -scale;
  for (double& v : out) v *= scale;
  return out;
}

}  // namespace

std::vector<double> bessel_j_sequence(int nmax, double x) {
  check_argument(x);
  if (nmax < 0) throw DomainError("bessel_j_sequence: negative order");
  check_order(nmax);
  if (x == 0.0) {
    std::vector<double> out(nmax + 1, 0.0);
    out[0] = 1.0;
    return out;
  }
  const bool flip = x < 0.0;
  auto out = miller(nmax, std::abs(x));
  if (flip)
    for (int n = 1; n <= nmax; n += 2) out[n] = -out[n];
  return out;
}

double bessel_j(int n, double x) {
  check_argument(x);
  check_order(n);
  const int a = std::abs(n);
  const double v = bessel_j_sequence(a, x)[a];
  return (n < 0 && (a & 1)) ? -v : v;
}

double bessel_j_prime(int n, double x) {
  check_argument(x);
  check_order(n);
  const int a = std::abs(n) + 1;
  check_order(a);
  const auto seq = bessel_j_sequence(a, x);
  auto at = [&](int m) {
    const int b = std::abs(m);
    return (m < 0 && (b & 1)) ? -seq[b] : seq[b];
  };
  return 0.5 * (at(n - 1) - at(n + 1));
}

ExtremumLocation bessel_extremum(int l, int m0) {
  if (l < 0 || l > 100) throw DomainError("bessel_extremum: order outside [0, 100]");
  if (m0 < 1 || m0 > 500) throw DomainError("bessel_extremum: index outside [1, 500]");

  const double pi = std::numbers::pi;
  auto f = [l](double x) { return bessel_j_prime(l, x); };

  // The asymptote (4 m0 + 2 l + 1) pi / 4 tracks the (m0 + 1)-th stationary
  // point of J_l (x = 0 counted as the first one for l = 0), but for small m0
  // and larger l it drifts by more than half a spacing. Counting sign changes
  // from the origin keeps the index exact; stationary points are at least
  // pi apart, so a pi/4 scan cannot step over two of them.
  const int target = m0 + (l >= 1 ? 1 : 0);
  const double step = pi / 4;
  const double limit = (4.0 * m0 + 2.0 * l + 1.0) * pi / 4.0 + 4.0 * pi + 2.0 * l;
  double lo = 1e-3, flo = f(lo), hi = lo, fhi = flo;
  int seen = 0;
  while (seen < target) {
    hi = lo + step;
    if (hi > limit)
      throw ConvergenceError("bessel_extremum: stationary point of J_" + std::to_string(l) +
                             " not bracketed");
    fhi = f(hi);
    if (flo * fhi <= 0.0 && ++seen == target) break;
    lo = hi;
    flo = fhi;
  }
  while (hi - lo > 1e-6) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) {
      lo = hi = mid;
      break;
    }
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }

  // Newton on J_l' using the Bessel equation for J_l''.
  double b = 0.5 * (lo + hi);
  const double lo_guard = lo - 1e-6, hi_guard = hi + 1e-6;
  for (int it = 0; it < 50; ++it) {
    const double d1 = f(b);
    if (std::abs(d1) <= 1e-11) break;
    const double jl = bessel_j(l, b);
    const double d2 = -d1 / b - (1.0 - double(l) * l / (b * b)) * jl;
    if (d2 == 0.0) break;
    const double next = b - d1 / d2;
    if (next < lo_guard || next > hi_guard) break;
    if (std::abs(next - b) < 1e-15 * b) {
      b = next;
      break;
    }
    b = next;
  }
  if (std::abs(f(b)) > 1e-11)
    throw ConvergenceError("bessel_extremum: Newton polish did not reach tolerance");
  return {l, m0, b};
}

double lommel_integral(int l, double k, double R) {
  if (!(k > 0.0) || !(R > 0.0)) throw DomainError("lommel_integral: k and R must be positive");
  const double x = k * R;
  if (x > 1e4) throw DomainError("lommel_integral: kR above 1e4");
  check_order(std::abs(l) + 1);
  const int a = std::abs(l);
  const auto seq = bessel_j_sequence(a + 1, x);
  // J_l^2 and J_{l-1}J_{l+1} are both even in l, so |l| suffices.
  const double jm1 = a == 0 ? -seq[1] : seq[a - 1];
  return 0.5 * R * R * (seq[a] * seq[a] - jm1 * seq[a + 1]);
}

std::complex<double> graf_partial_sum(double x, double y, double theta, int l, int band) {
  check_argument(x);
  check_argument(y);
  check_argument(theta);
  if (band < 0) throw DomainError("graf_partial_sum: negative band");
  const int top = band + std::abs(l);
  check_order(top);
  const auto jx = bessel_j_sequence(band, x);
  const auto jy = bessel_j_sequence(top, y);
  auto signed_j = [](const std::vector<double>& s, int m) {
    const int a = std::abs(m);
    return (m < 0 && (a & 1)) ? -s[a] : s[a];
  };
  std::complex<double> sum = 0.0;
  for (int n = -band; n <= band; ++n)
    sum += signed_j(jx, n) * signed_j(jy, n - l) * std::polar(1.0, n * theta);
  return sum;
}

std::complex<double> graf_closed_form(double x, double y, double theta, int l) {
  check_argument(x);
  check_argument(y);
  check_argument(theta);
  check_order(l);
  const std::complex<double> w = x - y * std::polar(1.0, -theta);
  const double rho = std::abs(w);
  if (rho == 0.0) return l == 0 ? 1.0 : 0.0;
  const std::complex<double> unit = w / rho;
  return std::polar(1.0, l * theta) * std::pow(unit, l) * bessel_j(l, rho);
}

}  // namespace scatrec
