#include "scatrec/embedding.hpp"

namespace scatrec {

Eigen::Vector2d iota0(std::complex<double> z) { return {z.real(), z.imag()}; }

Eigen::Matrix2d iota(std::complex<double> z) {
  Eigen::Matrix2d m;
  m << z.real(), z.imag(), -z.imag(), z.real();
  return m;
}

Eigen::MatrixXd realify(const Eigen::MatrixXcd& a) {
  Eigen::MatrixXd r(2 * a.rows(), 2 * a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) r.block<2, 2>(2 * i, 2 * j) = iota(std::conj(a(i, j)));
  return r;
}

Eigen::VectorXd realify(const Eigen::VectorXcd& v) {
  Eigen::VectorXd r(2 * v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) r.segment<2>(2 * i) = iota0(v[i]);
  return r;
}

Eigen::MatrixXd constraint_basis(int N) {
  Eigen::MatrixXd E = Eigen::MatrixXd::Zero(4 * N, 2 * N);
  for (int l = -N; l <= N; ++l) {
    if (l == 0) continue;
    const int row = 2 * mode_slot(l, N), col = 2 * (std::abs(l) - 1);
    E(row, col) = 1.0;
    E(row + 1, col + 1) = l > 0 ? 1.0 : -1.0;
  }
  return E;
}

Eigen::MatrixXd constraint_matrix(int N) {
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(2 * N, 4 * N);
  for (int l = 1; l <= N; ++l) {
    const int p = 2 * mode_slot(l, N), q = 2 * mode_slot(-l, N);
    C(2 * (l - 1), p) = 1.0;
    C(2 * (l - 1), q) = -1.0;
    C(2 * (l - 1) + 1, p + 1) = 1.0;
    C(2 * (l - 1) + 1, q + 1) = 1.0;
  }
  return C;
}

std::vector<std::complex<double>> coeffs_from_constrained(const Eigen::VectorXd& y) {
  std::vector<std::complex<double>> v(y.size() / 2);
  for (std::size_t m = 0; m < v.size(); ++m) v[m] = {y[2 * m], y[2 * m + 1]};
  return v;
}

Eigen::VectorXd constrained_from_coeffs(const std::vector<std::complex<double>>& v) {
  Eigen::VectorXd y(2 * v.size());
  for (std::size_t m = 0; m < v.size(); ++m) {
    y[2 * m] = v[m].real();
    y[2 * m + 1] = v[m].imag();
  }
  return y;
}

}  // namespace scatrec
