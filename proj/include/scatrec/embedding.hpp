#pragma once

// Real embeddings of complex coefficient vectors indexed by
// l = -N..-1, 1..N (l = 0 is never an unknown).
//
// Real layout (4N): for l in that order, (Re v_l, Im v_l).
// Constrained layout (2N): (a_1, b_1, ..., a_N, b_N) with
// v_l = a_|l| + i sgn(l) b_|l|, i.e. v_{-l} = conj(v_l).

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace scatrec {

// Position of l among -N..-1, 1..N.
inline int mode_slot(int l, int N) { return l < 0 ? l + N : N + l - 1; }

Eigen::Vector2d iota0(std::complex<double> z);  // (Re z, Im z)

// [[Re z, Im z], [-Im z, Re z]]; its first row applied to iota0(w) gives
// Re(conj(z) w).
Eigen::Matrix2d iota(std::complex<double> z);

// Real 2M x 2K matrix acting on stacked iota0 vectors exactly as the complex
// M x K matrix acts on complex vectors. Block (i, j) is iota(conj(a_ij)).
Eigen::MatrixXd realify(const Eigen::MatrixXcd& a);

// Stacked iota0 of a complex vector.
Eigen::VectorXd realify(const Eigen::VectorXcd& v);

// Block E (4N x 2N): E[(l, Re), (|l|, a)] = 1, E[(l, Im), (|l|, b)] = sgn(l).
Eigen::MatrixXd constraint_basis(int N);

// C (2N x 4N): Re v_l - Re v_{-l} = 0 and Im v_l + Im v_{-l} = 0, l = 1..N.
Eigen::MatrixXd constraint_matrix(int N);

// (a, b) pairs -> v_1..v_N.
std::vector<std::complex<double>> coeffs_from_constrained(const Eigen::VectorXd& y);

// v_1..v_N -> (a, b) pairs.
Eigen::VectorXd constrained_from_coeffs(const std::vector<std::complex<double>>& v);

}  // namespace scatrec
