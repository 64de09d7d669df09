#include "scatrec/linalg.hpp"

namespace scatrec {

Eigen::VectorXd tsvd_solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, double rel_cutoff) {
  if (a.cols() == 0) return Eigen::VectorXd();
  Eigen::BDCSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  const double cut = s.size() ? rel_cutoff * s[0] : 0.0;
  Eigen::VectorXd ub = svd.matrixU().transpose() * b;
  for (Eigen::Index i = 0; i < s.size(); ++i) ub[i] = (s[i] > cut && s[i] > 0.0) ? ub[i] / s[i] : 0.0;
  return svd.matrixV() * ub;
}

Eigen::VectorXd singular_values(const Eigen::MatrixXd& a) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(a.cols());
  if (a.rows() == 0 || a.cols() == 0) return out;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(a);
  out.head(svd.singularValues().size()) = svd.singularValues();
  return out;
}

}  // namespace scatrec
