// Copyright 2026 The DGVSE Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Dense full-covariance closed forms. These evaluate the textbook matrix
// expressions literally and serve as references for the spherical kernels
// in divergences.hpp; they are meant for small d (<= 8).

#ifndef DGVSE_ORACLES_HPP
#define DGVSE_ORACLES_HPP

#include <cmath>

#include <Eigen/Dense>

#include "dgvse/error.hpp"

namespace dgvse::oracle {

namespace detail {

inline void check_pair(const Eigen::VectorXd& mean, const Eigen::MatrixXd& cov) {
  if (cov.rows() != mean.size() || cov.cols() != mean.size()) {
    throw Error(ErrorKind::DimensionMismatch, "covariance shape");
  }
}

inline Eigen::LLT<Eigen::MatrixXd> cholesky(const Eigen::MatrixXd& cov) {
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success || !cov.isApprox(cov.transpose())) {
    throw Error(ErrorKind::NotPositiveDefinite, "covariance");
  }
  return llt;
}

// Principal square root of a symmetric positive semi-definite matrix.
inline Eigen::MatrixXd sqrtm(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
}

}  // namespace detail

/// D_KL[N(mean0, cov0) || N(mean1, cov1)]
///   = 1/2 [ ln |S1|/|S0| - d + (m0 - m1)^T S1^{-1} (m0 - m1) + tr(S1^{-1} S0) ]
inline double kl_full(const Eigen::VectorXd& mean0, const Eigen::MatrixXd& cov0,
                      const Eigen::VectorXd& mean1,
                      const Eigen::MatrixXd& cov1) {
  detail::check_pair(mean0, cov0);
  detail::check_pair(mean1, cov1);
  if (mean0.size() != mean1.size()) {
    throw Error(ErrorKind::DimensionMismatch, "oracle_kl_full");
  }
  const auto llt0 = detail::cholesky(cov0);
  const auto llt1 = detail::cholesky(cov1);
  const double d = static_cast<double>(mean0.size());
  const Eigen::MatrixXd inv1 = cov1.inverse();
  const Eigen::VectorXd diff = mean0 - mean1;
  const double logdet0 = 2.0 * llt0.matrixL().toDenseMatrix().diagonal().array().log().sum();
  const double logdet1 = 2.0 * llt1.matrixL().toDenseMatrix().diagonal().array().log().sum();
  return 0.5 * (logdet1 - logdet0 - d + diff.dot(inv1 * diff) +
                (inv1 * cov0).trace());
}

/// Jeffreys divergence in the closed form obtained by summing both KLs:
///   1/2 (m0 - m1)^T (S0^{-1} + S1^{-1}) (m0 - m1)
///     + 1/2 tr(S1^{-1} S0 + S0^{-1} S1 - 2 I).
inline double jeffreys_full(const Eigen::VectorXd& mean0,
                            const Eigen::MatrixXd& cov0,
                            const Eigen::VectorXd& mean1,
                            const Eigen::MatrixXd& cov1) {
  detail::check_pair(mean0, cov0);
  detail::check_pair(mean1, cov1);
  detail::cholesky(cov0);
  detail::cholesky(cov1);
  const auto n = mean0.size();
  const Eigen::MatrixXd inv0 = cov0.inverse();
  const Eigen::MatrixXd inv1 = cov1.inverse();
  const Eigen::VectorXd diff = mean0 - mean1;
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(n, n);
  return 0.5 * diff.dot((inv0 + inv1) * diff) +
         0.5 * (inv1 * cov0 + inv0 * cov1 - 2.0 * eye).trace();
}

/// Squared 2-Wasserstein distance
///   |m0 - m1|^2 + tr(S0 + S1 - 2 (S0^{1/2} S1 S0^{1/2})^{1/2}).
inline double w2_full(const Eigen::VectorXd& mean0, const Eigen::MatrixXd& cov0,
                      const Eigen::VectorXd& mean1,
                      const Eigen::MatrixXd& cov1) {
  detail::check_pair(mean0, cov0);
  detail::check_pair(mean1, cov1);
  detail::cholesky(cov0);
  detail::cholesky(cov1);
  const Eigen::MatrixXd root0 = detail::sqrtm(cov0);
  const Eigen::MatrixXd cross = detail::sqrtm(root0 * cov1 * root0);
  return (mean0 - mean1).squaredNorm() + (cov0 + cov1 - 2.0 * cross).trace();
}

/// sqrt((m0 - m1)^T S^{-1} (m0 - m1)) for a shared covariance S.
inline double mahalanobis_full(const Eigen::VectorXd& mean0,
                               const Eigen::VectorXd& mean1,
                               const Eigen::MatrixXd& cov) {
  detail::check_pair(mean0, cov);
  detail::check_pair(mean1, cov);
  const auto llt = detail::cholesky(cov);
  const Eigen::VectorXd diff = mean0 - mean1;
  return std::sqrt(diff.dot(llt.solve(diff)));
}

}  // namespace dgvse::oracle

#endif  // DGVSE_ORACLES_HPP
