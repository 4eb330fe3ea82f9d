#include "ddfl/estimator.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ddfl/errors.hpp"
#include "ddfl/numerics.hpp"

namespace ddfl {

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> build_z_matrices(const Eigen::VectorXd& y,
                                                             const Eigen::VectorXd& u,
                                                             int rho, int l) {
  if (rho < 1) throw std::invalid_argument("build_z_matrices: rho must be >= 1");
  if (l < 2 * rho + 2)
    throw std::invalid_argument("build_z_matrices: l must be >= 2rho+2 = " +
                                std::to_string(2 * rho + 2));
  const Eigen::Index need = l + rho + 1;
  if (y.size() != need || u.size() != need)
    throw std::invalid_argument("build_z_matrices: y and u must each hold l+rho+1 = " +
                                std::to_string(need) + " samples");
  const int depth = rho + 1;
  auto stack = [&](Eigen::Index from) {
    Eigen::MatrixXd z(2 * depth, l);
    z.topRows(depth) = build_hankel(Eigen::VectorXd(y.segment(from, l + rho)), depth);
    z.bottomRows(depth) = build_hankel(Eigen::VectorXd(u.segment(from, l + rho)), depth);
    return z;
  };
  return {stack(0), stack(1)};
}

BetaEstimate estimate_beta(const Eigen::MatrixXd& z0, const Eigen::MatrixXd& z1, int rho,
                           double T, double rank_tol) {
  if (rho < 1) throw std::invalid_argument("estimate_beta: rho must be >= 1");
  if (!(T > 0.0)) throw std::invalid_argument("estimate_beta: T must be positive");
  const int rows = 2 * rho + 2;
  if (z0.rows() != rows || z1.rows() != rows || z0.cols() != z1.cols())
    throw std::invalid_argument("estimate_beta: Z0/Z1 must both be (2rho+2) x l");
  const int rank = numeric_rank(z0, rank_tol);
  if (rank != rows) throw PeViolation(rank, rows);
  BetaEstimate est;
  est.rank_z0 = rank;
  est.A_cal = z1 * pinv(z0);
  // 1-based (rho+1, 2rho+2): last row of the output block, last column of the
  // input block.
  est.beta_hat = est.A_cal(rho, 2 * rho + 1) * factorial(rho) / std::pow(T, rho);
  if (!std::isfinite(est.beta_hat) || est.beta_hat == 0.0)
    throw ModelEvaluationError("estimate_beta: degenerate beta estimate");
  return est;
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> build_reconstruction_matrices(
    const ExtendedDiscreteModel& model, int m) {
  const int n = model.rho + 1;
  if (m < n)
    throw std::invalid_argument("build_reconstruction_matrices: m must be >= rho+1");
  Eigen::MatrixXd O(m, n);
  for (int j = 0; j < m; ++j) O.row(j) = extended_abar(model.rho, -j * model.T).row(0);
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(m, m);
  for (int r = 1; r < m; ++r)
    for (int c = 1; c <= r; ++c)
      M(r, c) = extended_abar(model.rho, -(r - c + 1) * model.T).row(0) * model.Bbar;
  return {O, M};
}

EstimatorState::EstimatorState(ExtendedDiscreteModel model, BetaEstimate beta, int m)
    : model_(std::move(model)), beta_(std::move(beta)), m_(m) {
  if (!std::isfinite(beta_.beta_hat) || beta_.beta_hat == 0.0)
    throw std::invalid_argument("EstimatorState: beta_hat must be finite and nonzero");
  std::tie(O_, M_) = build_reconstruction_matrices(model_, m_);
  O_pinv_ = pinv(O_);
}

void EstimatorState::push_sample(double y, double u_prev) {
  win_y_.push_front(y);
  if (static_cast<int>(win_y_.size()) > m_) win_y_.pop_back();
  win_u_.push_front(u_prev);
  if (static_cast<int>(win_u_.size()) > m_ - 1) win_u_.pop_back();
}

std::optional<ExtendedStateEstimate> EstimatorState::reconstruct(long k) const {
  if (!ready()) return std::nullopt;
  Eigen::VectorXd Y(m_), U(m_);
  for (int i = 0; i < m_; ++i) Y(i) = win_y_[static_cast<size_t>(i)];
  U(0) = 0.0;
  for (int i = 1; i < m_; ++i) U(i) = win_u_[static_cast<size_t>(i - 1)];
  const Eigen::VectorXd xbar = O_pinv_ * (Y + beta_.beta_hat * (M_ * U));
  if (!xbar.allFinite())
    throw ModelEvaluationError("reconstruct: non-finite state estimate at k = " +
                               std::to_string(k));
  ExtendedStateEstimate est;
  est.xi_hat = xbar.head(model_.rho);
  est.alpha_hat = xbar(model_.rho);
  est.k = k;
  return est;
}

}  // namespace ddfl
