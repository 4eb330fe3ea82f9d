#pragma once

#include <Eigen/Dense>
#include <deque>
#include <optional>
#include <utility>

#include "ddfl/plant.hpp"

namespace ddfl {

struct BetaEstimate {
  double beta_hat = 0.0;
  Eigen::MatrixXd A_cal;  // full Z1 * pinv(Z0), kept for diagnostics
  int rank_z0 = 0;
};

struct ExtendedStateEstimate {
  Eigen::VectorXd xi_hat;  // dimension rho
  double alpha_hat = 0.0;  // the (rho+1)-th extended component
  long k = 0;
};

// Z0 = [H_{rho+1}(y); H_{rho+1}(u)], Z1 the same one step later. y and u must
// each hold exactly l+rho+1 consecutive samples; both matrices are
// (2rho+2) x l.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> build_z_matrices(const Eigen::VectorXd& y,
                                                             const Eigen::VectorXd& u,
                                                             int rho, int l);

// beta_hat = A(rho+1, 2rho+2) * rho! / T^rho (1-based) with A = Z1 pinv(Z0).
// Throws PeViolation unless Z0 has full row rank 2rho+2. The gate tolerance
// is looser than the numeric_rank default because sigma_min/sigma_max of a
// valid Z0 shrinks like T^(rho+2); genuine PE failures are exactly deficient
// and still caught.
BetaEstimate estimate_beta(const Eigen::MatrixXd& z0, const Eigen::MatrixXd& z1, int rho,
                           double T, double rank_tol = 1e-13);

// O stacks Cbar * Abar^-j for j = 0..m-1; M is m x m with zero first row and
// column and entry (i,j) = Cbar Abar^-(i-j+1) Bbar for 1 <= j <= i.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> build_reconstruction_matrices(
    const ExtendedDiscreteModel& model, int m);

// Rolling window of the last m outputs and m-1 inputs plus the frozen beta
// estimate. Value type: copy freely, one instance per run.
class EstimatorState {
 public:
  EstimatorState(ExtendedDiscreteModel model, BetaEstimate beta, int m);

  // Record y(k) and u(k-1); the oldest pair falls off a full window.
  void push_sample(double y, double u_prev);

  // xi_hat(k) = pinv(O) (Y(k) + beta_hat M U(k-1)); nullopt until the window
  // holds m outputs (distinct from numerical failure, which throws).
  std::optional<ExtendedStateEstimate> reconstruct(long k) const;

  bool ready() const { return static_cast<int>(win_y_.size()) == m_; }
  const BetaEstimate& beta() const { return beta_; }
  const Eigen::MatrixXd& O_mat() const { return O_; }
  const Eigen::MatrixXd& M_mat() const { return M_; }
  int m() const { return m_; }

 private:
  ExtendedDiscreteModel model_;
  BetaEstimate beta_;
  int m_;
  Eigen::MatrixXd O_;
  Eigen::MatrixXd M_;
  Eigen::MatrixXd O_pinv_;
  std::deque<double> win_y_;  // newest first: y(k), y(k-1), ...
  std::deque<double> win_u_;  // newest first: u(k-1), u(k-2), ...
};

}  // namespace ddfl
