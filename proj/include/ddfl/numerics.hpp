#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

namespace ddfl {

// Consecutive samples of a (possibly vector-valued) signal starting at time
// index start_index.
struct SignalWindow {
  std::vector<Eigen::VectorXd> samples;
  long start_index = 0;

  static SignalWindow from_scalar(const Eigen::VectorXd& v, long start = 0);
  int dim() const { return samples.empty() ? 0 : static_cast<int>(samples[0].size()); }
  int size() const { return static_cast<int>(samples.size()); }
};

// Block-Hankel matrix with depth block rows: block (i, j) = sample(j + i).
// Shape (n*depth) x (len - depth + 1).
Eigen::MatrixXd build_hankel(const SignalWindow& signal, int depth);
Eigen::MatrixXd build_hankel(const Eigen::VectorXd& signal, int depth);

// Number of singular values above tol * sigma_max.
int numeric_rank(const Eigen::MatrixXd& m, double tol = 1e-10);

// Moore-Penrose pseudo-inverse via SVD. Singular values below
// rcond * sigma_max are treated as zero; rcond < 0 selects the default
// eps * max(rows, cols).
Eigen::MatrixXd pinv(const Eigen::MatrixXd& m, double rcond = -1.0);

// Persistency of excitation of order G: the depth-G Hankel matrix has full
// row rank nG. Requires length >= (n+1)G - 1, below which the matrix cannot
// be full row rank for any signal and the call is a usage error.
bool check_pe(const SignalWindow& signal, int order);
bool check_pe(const Eigen::VectorXd& signal, int order);

using DerivFn = std::function<Eigen::VectorXd(const Eigen::VectorXd& x, double u, double t)>;

// Classical RK4 over [t0, t0 + dt] with the input held constant, split into
// substeps equal steps. Throws IntegrationDiverged if the state goes
// non-finite, carrying the time of failure.
Eigen::VectorXd rk4_hold_step(const DerivFn& deriv, const Eigen::VectorXd& state,
                              double u, double dt, int substeps, double t0 = 0.0);

// Least-squares slope of log(y) against log(x); x and y must be positive.
double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

double factorial(int n);

}  // namespace ddfl
