#include "ddfl/numerics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "ddfl/errors.hpp"

namespace ddfl {

SignalWindow SignalWindow::from_scalar(const Eigen::VectorXd& v, long start) {
  SignalWindow w;
  w.start_index = start;
  w.samples.reserve(static_cast<size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    Eigen::VectorXd s(1);
    s(0) = v(i);
    w.samples.push_back(std::move(s));
  }
  return w;
}

Eigen::MatrixXd build_hankel(const SignalWindow& signal, int depth) {
  const int len = signal.size();
  if (depth < 1) throw std::invalid_argument("build_hankel: depth must be >= 1");
  if (len < depth) throw std::invalid_argument("build_hankel: signal shorter than depth");
  const int n = signal.dim();
  const int cols = len - depth + 1;
  Eigen::MatrixXd h(n * depth, cols);
  for (int i = 0; i < depth; ++i)
    for (int j = 0; j < cols; ++j)
      h.block(i * n, j, n, 1) = signal.samples[static_cast<size_t>(j + i)];
  return h;
}

Eigen::MatrixXd build_hankel(const Eigen::VectorXd& signal, int depth) {
  return build_hankel(SignalWindow::from_scalar(signal), depth);
}

int numeric_rank(const Eigen::MatrixXd& m, double tol) {
  if (m.size() == 0) throw std::invalid_argument("numeric_rank: empty matrix");
  if (!(tol > 0.0)) throw std::invalid_argument("numeric_rank: tol must be positive");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  const double cut = tol * sv(0);
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++r;
  return r;
}

Eigen::MatrixXd pinv(const Eigen::MatrixXd& m, double rcond) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (rcond < 0.0)
    rcond = std::numeric_limits<double>::epsilon() *
            static_cast<double>(std::max(m.rows(), m.cols()));
  const double cut = sv.size() > 0 ? rcond * sv(0) : 0.0;
  Eigen::VectorXd inv_sv(sv.size());
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    inv_sv(i) = sv(i) > cut ? 1.0 / sv(i) : 0.0;
  return svd.matrixV() * inv_sv.asDiagonal() * svd.matrixU().transpose();
}

bool check_pe(const SignalWindow& signal, int order) {
  if (order < 1) throw std::invalid_argument("check_pe: order must be >= 1");
  const int n = signal.dim();
  const int len = signal.size();
  if (len < (n + 1) * order - 1)
    throw std::invalid_argument("check_pe: need at least (n+1)G-1 = " +
                                std::to_string((n + 1) * order - 1) + " samples, got " +
                                std::to_string(len));
  return numeric_rank(build_hankel(signal, order)) == n * order;
}

bool check_pe(const Eigen::VectorXd& signal, int order) {
  return check_pe(SignalWindow::from_scalar(signal), order);
}

Eigen::VectorXd rk4_hold_step(const DerivFn& deriv, const Eigen::VectorXd& state,
                              double u, double dt, int substeps, double t0) {
  if (!(dt > 0.0)) throw std::invalid_argument("rk4_hold_step: dt must be positive");
  if (substeps < 1) throw std::invalid_argument("rk4_hold_step: substeps must be >= 1");
  const double h = dt / substeps;
  Eigen::VectorXd x = state;
  for (int s = 0; s < substeps; ++s) {
    const double t = t0 + s * h;
    const Eigen::VectorXd k1 = deriv(x, u, t);
    const Eigen::VectorXd k2 = deriv(x + 0.5 * h * k1, u, t + 0.5 * h);
    const Eigen::VectorXd k3 = deriv(x + 0.5 * h * k2, u, t + 0.5 * h);
    const Eigen::VectorXd k4 = deriv(x + h * k3, u, t + h);
    x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!x.allFinite()) throw IntegrationDiverged(t + h);
  }
  return x;
}

double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit_loglog_slope: need >= 2 paired points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0))
      throw std::invalid_argument("fit_loglog_slope: values must be positive");
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double factorial(int n) {
  if (n < 0) throw std::invalid_argument("factorial: negative argument");
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace ddfl
