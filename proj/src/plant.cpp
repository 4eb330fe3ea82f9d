#include "ddfl/plant.hpp"

#include <cmath>
#include <stdexcept>

#include "ddfl/errors.hpp"
#include "ddfl/numerics.hpp"

namespace ddfl {

Eigen::VectorXd derivative(const PlantModel& p, const FullState& s, double u) {
  if (s.eta.size() != p.eta_dim || s.xi.size() != p.rho)
    throw std::invalid_argument("derivative: state dimensions do not match the plant");
  Eigen::VectorXd d(p.eta_dim + p.rho);
  d.head(p.eta_dim) = p.f0 ? p.f0(s.eta, s.xi) : Eigen::VectorXd::Zero(p.eta_dim);
  for (int i = 0; i < p.rho - 1; ++i) d(p.eta_dim + i) = s.xi(i + 1);
  const double db = p.delta_beta ? p.delta_beta(s.xi, s.eta) : 0.0;
  d(p.eta_dim + p.rho - 1) = p.alpha(s.xi, s.eta) + (p.beta0 + db) * u;
  if (!d.allFinite())
    throw ModelEvaluationError("derivative: model returned a non-finite value at t = " +
                               std::to_string(s.t));
  return d;
}

PlantModel make_vdp_demo(int delta, double perturbation_gain) {
  if (delta != 0 && delta != 1)
    throw std::invalid_argument("make_vdp_demo: delta must be 0 or 1");
  PlantModel p;
  p.rho = 2;
  p.eta_dim = 2;
  p.beta0 = 2.0;
  p.coupling = delta;
  p.f0 = [](const Eigen::VectorXd& eta, const Eigen::VectorXd& xi) {
    Eigen::VectorXd d(2);
    d(0) = eta(1);
    d(1) = -eta(0) + 0.5 * (1.0 - eta(0) * eta(0)) * eta(1) + xi(0);
    return d;
  };
  p.alpha = [delta](const Eigen::VectorXd& xi, const Eigen::VectorXd& eta) {
    return -std::sin(xi(0)) + 2.0 * xi(1) + static_cast<double>(delta) * eta(0) * eta(0);
  };
  if (perturbation_gain != 0.0)
    p.delta_beta = [perturbation_gain](const Eigen::VectorXd& xi, const Eigen::VectorXd&) {
      return perturbation_gain * std::sin(xi(0));
    };
  return p;
}

Eigen::MatrixXd extended_abar(int rho, double t) {
  const int n = rho + 1;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) a(i, j) = std::pow(t, j - i) / factorial(j - i);
  return a;
}

Eigen::VectorXd extended_bbar(int rho, double t) {
  Eigen::VectorXd b = Eigen::VectorXd::Zero(rho + 1);
  for (int i = 0; i < rho; ++i) b(i) = std::pow(t, rho - i) / factorial(rho - i);
  return b;
}

ExtendedDiscreteModel build_extended_model(int rho, double T) {
  if (rho < 1) throw std::invalid_argument("build_extended_model: rho must be >= 1");
  if (!(T > 0.0)) throw std::invalid_argument("build_extended_model: T must be positive");
  ExtendedDiscreteModel m;
  m.rho = rho;
  m.T = T;
  m.Abar = extended_abar(rho, T);
  m.Bbar = extended_bbar(rho, T);
  m.Cbar = Eigen::RowVectorXd::Zero(rho + 1);
  m.Cbar(0) = 1.0;
  return m;
}

double true_alpha(const PlantModel& p, const FullState& s) { return p.alpha(s.xi, s.eta); }

double true_beta(const PlantModel& p, const FullState& s) {
  return p.beta0 + (p.delta_beta ? p.delta_beta(s.xi, s.eta) : 0.0);
}

}  // namespace ddfl
