#pragma once

#include <Eigen/Dense>
#include <functional>

namespace ddfl {

// Normal-form SISO plant
//   eta_dot   = f0(eta, xi)
//   xi_i_dot  = xi_{i+1},                     i < rho
//   xi_rho_dot= alpha(xi, eta) + (beta0 + delta_beta(xi, eta)) u
//   y         = xi_1
// supplied as callables; an empty delta_beta means 0.
struct PlantModel {
  int rho = 1;
  int eta_dim = 0;
  std::function<Eigen::VectorXd(const Eigen::VectorXd& eta, const Eigen::VectorXd& xi)> f0;
  std::function<double(const Eigen::VectorXd& xi, const Eigen::VectorXd& eta)> alpha;
  double beta0 = 1.0;
  std::function<double(const Eigen::VectorXd& xi, const Eigen::VectorXd& eta)> delta_beta;
  int coupling = 0;  // the demo plant's delta flag
};

struct FullState {
  Eigen::VectorXd eta;
  Eigen::VectorXd xi;
  double t = 0.0;
};

// Sampled model of the extended chain (xi_1 .. xi_rho, w):
//   Abar(i,j) = T^(j-i)/(j-i)! for j >= i, Bbar_i = T^(rho-i+1)/(rho-i+1)!
// (1-based, last entry 0), Cbar = [1 0 ... 0].
struct ExtendedDiscreteModel {
  Eigen::MatrixXd Abar;
  Eigen::VectorXd Bbar;
  Eigen::RowVectorXd Cbar;
  double T = 0.0;
  int rho = 0;
};

// Stacked (eta_dot, xi_dot). Throws ModelEvaluationError on non-finite output.
Eigen::VectorXd derivative(const PlantModel& p, const FullState& s, double u);

// The simulation-study system: Van der Pol zero dynamics driven by xi_1,
// alpha = -sin(xi_1) + 2 xi_2 + delta * eta_1^2, beta = 2 + gain * sin(xi_1).
PlantModel make_vdp_demo(int delta, double perturbation_gain);

ExtendedDiscreteModel build_extended_model(int rho, double T);

// Oracle accessors for error metrics only; the controller never sees these.
double true_alpha(const PlantModel& p, const FullState& s);
double true_beta(const PlantModel& p, const FullState& s);

// Taylor-chain transition over a signed step t (t = -T gives the inverse of
// Abar(T); powers Abar^-j are extended_abar(rho, -j*T)).
Eigen::MatrixXd extended_abar(int rho, double t);
Eigen::VectorXd extended_bbar(int rho, double t);

}  // namespace ddfl
