#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "ddfl/rng.hpp"

namespace ddfl {

// State-feedback gains for the integrator chain: closed-loop characteristic
// polynomial s^rho - k_rho s^(rho-1) - ... - k_1.
struct GainVector {
  Eigen::RowVectorXd k;
};

// Pole placement on the chain pair (A1, B1) by coefficient matching. Poles
// must be conjugate-closed with negative real parts.
GainVector design_gain(int rho, const std::vector<std::complex<double>>& poles);

// u = (-alpha_hat + K xi_hat) / beta_hat
double control(const Eigen::VectorXd& xi_hat, double alpha_hat, double beta_hat,
               const GainVector& K);

struct ExcitationConfig {
  int length_l = 8;
  double amplitude = 1.0;
  std::uint64_t seed = 0;
};

// Scaled standard-normal draw for the initial data-collection batch. The
// timeline (k within the excitation phase) is enforced by the sim loop;
// amplitude 0 flows through and fails the downstream PE gate.
double excitation_input(const ExcitationConfig& cfg, long k, Rng& rng);

}  // namespace ddfl
