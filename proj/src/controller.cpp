#include "ddfl/controller.hpp"

#include <cmath>
#include <stdexcept>

namespace ddfl {

GainVector design_gain(int rho, const std::vector<std::complex<double>>& poles) {
  if (rho < 1) throw std::invalid_argument("design_gain: rho must be >= 1");
  if (static_cast<int>(poles.size()) != rho)
    throw std::invalid_argument("design_gain: need exactly rho poles");
  for (const auto& p : poles)
    if (!(p.real() < 0.0))
      throw std::invalid_argument("design_gain: poles must have negative real part");
  // expand prod (s - p_i); coeff[j] multiplies s^j, monic
  std::vector<std::complex<double>> coeff(static_cast<size_t>(rho) + 1, 0.0);
  coeff[0] = 1.0;
  int deg = 0;
  for (const auto& p : poles) {
    for (int j = deg + 1; j > 0; --j)
      coeff[static_cast<size_t>(j)] =
          coeff[static_cast<size_t>(j - 1)] - p * coeff[static_cast<size_t>(j)];
    coeff[0] *= -p;
    ++deg;
  }
  GainVector g;
  g.k = Eigen::RowVectorXd(rho);
  for (int i = 0; i < rho; ++i) {
    const auto c = coeff[static_cast<size_t>(i)];
    if (std::abs(c.imag()) > 1e-9 * (1.0 + std::abs(c.real())))
      throw std::invalid_argument("design_gain: poles not closed under conjugation");
    g.k(i) = -c.real();
  }
  return g;
}

double control(const Eigen::VectorXd& xi_hat, double alpha_hat, double beta_hat,
               const GainVector& K) {
  if (beta_hat == 0.0) throw std::invalid_argument("control: beta_hat must be nonzero");
  if (xi_hat.size() != K.k.size())
    throw std::invalid_argument("control: gain and state dimensions differ");
  return (-alpha_hat + K.k.dot(xi_hat)) / beta_hat;
}

double excitation_input(const ExcitationConfig& cfg, long k, Rng& rng) {
  (void)k;
  return cfg.amplitude * rng.normal();
}

}  // namespace ddfl
