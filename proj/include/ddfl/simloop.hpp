#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "ddfl/controller.hpp"
#include "ddfl/estimator.hpp"
#include "ddfl/plant.hpp"

namespace ddfl {

inline constexpr std::uint64_t kDefaultSeed = 31;

// Everything a scenario needs; presets fill these and JSON/flags override.
struct ExperimentConfig {
  std::string scenario = "custom";
  int delta = 1;
  double perturbation_gain = 0.0;
  double T = 0.02;
  double horizon = 15.0;  // seconds
  Eigen::VectorXd eta0{{1.0, 0.0}};
  Eigen::VectorXd xi0{{2.5, 0.0}};
  int l = 8;
  int m = 3;
  Eigen::RowVectorXd K{{-20.0, -10.0}};            // direct gains; or
  std::vector<std::complex<double>> poles;         // pole placement when K empty
  double excitation_amplitude = 1.0;
  std::uint64_t seed = kDefaultSeed;
  int substeps = 0;  // per control interval; 0 selects ceil(T / 1e-4)
  double noise_amplitude = 0.0;
  std::string noise_kind = "uniform";  // or "gaussian"
  bool zero_dynamics = false;          // xi clamped at 0, u = 0, no estimator
  bool sweep_fresh_seeds = false;      // per-T seeds = seed + grid index
  double transient_cut = 0.4;          // fraction dropped before eta bounds
  double tail_window = 0.2;            // trailing fraction for xi_tail_norm
  std::vector<double> T_grid;          // only consumed by sweeps
};

struct IoRecord {
  long k = 0;
  double t = 0.0;
  std::string phase;  // excite | control | zero
  double u = 0.0;
  double y = 0.0;
  Eigen::VectorXd eta;
  Eigen::VectorXd xi;
  Eigen::VectorXd xi_hat;  // empty before the estimator is live
  double alpha_hat = std::numeric_limits<double>::quiet_NaN();
  double alpha_true = 0.0;  // oracle value, not serialized
};

struct IoLog {
  std::vector<IoRecord> records;
  int rho = 0;
  int eta_dim = 0;
  double beta_hat = std::numeric_limits<double>::quiet_NaN();
  double e_beta = std::numeric_limits<double>::quiet_NaN();
  std::uint64_t seed = 0;
  long k_ctrl = 0;  // first control-phase step
};

struct RunMetrics {
  double beta_hat = std::numeric_limits<double>::quiet_NaN();
  double e_beta = std::numeric_limits<double>::quiet_NaN();
  double sup_exi = std::numeric_limits<double>::quiet_NaN();
  double xi_tail_norm = std::numeric_limits<double>::quiet_NaN();
  double c1_est = std::numeric_limits<double>::quiet_NaN();
  double c2_est = std::numeric_limits<double>::quiet_NaN();
  std::uint64_t seed = 0;
};

// Two-phase closed loop: seeded excitation for k = 0 .. l+rho (beta estimated
// once at the end of that batch), then reconstruction + feedback. Deterministic
// for a fixed config.
std::pair<IoLog, RunMetrics> run_experiment(const ExperimentConfig& cfg);

// (min, max) of ||eta|| over the log after dropping the leading fraction.
std::pair<double, double> measure_eta_bounds(const IoLog& log, double transient_cut);

struct SweepRow {
  double T = 0.0;
  double e_beta = 0.0;
  double sup_exi = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // sorted by T ascending
  double slope_e_beta = std::numeric_limits<double>::quiet_NaN();
  double slope_sup_exi = std::numeric_limits<double>::quiet_NaN();
  std::uint64_t seed = 0;
};

// One run per grid point; per-run errors are rethrown tagged with the
// offending T.
SweepResult sweep(const ExperimentConfig& base, const std::vector<double>& T_grid);

}  // namespace ddfl
