#include "ddfl/simloop.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>

#include "ddfl/errors.hpp"
#include "ddfl/numerics.hpp"

namespace ddfl {
namespace {

std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

void validate(const ExperimentConfig& cfg, const PlantModel& plant) {
  if (!(cfg.T > 0.0)) throw ConfigError("T must be positive");
  if (!(cfg.horizon > 0.0)) throw ConfigError("horizon must be positive");
  if (cfg.substeps < 0) throw ConfigError("substeps must be >= 0");
  if (cfg.noise_amplitude < 0.0) throw ConfigError("noise amplitude must be >= 0");
  if (cfg.noise_kind != "uniform" && cfg.noise_kind != "gaussian")
    throw ConfigError("noise_kind must be 'uniform' or 'gaussian'");
  if (cfg.excitation_amplitude < 0.0) throw ConfigError("excitation amplitude must be >= 0");
  if (cfg.transient_cut < 0.0 || cfg.transient_cut >= 1.0)
    throw ConfigError("transient_cut must lie in [0, 1)");
  if (cfg.tail_window <= 0.0 || cfg.tail_window > 1.0)
    throw ConfigError("tail_window must lie in (0, 1]");
  if (cfg.eta0.size() != plant.eta_dim || cfg.xi0.size() != plant.rho)
    throw ConfigError("initial state dimensions do not match the plant");
  if (cfg.zero_dynamics) return;
  const int rho = plant.rho;
  if (cfg.l < 2 * rho + 2) throw ConfigError("l must be >= 2rho+2");
  if (cfg.m < rho + 1) throw ConfigError("m must be >= rho+1");
  if (cfg.m > cfg.l + rho + 1) throw ConfigError("m exceeds the excitation batch length");
  if (cfg.K.size() == 0 && cfg.poles.empty())
    throw ConfigError("provide either K or desired poles");
  if (cfg.K.size() != 0 && cfg.K.size() != rho)
    throw ConfigError("K must have rho entries");
}

RunMetrics finish_metrics(const ExperimentConfig& cfg, IoLog& log) {
  RunMetrics mx;
  mx.seed = cfg.seed;
  mx.beta_hat = log.beta_hat;
  mx.e_beta = log.e_beta;
  const long n = static_cast<long>(log.records.size());
  double sup = -1.0;
  for (const auto& r : log.records) {
    if (r.phase != "control") continue;
    const double a_err = r.alpha_true - r.alpha_hat;
    const double e = std::sqrt((r.xi - r.xi_hat).squaredNorm() + a_err * a_err);
    sup = std::max(sup, e);
  }
  if (sup >= 0.0) mx.sup_exi = sup;
  const long tail_start = n - std::max<long>(1, static_cast<long>(cfg.tail_window * n));
  double tail = 0.0;
  for (const auto& r : log.records)
    if (r.k >= tail_start) tail = std::max(tail, r.xi.norm());
  mx.xi_tail_norm = tail;
  std::tie(mx.c1_est, mx.c2_est) = measure_eta_bounds(log, cfg.transient_cut);
  return mx;
}

std::pair<IoLog, RunMetrics> run_zero_dynamics(const ExperimentConfig& cfg,
                                               const PlantModel& plant, long n_steps,
                                               int substeps) {
  IoLog log;
  log.rho = plant.rho;
  log.eta_dim = plant.eta_dim;
  log.seed = cfg.seed;
  log.k_ctrl = 0;
  Rng noise_rng(cfg.seed ^ kNoiseSeedSalt);
  const Eigen::VectorXd xi_zero = Eigen::VectorXd::Zero(plant.rho);
  DerivFn f = [&plant, &xi_zero](const Eigen::VectorXd& eta, double, double) {
    return plant.f0(eta, xi_zero);
  };
  Eigen::VectorXd eta = cfg.eta0;
  for (long k = 0; k < n_steps; ++k) {
    const double t = k * cfg.T;
    IoRecord rec;
    rec.k = k;
    rec.t = t;
    rec.phase = "zero";
    rec.u = 0.0;
    rec.y = 0.0;
    if (cfg.noise_amplitude > 0.0)
      rec.y += cfg.noise_kind == "gaussian"
                   ? cfg.noise_amplitude * noise_rng.normal()
                   : noise_rng.uniform(-cfg.noise_amplitude, cfg.noise_amplitude);
    rec.eta = eta;
    rec.xi = xi_zero;
    rec.alpha_true = true_alpha(plant, FullState{eta, xi_zero, t});
    log.records.push_back(std::move(rec));
    eta = rk4_hold_step(f, eta, 0.0, cfg.T, substeps, t);
  }
  RunMetrics mx = finish_metrics(cfg, log);
  return {std::move(log), mx};
}

}  // namespace

std::pair<IoLog, RunMetrics> run_experiment(const ExperimentConfig& cfg) {
  const PlantModel plant = make_vdp_demo(cfg.delta, cfg.perturbation_gain);
  validate(cfg, plant);
  const int rho = plant.rho;
  const int ed = plant.eta_dim;
  const long n_steps = std::lround(cfg.horizon / cfg.T);
  const int substeps =
      cfg.substeps > 0 ? cfg.substeps : static_cast<int>(std::ceil(cfg.T / 1e-4));
  if (n_steps < 1) throw ConfigError("horizon shorter than one sampling interval");

  if (cfg.zero_dynamics) return run_zero_dynamics(cfg, plant, n_steps, substeps);

  const long batch_end = cfg.l + rho;  // last excitation step
  if (n_steps < batch_end + 1)
    throw ConfigError("horizon must cover the excitation batch of l+rho+1 steps");

  IoLog log;
  log.rho = rho;
  log.eta_dim = ed;
  log.seed = cfg.seed;
  log.k_ctrl = batch_end + 1;

  const GainVector K =
      cfg.K.size() != 0 ? GainVector{cfg.K} : design_gain(rho, cfg.poles);
  const ExcitationConfig exc{cfg.l, cfg.excitation_amplitude, cfg.seed};
  Rng exc_rng(cfg.seed);
  Rng noise_rng(cfg.seed ^ kNoiseSeedSalt);

  DerivFn f = [&plant, ed, rho](const Eigen::VectorXd& x, double u, double t) {
    return derivative(plant, FullState{x.head(ed), x.segment(ed, rho), t}, u);
  };

  Eigen::VectorXd x(ed + rho);
  x << cfg.eta0, cfg.xi0;
  Eigen::VectorXd y_batch(batch_end + 1), u_batch(batch_end + 1);
  std::optional<EstimatorState> estimator;
  double u_prev = 0.0;

  for (long k = 0; k < n_steps; ++k) {
    const double t = k * cfg.T;
    const FullState s{x.head(ed), x.segment(ed, rho), t};
    double y = s.xi(0);
    if (cfg.noise_amplitude > 0.0)
      y += cfg.noise_kind == "gaussian"
               ? cfg.noise_amplitude * noise_rng.normal()
               : noise_rng.uniform(-cfg.noise_amplitude, cfg.noise_amplitude);

    IoRecord rec;
    rec.k = k;
    rec.t = t;
    rec.y = y;
    rec.eta = s.eta;
    rec.xi = s.xi;
    rec.alpha_true = true_alpha(plant, s);

    double u;
    if (k <= batch_end) {
      rec.phase = "excite";
      u = excitation_input(exc, k, exc_rng);
      y_batch(k) = y;
      u_batch(k) = u;
      if (k == batch_end) {
        // batch complete: freeze beta and arm the rolling window with the
        // last m-1 pairs so reconstruction is ready at the first control step
        auto [z0, z1] = build_z_matrices(y_batch, u_batch, rho, cfg.l);
        const BetaEstimate be = estimate_beta(z0, z1, rho, cfg.T);
        log.beta_hat = be.beta_hat;
        log.e_beta = std::abs(plant.beta0 - be.beta_hat);
        estimator.emplace(build_extended_model(rho, cfg.T), be, cfg.m);
        for (long j = std::max<long>(0, batch_end - cfg.m + 2); j <= batch_end; ++j)
          estimator->push_sample(y_batch(j), j >= 1 ? u_batch(j - 1) : 0.0);
      }
    } else {
      rec.phase = "control";
      estimator->push_sample(y, u_prev);
      const auto est = estimator->reconstruct(k);
      u = control(est->xi_hat, est->alpha_hat, estimator->beta().beta_hat, K);
      rec.xi_hat = est->xi_hat;
      rec.alpha_hat = est->alpha_hat;
    }
    rec.u = u;
    log.records.push_back(std::move(rec));

    x = rk4_hold_step(f, x, u, cfg.T, substeps, t);
    u_prev = u;
  }

  RunMetrics mx = finish_metrics(cfg, log);
  return {std::move(log), mx};
}

std::pair<double, double> measure_eta_bounds(const IoLog& log, double transient_cut) {
  if (transient_cut < 0.0 || transient_cut >= 1.0)
    throw std::invalid_argument("measure_eta_bounds: cut must lie in [0, 1)");
  const size_t n = log.records.size();
  const size_t start = static_cast<size_t>(transient_cut * static_cast<double>(n));
  if (start >= n) throw std::invalid_argument("measure_eta_bounds: empty retained window");
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (size_t i = start; i < n; ++i) {
    const double v = log.records[i].eta.norm();
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {lo, hi};
}

SweepResult sweep(const ExperimentConfig& base, const std::vector<double>& T_grid) {
  if (T_grid.empty()) throw ConfigError("sweep: empty T grid");
  SweepResult out;
  out.seed = base.seed;
  for (size_t i = 0; i < T_grid.size(); ++i) {
    ExperimentConfig cfg = base;
    cfg.T = T_grid[i];
    cfg.T_grid.clear();
    if (base.sweep_fresh_seeds) cfg.seed = base.seed + i;
    try {
      auto [run_log, mx] = run_experiment(cfg);
      (void)run_log;
      out.rows.push_back({cfg.T, mx.e_beta, mx.sup_exi});
    } catch (const PeViolation& e) {
      throw PeViolation(e.achieved_rank, e.required_rank, "at T = " + short_num(cfg.T));
    } catch (const IntegrationDiverged& e) {
      throw IntegrationDiverged(e.t_fail, "at T = " + short_num(cfg.T));
    }
  }
  std::sort(out.rows.begin(), out.rows.end(),
            [](const SweepRow& a, const SweepRow& b) { return a.T < b.T; });
  std::vector<double> ts, eb, ex;
  for (const auto& r : out.rows) {
    if (std::isfinite(r.e_beta) && r.e_beta > 0.0) {
      ts.push_back(r.T);
      eb.push_back(r.e_beta);
    }
    if (std::isfinite(r.sup_exi) && r.sup_exi > 0.0) ex.push_back(r.sup_exi);
  }
  if (ts.size() >= 2) out.slope_e_beta = fit_loglog_slope(ts, eb);
  if (ex.size() == out.rows.size() && ex.size() >= 2) {
    std::vector<double> all_t;
    for (const auto& r : out.rows) all_t.push_back(r.T);
    out.slope_sup_exi = fit_loglog_slope(all_t, ex);
  }
  return out;
}

}  // namespace ddfl
