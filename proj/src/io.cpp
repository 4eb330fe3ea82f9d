#include "ddfl/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include "ddfl/errors.hpp"
#include "ddfl/svg.hpp"

namespace ddfl {
namespace {

namespace fs = std::filesystem;

std::string hex64(std::uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// Writes each named payload atomically, then a manifest listing name, size
// and content hash of everything emitted.
std::vector<std::string> emit_files(const fs::path& dir,
                                    const std::vector<std::pair<std::string, std::string>>& files,
                                    const std::string& scenario, std::uint64_t seed) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  Json manifest;
  manifest["scenario"] = scenario;
  manifest["seed"] = seed;
  manifest["files"] = Json::array();
  std::vector<std::string> names;
  for (const auto& [name, content] : files) {
    atomic_write_file(dir / name, content);
    manifest["files"].push_back(
        {{"name", name}, {"bytes", content.size()}, {"fnv1a64", hex64(fnv1a64(content))}});
    names.push_back(name);
  }
  atomic_write_file(dir / "manifest.json", manifest.dump(2) + "\n");
  names.push_back("manifest.json");
  return names;
}

std::vector<double> times(const IoLog& log) {
  std::vector<double> t;
  t.reserve(log.records.size());
  for (const auto& r : log.records) t.push_back(r.t);
  return t;
}

PlotSeries component_series(const IoLog& log, const std::string& label, int idx, bool of_eta,
                            const std::string& color) {
  PlotSeries s{label, times(log), {}, color};
  for (const auto& r : log.records) s.y.push_back(of_eta ? r.eta(idx) : r.xi(idx));
  return s;
}

}  // namespace

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

void atomic_write_file(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("short write to " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename " + tmp.string() + " to " + path.string() + ": " +
                        ec.message());
}

std::string trajectory_csv(const IoLog& log) {
  std::ostringstream out;
  out << "k,t,phase,u,y";
  for (int i = 1; i <= log.eta_dim; ++i) out << ",eta" << i;
  for (int i = 1; i <= log.rho; ++i) out << ",xi" << i;
  for (int i = 1; i <= log.rho; ++i) out << ",xihat" << i;
  out << ",alphahat\n";
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const auto& r : log.records) {
    out << r.k << ',' << format_g17(r.t) << ',' << r.phase << ',' << format_g17(r.u) << ','
        << format_g17(r.y);
    for (int i = 0; i < log.eta_dim; ++i) out << ',' << format_g17(r.eta(i));
    for (int i = 0; i < log.rho; ++i) out << ',' << format_g17(r.xi(i));
    for (int i = 0; i < log.rho; ++i)
      out << ',' << format_g17(r.xi_hat.size() ? r.xi_hat(i) : nan);
    out << ',' << format_g17(r.alpha_hat) << '\n';
  }
  return out.str();
}

std::string sweep_csv(const SweepResult& s, const std::string& slope_target) {
  const double slope = slope_target == "sup_exi" ? s.slope_sup_exi : s.slope_e_beta;
  std::ostringstream out;
  out << "T,e_beta,sup_exi,slope_fit\n";
  for (const auto& r : s.rows)
    out << format_g17(r.T) << ',' << format_g17(r.e_beta) << ',' << format_g17(r.sup_exi)
        << ',' << format_g17(slope) << '\n';
  return out.str();
}

Json metrics_to_json(const RunMetrics& m) {
  Json j;
  j["beta_hat"] = m.beta_hat;
  j["e_beta"] = m.e_beta;
  j["sup_exi"] = m.sup_exi;
  j["xi_tail_norm"] = m.xi_tail_norm;
  j["c1_est"] = m.c1_est;
  j["c2_est"] = m.c2_est;
  j["seed"] = m.seed;
  return j;
}

Json sweep_metrics_to_json(const SweepResult& s, const std::vector<double>& T_grid) {
  Json j;
  j["slope_e_beta"] = s.slope_e_beta;
  j["slope_sup_exi"] = s.slope_sup_exi;
  j["seed"] = s.seed;
  j["T_grid"] = T_grid;
  return j;
}

std::vector<std::string> emit_run_outputs(const IoLog& log, const RunMetrics& metrics,
                                          const ExperimentConfig& cfg, const fs::path& dir) {
  std::vector<std::pair<std::string, std::string>> files;
  files.emplace_back("trajectory.csv", trajectory_csv(log));
  files.emplace_back("metrics.json", metrics_to_json(metrics).dump(2) + "\n");
  files.emplace_back("config-resolved.json", config_to_json(cfg).dump(2) + "\n");

  if (log.rho >= 2) {
    std::vector<PlotSeries> xs{component_series(log, "xi1", 0, false, "#1f77b4"),
                               component_series(log, "xi2", 1, false, "#ff7f0e")};
    if (!cfg.zero_dynamics) {
      PlotSeries xh{"xi1 estimate", {}, {}, "#2ca02c"};
      for (const auto& r : log.records)
        if (r.xi_hat.size()) {
          xh.x.push_back(r.t);
          xh.y.push_back(r.xi_hat(0));
        }
      xs.push_back(std::move(xh));
    }
    files.emplace_back("plot-xi.svg",
                       render_line_plot("controllable states", "t [s]", "xi", xs));
  }
  if (log.eta_dim >= 2) {
    std::vector<PlotSeries> es{component_series(log, "eta1", 0, true, "#1f77b4"),
                               component_series(log, "eta2", 1, true, "#ff7f0e")};
    files.emplace_back("plot-eta.svg",
                       render_line_plot("internal states", "t [s]", "eta", es));
    if (cfg.zero_dynamics) {
      PlotSeries orbit{"eta orbit", {}, {}, "#1f77b4"};
      for (const auto& r : log.records) {
        orbit.x.push_back(r.eta(0));
        orbit.y.push_back(r.eta(1));
      }
      files.emplace_back("plot-orbit.svg",
                         render_line_plot("zero-dynamics phase portrait", "eta1", "eta2",
                                          {orbit}));
    }
  }
  return emit_files(dir, files, cfg.scenario, cfg.seed);
}

std::vector<std::string> emit_sweep_outputs(const SweepResult& s, const ExperimentConfig& cfg,
                                            const fs::path& dir) {
  const std::string target = cfg.scenario == "sweep-xi" ? "sup_exi" : "e_beta";
  std::vector<std::pair<std::string, std::string>> files;
  files.emplace_back("sweep.csv", sweep_csv(s, target));
  files.emplace_back("metrics.json", sweep_metrics_to_json(s, cfg.T_grid).dump(2) + "\n");
  files.emplace_back("config-resolved.json", config_to_json(cfg).dump(2) + "\n");
  PlotSeries eb{"e_beta", {}, {}, "#d62728"};
  PlotSeries ex{"sup_exi", {}, {}, "#9467bd"};
  for (const auto& r : s.rows) {
    eb.x.push_back(r.T);
    eb.y.push_back(r.e_beta);
    ex.x.push_back(r.T);
    ex.y.push_back(r.sup_exi);
  }
  char title[96];
  std::snprintf(title, sizeof title, "error scaling (fitted %s slope %.3f)", target.c_str(),
                target == "sup_exi" ? s.slope_sup_exi : s.slope_e_beta);
  files.emplace_back("plot-sweep.svg",
                     render_line_plot(title, "T [s]", "error", {eb, ex}, true, true));
  return emit_files(dir, files, cfg.scenario, cfg.seed);
}

}  // namespace ddfl
