#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "ddfl/presets.hpp"
#include "ddfl/simloop.hpp"

namespace ddfl {

// Shortest representation that round-trips a double exactly.
std::string format_g17(double v);

std::uint64_t fnv1a64(std::string_view data);

// temp-then-rename in the target directory; IoError on any failure.
void atomic_write_file(const std::filesystem::path& path, const std::string& content);

// Columns: k,t,phase,u,y,eta1..etaN,xi1..xiR,xihat1..xihatR,alphahat
std::string trajectory_csv(const IoLog& log);

// Header: T,e_beta,sup_exi,slope_fit. slope_target picks which fitted slope
// fills the (per-row constant) slope_fit column: "e_beta" or "sup_exi".
std::string sweep_csv(const SweepResult& s, const std::string& slope_target);

Json metrics_to_json(const RunMetrics& m);
Json sweep_metrics_to_json(const SweepResult& s, const std::vector<double>& T_grid);

// Write {trajectory.csv, metrics.json, config-resolved.json, plot-*.svg,
// manifest.json} / {sweep.csv, ...}; returns the emitted file names.
std::vector<std::string> emit_run_outputs(const IoLog& log, const RunMetrics& metrics,
                                          const ExperimentConfig& cfg,
                                          const std::filesystem::path& dir);
std::vector<std::string> emit_sweep_outputs(const SweepResult& s,
                                            const ExperimentConfig& cfg,
                                            const std::filesystem::path& dir);

}  // namespace ddfl
