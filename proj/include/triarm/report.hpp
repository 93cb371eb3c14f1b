#pragma once

#include <string>
#include <vector>

#include "triarm/experiment.hpp"

namespace triarm {

inline constexpr const char* kArtifactName = "triarm";
inline constexpr const char* kArtifactVersion = "0.1.0";
inline constexpr int kArtifactFormat = 1;

/// Full-precision decimal form that round-trips to the same double.
std::string format_double(double value);

/// @brief Per-run CSV. Column order is fixed:
/// run_index, n_none..n_ABC (canonical), epsilon, delta, kappa,
/// cos_BC, cos_CA, cos_AB, F, G_AB, G_AC, G_BC, G_ABC, filtered.
/// Absent statistics leave their cells empty.
std::string run_records_csv(const std::vector<RunRecord>& records);

/// Campaign summary as a deterministic nested key/value JSON document with a
/// full config echo and artifact identification. No timestamps or paths.
std::string campaign_summary_json(const ExperimentConfig& config,
                                  const CampaignSummary& summary);

std::string homodyne_sweep_json(const ExperimentConfig& base, const HomodyneSweepTable& table);

std::string squeezing_sweep_json(const SqueezingSweepTable& table);

/// Write text to a file, failing loudly (ConfigError) on I/O problems.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace triarm
