#include "triarm/report.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "triarm/config_io.hpp"
#include "triarm/errors.hpp"

namespace triarm {

namespace {

using Json = nlohmann::ordered_json;

Json artifact_header() {
  return Json{{"name", kArtifactName}, {"version", kArtifactVersion}, {"format", kArtifactFormat}};
}

Json quaternion_json(const Quaternion& q) { return Json::array({q.a, q.b, q.c, q.d}); }

Json config_json(const ExperimentConfig& config) {
  Json j;
  j["source"] = {{"alpha_a", quaternion_json(config.bank.alpha_a)},
                 {"alpha_b", quaternion_json(config.bank.alpha_b)},
                 {"alpha_c", quaternion_json(config.bank.alpha_c)}};
  j["detector"] = {{"lo_amplitude", config.lo_amplitude},
                   {"lo_phase", config.lo_phase},
                   {"transmissivity", config.transmissivity},
                   {"gain_1", config.gain_1},
                   {"gain_2", config.gain_2}};
  j["campaign"] = {{"runs", config.runs},
                   {"samples_per_config", config.samples_per_config},
                   {"sorkin_correction", correction_name(config.sorkin_correction)},
                   {"peres_correction", correction_name(config.peres_correction)},
                   {"noise_free", config.noise_free},
                   {"master_seed", config.master_seed}};
  j["noise"] = {{"offset_sigma", config.noise.offset_sigma},
                {"drift_sigma", config.noise.drift_sigma},
                {"lock_loss_probability", config.noise.lock_loss_probability}};
  j["filter"] = {{"outlier_threshold", config.filter.outlier_threshold}};
  return j;
}

Json histogram_json(const Histogram& histogram) {
  return Json{{"edges", histogram.edges}, {"counts", histogram.counts}};
}

void append_cell(std::string& line, double value) {
  line += ',';
  line += format_double(value);
}

}  // namespace

std::string format_double(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

std::string run_records_csv(const std::vector<RunRecord>& records) {
  std::string out =
      "run_index,n_none,n_A,n_B,n_C,n_AB,n_AC,n_BC,n_ABC,"
      "epsilon,delta,kappa,cos_BC,cos_CA,cos_AB,F,G_AB,G_AC,G_BC,G_ABC,filtered\n";
  for (const RunRecord& record : records) {
    std::string line = std::to_string(record.index);
    for (double n : record.photon_numbers) append_cell(line, n);
    if (record.sorkin) {
      append_cell(line, record.sorkin->epsilon);
      append_cell(line, record.sorkin->delta);
      append_cell(line, record.sorkin->kappa);
    } else {
      line += ",,,";
    }
    if (record.peres) {
      append_cell(line, record.peres->cos_bc);
      append_cell(line, record.peres->cos_ca);
      append_cell(line, record.peres->cos_ab);
      append_cell(line, record.peres->f);
    } else {
      line += ",,,,";
    }
    if (record.glauber) {
      append_cell(line, record.glauber->g_ab);
      append_cell(line, record.glauber->g_ac);
      append_cell(line, record.glauber->g_bc);
      append_cell(line, record.glauber->g_abc);
    } else {
      line += ",,,,";
    }
    line += record.filtered ? ",true" : ",false";
    out += line;
    out += '\n';
  }
  return out;
}

std::string campaign_summary_json(const ExperimentConfig& config,
                                  const CampaignSummary& summary) {
  Json j;
  j["artifact"] = artifact_header();
  j["kind"] = "campaign-summary";
  j["config"] = config_json(config);
  Json stats = Json::array();
  for (const StatisticSummary& stat : summary.statistics) {
    stats.push_back(Json{{"name", stat.name},
                         {"mean", stat.mean},
                         {"stddev", stat.stddev},
                         {"considered", stat.considered},
                         {"retained", stat.retained},
                         {"histogram", histogram_json(stat.histogram)}});
  }
  j["results"] = {{"runs_total", summary.runs_total},
                  {"runs_lock_lost", summary.runs_lock_lost},
                  {"runs_error", summary.runs_error},
                  {"statistics", stats}};
  return j.dump(2) + "\n";
}

std::string homodyne_sweep_json(const ExperimentConfig& base, const HomodyneSweepTable& table) {
  Json j;
  j["artifact"] = artifact_header();
  j["kind"] = "homodyne-imperfection-sweep";
  j["parameter"] =
      table.parameter == SweepParameter::transmissivity ? "transmissivity" : "gain_1";
  j["alpha_magnitude"] = table.alpha_magnitude;
  j["fixed"] = {{"lo_phase", base.lo_phase},
                {"transmissivity", base.transmissivity},
                {"gain_1", base.gain_1},
                {"gain_2", base.gain_2}};
  Json rows = Json::array();
  for (const HomodyneSweepRow& row : table.rows) {
    rows.push_back(
        Json{{"value", row.value}, {"beta_ratio", row.beta_ratio}, {"kappa", row.kappa}});
  }
  j["rows"] = rows;
  return j.dump(2) + "\n";
}

std::string squeezing_sweep_json(const SqueezingSweepTable& table) {
  Json j;
  j["artifact"] = artifact_header();
  j["kind"] = "squeezing-splitting-sweep";
  j["n_total"] = table.n_total;
  j["probability"] = table.probability;
  j["samples"] = table.samples;
  j["alpha_variance_form"] = table.sweep.alpha_variance_form;
  j["argmin_fraction"] = table.sweep.points.at(table.sweep.argmin).fraction;
  Json points = Json::array();
  for (const SplittingSweepPoint& point : table.sweep.points) {
    points.push_back(Json{{"fraction", point.fraction}, {"mse", point.mse}});
  }
  j["points"] = points;
  return j.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot open file for writing: " + path);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) throw ConfigError("failed while writing file: " + path);
}

}  // namespace triarm
