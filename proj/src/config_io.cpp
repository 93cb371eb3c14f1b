#include "triarm/config_io.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <system_error>
#include <vector>

#include "triarm/errors.hpp"

namespace triarm {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::string format_value(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

double parse_double(const std::string& text, const std::string& key) {
  double value = 0.0;
  const char* last = text.data() + text.size();
  const auto result = std::from_chars(text.data(), last, value);
  if (result.ec != std::errc{} || result.ptr != last) {
    throw ConfigError("invalid real value for '" + key + "': '" + text + "'");
  }
  return value;
}

std::uint64_t parse_u64(const std::string& text, const std::string& key) {
  std::uint64_t value = 0;
  const char* last = text.data() + text.size();
  const auto result = std::from_chars(text.data(), last, value);
  if (result.ec != std::errc{} || result.ptr != last) {
    throw ConfigError("invalid integer value for '" + key + "': '" + text + "'");
  }
  return value;
}

bool parse_bool(const std::string& text, const std::string& key) {
  if (text == "true") return true;
  if (text == "false") return false;
  throw ConfigError("invalid boolean value for '" + key + "': '" + text + "'");
}

Quaternion parse_quaternion(const std::string& text, const std::string& key) {
  std::istringstream in(text);
  std::vector<std::string> parts;
  std::string token;
  while (in >> token) parts.push_back(token);
  if (parts.size() != 4) {
    throw ConfigError("quaternion value for '" + key + "' needs four components: '" + text +
                      "'");
  }
  return Quaternion{parse_double(parts[0], key), parse_double(parts[1], key),
                    parse_double(parts[2], key), parse_double(parts[3], key)};
}

std::string format_quaternion(const Quaternion& q) {
  return format_value(q.a) + " " + format_value(q.b) + " " + format_value(q.c) + " " +
         format_value(q.d);
}

void apply_entry(ExperimentConfig& config, const std::string& section, const std::string& key,
                 const std::string& value) {
  if (section == "source") {
    if (key == "alpha_a") {
      config.bank.alpha_a = parse_quaternion(value, key);
    } else if (key == "alpha_b") {
      config.bank.alpha_b = parse_quaternion(value, key);
    } else if (key == "alpha_c") {
      config.bank.alpha_c = parse_quaternion(value, key);
    } else {
      throw ConfigError("unknown key '" + key + "' in section [source]");
    }
  } else if (section == "detector") {
    if (key == "lo_amplitude") {
      config.lo_amplitude = parse_double(value, key);
    } else if (key == "lo_phase") {
      config.lo_phase = parse_double(value, key);
    } else if (key == "transmissivity") {
      config.transmissivity = parse_double(value, key);
    } else if (key == "gain_1") {
      config.gain_1 = parse_double(value, key);
    } else if (key == "gain_2") {
      config.gain_2 = parse_double(value, key);
    } else {
      throw ConfigError("unknown key '" + key + "' in section [detector]");
    }
  } else if (section == "campaign") {
    if (key == "runs") {
      config.runs = static_cast<std::size_t>(parse_u64(value, key));
    } else if (key == "samples_per_config") {
      config.samples_per_config = static_cast<std::size_t>(parse_u64(value, key));
    } else if (key == "sorkin_correction") {
      config.sorkin_correction = correction_from_name(value);
    } else if (key == "peres_correction") {
      config.peres_correction = correction_from_name(value);
    } else if (key == "noise_free") {
      config.noise_free = parse_bool(value, key);
    } else if (key == "master_seed") {
      config.master_seed = parse_u64(value, key);
    } else {
      throw ConfigError("unknown key '" + key + "' in section [campaign]");
    }
  } else if (section == "noise") {
    if (key == "offset_sigma") {
      config.noise.offset_sigma = parse_double(value, key);
    } else if (key == "drift_sigma") {
      config.noise.drift_sigma = parse_double(value, key);
    } else if (key == "lock_loss_probability") {
      config.noise.lock_loss_probability = parse_double(value, key);
    } else {
      throw ConfigError("unknown key '" + key + "' in section [noise]");
    }
  } else if (section == "filter") {
    if (key == "outlier_threshold") {
      config.filter.outlier_threshold = parse_double(value, key);
    } else {
      throw ConfigError("unknown key '" + key + "' in section [filter]");
    }
  } else {
    throw ConfigError("unknown section [" + section + "]");
  }
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig config;
  std::istringstream in(text);
  std::string raw_line;
  std::string section;
  std::size_t line_number = 0;
  while (std::getline(in, raw_line)) {
    ++line_number;
    std::string line = trim(raw_line);
    if (line.empty() || line.front() == '#' || line.front() == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("unterminated section header on line " +
                          std::to_string(line_number));
      }
      section = trim(line.substr(1, line.size() - 2));
      if (section != "source" && section != "detector" && section != "campaign" &&
          section != "noise" && section != "filter") {
        throw ConfigError("unknown section [" + section + "] on line " +
                          std::to_string(line_number));
      }
      continue;
    }
    const auto equals = line.find('=');
    if (equals == std::string::npos) {
      throw ConfigError("expected 'key = value' on line " + std::to_string(line_number));
    }
    const std::string key = trim(line.substr(0, equals));
    const std::string value = trim(line.substr(equals + 1));
    if (key.empty()) {
      throw ConfigError("empty key on line " + std::to_string(line_number));
    }
    if (section.empty()) {
      throw ConfigError("key '" + key + "' appears before any section header");
    }
    apply_entry(config, section, key, value);
  }
  config.validate();
  return config;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string serialize_config(const ExperimentConfig& config) {
  std::ostringstream out;
  out << "[source]\n";
  out << "alpha_a = " << format_quaternion(config.bank.alpha_a) << "\n";
  out << "alpha_b = " << format_quaternion(config.bank.alpha_b) << "\n";
  out << "alpha_c = " << format_quaternion(config.bank.alpha_c) << "\n";
  out << "\n[detector]\n";
  out << "lo_amplitude = " << format_value(config.lo_amplitude) << "\n";
  out << "lo_phase = " << format_value(config.lo_phase) << "\n";
  out << "transmissivity = " << format_value(config.transmissivity) << "\n";
  out << "gain_1 = " << format_value(config.gain_1) << "\n";
  out << "gain_2 = " << format_value(config.gain_2) << "\n";
  out << "\n[campaign]\n";
  out << "runs = " << config.runs << "\n";
  out << "samples_per_config = " << config.samples_per_config << "\n";
  out << "sorkin_correction = " << correction_name(config.sorkin_correction) << "\n";
  out << "peres_correction = " << correction_name(config.peres_correction) << "\n";
  out << "noise_free = " << (config.noise_free ? "true" : "false") << "\n";
  out << "master_seed = " << config.master_seed << "\n";
  out << "\n[noise]\n";
  out << "offset_sigma = " << format_value(config.noise.offset_sigma) << "\n";
  out << "drift_sigma = " << format_value(config.noise.drift_sigma) << "\n";
  out << "lock_loss_probability = " << format_value(config.noise.lock_loss_probability)
      << "\n";
  out << "\n[filter]\n";
  out << "outlier_threshold = " << format_value(config.filter.outlier_threshold) << "\n";
  return out.str();
}

std::string correction_name(Correction method) {
  return method == Correction::mean ? "mean" : "photon";
}

Correction correction_from_name(const std::string& name) {
  if (name == "mean") return Correction::mean;
  if (name == "photon") return Correction::photon;
  throw ConfigError("unknown correction method: '" + name + "'");
}

}  // namespace triarm
