#include "sdc/pipeline/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace sdc {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <class T>
T parse_number(const std::string& value, const std::string& where) {
  T out{};
  const char* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc{} || ptr != end) {
    throw ConfigError(where + ": cannot parse '" + value + "' as a number");
  }
  return out;
}

// from_chars for double is unavailable in older libstdc++.
template <>
double parse_number<double>(const std::string& value, const std::string& where) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(value, &used);
  } catch (const std::exception&) {
    used = std::string::npos;
  }
  if (used != value.size()) {
    throw ConfigError(where + ": cannot parse '" + value + "' as a number");
  }
  return out;
}

bool parse_bool(const std::string& value, const std::string& where) {
  if (value == "true" || value == "1" || value == "on") return true;
  if (value == "false" || value == "0" || value == "off") return false;
  throw ConfigError(where + ": expected true or false, got '" + value + "'");
}

std::vector<int> parse_int_list(const std::string& value, const std::string& where) {
  std::vector<int> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number<int>(trim(item), where));
  if (out.empty()) throw ConfigError(where + ": empty list");
  return out;
}

// `phase<K>.<field>` -> K, or 0 when the key is not a phase key.
int phase_index(const std::string& key, const std::string& field) {
  const std::string prefix = "phase";
  if (key.rfind(prefix, 0) != 0) return 0;
  const auto dot = key.find('.');
  if (dot == std::string::npos || key.substr(dot + 1) != field) return 0;
  int k = 0;
  const char* begin = key.data() + prefix.size();
  const char* end = key.data() + dot;
  const auto [ptr, ec] = std::from_chars(begin, end, k);
  if (ec != std::errc{} || ptr != end || k < 1) return 0;
  return k;
}

}  // namespace

FitSchedule PipelineConfig::schedule(ScheduleMode mode) const {
  FitSchedule s = default_schedule(mode, lr_scale);
  auto check = [&](int k) {
    if (k > static_cast<int>(s.phases.size())) {
      throw ConfigError("phase" + std::to_string(k) + " is not part of the " +
                        (mode == ScheduleMode::quick ? "quick" : "paper") + " schedule");
    }
  };
  for (auto [k, iters] : phase_iterations) {
    check(k);
    s.phases[k - 1].iterations = iters;
  }
  for (auto [k, lr] : phase_lr) {
    check(k);
    s.phases[k - 1].learning_rate = lr;
  }
  validate(s);
  return s;
}

FeatureExtractor PipelineConfig::extractor() const {
  return FeatureExtractor::standard(extractor_channels, extractor_seed);
}

PipelineConfig parse_config(const std::string& text, PipelineConfig cfg) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string content = trim(line);
    if (content.empty() || content.front() == '#') continue;
    const std::string where = "config line " + std::to_string(line_no);
    const auto eq = content.find('=');
    if (eq == std::string::npos) throw ConfigError(where + ": expected key = value");
    const std::string key = trim(content.substr(0, eq));
    const std::string value = trim(content.substr(eq + 1));

    if (key == "sdc_n") cfg.sdc_n = parse_number<int>(value, where);
    else if (key == "kernel_n") cfg.kernel_n = parse_number<int>(value, where);
    else if (key == "context_frames") cfg.context_frames = parse_number<int>(value, where);
    else if (key == "schedule") {
      try {
        cfg.schedule_mode = parse_schedule_mode(value);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(where + ": " + e.what());
      }
    } else if (key == "lr_scale") cfg.lr_scale = parse_number<double>(value, where);
    else if (key == "loss.w_l1") cfg.weights.l1 = parse_number<double>(value, where);
    else if (key == "loss.w_perceptual") cfg.weights.perceptual = parse_number<double>(value, where);
    else if (key == "loss.w_style") cfg.weights.style = parse_number<double>(value, where);
    else if (key == "extractor.seed") cfg.extractor_seed = parse_number<std::uint64_t>(value, where);
    else if (key == "extractor.channels") cfg.extractor_channels = parse_int_list(value, where);
    else if (key == "flow.levels") cfg.flow.levels = parse_number<int>(value, where);
    else if (key == "flow.block") cfg.flow.block = parse_number<int>(value, where);
    else if (key == "flow.radius") cfg.flow.radius = parse_number<int>(value, where);
    else if (key == "fit.init_noise") cfg.init_noise = parse_number<double>(value, where);
    else if (key == "fit.multi_start") cfg.multi_start = parse_bool(value, where);
    else if (key == "fit.search_radius") cfg.search_radius = parse_number<int>(value, where);
    else if (int k = phase_index(key, "iterations"); k > 0) {
      cfg.phase_iterations[k] = parse_number<int>(value, where);
    } else if (int k2 = phase_index(key, "lr"); k2 > 0) {
      cfg.phase_lr[k2] = parse_number<double>(value, where);
    } else {
      throw ConfigError(where + ": unknown key '" + key + "'");
    }
  }
  if (cfg.sdc_n < 1 || cfg.sdc_n % 2 == 0 || cfg.kernel_n < 1 || cfg.kernel_n % 2 == 0) {
    throw ConfigError("kernel sizes must be positive and odd");
  }
  if (cfg.context_frames < 2) throw ConfigError("context_frames must be >= 2");
  return cfg;
}

PipelineConfig load_config(const std::filesystem::path& path, PipelineConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), std::move(base));
}

}  // namespace sdc
