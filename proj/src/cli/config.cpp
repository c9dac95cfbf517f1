#include "oppenheim/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "oppenheim/experiments.hpp"
#include "oppenheim/stats.hpp"

namespace oppenheim::cli {

namespace fs = std::filesystem;
using nlohmann::json;

std::vector<double> RunConfig::ladder() const {
  return geometric_ladder(t_start, t_ratio, t_count);
}

json RunConfig::to_json() const {
  json j = {{"seed", seed},
            {"norm", to_string(norm)},
            {"t_start", t_start},
            {"t_ratio", t_ratio},
            {"t_count", t_count},
            {"budget", budget},
            {"samples", samples},
            {"workers", workers},
            {"out", out.string()},
            {"tau", tau},
            {"eta", eta},
            {"engine", engine},
            {"family", family},
            {"delta", delta},
            {"frozen_t", frozen_t},
            {"observable", observable},
            {"observable_param", observable_param},
            {"ball_samples", ball_samples},
            {"mean_samples", mean_samples},
            {"space", space},
            {"corrupt_spin", corrupt_spin}};
  j["g"] = g ? json(*g) : json(nullptr);
  return j;
}

void RunConfig::validate() const {
  auto fail = [](const std::string& m) { throw ConfigError(m); };
  if (!(t_start > 0.0) || !std::isfinite(t_start)) fail("t_start must be positive");
  if (!(t_ratio > 1.0) || !std::isfinite(t_ratio)) fail("t_ratio must exceed 1");
  if (t_count < 1) fail("t_count must be >= 1");
  if (budget < 1) fail("budget must be >= 1");
  if (samples < 1) fail("samples must be >= 1");
  if (workers < 1) fail("workers must be >= 1");
  if (!(tau > 0.0 && tau < 1.0)) fail("tau must lie in (0, 1)");
  if (!(eta >= 0.0) || !std::isfinite(eta)) fail("eta must be >= 0");
  if (engine != "direct" && engine != "orbit") fail("engine must be direct or orbit");
  if (family != "cusp" && family != "point" && family != "frozen")
    fail("family must be cusp, point or frozen");
  if (!(delta >= 0.0)) fail("delta must be >= 0");
  if (!(frozen_t >= 1.0)) fail("frozen_t must be >= 1");
  try {
    (void)Observable::parse(observable, observable_param);
  } catch (const std::exception& e) {
    fail(e.what());
  }
  if (ball_samples < 2) fail("ball_samples must be >= 2");
  if (mean_samples < 1) fail("mean_samples must be >= 1");
  if (space != "x3" && space != "h-ball") fail("space must be x3 or h-ball");
  if (g && g->size() != 9) fail("g must have 9 entries");
  if (out.empty()) fail("out must not be empty");
}

RunConfig defaults_for(const std::string& command) {
  RunConfig c;
  const double quarter = std::pow(10.0, 0.25);
  if (command == "oppenheim-scan" || command == "oppenheim-one") {
    c.t_start = 10.0;
    c.t_ratio = std::sqrt(10.0);
    c.t_count = 5;
    c.budget = 1000;
    c.samples = command == "oppenheim-scan" ? 50 : 1;
  } else if (command == "targets-hit") {
    c.t_start = 1000.0;
    c.t_count = 1;
    c.samples = 100;
  } else if (command == "critical-exponent") {
    c.samples = 1;
  } else if (command == "loglaw-cusp") {
    c.samples = 20;
  } else if (command == "loglaw-point") {
    c.samples = 20;
    c.budget = 1000;
  } else if (command == "met-decay") {
    c.t_start = std::pow(10.0, 1.5);
    c.t_ratio = quarter;
    c.t_count = 9;
    c.samples = 200;
  } else if (command == "measure") {
    c.t_start = 2.0;
    c.t_ratio = std::pow(25.0, 1.0 / 8.0);
    c.t_count = 9;
    c.samples = 100000;
  } else if (command == "sample") {
    c.samples = 1000;
    c.t_start = 1000.0;
  } else if (command == "selftest") {
  } else {
    throw ConfigError("unknown command '" + command + "'");
  }
  return c;
}

namespace {

template <class T>
T get_as(const json& v, const std::string& key) {
  try {
    return v.get<T>();
  } catch (const json::exception&) {
    throw ConfigError("config key '" + key + "' has the wrong type");
  }
}

std::size_t get_count(const json& v, const std::string& key) {
  if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<std::int64_t>() < 0))
    throw ConfigError("config key '" + key + "' must be a nonnegative integer");
  return v.get<std::size_t>();
}

double get_real(const json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError("config key '" + key + "' must be a number");
  return v.get<double>();
}

}  // namespace

void apply_json(RunConfig& c, const json& j) {
  if (j.is_null()) return;
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, v] : j.items()) {
    if (key == "seed") {
      c.seed = get_count(v, key);
    } else if (key == "norm") {
      try {
        c.norm = parse_norm_choice(get_as<std::string>(v, key));
      } catch (const ConfigError&) {
        throw;
      } catch (const std::exception& e) {
        throw ConfigError(e.what());
      }
    } else if (key == "t_start") {
      c.t_start = get_real(v, key);
    } else if (key == "t_ratio") {
      c.t_ratio = get_real(v, key);
    } else if (key == "t_count") {
      c.t_count = get_count(v, key);
    } else if (key == "budget") {
      c.budget = get_count(v, key);
    } else if (key == "samples") {
      c.samples = get_count(v, key);
    } else if (key == "workers") {
      c.workers = static_cast<unsigned>(get_count(v, key));
    } else if (key == "out") {
      c.out = get_as<std::string>(v, key);
    } else if (key == "tau") {
      c.tau = get_real(v, key);
    } else if (key == "eta") {
      c.eta = get_real(v, key);
    } else if (key == "engine") {
      c.engine = get_as<std::string>(v, key);
    } else if (key == "family") {
      c.family = get_as<std::string>(v, key);
    } else if (key == "delta") {
      c.delta = get_real(v, key);
    } else if (key == "frozen_t") {
      c.frozen_t = get_real(v, key);
    } else if (key == "observable") {
      c.observable = get_as<std::string>(v, key);
    } else if (key == "observable_param") {
      c.observable_param = get_real(v, key);
    } else if (key == "ball_samples") {
      c.ball_samples = get_count(v, key);
    } else if (key == "mean_samples") {
      c.mean_samples = get_count(v, key);
    } else if (key == "space") {
      c.space = get_as<std::string>(v, key);
    } else if (key == "g") {
      if (v.is_null()) {
        c.g.reset();
      } else {
        c.g = get_as<std::vector<double>>(v, key);
      }
    } else if (key == "corrupt_spin") {
      c.corrupt_spin = get_as<bool>(v, key);
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
}

void apply_json_file(RunConfig& cfg, const fs::path& file) {
  std::ifstream is(file);
  if (!is) throw IoError("cannot read config file " + file.string());
  json j;
  try {
    is >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config file " + file.string() + " is not valid JSON: " + e.what());
  }
  apply_json(cfg, j);
}

void ensure_output_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir))
    throw IoError("cannot create output directory " + dir.string());
  const fs::path probe = dir / ".write_probe";
  {
    std::ofstream os(probe);
    if (!(os << "ok")) throw IoError("output directory " + dir.string() + " is not writable");
  }
  fs::remove(probe, ec);
}

}  // namespace oppenheim::cli
