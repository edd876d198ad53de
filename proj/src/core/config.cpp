#include "core/config.hpp"

#include <algorithm>
#include <charconv>
#include <fmt/format.h>
#include <fstream>
#include <set>
#include <sstream>

namespace esfv {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) {
    return {};
  }
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

double to_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(value, &pos);
    if (pos != value.size()) {
      throw std::invalid_argument(value);
    }
    return d;
  } catch (const std::exception&) {
    throw error(errc::config, fmt::format("key '{}': expected a number, got '{}'", key, value));
  }
}

int to_int(const std::string& key, const std::string& value) {
  const double d = to_double(key, value);
  const int i = static_cast<int>(d);
  if (static_cast<double>(i) != d) {
    throw error(errc::config, fmt::format("key '{}': expected an integer, got '{}'", key, value));
  }
  return i;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    item = trim(item);
    if (!item.empty()) {
      out.push_back(item);
    }
  }
  return out;
}

const std::map<std::string, std::set<std::string>>& case_param_names() {
  static const std::map<std::string, std::set<std::string>> names = {
      {"constant", {"rho", "u.x", "u.y", "u.z", "p"}},
      {"smooth-wave", {"amplitude", "background"}},
      {"vortex", {"beta", "radius", "u.x", "u.y"}},
      {"riemann", {"rho_l", "u_l", "p_l", "rho_r", "u_r", "p_r"}},
  };
  return names;
}

std::string get_or(const KeyValues& kv, const std::string& key, const std::string& fallback) {
  const auto it = kv.find(key);
  return it == kv.end() ? fallback : it->second;
}

std::string format_double(double v) { return fmt::format("{:.17g}", v); }

void reject_unknown(const KeyValues& kv, const std::set<std::string>& known,
                    const std::string& case_name, bool allow_study) {
  const auto& case_names = case_param_names();
  const auto case_it = case_names.find(case_name);
  for (const auto& [key, value] : kv) {
    if (known.contains(key)) {
      continue;
    }
    if (key.starts_with("case.")) {
      const std::string param = key.substr(5);
      if (case_it != case_names.end() && case_it->second.contains(param)) {
        continue;
      }
      throw error(errc::config,
                  fmt::format("unknown parameter '{}' for case '{}'", key, case_name));
    }
    if (!allow_study && key.starts_with("study.")) {
      throw error(errc::config,
                  fmt::format("key '{}' is only valid in a study configuration", key));
    }
    throw error(errc::config, fmt::format("unknown configuration key '{}'", key));
  }
}

const std::set<std::string> kRunKeys = {
    "grid.n",    "grid.dim",   "system",     "gamma",     "a",
    "flux.kind", "flux.jump_scaling",        "cfl",       "integrator",
    "t_end",     "snapshots",  "case",       "output.dir", "rho_floor",
    "e_floor",   "chi.kind",   "chi.param",
};

const std::set<std::string> kStudyKeys = {
    "study.kind", "study.levels", "study.windows", "study.reference",
};

RunConfig run_config_from(const KeyValues& kv, bool allow_study) {
  RunConfig cfg;

  const auto case_it = kv.find("case");
  if (case_it == kv.end()) {
    throw error(errc::config, "missing required key 'case'");
  }
  cfg.case_name = case_it->second;

  std::set<std::string> known = kRunKeys;
  if (allow_study) {
    known.insert(kStudyKeys.begin(), kStudyKeys.end());
  }
  reject_unknown(kv, known, cfg.case_name, allow_study);

  cfg.grid.dim = to_int("grid.dim", get_or(kv, "grid.dim", "1"));
  if (cfg.grid.dim < 1 || cfg.grid.dim > 3) {
    throw error(errc::config, "grid.dim must be 1, 2, or 3");
  }
  if (!kv.contains("grid.n")) {
    throw error(errc::config, "missing required key 'grid.n'");
  }
  cfg.grid.n = to_int("grid.n", kv.at("grid.n"));
  if (cfg.grid.n < 1) {
    throw error(errc::config, "grid.n must be positive");
  }

  const std::string system = get_or(kv, "system", "complete");
  if (system == "barotropic") {
    cfg.scheme.model.system = System::Barotropic;
  } else if (system == "complete") {
    cfg.scheme.model.system = System::Complete;
  } else {
    throw error(errc::config, fmt::format("system must be barotropic or complete, got '{}'", system));
  }
  cfg.scheme.model.dim = cfg.grid.dim;

  const double gamma = to_double("gamma", get_or(kv, "gamma", system == "barotropic" ? "2" : "1.4"));
  if (!(gamma > 1.0)) {
    throw error(errc::config, "gamma must exceed 1");
  }
  cfg.scheme.model.baro.gamma = gamma;
  cfg.scheme.model.ideal.gamma = gamma;
  cfg.scheme.model.baro.a = to_double("a", get_or(kv, "a", "1"));
  if (!(cfg.scheme.model.baro.a > 0.0)) {
    throw error(errc::config, "a must be positive");
  }

  const std::string flux = get_or(kv, "flux.kind", "local-lf");
  if (flux == "local-lf") {
    cfg.scheme.flux.variant = FluxVariant::LocalLF;
  } else if (flux == "global-lf") {
    cfg.scheme.flux.variant = FluxVariant::GlobalLF;
  } else {
    throw error(errc::config,
                fmt::format("flux.kind must be local-lf or global-lf, got '{}'", flux));
  }
  const std::string scaling = get_or(kv, "flux.jump_scaling", "paper");
  if (scaling == "paper") {
    cfg.scheme.flux.jump_scaling = JumpScaling::Paper;
  } else if (scaling == "classical") {
    cfg.scheme.flux.jump_scaling = JumpScaling::Classical;
  } else {
    throw error(errc::config,
                fmt::format("flux.jump_scaling must be paper or classical, got '{}'", scaling));
  }

  cfg.scheme.cfl = to_double("cfl", get_or(kv, "cfl", "0.4"));
  if (!(cfg.scheme.cfl > 0.0 && cfg.scheme.cfl <= 1.0)) {
    throw error(errc::config, "cfl must lie in (0, 1]");
  }
  cfg.scheme.t_end = to_double("t_end", get_or(kv, "t_end", "0"));
  if (cfg.scheme.t_end < 0.0) {
    throw error(errc::config, "t_end must be nonnegative");
  }

  const std::string integrator = get_or(kv, "integrator", "ssprk2");
  if (integrator == "ssprk2") {
    cfg.scheme.integrator = Integrator::SSPRK2;
  } else if (integrator == "forward-euler") {
    cfg.scheme.integrator = Integrator::ForwardEuler;
  } else {
    throw error(errc::config,
                fmt::format("integrator must be ssprk2 or forward-euler, got '{}'", integrator));
  }

  cfg.scheme.rho_floor = to_double("rho_floor", get_or(kv, "rho_floor", format_double(kRhoFloor)));
  cfg.scheme.e_floor = to_double("e_floor", get_or(kv, "e_floor", format_double(kEnergyFloor)));
  if (!(cfg.scheme.rho_floor > 0.0) || !(cfg.scheme.e_floor > 0.0)) {
    throw error(errc::config, "floors must be positive");
  }

  for (const std::string& item : split(get_or(kv, "snapshots", ""), ',')) {
    cfg.snapshots.push_back(to_double("snapshots", item));
  }
  std::sort(cfg.snapshots.begin(), cfg.snapshots.end());

  for (const auto& [key, value] : kv) {
    if (key.starts_with("case.")) {
      cfg.case_params[key.substr(5)] = to_double(key, value);
    }
  }

  cfg.output_dir = get_or(kv, "output.dir", "out");

  if (kv.contains("chi.kind")) {
    const std::string kind = kv.at("chi.kind");
    if (!kv.contains("chi.param")) {
      throw error(errc::config, "chi.kind requires chi.param");
    }
    const double param = to_double("chi.param", kv.at("chi.param"));
    if (kind == "cutoff") {
      cfg.chi = ChiSpec::cutoff(param);
    } else if (kind == "capped") {
      cfg.chi = ChiSpec::capped(param);
    } else {
      throw error(errc::config, fmt::format("chi.kind must be cutoff or capped, got '{}'", kind));
    }
  }

  // The case factory validates parameter ranges and dimensionality.
  cfg.make_case_spec();
  return cfg;
}

}  // namespace

KeyValues parse_config_text(const std::string& text) {
  KeyValues kv;
  std::stringstream ss(text);
  std::string line;
  int line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw error(errc::config, fmt::format("line {}: expected key = value, got '{}'", line_no, line));
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw error(errc::config, fmt::format("line {}: empty key", line_no));
    }
    kv[key] = value;
  }
  return kv;
}

KeyValues load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw error(errc::config, fmt::format("cannot open configuration file '{}'", path));
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

void apply_overrides(KeyValues& kv, const std::vector<std::string>& overrides) {
  for (const std::string& item : overrides) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw error(errc::config, fmt::format("override '{}' is not of the form key=value", item));
    }
    kv[trim(item.substr(0, eq))] = trim(item.substr(eq + 1));
  }
}

RunConfig make_run_config(const KeyValues& kv) { return run_config_from(kv, false); }

StudyConfig make_study_config(const KeyValues& kv) {
  StudyConfig study;
  study.base = run_config_from(kv, true);

  study.kind = get_or(kv, "study.kind", "convergence");
  if (study.kind != "convergence" && study.kind != "dmv" && study.kind != "weak-bv") {
    throw error(errc::config,
                fmt::format("study.kind must be convergence, dmv, or weak-bv, got '{}'", study.kind));
  }

  for (const std::string& item : split(get_or(kv, "study.levels", ""), ',')) {
    study.levels.push_back(to_int("study.levels", item));
  }
  const std::size_t min_levels = study.kind == "dmv" ? 3 : 2;
  if (study.levels.size() < min_levels) {
    throw error(errc::config, fmt::format("study.kind={} needs at least {} levels", study.kind,
                                          min_levels));
  }
  for (std::size_t k = 0; k + 1 < study.levels.size(); ++k) {
    if (study.levels[k + 1] <= study.levels[k]) {
      throw error(errc::config, "study.levels must be strictly increasing");
    }
  }

  for (const std::string& item : split(get_or(kv, "study.windows", ""), ';')) {
    const std::vector<std::string> parts = split(item, ',');
    const int dim = study.base.grid.dim;
    if (parts.size() != static_cast<std::size_t>(dim) + 2 &&
        parts.size() != static_cast<std::size_t>(dim) + 1) {
      throw error(errc::config,
                  fmt::format("window '{}' must be t,{} coordinates[,radius]", item, dim));
    }
    StudyWindow w;
    w.t = to_double("study.windows", parts[0]);
    for (int a = 0; a < dim; ++a) {
      w.x[a] = to_double("study.windows", parts[1 + a]);
    }
    if (parts.size() == static_cast<std::size_t>(dim) + 2) {
      w.radius = to_double("study.windows", parts[dim + 1]);
    }
    study.windows.push_back(w);
  }
  if (study.kind == "dmv" && study.windows.empty()) {
    throw error(errc::config, "dmv study needs at least one window (study.windows)");
  }

  study.reference = get_or(kv, "study.reference", "auto");
  if (study.reference != "auto" && study.reference != "exact" && study.reference != "self") {
    throw error(errc::config, "study.reference must be auto, exact, or self");
  }
  return study;
}

std::map<std::string, std::string> RunConfig::echo() const {
  std::map<std::string, std::string> kv;
  kv["grid.n"] = std::to_string(grid.n);
  kv["grid.dim"] = std::to_string(grid.dim);
  kv["system"] = scheme.model.system == System::Barotropic ? "barotropic" : "complete";
  kv["gamma"] = format_double(scheme.model.gamma());
  if (scheme.model.system == System::Barotropic) {
    kv["a"] = format_double(scheme.model.baro.a);
  }
  kv["flux.kind"] = scheme.flux.variant == FluxVariant::LocalLF ? "local-lf" : "global-lf";
  kv["flux.jump_scaling"] =
      scheme.flux.jump_scaling == JumpScaling::Paper ? "paper" : "classical";
  kv["cfl"] = format_double(scheme.cfl);
  kv["integrator"] = scheme.integrator == Integrator::SSPRK2 ? "ssprk2" : "forward-euler";
  kv["t_end"] = format_double(scheme.t_end);
  kv["rho_floor"] = format_double(scheme.rho_floor);
  kv["e_floor"] = format_double(scheme.e_floor);
  kv["case"] = case_name;
  for (const auto& [key, value] : case_params) {
    kv["case." + key] = format_double(value);
  }
  if (!snapshots.empty()) {
    std::string list;
    for (std::size_t i = 0; i < snapshots.size(); ++i) {
      list += (i ? "," : "") + format_double(snapshots[i]);
    }
    kv["snapshots"] = list;
  }
  kv["output.dir"] = output_dir;
  if (chi.has_value()) {
    kv["chi.kind"] = chi->kind == ChiSpec::Kind::Cutoff ? "cutoff" : "capped";
    kv["chi.param"] = format_double(chi->param);
  } else {
    kv["chi.kind"] = "cutoff";
    kv["chi.param"] = "auto";
  }
  return kv;
}

std::map<std::string, std::string> StudyConfig::echo() const {
  std::map<std::string, std::string> kv = base.echo();
  kv["study.kind"] = kind;
  std::string lv;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    lv += (i ? "," : "") + std::to_string(levels[i]);
  }
  kv["study.levels"] = lv;
  if (!windows.empty()) {
    std::string ws;
    for (std::size_t i = 0; i < windows.size(); ++i) {
      std::string item = format_double(windows[i].t);
      for (int a = 0; a < base.grid.dim; ++a) {
        item += "," + format_double(windows[i].x[a]);
      }
      if (windows[i].radius > 0.0) {
        item += "," + format_double(windows[i].radius);
      }
      ws += (i ? ";" : "") + item;
    }
    kv["study.windows"] = ws;
  }
  kv["study.reference"] = reference;
  return kv;
}

}  // namespace esfv
