#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "core/cases.hpp"
#include "core/dmv.hpp"
#include "core/scheme.hpp"

namespace esfv {

// Flat key=value run description; fully deterministic (seedless). Unknown
// keys are rejected at validation time.
struct RunConfig {
  GridSpec grid;
  SchemeConfig scheme;
  std::string case_name;
  std::map<std::string, double> case_params;
  std::vector<double> snapshots;
  std::string output_dir = "out";
  std::optional<ChiSpec> chi;  // unset: cutoff at the initial entropy minimum

  CaseSpec make_case_spec() const { return make_case(scheme.model, case_name, case_params); }

  // Fully resolved key -> value map embedded in every artifact.
  std::map<std::string, std::string> echo() const;
};

struct StudyWindow {
  double t = 0.0;
  std::array<double, 3> x = {0.0, 0.0, 0.0};
  double radius = -1.0;  // <= 0: default 3 * max_k h_k
};

struct StudyConfig {
  RunConfig base;
  std::string kind;  // convergence | dmv | weak-bv
  std::vector<int> levels;
  std::vector<StudyWindow> windows;
  std::string reference = "auto";  // exact | self | auto

  std::map<std::string, std::string> echo() const;
};

// Raw parsed key=value pairs, before validation.
using KeyValues = std::map<std::string, std::string>;

KeyValues parse_config_text(const std::string& text);
KeyValues load_config_file(const std::string& path);

// `key=value` command-line override items.
void apply_overrides(KeyValues& kv, const std::vector<std::string>& overrides);

// Validation raises errc::config with the offending key in the message.
RunConfig make_run_config(const KeyValues& kv);
StudyConfig make_study_config(const KeyValues& kv);

}  // namespace esfv
