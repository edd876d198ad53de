// Command-line front end for the esfv shared library. Links the C API only.

#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "esfv/esfv.h"

namespace {

struct ConfigHandle {
  esfv_config* cfg = esfv_config_new();
  ~ConfigHandle() { esfv_config_free(cfg); }
  ConfigHandle() = default;
  ConfigHandle(const ConfigHandle&) = delete;
  ConfigHandle& operator=(const ConfigHandle&) = delete;
};

int fail(esfv_status status) {
  std::fprintf(stderr, "esfv: %s\n", esfv_last_error());
  return static_cast<int>(status);
}

int load_config(ConfigHandle& handle, const std::string& path,
                const std::vector<std::string>& overrides) {
  esfv_status status = esfv_config_load(handle.cfg, path.c_str());
  if (status != ESFV_OK) {
    return fail(status);
  }
  for (const std::string& item : overrides) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      std::fprintf(stderr, "esfv: override '%s' is not of the form key=value\n", item.c_str());
      return static_cast<int>(ESFV_ERR_CONFIG);
    }
    status = esfv_config_set(handle.cfg, item.substr(0, eq).c_str(), item.substr(eq + 1).c_str());
    if (status != ESFV_OK) {
      return fail(status);
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entropy stable finite volume solver and verification harness "
               "for the compressible Euler equations on the periodic torus"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir;
  std::string report_path;

  auto add_config_options = [&](CLI::App* cmd) {
    cmd->add_option("config", config_path, "configuration file (key = value lines)")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("overrides", overrides, "key=value overrides applied after the file");
    cmd->add_option("--out", out_dir, "output directory (default: the config's output.dir)");
  };

  CLI::App* cmd_run = app.add_subcommand("run", "run a single simulation");
  add_config_options(cmd_run);

  CLI::App* cmd_conv =
      app.add_subcommand("convergence", "refinement study (convergence or weak-bv)");
  add_config_options(cmd_conv);

  CLI::App* cmd_dmv = app.add_subcommand("dmv", "Young-measure collapse study over levels");
  add_config_options(cmd_dmv);

  CLI::App* cmd_check = app.add_subcommand("check", "run the property self-check suite");
  cmd_check->add_option("--report", report_path, "write the JSON check report here");

  CLI11_PARSE(app, argc, argv);

  if (cmd_check->parsed()) {
    const esfv_status status =
        esfv_check(report_path.empty() ? nullptr : report_path.c_str(), 1);
    if (status == ESFV_OK) {
      std::printf("all properties passed\n");
      return 0;
    }
    return fail(status);
  }

  ConfigHandle handle;
  if (const int rc = load_config(handle, config_path, overrides); rc != 0) {
    return rc;
  }
  const char* dir = out_dir.empty() ? nullptr : out_dir.c_str();

  esfv_status status = ESFV_OK;
  if (cmd_run->parsed()) {
    status = esfv_run(handle.cfg, dir, 1);
  } else if (cmd_conv->parsed()) {
    status = esfv_convergence(handle.cfg, dir, 1);
  } else if (cmd_dmv->parsed()) {
    status = esfv_dmv(handle.cfg, dir, 1);
  }
  return status == ESFV_OK ? 0 : fail(status);
}
