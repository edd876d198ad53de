#include "esfv/esfv.h"

#include <algorithm>
#include <cstring>
#include <memory>
#include <string>

#include "core/config.hpp"
#include "core/driver.hpp"

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

esfv_status status_of(const esfv::error& e) { return static_cast<esfv_status>(e.code()); }

template <typename Fn>
esfv_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const esfv::error& e) {
    set_error(e.what());
    return status_of(e);
  } catch (const std::exception& e) {
    set_error(e.what());
    return ESFV_ERR_RUNTIME;
  }
}

}  // namespace

struct esfv_config {
  esfv::KeyValues kv;
};

struct esfv_sim {
  esfv::RunConfig config;
  esfv::State state;
};

extern "C" {

const char* esfv_version(void) { return "0.1.0"; }

const char* esfv_last_error(void) { return g_last_error.c_str(); }

esfv_config* esfv_config_new(void) { return new esfv_config(); }

void esfv_config_free(esfv_config* cfg) { delete cfg; }

esfv_status esfv_config_load(esfv_config* cfg, const char* path) {
  if (cfg == nullptr || path == nullptr) {
    set_error("esfv_config_load: null argument");
    return ESFV_ERR_ARGUMENT;
  }
  return guarded([&]() {
    for (auto& [key, value] : esfv::load_config_file(path)) {
      cfg->kv[key] = value;
    }
    return ESFV_OK;
  });
}

esfv_status esfv_config_set(esfv_config* cfg, const char* key, const char* value) {
  if (cfg == nullptr || key == nullptr || value == nullptr) {
    set_error("esfv_config_set: null argument");
    return ESFV_ERR_ARGUMENT;
  }
  cfg->kv[key] = value;
  return ESFV_OK;
}

const char* esfv_config_get(const esfv_config* cfg, const char* key) {
  if (cfg == nullptr || key == nullptr) {
    return nullptr;
  }
  const auto it = cfg->kv.find(key);
  return it == cfg->kv.end() ? nullptr : it->second.c_str();
}

esfv_status esfv_run(const esfv_config* cfg, const char* out_dir, int verbose) {
  if (cfg == nullptr) {
    set_error("esfv_run: null config");
    return ESFV_ERR_ARGUMENT;
  }
  return guarded([&]() {
    const esfv::RunConfig run_cfg = esfv::make_run_config(cfg->kv);
    const std::string dir = out_dir != nullptr ? out_dir : run_cfg.output_dir;
    esfv::run_simulation(run_cfg, dir, verbose != 0);
    return ESFV_OK;
  });
}

esfv_status esfv_convergence(const esfv_config* cfg, const char* out_dir, int verbose) {
  if (cfg == nullptr) {
    set_error("esfv_convergence: null config");
    return ESFV_ERR_ARGUMENT;
  }
  return guarded([&]() {
    const esfv::StudyConfig study = esfv::make_study_config(cfg->kv);
    if (study.kind == "dmv") {
      throw esfv::error(esfv::errc::config, "study.kind=dmv belongs to the dmv command");
    }
    const std::string dir = out_dir != nullptr ? out_dir : study.base.output_dir;
    esfv::convergence_study(study, dir, verbose != 0);
    return ESFV_OK;
  });
}

esfv_status esfv_dmv(const esfv_config* cfg, const char* out_dir, int verbose) {
  if (cfg == nullptr) {
    set_error("esfv_dmv: null config");
    return ESFV_ERR_ARGUMENT;
  }
  return guarded([&]() {
    esfv::KeyValues kv = cfg->kv;
    kv["study.kind"] = "dmv";
    const esfv::StudyConfig study = esfv::make_study_config(kv);
    const std::string dir = out_dir != nullptr ? out_dir : study.base.output_dir;
    esfv::dmv_study(study, dir, verbose != 0);
    return ESFV_OK;
  });
}

esfv_status esfv_check(const char* report_path, int verbose) {
  return guarded([&]() {
    const std::vector<esfv::CheckResult> results =
        esfv::check_suite(report_path != nullptr ? report_path : "", verbose != 0);
    const bool all_pass =
        std::all_of(results.begin(), results.end(), [](const auto& r) { return r.pass; });
    if (!all_pass) {
      const auto it =
          std::find_if(results.begin(), results.end(), [](const auto& r) { return !r.pass; });
      set_error("property failed: " + it->name +
                (it->detail.empty() ? std::string{} : " (" + it->detail + ")"));
      return ESFV_ERR_PROPERTY;
    }
    return ESFV_OK;
  });
}

esfv_sim* esfv_sim_new(const esfv_config* cfg) {
  if (cfg == nullptr) {
    set_error("esfv_sim_new: null config");
    return nullptr;
  }
  esfv_sim* sim = nullptr;
  const esfv_status status = guarded([&]() {
    auto owned = std::make_unique<esfv_sim>();
    owned->config = esfv::make_run_config(cfg->kv);
    const esfv::CaseSpec spec = owned->config.make_case_spec();
    owned->state = esfv::init(owned->config.scheme, owned->config.grid, spec.initial);
    sim = owned.release();
    return ESFV_OK;
  });
  return status == ESFV_OK ? sim : nullptr;
}

void esfv_sim_free(esfv_sim* sim) { delete sim; }

double esfv_sim_time(const esfv_sim* sim) { return sim == nullptr ? -1.0 : sim->state.time; }

long long esfv_sim_cells(const esfv_sim* sim) {
  return sim == nullptr ? -1 : static_cast<long long>(sim->state.field.grid.cell_count());
}

int esfv_sim_components(const esfv_sim* sim) {
  return sim == nullptr ? -1 : sim->state.field.components;
}

esfv_status esfv_sim_advance(esfv_sim* sim, double t_target) {
  if (sim == nullptr) {
    set_error("esfv_sim_advance: null handle");
    return ESFV_ERR_ARGUMENT;
  }
  if (!(t_target >= sim->state.time)) {
    set_error("esfv_sim_advance: target time precedes the current time");
    return ESFV_ERR_ARGUMENT;
  }
  return guarded([&]() {
    esfv::SchemeConfig scheme = sim->config.scheme;
    scheme.t_end = t_target;
    while (sim->state.time < t_target) {
      double dt = esfv::cfl_dt(scheme, sim->state);
      bool lands = false;
      if (sim->state.time + dt >= t_target - 1e-14 * std::max(1.0, std::abs(t_target))) {
        dt = t_target - sim->state.time;
        lands = true;
      }
      sim->state = esfv::step(scheme, sim->state, dt);
      if (lands) {
        sim->state.time = t_target;
      }
    }
    return ESFV_OK;
  });
}

esfv_status esfv_sim_state(const esfv_sim* sim, double* buffer, size_t len) {
  if (sim == nullptr || buffer == nullptr) {
    set_error("esfv_sim_state: null argument");
    return ESFV_ERR_ARGUMENT;
  }
  const auto& values = sim->state.field.values;
  if (len != values.size()) {
    set_error("esfv_sim_state: buffer length must be cells * components");
    return ESFV_ERR_ARGUMENT;
  }
  std::memcpy(buffer, values.data(), len * sizeof(double));
  return ESFV_OK;
}

}  // extern "C"
