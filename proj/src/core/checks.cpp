#include "core/checks.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <random>

#include "core/cases.hpp"

namespace esfv {

namespace {

// Fixed-seed generators keep the suite deterministic across runs.
std::mt19937 make_rng(int salt) { return std::mt19937(0x5eed0000u + salt); }

ConsState random_state(const EulerModel& model, std::mt19937& rng) {
  std::uniform_real_distribution<double> rho_d(0.4, 2.5);
  std::uniform_real_distribution<double> u_d(-1.0, 1.0);
  std::uniform_real_distribution<double> p_d(0.5, 2.0);
  ConsState u;
  u.rho = rho_d(rng);
  double usq = 0.0;
  for (int i = 0; i < model.dim; ++i) {
    const double ui = u_d(rng);
    u.m[i] = u.rho * ui;
    usq += ui * ui;
  }
  if (model.system == System::Complete) {
    u.E = p_d(rng) / (model.ideal.gamma - 1.0) + 0.5 * u.rho * usq;
  }
  return u;
}

Field random_field(const EulerModel& model, int n, std::mt19937& rng) {
  GridSpec grid{model.dim, n};
  Field f = Field::zeros(grid, model.components());
  const std::int64_t cells = grid.cell_count();
  for (std::int64_t k = 0; k < cells; ++k) {
    random_state(model, rng).to_cell(f.cell_values(k), model.system, model.dim);
  }
  return f;
}

double eta_of(const EulerModel& model, const ConsState& u, const ChiSpec& chi) {
  return model.entropy_pair(u, chi).eta;
}

CheckResult make_result(const std::string& name, double worst, double bound,
                        const std::string& detail = {}) {
  CheckResult r;
  r.name = name;
  r.worst = worst;
  r.bound = bound;
  r.pass = worst <= bound;
  r.detail = r.pass ? std::string{} : detail;
  return r;
}

EulerModel barotropic_model(int dim) {
  EulerModel m;
  m.system = System::Barotropic;
  m.dim = dim;
  m.baro = {1.0, 2.0};
  return m;
}

EulerModel complete_model(int dim) {
  EulerModel m;
  m.system = System::Complete;
  m.dim = dim;
  m.ideal = {1.4};
  return m;
}

SchemeConfig sod_config(int n, double cfl) {
  SchemeConfig cfg;
  cfg.model = complete_model(1);
  cfg.flux = {FluxVariant::LocalLF, JumpScaling::Paper};
  cfg.cfl = cfl;
  cfg.t_end = 1.0;
  return cfg;
}

}  // namespace

EntropyVars default_entropy_vars(const EulerModel& model, const ConsState& u, const ChiSpec& chi) {
  return model.entropy_vars_of(u, chi);
}

CheckResult check_entropy_gradient(const EulerModel& model, const ChiSpec& chi, int count,
                                   const EntropyVarsFn& route) {
  std::mt19937 rng = make_rng(model.system == System::Barotropic ? 11 : 12);
  const int m = model.components();
  double worst = 0.0;
  std::string detail;
  for (int it = 0; it < count; ++it) {
    const ConsState u = random_state(model, rng);
    const EntropyVars vars = route(model, u, chi);
    std::array<double, 5> cell{};
    u.to_cell(cell, model.system, model.dim);
    double vnorm = 1.0;
    for (int c = 0; c < m; ++c) {
      vnorm = std::max(vnorm, std::abs(vars.v[c]));
    }
    for (int c = 0; c < m; ++c) {
      const double step = 1e-6 * std::max(1.0, std::abs(cell[c]));
      std::array<double, 5> up = cell;
      std::array<double, 5> dn = cell;
      up[c] += step;
      dn[c] -= step;
      const ConsState sp = ConsState::from_cell(up, model.system, model.dim);
      const ConsState sm = ConsState::from_cell(dn, model.system, model.dim);
      const double fd = (eta_of(model, sp, chi) - eta_of(model, sm, chi)) / (2.0 * step);
      const double err = std::abs(fd - vars.v[c]) / vnorm;
      if (err > worst) {
        worst = err;
        detail = fmt::format("state #{} component {}: fd={:.12g} analytic={:.12g}", it, c, fd,
                             vars.v[c]);
      }
    }
  }
  std::string name = "entropy gradient ";
  if (model.system == System::Barotropic) {
    name += "barotropic";
  } else {
    name += fmt::format("complete ({})",
                        chi.kind == ChiSpec::Kind::Cutoff ? "cutoff" : "capped");
  }
  return make_result(name, worst, 1e-6, detail);
}

CheckResult check_flux_consistency(const EulerModel& model, int count) {
  std::mt19937 rng = make_rng(21);
  const int m = model.components();
  const FluxKind kinds[2] = {{FluxVariant::GlobalLF, JumpScaling::Paper},
                             {FluxVariant::LocalLF, JumpScaling::Classical}};
  double worst = 0.0;
  std::string detail;
  std::vector<double> fn(m);
  std::vector<double> fp(m);
  for (int it = 0; it < count; ++it) {
    const ConsState u = random_state(model, rng);
    const double lambda = max_wave_speed(model, u);
    for (int axis = 0; axis < model.dim; ++axis) {
      physical_flux(model, u, axis, fp);
      double scale = 1.0;
      for (int c = 0; c < m; ++c) {
        scale = std::max(scale, std::abs(fp[c]));
      }
      for (const FluxKind& kind : kinds) {
        numerical_flux(kind, model, u, u, axis, lambda, fn);
        for (int c = 0; c < m; ++c) {
          const double err = std::abs(fn[c] - fp[c]) / scale;
          if (err > worst) {
            worst = err;
            detail = fmt::format("state #{} axis {} component {}", it, axis, c);
          }
        }
      }
    }
  }
  return make_result(fmt::format("flux consistency {}", model.system == System::Barotropic
                                                            ? "barotropic"
                                                            : "complete"),
                     worst, 1e-12, detail);
}

CheckResult check_entropy_flux_consistency(const EulerModel& model, const ChiSpec& chi,
                                           int count) {
  std::mt19937 rng = make_rng(31);
  const int m = model.components();
  double worst = 0.0;
  std::string detail;
  std::vector<double> face(m);
  for (int it = 0; it < count; ++it) {
    const ConsState u = random_state(model, rng);
    const double lambda = max_wave_speed(model, u);
    const EntropyPair pair = model.entropy_pair(u, chi);
    for (int axis = 0; axis < model.dim; ++axis) {
      numerical_flux({FluxVariant::LocalLF, JumpScaling::Paper}, model, u, u, axis, lambda, face);
      const double q = numerical_entropy_flux(model, chi, u, u, axis, face);
      const double scale = std::max(1.0, std::abs(pair.q[axis]));
      const double err = std::abs(q - pair.q[axis]) / scale;
      if (err > worst) {
        worst = err;
        detail = fmt::format("state #{} axis {}: Q={:.12g} q={:.12g}", it, axis, q, pair.q[axis]);
      }
    }
  }
  return make_result(fmt::format("entropy flux consistency {}",
                                 model.system == System::Barotropic ? "barotropic" : "complete"),
                     worst, 1e-12, detail);
}

CheckResult check_dual_assembly(const EulerModel& model, int n) {
  std::mt19937 rng = make_rng(41 + model.dim);
  SchemeConfig cfg;
  cfg.model = model;
  cfg.flux = {FluxVariant::GlobalLF, JumpScaling::Paper};
  cfg.t_end = 1.0;

  State state;
  state.time = 0.0;
  state.field = random_field(model, n, rng);
  state.lambda_max = global_wave_speed(cfg, state.field);

  const Field face_rhs = rhs(cfg, state);

  // Independent route through the grid module operators.
  const GridSpec& g = state.field.grid;
  const int m = model.components();
  const std::int64_t cells = g.cell_count();
  Field oracle = laplacian_h(state.field);
  const double lam_h = state.lambda_max * g.cell_width();
  for (double& v : oracle.values) {
    v *= lam_h;
  }
  std::vector<double> f(m);
  for (int c = 0; c < m; ++c) {
    Field flux_c = Field::zeros(g, g.dim);
    for (std::int64_t k = 0; k < cells; ++k) {
      const ConsState u = cell_state(model, state.field, k);
      for (int axis = 0; axis < g.dim; ++axis) {
        physical_flux(model, u, axis, f);
        flux_c.at(k, axis) = f[c];
      }
    }
    const Field div = div_central(flux_c);
    for (std::int64_t k = 0; k < cells; ++k) {
      oracle.at(k, c) -= div.at(k, 0);
    }
  }

  double scale = 1.0;
  for (double v : face_rhs.values) {
    scale = std::max(scale, std::abs(v));
  }
  double worst = 0.0;
  std::string detail;
  for (std::size_t i = 0; i < face_rhs.values.size(); ++i) {
    const double err = std::abs(face_rhs.values[i] - oracle.values[i]) / scale;
    if (err > worst) {
      worst = err;
      detail = fmt::format("entry {}: face={:.17g} oracle={:.17g}", i, face_rhs.values[i],
                           oracle.values[i]);
    }
  }
  return make_result(fmt::format("dual assembly {} {}d",
                                 model.system == System::Barotropic ? "barotropic" : "complete",
                                 model.dim),
                     worst, 1e-13, detail);
}

CheckResult check_rhs_conservative(const EulerModel& model, FluxVariant variant, int n) {
  std::mt19937 rng = make_rng(51);
  SchemeConfig cfg;
  cfg.model = model;
  cfg.flux = {variant, JumpScaling::Paper};
  cfg.t_end = 1.0;
  State state;
  state.field = random_field(model, n, rng);
  state.lambda_max = global_wave_speed(cfg, state.field);
  const Field r = rhs(cfg, state);
  const std::vector<double> totals = integrate(r);
  double rhs_scale = 1.0;
  for (double v : r.values) {
    rhs_scale = std::max(rhs_scale, std::abs(v));
  }
  double worst = 0.0;
  for (double t : totals) {
    worst = std::max(worst, std::abs(t) / rhs_scale);
  }
  return make_result(fmt::format("rhs telescoping {}",
                                 variant == FluxVariant::GlobalLF ? "global-lf" : "local-lf"),
                     worst, 1e-14);
}

CheckResult check_grid_telescoping(int dim, int n) {
  std::mt19937 rng = make_rng(61 + dim);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  GridSpec g{dim, n};
  Field scalar = Field::zeros(g, 1);
  Field vec = Field::zeros(g, dim);
  for (double& v : scalar.values) {
    v = d(rng);
  }
  for (double& v : vec.values) {
    v = d(rng);
  }
  const double lap_total = integrate(laplacian_h(scalar))[0];
  const double div_total = integrate(div_central(vec))[0];
  const double scale = static_cast<double>(n) * n;  // operator output magnitude
  const double worst = std::max(std::abs(lap_total), std::abs(div_total)) / scale;
  return make_result(fmt::format("grid telescoping {}d", dim), worst, 1e-14);
}

CheckResult check_grid_adjoint(int dim, int n) {
  std::mt19937 rng = make_rng(71 + dim);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  GridSpec grid{dim, n};
  Field g = Field::zeros(grid, 1);
  Field phi = Field::zeros(grid, 1);
  for (double& v : g.values) {
    v = d(rng);
  }
  for (double& v : phi.values) {
    v = d(rng);
  }
  double worst = 0.0;
  for (int axis = 0; axis < dim; ++axis) {
    const Field fwd = diff(g, axis, DiffMode::Forward);
    const Field bwd = diff(phi, axis, DiffMode::Backward);
    double lhs = 0.0;
    double rhs_sum = 0.0;
    const std::int64_t cells = grid.cell_count();
    for (std::int64_t k = 0; k < cells; ++k) {
      lhs += fwd.at(k, 0) * phi.at(k, 0);
      rhs_sum += g.at(k, 0) * bwd.at(k, 0);
    }
    worst = std::max(worst, std::abs(lhs + rhs_sum) / (static_cast<double>(cells) * n));
  }
  return make_result(fmt::format("discrete integration by parts {}d", dim), worst, 1e-14);
}

CheckResult check_jump_avg_symmetry(int dim, int n) {
  std::mt19937 rng = make_rng(81 + dim);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  GridSpec grid{dim, n};
  Field f = Field::zeros(grid, 2);
  for (double& v : f.values) {
    v = d(rng);
  }
  double worst = 0.0;
  const std::int64_t cells = grid.cell_count();
  for (std::int64_t k = 0; k < cells; ++k) {
    for (int axis = 0; axis < dim; ++axis) {
      const std::int64_t l = grid.neighbor(k, axis, +1);
      const auto jk = jump(f, {k, axis, +1});
      const auto jl = jump(f, {l, axis, -1});
      const auto ak = avg(f, {k, axis, +1});
      const auto al = avg(f, {l, axis, -1});
      for (int c = 0; c < 2; ++c) {
        worst = std::max(worst, std::abs(jk[c] + jl[c]));
        worst = std::max(worst, std::abs(ak[c] - al[c]));
      }
    }
  }
  return make_result(fmt::format("jump antisymmetry / avg symmetry {}d", dim), worst, 0.0);
}

CheckResult check_shift_equivariance(int dim, int n) {
  std::mt19937 rng = make_rng(91 + dim);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  GridSpec grid{dim, n};
  Field f = Field::zeros(grid, 1);
  for (double& v : f.values) {
    v = d(rng);
  }
  const std::array<int, 3> offset = {1, dim > 1 ? 2 : 0, dim > 2 ? 3 : 0};
  double worst = 0.0;
  {
    const Field a = laplacian_h(cyclic_shift(f, offset));
    const Field b = cyclic_shift(laplacian_h(f), offset);
    for (std::size_t i = 0; i < a.values.size(); ++i) {
      worst = std::max(worst, std::abs(a.values[i] - b.values[i]));
    }
  }
  for (int axis = 0; axis < dim; ++axis) {
    const Field a = diff(cyclic_shift(f, offset), axis, DiffMode::Central);
    const Field b = cyclic_shift(diff(f, axis, DiffMode::Central), offset);
    for (std::size_t i = 0; i < a.values.size(); ++i) {
      worst = std::max(worst, std::abs(a.values[i] - b.values[i]));
    }
  }
  return make_result(fmt::format("operator shift equivariance {}d", dim), worst, 0.0);
}

CheckResult check_chi_shape(const ChiSpec& chi) {
  double worst = 0.0;
  std::string detail;
  const double lo = chi.param - 3.0;
  const double hi = chi.param + 3.0;
  const int samples = 600;
  const double dz = (hi - lo) / samples;
  for (int i = 0; i + 2 < samples; ++i) {
    const double z0 = lo + i * dz;
    const double z1 = z0 + dz;
    const double z2 = z1 + dz;
    const double monotone = chi.value(z1) - chi.value(z0);  // must be >= 0
    const double concave =
        chi.value(z1) - 0.5 * (chi.value(z0) + chi.value(z2));  // must be >= 0
    const double v = std::max(-monotone, -concave);
    if (v > worst) {
      worst = v;
      detail = fmt::format("z={:.6g}", z0);
    }
  }
  return make_result(chi.kind == ChiSpec::Kind::Cutoff ? "chi shape cutoff" : "chi shape capped",
                     worst, 1e-15, detail);
}

CheckResult check_translation_equivariance() {
  SchemeConfig cfg = sod_config(32, 0.3);
  const CaseSpec sod = make_case(cfg.model, "riemann", {});
  const GridSpec grid{1, 32};
  State a = init(cfg, grid, sod.initial);

  State b;
  b.time = 0.0;
  const std::array<int, 3> offset = {7, 0, 0};
  b.field = cyclic_shift(a.field, offset);
  b.lambda_max = global_wave_speed(cfg, b.field);

  for (int s = 0; s < 12; ++s) {
    const double dt = std::min(cfl_dt(cfg, a), cfl_dt(cfg, b));
    a = step(cfg, a, dt);
    b = step(cfg, b, dt);
  }
  const Field shifted = cyclic_shift(a.field, offset);
  double worst = 0.0;
  for (std::size_t i = 0; i < shifted.values.size(); ++i) {
    worst = std::max(worst, std::abs(shifted.values[i] - b.field.values[i]));
  }
  return make_result("translation equivariance", worst, 0.0);
}

CheckResult check_reflection_equivariance() {
  SchemeConfig cfg = sod_config(32, 0.3);
  const CaseSpec sod = make_case(cfg.model, "riemann", {});
  const GridSpec grid{1, 32};
  State a = init(cfg, grid, sod.initial);

  auto mirror = [&](const Field& f) {
    Field out = Field::zeros(f.grid, f.components);
    for (std::int64_t k = 0; k < f.grid.cell_count(); ++k) {
      const std::int64_t mk = f.grid.cell_count() - 1 - k;
      out.at(mk, 0) = f.at(k, 0);
      out.at(mk, 1) = -f.at(k, 1);
      out.at(mk, 2) = f.at(k, 2);
    }
    return out;
  };

  State b;
  b.time = 0.0;
  b.field = mirror(a.field);
  b.lambda_max = global_wave_speed(cfg, b.field);

  for (int s = 0; s < 12; ++s) {
    const double dt = std::min(cfl_dt(cfg, a), cfl_dt(cfg, b));
    a = step(cfg, a, dt);
    b = step(cfg, b, dt);
  }
  const Field mirrored = mirror(a.field);
  double worst = 0.0;
  for (std::size_t i = 0; i < mirrored.values.size(); ++i) {
    worst = std::max(worst, std::abs(mirrored.values[i] - b.field.values[i]));
  }
  return make_result("reflection equivariance", worst, 0.0);
}

CheckResult check_determinism() {
  SchemeConfig cfg = sod_config(48, 0.4);
  cfg.t_end = 0.05;
  const CaseSpec sod = make_case(cfg.model, "riemann", {});
  const GridSpec grid{1, 48};
  auto run_once = [&]() {
    State s = init(cfg, grid, sod.initial);
    while (s.time < cfg.t_end) {
      s = step(cfg, s, cfl_dt(cfg, s));
    }
    return s;
  };
  const State a = run_once();
  const State b = run_once();
  double worst = 0.0;
  for (std::size_t i = 0; i < a.field.values.size(); ++i) {
    if (a.field.values[i] != b.field.values[i]) {
      worst = 1.0;
    }
  }
  return make_result("determinism (bitwise repeat)", worst, 0.0);
}

std::vector<CheckResult> run_check_suite() {
  std::vector<CheckResult> results;

  for (int dim : {1, 2}) {
    results.push_back(check_grid_telescoping(dim, dim == 1 ? 17 : 9));
    results.push_back(check_grid_adjoint(dim, dim == 1 ? 17 : 9));
    results.push_back(check_jump_avg_symmetry(dim, dim == 1 ? 16 : 8));
    results.push_back(check_shift_equivariance(dim, dim == 1 ? 16 : 8));
  }

  const ChiSpec active_chi = ChiSpec::capped(50.0);  // smooth active branch
  results.push_back(check_entropy_gradient(barotropic_model(1), active_chi, 100));
  results.push_back(check_entropy_gradient(complete_model(2), active_chi, 100));
  results.push_back(check_entropy_gradient(complete_model(2), ChiSpec::cutoff(50.0), 100));
  results.push_back(check_chi_shape(ChiSpec::cutoff(0.5)));
  results.push_back(check_chi_shape(ChiSpec::capped(1.5)));

  results.push_back(check_flux_consistency(barotropic_model(2), 100));
  results.push_back(check_flux_consistency(complete_model(3), 100));
  results.push_back(check_entropy_flux_consistency(barotropic_model(1), active_chi, 100));
  results.push_back(check_entropy_flux_consistency(complete_model(2), active_chi, 100));

  results.push_back(check_dual_assembly(barotropic_model(1), 16));
  results.push_back(check_dual_assembly(complete_model(1), 16));
  results.push_back(check_dual_assembly(complete_model(2), 8));
  results.push_back(check_rhs_conservative(complete_model(1), FluxVariant::GlobalLF, 16));
  results.push_back(check_rhs_conservative(complete_model(1), FluxVariant::LocalLF, 16));

  results.push_back(check_translation_equivariance());
  results.push_back(check_reflection_equivariance());
  results.push_back(check_determinism());

  return results;
}

}  // namespace esfv
