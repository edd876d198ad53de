#pragma once

#include <functional>
#include <string>
#include <vector>

#include "core/diagnostics.hpp"
#include "core/scheme.hpp"

namespace esfv {

struct CheckResult {
  std::string name;
  bool pass = false;
  double worst = 0.0;       // worst observed value against the bound
  double bound = 0.0;
  std::string detail;       // first counterexample when failing
};

// Injectable entropy-variable route; the default forwards to the eos module.
// Tests substitute perturbed routes to confirm the gradient check bites.
using EntropyVarsFn =
    std::function<EntropyVars(const EulerModel&, const ConsState&, const ChiSpec&)>;

EntropyVars default_entropy_vars(const EulerModel& model, const ConsState& u, const ChiSpec& chi);

// Central finite-difference check of V = grad_U eta at `count` pseudo-random
// admissible states; relative error bound 1e-6.
CheckResult check_entropy_gradient(const EulerModel& model, const ChiSpec& chi, int count,
                                   const EntropyVarsFn& route = default_entropy_vars);

// F(w, w) = f(w) and Q(w, w) = q(w) at pseudo-random admissible states.
CheckResult check_flux_consistency(const EulerModel& model, int count);
CheckResult check_entropy_flux_consistency(const EulerModel& model, const ChiSpec& chi, int count);

// Face-assembled RHS with the global coefficient against the independent
// route -div_central(f) + lambda h laplacian_h(U), assembled from grid ops.
CheckResult check_dual_assembly(const EulerModel& model, int n);

// integrate(rhs) = 0 component-wise (telescoping of the conservative form).
CheckResult check_rhs_conservative(const EulerModel& model, FluxVariant variant, int n);

// Discrete operator identities on pseudo-random fields.
CheckResult check_grid_telescoping(int dim, int n);
CheckResult check_grid_adjoint(int dim, int n);
CheckResult check_jump_avg_symmetry(int dim, int n);
CheckResult check_shift_equivariance(int dim, int n);

// chi monotonicity and midpoint concavity on a dense sample.
CheckResult check_chi_shape(const ChiSpec& chi);

// Short Sod run: translated data evolve to the translated solution.
CheckResult check_translation_equivariance();
// Mirrored 1D data with negated momentum evolve to the mirrored solution.
CheckResult check_reflection_equivariance();
// Two identical short runs produce bit-identical states.
CheckResult check_determinism();

// The full property suite of all modules.
std::vector<CheckResult> run_check_suite();

}  // namespace esfv
