#include "vmkdv/newton.hpp"
#include "vmkdv/invariants.hpp"

#include <cmath>

namespace vmkdv {

Stepper::Stepper(SpacePtr space, int d, SolverKind solver, ExecPolicy policy)
    : space_(std::move(space)), d_(d), policy_(policy),
      ops_(build_operators(*space_)), solver_(space_, d, solver) {}

DiscreteState Stepper::initial_state(const SpatialFn& ic, InitMode mode) const {
    DiscreteState state(space_, d_);
    state.U = mode == InitMode::Project ? l2_project(space_, d_, ic)
                                        : interpolate_nodal(space_, d_, ic);
    project_vw(state.U, 0.5, ops_, state.V, state.W, policy_);
    state.P = 0.0;
    state.t = 0.0;
    return state;
}

namespace {

void apply_update(DiscreteState& it, const Eigen::VectorXd& update, double lambda) {
    const int d = it.U.components();
    const int N = it.U.space().dof_count();
    const int dN = d * N;
    for (int i = 0; i < d; ++i) {
        it.U.coeffs().row(i) += lambda * update.segment(i * N, N).transpose();
        it.V.coeffs().row(i) += lambda * update.segment(dN + i * N, N).transpose();
        it.W.coeffs().row(i) += lambda * update.segment(2 * dN + i * N, N).transpose();
    }
    it.P += lambda * update[3 * dN];
}

} // namespace

std::pair<DiscreteState, StepStats> Stepper::step(const DiscreteState& prev, double tau,
                                                  const NewtonConfig& cfg) const {
    if (tau == 0.0) throw std::invalid_argument("step: tau must be nonzero");
    if (!(cfg.tolerance > 0.0) || cfg.max_iterations < 1)
        throw std::invalid_argument("step: bad Newton configuration");

    DiscreteState it = prev;
    it.t = prev.t + tau;
    it.P = 0.0;
    project_vw(prev.U, 1.0, ops_, it.V, it.W, policy_);

    StepStats stats;
    double res_norm = 0.0;
    for (int k = 0; k <= cfg.max_iterations; ++k) {
        assemble_residual(prev, it, tau, space_, ops_, sys_, policy_);
        res_norm = sys_.residual.lpNorm<Eigen::Infinity>();
        if (!std::isfinite(res_norm))
            throw NewtonFailure("Newton diverged (non-finite residual)", k, res_norm);
        if (res_norm <= cfg.tolerance) {
            stats.iterations = k;
            stats.final_residual = res_norm;
            stats.multiplier = it.P;
            stats.constraint = sys_.residual[3 * sys_.d * sys_.N];
            stats.constraint_replaced = sys_.constraint_replaced;
            return {std::move(it), stats};
        }
        if (k == cfg.max_iterations) break;

        add_jacobian(prev, it, sys_, policy_);
        Eigen::VectorXd update;
        try {
            update = solver_.solve(sys_);
        } catch (const SingularBlockSystem&) {
            if (sys_.constraint_replaced)
                throw NewtonFailure("singular block system", k, res_norm);
            // constructed degenerate case (e.g. V = W = 0 with the constraint
            // row retained): pin P and retry once
            sys_.constraint_replaced = true;
            update = solver_.solve(sys_);
        }

        double lambda = 1.0;
        if (cfg.damping) {
            DiscreteState trial = it;
            apply_update(trial, update, lambda);
            BlockSystem probe;
            assemble_residual(prev, trial, tau, space_, ops_, probe, policy_);
            double trial_norm = probe.residual.lpNorm<Eigen::Infinity>();
            while ((!std::isfinite(trial_norm) || trial_norm > res_norm) && lambda > 1.0 / 64.0) {
                lambda *= 0.5;
                trial = it;
                apply_update(trial, update, lambda);
                assemble_residual(prev, trial, tau, space_, ops_, probe, policy_);
                trial_norm = probe.residual.lpNorm<Eigen::Infinity>();
            }
        }
        apply_update(it, update, lambda);
    }
    throw NewtonFailure("Newton did not converge within max iterations",
                        cfg.max_iterations, res_norm);
}

DiscreteState initial_state(const SpacePtr& space, int d, const SpatialFn& ic, InitMode mode) {
    Stepper stepper(space, d);
    return stepper.initial_state(ic, mode);
}

std::pair<DiscreteState, StepStats> step(const Stepper& stepper, const DiscreteState& prev,
                                         double tau, const NewtonConfig& cfg) {
    return stepper.step(prev, tau, cfg);
}

} // namespace vmkdv
