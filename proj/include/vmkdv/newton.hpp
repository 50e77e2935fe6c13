#pragma once

#include "vmkdv/assembly.hpp"
#include "vmkdv/solver.hpp"

#include <stdexcept>
#include <utility>

namespace vmkdv {

struct NewtonConfig {
    double tolerance = 1e-12; // absolute, residual max-norm
    int max_iterations = 50;
    bool damping = false;     // backtracking on residual increase
};

struct StepStats {
    int iterations = 0;
    double final_residual = 0.0;
    double multiplier = 0.0;   // accepted P
    double constraint = 0.0;   // int V . W at the accepted iterate
    bool constraint_replaced = false;
};

class NewtonFailure : public std::runtime_error {
public:
    NewtonFailure(const std::string& what, int iterations, double residual_norm)
        : std::runtime_error(what), iterations(iterations), residual_norm(residual_norm) {}

    int iterations = 0;
    double residual_norm = 0.0;
    long step_index = -1; // filled by the marching driver
};

enum class InitMode { Project, Interpolate };

/// Per-run solver context: owns the assembled constant operators and the
/// factorization workspace.
class Stepper {
public:
    Stepper(SpacePtr space, int d, SolverKind solver = SolverKind::Banded,
            ExecPolicy policy = default_policy());

    const SpacePtr& space() const { return space_; }
    const SpaceOperators& ops() const { return ops_; }
    int components() const { return d_; }

    /// U0 by projection (default) or nodal interpolation; V0, W0 from the
    /// spatially discrete defining equations at U0 (diagnostic only), P0 = 0.
    DiscreteState initial_state(const SpatialFn& ic, InitMode mode = InitMode::Project) const;

    /// One step of the fully discrete scheme. tau may be negative (reversal
    /// checks); it must be nonzero.
    std::pair<DiscreteState, StepStats> step(const DiscreteState& prev, double tau,
                                             const NewtonConfig& cfg) const;

private:
    SpacePtr space_;
    int d_;
    ExecPolicy policy_;
    SpaceOperators ops_;
    mutable BlockSolver solver_;
    mutable BlockSystem sys_;
};

/// Spec-named wrappers.
DiscreteState initial_state(const SpacePtr& space, int d, const SpatialFn& ic,
                            InitMode mode = InitMode::Project);
std::pair<DiscreteState, StepStats> step(const Stepper& stepper, const DiscreteState& prev,
                                         double tau, const NewtonConfig& cfg);

} // namespace vmkdv
