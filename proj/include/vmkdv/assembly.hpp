#pragma once

#include "vmkdv/exec.hpp"
#include "vmkdv/field.hpp"
#include "vmkdv/operators.hpp"

#include <Eigen/Sparse>

namespace vmkdv {

/// Timestep weights; the scheme works with the half-sum y^{n+1/2} = (y^n + y^{n+1})/2.
struct SchemeCoefficients {
    double tau = 0.0;
};

/// One time level: (U, V, W, P) plus the time it belongs to.
struct DiscreteState {
    FeField U, V, W;
    double P = 0.0;
    double t = 0.0;

    DiscreteState(const SpacePtr& space, int d) : U(space, d), V(space, d), W(space, d) {}
};

/// Newton linearization of the fully discrete system at (prev, guess), in the
/// segregated unknown layout [U (dN), V (dN), W (dN), P], total 3dN + 1.
///
/// Block rows (du, dv, dw, dP are the unknowns of the linear solve):
///   U:  (M/tau) du +        C dv + M dw            = -R_U
///   V:  AVU du    +        M dv                    = -R_V
///   W:  AWU du    +      P*M dv + M dw + (M v) dP  = -R_W
///   P:               (M w)^T dv + (M v)^T dw       = -R_P
/// with M, C the scalar periodic mass/derivative matrices applied per
/// component and AVU, AWU the nonlinear coupling blocks (cellwise dense).
struct BlockSystem {
    int d = 0;
    int N = 0;
    double tau = 0.0;
    double P = 0.0;               // multiplier at the linearization point
    bool constraint_replaced = false; // degenerate-V fallback: row P -> (dP = -P)

    Eigen::VectorXd residual;     // size 3dN + 1

    // structured pieces shared by both solve paths
    SpacePtr space;
    const SpaceOperators* ops = nullptr;
    std::vector<Eigen::MatrixXd> avu; // per cell, (q+1)d x (q+1)d, local index j*d + i
    std::vector<Eigen::MatrixXd> awu;
    Eigen::MatrixXd mv, mw;           // d x N: scalar mass applied to v_i, w_i
    Eigen::MatrixXd vcoef;            // d x N: V coefficients at the linearization point

    // assembly scratch, reused across Newton iterations
    Eigen::MatrixXd nv_cells, nw_cells;

    int size() const { return 3 * d * N + 1; }

    /// Right-hand side of the Newton solve: -residual, with the P entry
    /// swapped for -P when the constraint row is replaced.
    Eigen::VectorXd solve_rhs() const;

    /// Full sparse matrix in the segregated layout (reference path and tests).
    Eigen::SparseMatrix<double> sparse() const;
};

/// Residual of the fully discrete step equations into sys (reuses scratch).
/// Throws std::invalid_argument on mismatched spaces or components.
void assemble_residual(const DiscreteState& prev, const DiscreteState& guess,
                       double tau, const SpacePtr& space, const SpaceOperators& ops,
                       BlockSystem& sys, ExecPolicy policy = default_policy());

/// Adds the analytic Jacobian blocks to a system assembled at (prev, guess).
void add_jacobian(const DiscreteState& prev, const DiscreteState& guess,
                  BlockSystem& sys, ExecPolicy policy = default_policy());

/// One-shot residual vector (spec operation).
Eigen::VectorXd assemble_residual(const DiscreteState& prev, const DiscreteState& guess,
                                  double tau, const SpacePtr& space, const SpaceOperators& ops,
                                  ExecPolicy policy = default_policy());

/// One-shot residual + Jacobian (spec operation).
BlockSystem assemble_jacobian(const DiscreteState& prev, const DiscreteState& guess,
                              double tau, const SpacePtr& space, const SpaceOperators& ops,
                              ExecPolicy policy = default_policy());

/// Solves the V- and W-defining equations at the given U (mass solves):
/// s_scale = 1 gives the fully discrete equations at U^{n+1} = U^n = U
/// (Newton's initial guess); s_scale = 1/2 gives the spatially discrete
/// system's definitions (initial-state diagnostics).
void project_vw(const FeField& U, double s_scale, const SpaceOperators& ops,
                FeField& V, FeField& W, ExecPolicy policy = default_policy());

/// Inner product of coefficient vectors under the d-component mass: v^T M w.
double mass_inner(const SpaceOperators& ops, const Eigen::MatrixXd& v,
                  const Eigen::MatrixXd& w);

} // namespace vmkdv
