#include "vmkdv/solver.hpp"

#include <Eigen/SparseLU>

namespace vmkdv {

BlockSolver::BlockSolver(SpacePtr space, int d, SolverKind kind)
    : space_(std::move(space)), d_(d), kind_(kind) {
    if (kind_ == SolverKind::Banded) {
        const int N = space_->dof_count();
        const int q = space_->degree();
        arrow_.reset(N, 2 * d_, q);
    }
}

Eigen::VectorXd BlockSolver::solve(const BlockSystem& sys) {
    if (sys.avu.empty())
        throw std::logic_error("BlockSolver: system has no Jacobian blocks");
    return kind_ == SolverKind::Banded ? solve_banded(sys) : solve_sparse_lu(sys);
}

// Reduced solve: rows U and W both apply the same mass to dW, so eliminating
// the W rows exactly turns the system into
//   (M/tau - AWU) du + (C - P M) dv - (M v) dP = -R_U + R_W
//   AVU du + M dv                              = -R_V
//   -(v^T AWU) du + (M w - P M v)^T dv - (v^T M v) dP = -R_P + v^T R_W
// over node-major unknowns [du_i, dv_i](node) + dP, then dW is recovered from
// mass solves of its own rows.
Eigen::VectorXd BlockSolver::solve_banded(const BlockSystem& sys) {
    const auto& space = *space_;
    const auto& ops = *sys.ops;
    const int d = sys.d;
    const int N = sys.N;
    const int dN = d * N;
    const int n = space.degree() + 1;
    const int g = 2 * d;
    const int arrow_idx = N * g;

    arrow_.zero();

    // cellwise banded part
    for (int m = 0; m < space.cell_count(); ++m) {
        const double h = space.mesh().cell_size(m);
        const auto& aw = sys.awu[m];
        const auto& av = sys.avu[m];
        for (int a = 0; a < n; ++a) {
            const int ga = space.cell_dof(m, a);
            for (int b = 0; b < n; ++b) {
                const int gb = space.cell_dof(m, b);
                const double mass_ab = h * ops.mref(a, b);
                const double conv_ab = ops.cref(a, b);
                for (int i = 0; i < d; ++i) {
                    // U-row, u-col diagonal-in-components part
                    arrow_.add(ga * g + i, gb * g + i, mass_ab / sys.tau);
                    // U-row, v-col
                    arrow_.add(ga * g + i, gb * g + d + i, conv_ab - sys.P * mass_ab);
                    // V-row, v-col
                    arrow_.add(ga * g + d + i, gb * g + d + i, mass_ab);
                    for (int j = 0; j < d; ++j) {
                        arrow_.add(ga * g + i, gb * g + j, -aw(a * d + i, b * d + j));
                        arrow_.add(ga * g + d + i, gb * g + j, av(a * d + i, b * d + j));
                    }
                }
            }
        }
    }

    // arrow column: -(M v) dP in the U-rows
    for (int a = 0; a < N; ++a)
        for (int i = 0; i < d; ++i)
            arrow_.add(a * g + i, arrow_idx, -sys.mv(i, a));

    // arrow row
    if (sys.constraint_replaced) {
        arrow_.add(arrow_idx, arrow_idx, 1.0);
    } else {
        // -(v^T AWU) over u-columns, cellwise
        Eigen::VectorXd vloc(n * d), rowloc(n * d);
        for (int m = 0; m < space.cell_count(); ++m) {
            for (int b = 0; b < n; ++b) {
                const int gb = space.cell_dof(m, b);
                for (int j = 0; j < d; ++j) vloc[b * d + j] = sys.vcoef(j, gb);
            }
            rowloc.noalias() = sys.awu[m].transpose() * vloc;
            for (int b = 0; b < n; ++b) {
                const int gb = space.cell_dof(m, b);
                for (int j = 0; j < d; ++j)
                    arrow_.add(arrow_idx, gb * g + j, -rowloc[b * d + j]);
            }
        }
        double vmv = 0.0;
        for (int a = 0; a < N; ++a)
            for (int i = 0; i < d; ++i) {
                arrow_.add(arrow_idx, a * g + d + i, sys.mw(i, a) - sys.P * sys.mv(i, a));
                vmv += sys.vcoef(i, a) * sys.mv(i, a);
            }
        arrow_.add(arrow_idx, arrow_idx, -vmv);
    }

    // right-hand side in node-major order
    work_.resize(N * g + 1);
    for (int a = 0; a < N; ++a)
        for (int i = 0; i < d; ++i) {
            work_[a * g + i] = sys.residual[2 * dN + i * N + a] - sys.residual[i * N + a];
            work_[a * g + d + i] = -sys.residual[dN + i * N + a];
        }
    if (sys.constraint_replaced) {
        work_[arrow_idx] = -sys.P;
    } else {
        double vrw = 0.0;
        for (int i = 0; i < d; ++i)
            for (int a = 0; a < N; ++a)
                vrw += sys.vcoef(i, a) * sys.residual[2 * dN + i * N + a];
        work_[arrow_idx] = vrw - sys.residual[3 * dN];
    }

    if (!arrow_.factorize())
        throw SingularBlockSystem("block system factorization broke down");
    arrow_.solve_inplace(work_);

    // unpack and recover dW from the W rows: M dw = -R_W - AWU du - P M dv - (M v) dP
    Eigen::VectorXd update(3 * dN + 1);
    const double dP = work_[arrow_idx];
    update[3 * dN] = dP;

    Eigen::MatrixXd du(d, N), dv(d, N);
    for (int a = 0; a < N; ++a)
        for (int i = 0; i < d; ++i) {
            du(i, a) = work_[a * g + i];
            dv(i, a) = work_[a * g + d + i];
        }

    Eigen::MatrixXd rhs_w(d, N);
    for (int i = 0; i < d; ++i)
        rhs_w.row(i) = -sys.residual.segment(2 * dN + i * N, N).transpose()
                     - dP * sys.mv.row(i)
                     - sys.P * (ops.mass * dv.row(i).transpose()).transpose();
    Eigen::VectorXd duloc(n * d), wloc(n * d);
    for (int m = 0; m < space.cell_count(); ++m) {
        for (int b = 0; b < n; ++b) {
            const int gb = space.cell_dof(m, b);
            for (int j = 0; j < d; ++j) duloc[b * d + j] = du(j, gb);
        }
        wloc.noalias() = sys.awu[m] * duloc;
        for (int a = 0; a < n; ++a) {
            const int ga = space.cell_dof(m, a);
            for (int i = 0; i < d; ++i) rhs_w(i, ga) -= wloc[a * d + i];
        }
    }

    for (int i = 0; i < d; ++i) {
        update.segment(i * N, N) = du.row(i);
        update.segment(dN + i * N, N) = dv.row(i);
        update.segment(2 * dN + i * N, N) =
            ops.mass_solver.solve(rhs_w.row(i).transpose());
    }
    return update;
}

Eigen::VectorXd BlockSolver::solve_sparse_lu(const BlockSystem& sys) {
    Eigen::SparseMatrix<double> A = sys.sparse();
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(A);
    if (lu.info() != Eigen::Success)
        throw SingularBlockSystem("sparse LU factorization failed");
    return lu.solve(sys.solve_rhs());
}

Eigen::VectorXd solve_block(const BlockSystem& sys, const SpacePtr& space) {
    BlockSolver solver(space, sys.d, SolverKind::Banded);
    return solver.solve(sys);
}

Eigen::VectorXd solve_block_reference(const BlockSystem& sys, const SpacePtr& space) {
    BlockSolver solver(space, sys.d, SolverKind::SparseLU);
    return solver.solve(sys);
}

} // namespace vmkdv
