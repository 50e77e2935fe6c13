#include "vmkdv/assembly.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace vmkdv {

namespace {

void check_compatible(const DiscreteState& prev, const DiscreteState& guess) {
    if (&prev.U.space() != &guess.U.space())
        throw std::invalid_argument("assembly: states must share one space");
    if (prev.U.components() != guess.U.components())
        throw std::invalid_argument("assembly: states must share component count");
}

// mass/conv/stiff applied row-wise to a d x N coefficient matrix
Eigen::MatrixXd apply_rows(const Eigen::SparseMatrix<double>& A, const Eigen::MatrixXd& c) {
    Eigen::MatrixXd out(c.rows(), c.cols());
    for (int i = 0; i < c.rows(); ++i)
        out.row(i) = (A * c.row(i).transpose()).transpose();
    return out;
}

/// Nonlinear residual terms by cellwise quadrature:
///   nv(i,a) = int s Um_i phi_a,  s = (|Uprev|^2 + |U|^2)/2
///   nw(i,a) = int (|Um|^2 Um_i' - (Um' . Um) Um_i) phi_a
/// with Um the half-sum field. Cell results land in columns of nv_cells /
/// nw_cells (local index j*d + i); the caller scatters in fixed cell order.
void nonlinear_residual_cells(const DiscreteState& prev, const DiscreteState& guess,
                              Eigen::MatrixXd& nv_cells, Eigen::MatrixXd& nw_cells,
                              ExecPolicy policy) {
    const auto& space = guess.U.space();
    const auto& quad = space.quad();
    const auto& B = space.quad_values();
    const auto& D = space.quad_derivs();
    const int n = space.degree() + 1;
    const int d = guess.U.components();
    const int nq = quad.size();
    const int M = space.cell_count();

    nv_cells.setZero(n * d, M);
    nw_cells.setZero(n * d, M);

    const bool par = policy == ExecPolicy::Parallel;
#pragma omp parallel for schedule(static) if (par)
    for (int m = 0; m < M; ++m) {
        const double h = space.mesh().cell_size(m);
        Eigen::VectorXd up(d), ug(d), um(d), dum(d);
        for (int p = 0; p < nq; ++p) {
            up.setZero();
            ug.setZero();
            dum.setZero();
            for (int j = 0; j < n; ++j) {
                const int a = space.cell_dof(m, j);
                const auto cp = prev.U.coeffs().col(a);
                const auto cg = guess.U.coeffs().col(a);
                up += B(j, p) * cp;
                ug += B(j, p) * cg;
                dum += (0.5 * D(j, p) / h) * (cp + cg);
            }
            um = 0.5 * (up + ug);
            const double w = quad.weights[p] * h;
            const double s = 0.5 * (up.squaredNorm() + ug.squaredNorm());
            const double umsq = um.squaredNorm();
            const double dot = dum.dot(um);
            for (int j = 0; j < n; ++j) {
                const double wb = w * B(j, p);
                for (int i = 0; i < d; ++i) {
                    nv_cells(j * d + i, m) += wb * s * um[i];
                    nw_cells(j * d + i, m) += wb * (umsq * dum[i] - dot * um[i]);
                }
            }
        }
    }
}

/// Jacobian coupling blocks avu = dR_V/du, awu = dR_W/du, local index j*d + i.
void jacobian_cells(const DiscreteState& prev, const DiscreteState& guess,
                    std::vector<Eigen::MatrixXd>& avu, std::vector<Eigen::MatrixXd>& awu,
                    ExecPolicy policy) {
    const auto& space = guess.U.space();
    const auto& quad = space.quad();
    const auto& B = space.quad_values();
    const auto& D = space.quad_derivs();
    const int n = space.degree() + 1;
    const int d = guess.U.components();
    const int nq = quad.size();
    const int M = space.cell_count();
    const int nd = n * d;

    avu.resize(M);
    awu.resize(M);

    const bool par = policy == ExecPolicy::Parallel;
#pragma omp parallel for schedule(static) if (par)
    for (int m = 0; m < M; ++m) {
        const double h = space.mesh().cell_size(m);
        Eigen::MatrixXd& av = avu[m];
        Eigen::MatrixXd& aw = awu[m];
        av.setZero(nd, nd);
        aw.setZero(nd, nd);
        Eigen::VectorXd up(d), ug(d), um(d), dum(d);
        for (int p = 0; p < nq; ++p) {
            up.setZero();
            ug.setZero();
            dum.setZero();
            for (int j = 0; j < n; ++j) {
                const int a = space.cell_dof(m, j);
                const auto cp = prev.U.coeffs().col(a);
                const auto cg = guess.U.coeffs().col(a);
                up += B(j, p) * cp;
                ug += B(j, p) * cg;
                dum += (0.5 * D(j, p) / h) * (cp + cg);
            }
            um = 0.5 * (up + ug);
            const double w = quad.weights[p] * h;
            const double s = 0.5 * (up.squaredNorm() + ug.squaredNorm());
            const double umsq = um.squaredNorm();
            const double dot = dum.dot(um);
            for (int a = 0; a < n; ++a) {
                const double wa = w * B(a, p);
                const double da = D(a, p) / h;
                for (int b = 0; b < n; ++b) {
                    const double bb = B(b, p);
                    const double db = D(b, p) / h;
                    // d/du_{j,b} of R_V = M v - int s Um phi + S um
                    const double diag_v = -0.5 * s * bb * wa + 0.5 * w * da * db;
                    // d/du_{j,b} of R_W = M w - int (|Um|^2 Um' - (Um'.Um) Um) phi + P M v
                    const double diag_w = wa * (-0.5 * umsq * db + 0.5 * dot * bb);
                    for (int i = 0; i < d; ++i) {
                        for (int j = 0; j < d; ++j) {
                            av(a * d + i, b * d + j) -= wa * ug[j] * bb * um[i];
                            aw(a * d + i, b * d + j) +=
                                wa * (-um[j] * bb * dum[i]
                                      + 0.5 * (dum[j] * bb + um[j] * db) * um[i]);
                        }
                        av(a * d + i, b * d + i) += diag_v;
                        aw(a * d + i, b * d + i) += diag_w;
                    }
                }
            }
        }
    }
}

} // namespace

double mass_inner(const SpaceOperators& ops, const Eigen::MatrixXd& v,
                  const Eigen::MatrixXd& w) {
    double out = 0.0;
    for (int i = 0; i < v.rows(); ++i)
        out += v.row(i).dot((ops.mass * w.row(i).transpose()).transpose());
    return out;
}

void assemble_residual(const DiscreteState& prev, const DiscreteState& guess,
                       double tau, const SpacePtr& space, const SpaceOperators& ops,
                       BlockSystem& sys, ExecPolicy policy) {
    check_compatible(prev, guess);
    if (tau == 0.0) throw std::invalid_argument("assembly: tau must be nonzero");

    const int d = guess.U.components();
    const int N = space->dof_count();
    const int n = space->degree() + 1;
    const int dN = d * N;

    sys.d = d;
    sys.N = N;
    sys.tau = tau;
    sys.P = guess.P;
    sys.space = space;
    sys.ops = &ops;
    sys.avu.clear();
    sys.awu.clear();

    nonlinear_residual_cells(prev, guess, sys.nv_cells, sys.nw_cells, policy);

    const Eigen::MatrixXd um = 0.5 * (prev.U.coeffs() + guess.U.coeffs());
    sys.mv = apply_rows(ops.mass, guess.V.coeffs());
    sys.mw = apply_rows(ops.mass, guess.W.coeffs());
    sys.vcoef = guess.V.coeffs();

    Eigen::MatrixXd ru = apply_rows(ops.mass, guess.U.coeffs() - prev.U.coeffs()) / tau
                       + apply_rows(ops.conv, guess.V.coeffs()) + sys.mw;
    Eigen::MatrixXd rv = sys.mv + apply_rows(ops.stiff, um);
    Eigen::MatrixXd rw = sys.mw + guess.P * sys.mv;

    for (int m = 0; m < space->cell_count(); ++m)
        for (int j = 0; j < n; ++j) {
            const int a = space->cell_dof(m, j);
            for (int i = 0; i < d; ++i) {
                rv(i, a) -= sys.nv_cells(j * d + i, m);
                rw(i, a) -= sys.nw_cells(j * d + i, m);
            }
        }

    double rp = 0.0;
    for (int i = 0; i < d; ++i) rp += guess.V.coeffs().row(i).dot(sys.mw.row(i));

    sys.residual.resize(3 * dN + 1);
    for (int i = 0; i < d; ++i) {
        sys.residual.segment(i * N, N) = ru.row(i);
        sys.residual.segment(dN + i * N, N) = rv.row(i);
        sys.residual.segment(2 * dN + i * N, N) = rw.row(i);
    }
    sys.residual[3 * dN] = rp;

    // Degenerate multiplier: when V is numerically zero the P column vanishes
    // and the constraint is vacuous to leading order; pin P to zero instead.
    double vnorm_sq = 0.0;
    for (int i = 0; i < d; ++i) vnorm_sq += guess.V.coeffs().row(i).dot(sys.mv.row(i));
    const Eigen::MatrixXd mu_ = apply_rows(ops.mass, guess.U.coeffs());
    const Eigen::MatrixXd su_ = apply_rows(ops.stiff, guess.U.coeffs());
    double uh1_sq = 0.0;
    for (int i = 0; i < d; ++i)
        uh1_sq += guess.U.coeffs().row(i).dot(mu_.row(i)) +
                  guess.U.coeffs().row(i).dot(su_.row(i));
    sys.constraint_replaced =
        uh1_sq > 0.0 && std::sqrt(std::abs(vnorm_sq)) < 1e-10 * std::sqrt(std::abs(uh1_sq));
}

void add_jacobian(const DiscreteState& prev, const DiscreteState& guess,
                  BlockSystem& sys, ExecPolicy policy) {
    jacobian_cells(prev, guess, sys.avu, sys.awu, policy);
}

Eigen::VectorXd assemble_residual(const DiscreteState& prev, const DiscreteState& guess,
                                  double tau, const SpacePtr& space, const SpaceOperators& ops,
                                  ExecPolicy policy) {
    BlockSystem sys;
    assemble_residual(prev, guess, tau, space, ops, sys, policy);
    return sys.residual;
}

BlockSystem assemble_jacobian(const DiscreteState& prev, const DiscreteState& guess,
                              double tau, const SpacePtr& space, const SpaceOperators& ops,
                              ExecPolicy policy) {
    BlockSystem sys;
    assemble_residual(prev, guess, tau, space, ops, sys, policy);
    add_jacobian(prev, guess, sys, policy);
    return sys;
}

void project_vw(const FeField& U, double s_scale, const SpaceOperators& ops,
                FeField& V, FeField& W, ExecPolicy policy) {
    const auto& space = U.space();
    const auto& quad = space.quad();
    const auto& B = space.quad_values();
    const auto& D = space.quad_derivs();
    const int n = space.degree() + 1;
    const int d = U.components();
    const int nq = quad.size();
    const int M = space.cell_count();
    const int N = space.dof_count();

    Eigen::MatrixXd nv_cells = Eigen::MatrixXd::Zero(n * d, M);
    Eigen::MatrixXd nw_cells = Eigen::MatrixXd::Zero(n * d, M);

    const bool par = policy == ExecPolicy::Parallel;
#pragma omp parallel for schedule(static) if (par)
    for (int m = 0; m < M; ++m) {
        const double h = space.mesh().cell_size(m);
        Eigen::VectorXd u(d), du(d);
        for (int p = 0; p < nq; ++p) {
            u.setZero();
            du.setZero();
            for (int j = 0; j < n; ++j) {
                const auto c = U.coeffs().col(space.cell_dof(m, j));
                u += B(j, p) * c;
                du += (D(j, p) / h) * c;
            }
            const double w = quad.weights[p] * h;
            const double usq = u.squaredNorm();
            const double dot = du.dot(u);
            for (int j = 0; j < n; ++j) {
                const double wb = w * B(j, p);
                for (int i = 0; i < d; ++i) {
                    nv_cells(j * d + i, m) += wb * s_scale * usq * u[i];
                    nw_cells(j * d + i, m) += wb * (usq * du[i] - dot * u[i]);
                }
            }
        }
    }

    Eigen::MatrixXd rhs_v = Eigen::MatrixXd::Zero(d, N);
    Eigen::MatrixXd rhs_w = Eigen::MatrixXd::Zero(d, N);
    for (int m = 0; m < M; ++m)
        for (int j = 0; j < n; ++j) {
            const int a = space.cell_dof(m, j);
            for (int i = 0; i < d; ++i) {
                rhs_v(i, a) += nv_cells(j * d + i, m);
                rhs_w(i, a) += nw_cells(j * d + i, m);
            }
        }
    rhs_v -= apply_rows(ops.stiff, U.coeffs());

    for (int i = 0; i < d; ++i) {
        V.coeffs().row(i) = ops.mass_solver.solve(rhs_v.row(i).transpose()).transpose();
        W.coeffs().row(i) = ops.mass_solver.solve(rhs_w.row(i).transpose()).transpose();
    }
}

Eigen::VectorXd BlockSystem::solve_rhs() const {
    Eigen::VectorXd rhs = -residual;
    if (constraint_replaced) rhs[3 * d * N] = -P;
    return rhs;
}

Eigen::SparseMatrix<double> BlockSystem::sparse() const {
    const auto& sp = *space;
    const int dN = d * N;
    const int n = sp.degree() + 1;
    const int total = 3 * dN + 1;
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(ops->mass.nonZeros()) * d * 5 +
                 static_cast<std::size_t>(sp.cell_count()) * n * n * d * d * 2 + 4 * dN + 1);

    for (int k = 0; k < ops->mass.outerSize(); ++k) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(ops->mass, k); it; ++it) {
            const int a = static_cast<int>(it.row()), b = static_cast<int>(it.col());
            for (int i = 0; i < d; ++i) {
                trip.emplace_back(i * N + a, i * N + b, it.value() / tau);            // U,U
                trip.emplace_back(i * N + a, 2 * dN + i * N + b, it.value());         // U,W
                trip.emplace_back(dN + i * N + a, dN + i * N + b, it.value());        // V,V
                trip.emplace_back(2 * dN + i * N + a, 2 * dN + i * N + b, it.value()); // W,W
                trip.emplace_back(2 * dN + i * N + a, dN + i * N + b, P * it.value()); // W,V
            }
        }
    }
    for (int k = 0; k < ops->conv.outerSize(); ++k)
        for (Eigen::SparseMatrix<double>::InnerIterator it(ops->conv, k); it; ++it)
            for (int i = 0; i < d; ++i)
                trip.emplace_back(i * N + static_cast<int>(it.row()),
                                  dN + i * N + static_cast<int>(it.col()), it.value());

    for (int m = 0; m < sp.cell_count(); ++m) {
        const auto& av = avu[m];
        const auto& aw = awu[m];
        for (int a = 0; a < n; ++a) {
            const int ga = sp.cell_dof(m, a);
            for (int b = 0; b < n; ++b) {
                const int gb = sp.cell_dof(m, b);
                for (int i = 0; i < d; ++i)
                    for (int j = 0; j < d; ++j) {
                        trip.emplace_back(dN + i * N + ga, j * N + gb, av(a * d + i, b * d + j));
                        trip.emplace_back(2 * dN + i * N + ga, j * N + gb, aw(a * d + i, b * d + j));
                    }
            }
        }
    }

    for (int i = 0; i < d; ++i)
        for (int a = 0; a < N; ++a) {
            trip.emplace_back(2 * dN + i * N + a, 3 * dN, mv(i, a)); // P column
            if (!constraint_replaced) {
                trip.emplace_back(3 * dN, dN + i * N + a, mw(i, a));     // P row, V
                trip.emplace_back(3 * dN, 2 * dN + i * N + a, mv(i, a)); // P row, W
            }
        }
    if (constraint_replaced) trip.emplace_back(3 * dN, 3 * dN, 1.0);

    Eigen::SparseMatrix<double> A(total, total);
    A.setFromTriplets(trip.begin(), trip.end());
    A.makeCompressed();
    return A;
}

} // namespace vmkdv
