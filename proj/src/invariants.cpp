#include "vmkdv/invariants.hpp"
#include "vmkdv/exec.hpp"

#include <cmath>
#include <stdexcept>

namespace vmkdv {

namespace {
ExecPolicy g_policy = ExecPolicy::Parallel;
}

ExecPolicy default_policy() { return g_policy; }
void set_default_policy(ExecPolicy p) { g_policy = p; }

SquaredNorms squared_norms(const FeField& U) {
    const auto& space = U.space();
    const auto& quad = space.quad();
    const auto& B = space.quad_values();
    const auto& D = space.quad_derivs();
    const int n = space.degree() + 1;
    const int d = U.components();
    const int nq = quad.size();
    const int M = space.cell_count();

    std::vector<SquaredNorms> cell(M);
    const bool par = g_policy == ExecPolicy::Parallel;
#pragma omp parallel for schedule(static) if (par)
    for (int m = 0; m < M; ++m) {
        const double h = space.mesh().cell_size(m);
        Eigen::VectorXd val(d), der(d);
        SquaredNorms acc;
        for (int p = 0; p < nq; ++p) {
            val.setZero();
            der.setZero();
            for (int j = 0; j < n; ++j) {
                const auto c = U.coeffs().col(space.cell_dof(m, j));
                val += B(j, p) * c;
                der += (D(j, p) / h) * c;
            }
            const double w = quad.weights[p] * h;
            const double nsq = val.squaredNorm();
            acc.l2sq += w * nsq;
            acc.l4q += w * nsq * nsq;
            acc.h1sq += w * der.squaredNorm();
        }
        cell[m] = acc;
    }
    SquaredNorms out;
    for (int m = 0; m < M; ++m) { // fixed-order reduction
        out.l2sq += cell[m].l2sq;
        out.l4q += cell[m].l4q;
        out.h1sq += cell[m].h1sq;
    }
    return out;
}

double momentum_F2(const FeField& U) { return 0.5 * squared_norms(U).l2sq; }

double energy_F4(const FeField& U) {
    const SquaredNorms s = squared_norms(U);
    return 0.5 * s.h1sq - 0.125 * s.l4q;
}

double hierarchy_F6(const FeField& U) {
    const auto& space = U.space();
    const auto& quad = space.quad();
    const auto& B = space.quad_values();
    const auto& D = space.quad_derivs();
    const auto& D2 = space.quad_derivs2();
    const int n = space.degree() + 1;
    const int d = U.components();
    const int nq = quad.size();
    const int M = space.cell_count();

    std::vector<double> cell(M, 0.0);
    const bool par = g_policy == ExecPolicy::Parallel;
#pragma omp parallel for schedule(static) if (par)
    for (int m = 0; m < M; ++m) {
        const double h = space.mesh().cell_size(m);
        Eigen::VectorXd u(d), ux(d), uxx(d);
        double acc = 0.0;
        for (int p = 0; p < nq; ++p) {
            u.setZero();
            ux.setZero();
            uxx.setZero();
            for (int j = 0; j < n; ++j) {
                const auto c = U.coeffs().col(space.cell_dof(m, j));
                u += B(j, p) * c;
                ux += (D(j, p) / h) * c;
                uxx += (D2(j, p) / (h * h)) * c;
            }
            const double usq = u.squaredNorm();
            const double udotux = u.dot(ux);
            const double f6 = 0.5 * usq * usq * usq + 10.0 * udotux * udotux
                            + usq * ux.squaredNorm() + 7.0 * usq * u.dot(uxx)
                            + 4.0 * uxx.squaredNorm();
            acc += quad.weights[p] * h * f6;
        }
        cell[m] = acc;
    }
    double out = 0.0;
    for (int m = 0; m < M; ++m) out += cell[m];
    return out;
}

double constraint_integral(const FeField& V, const FeField& W) {
    const auto& space = V.space();
    const auto& quad = space.quad();
    const auto& B = space.quad_values();
    const int n = space.degree() + 1;
    const int d = V.components();
    const int M = space.cell_count();
    double out = 0.0;
    Eigen::VectorXd v(d), w(d);
    for (int m = 0; m < M; ++m) {
        const double h = space.mesh().cell_size(m);
        double acc = 0.0;
        for (int p = 0; p < quad.size(); ++p) {
            v.setZero();
            w.setZero();
            for (int j = 0; j < n; ++j) {
                const int a = space.cell_dof(m, j);
                v += B(j, p) * V.coeffs().col(a);
                w += B(j, p) * W.coeffs().col(a);
            }
            acc += quad.weights[p] * h * v.dot(w);
        }
        out += acc;
    }
    return out;
}

std::vector<double> l2_errors(const FeField& U, const SpaceTimeFn& exact, double t) {
    const auto& space = U.space();
    const auto& quad = space.quad();
    const auto& B = space.quad_values();
    const int n = space.degree() + 1;
    const int d = U.components();
    const int nq = quad.size();
    const int M = space.cell_count();

    std::vector<std::vector<double>> cell(M);
    const bool par = g_policy == ExecPolicy::Parallel;
#pragma omp parallel for schedule(static) if (par)
    for (int m = 0; m < M; ++m) {
        const double h = space.mesh().cell_size(m);
        const double x0 = space.mesh().cell_left(m);
        Eigen::VectorXd val(d);
        std::vector<double> ex(d), acc(d, 0.0);
        for (int p = 0; p < nq; ++p) {
            val.setZero();
            for (int j = 0; j < n; ++j)
                val += B(j, p) * U.coeffs().col(space.cell_dof(m, j));
            exact(x0 + quad.points[p] * h, t, ex.data());
            const double w = quad.weights[p] * h;
            for (int i = 0; i < d; ++i) {
                const double diff = val[i] - ex[i];
                acc[i] += w * diff * diff;
            }
        }
        cell[m] = std::move(acc);
    }
    std::vector<double> out(d, 0.0);
    for (int m = 0; m < M; ++m)
        for (int i = 0; i < d; ++i) out[i] += cell[m][i];
    for (int i = 0; i < d; ++i) out[i] = std::sqrt(out[i]);
    return out;
}

std::vector<double> eoc(const std::vector<double>& errors,
                        const std::vector<double>& meshsizes) {
    if (errors.size() != meshsizes.size() || errors.size() < 2)
        throw std::invalid_argument("eoc: need two same-length sequences");
    for (std::size_t i = 0; i < errors.size(); ++i) {
        if (!(errors[i] > 0.0)) throw std::invalid_argument("eoc: errors must be positive");
        if (!(meshsizes[i] > 0.0)) throw std::invalid_argument("eoc: meshsizes must be positive");
        if (i > 0 && !(meshsizes[i] < meshsizes[i - 1]))
            throw std::invalid_argument("eoc: meshsizes must decrease");
    }
    std::vector<double> out(errors.size() - 1);
    for (std::size_t i = 0; i + 1 < errors.size(); ++i)
        out[i] = std::log(errors[i + 1] / errors[i]) / std::log(meshsizes[i + 1] / meshsizes[i]);
    return out;
}

} // namespace vmkdv
