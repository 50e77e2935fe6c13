#include "vmkdv/space.hpp"

#include <cmath>
#include <stdexcept>

namespace vmkdv {

namespace {

// Interior Gauss-Lobatto nodes on [0,1] are the roots of P'_{q}, found by
// Newton iteration on the recurrence for P'_q.
std::vector<double> lobatto_nodes(int q) {
    std::vector<double> xi(q + 1);
    xi[0] = 0.0;
    xi[q] = 1.0;
    for (int k = 1; k < q; ++k) {
        // initial guess: Chebyshev-Lobatto point
        double t = -std::cos(M_PI * k / q);
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = t;
            for (int j = 2; j <= q; ++j) {
                const double p2 = ((2.0 * j - 1.0) * t * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            const double dp = q * (t * p1 - p0) / (t * t - 1.0);
            // d/dt P'_q from the ODE (1-t^2) P_q'' = 2t P_q' - q(q+1) P_q
            const double ddp = (2.0 * t * dp - q * (q + 1.0) * p1) / (1.0 - t * t);
            const double dt = dp / ddp;
            t -= dt;
            if (std::abs(dt) < 1e-16) break;
        }
        xi[k] = 0.5 * (1.0 + t);
    }
    return xi;
}

} // namespace

LagrangeSpace::LagrangeSpace(Mesh mesh, int degree, int quad_points, NodeFamily family)
    : mesh_(std::move(mesh)), q_(degree), family_(family) {
    if (q_ < 1) throw std::invalid_argument("space: degree must be >= 1");
    N_ = mesh_.cell_count() * q_;

    if (family_ == NodeFamily::Equispaced) {
        ref_nodes_.resize(q_ + 1);
        for (int j = 0; j <= q_; ++j)
            ref_nodes_[j] = static_cast<double>(j) / static_cast<double>(q_);
    } else {
        ref_nodes_ = lobatto_nodes(q_);
    }

    // Default 3q+2 points: exactness 6q+3 covers every integrand assembled
    // or monitored here (residual terms up to 5q-1, F4 at 4q, F6 at 6q).
    const int nq = quad_points > 0 ? quad_points : 3 * q_ + 2;
    quad_ = gauss_rule(nq);

    qvals_.resize(q_ + 1, nq);
    qderivs_.resize(q_ + 1, nq);
    qderivs2_.resize(q_ + 1, nq);
    std::vector<double> v(q_ + 1), dv(q_ + 1), ddv(q_ + 1);
    for (int p = 0; p < nq; ++p) {
        eval_ref(quad_.points[p], v.data(), dv.data());
        eval_ref2(quad_.points[p], ddv.data());
        for (int j = 0; j <= q_; ++j) {
            qvals_(j, p) = v[j];
            qderivs_(j, p) = dv[j];
            qderivs2_(j, p) = ddv[j];
        }
    }
}

double LagrangeSpace::dof_position(int a) const {
    const int m = a / q_;
    const int j = a % q_;
    return mesh_.cell_left(m) + ref_nodes_[j] * mesh_.cell_size(m);
}

void LagrangeSpace::eval_ref(double xi, double* values, double* derivs) const {
    const int n = q_ + 1;
    for (int j = 0; j < n; ++j) {
        double val = 1.0;
        for (int k = 0; k < n; ++k) {
            if (k == j) continue;
            val *= (xi - ref_nodes_[k]) / (ref_nodes_[j] - ref_nodes_[k]);
        }
        values[j] = val;

        double der = 0.0;
        for (int m = 0; m < n; ++m) {
            if (m == j) continue;
            double term = 1.0 / (ref_nodes_[j] - ref_nodes_[m]);
            for (int k = 0; k < n; ++k) {
                if (k == j || k == m) continue;
                term *= (xi - ref_nodes_[k]) / (ref_nodes_[j] - ref_nodes_[k]);
            }
            der += term;
        }
        derivs[j] = der;
    }
}

void LagrangeSpace::eval_ref2(double xi, double* derivs2) const {
    const int n = q_ + 1;
    for (int j = 0; j < n; ++j) {
        double dd = 0.0;
        for (int m = 0; m < n; ++m) {
            if (m == j) continue;
            for (int l = 0; l < n; ++l) {
                if (l == j || l == m) continue;
                double term = 1.0 / ((ref_nodes_[j] - ref_nodes_[m]) *
                                     (ref_nodes_[j] - ref_nodes_[l]));
                for (int k = 0; k < n; ++k) {
                    if (k == j || k == m || k == l) continue;
                    term *= (xi - ref_nodes_[k]) / (ref_nodes_[j] - ref_nodes_[k]);
                }
                dd += term;
            }
        }
        derivs2[j] = dd;
    }
}

SpacePtr make_space(Mesh mesh, int degree, int quad_points, NodeFamily family) {
    return std::make_shared<const LagrangeSpace>(std::move(mesh), degree, quad_points, family);
}

BasisTable eval_basis(const LagrangeSpace& space, int cell,
                      const std::vector<double>& ref_points) {
    if (cell < 0 || cell >= space.cell_count())
        throw std::invalid_argument("eval_basis: cell index out of range");
    const int n = space.degree() + 1;
    const int np = static_cast<int>(ref_points.size());
    BasisTable table;
    table.values.resize(n, np);
    table.ref_derivs.resize(n, np);
    table.phys_derivs.resize(n, np);
    const double h = space.mesh().cell_size(cell);
    std::vector<double> v(n), dv(n);
    for (int p = 0; p < np; ++p) {
        space.eval_ref(ref_points[p], v.data(), dv.data());
        for (int j = 0; j < n; ++j) {
            table.values(j, p) = v[j];
            table.ref_derivs(j, p) = dv[j];
            table.phys_derivs(j, p) = dv[j] / h;
        }
    }
    return table;
}

} // namespace vmkdv
