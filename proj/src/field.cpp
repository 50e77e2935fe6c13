#include "vmkdv/field.hpp"
#include "vmkdv/operators.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace vmkdv {

FeField::FeField(SpacePtr space, int components)
    : space_(std::move(space)), d_(components) {
    if (d_ < 1) throw std::invalid_argument("FeField: components must be >= 1");
    coeffs_.setZero(d_, space_->dof_count());
}

Eigen::VectorXd FeField::eval(double x) const {
    const auto& mesh = space_->mesh();
    const int m = mesh.locate(x);
    const double xi = (mesh.wrap(x) - mesh.cell_left(m)) / mesh.cell_size(m);
    const int n = space_->degree() + 1;
    std::vector<double> v(n), dv(n);
    space_->eval_ref(xi, v.data(), dv.data());
    Eigen::VectorXd out = Eigen::VectorXd::Zero(d_);
    for (int j = 0; j < n; ++j)
        out += v[j] * coeffs_.col(space_->cell_dof(m, j));
    return out;
}

Eigen::VectorXd FeField::deriv(double x) const {
    const auto& mesh = space_->mesh();
    const int m = mesh.locate(x);
    const double h = mesh.cell_size(m);
    const double xi = (mesh.wrap(x) - mesh.cell_left(m)) / h;
    const int n = space_->degree() + 1;
    std::vector<double> v(n), dv(n);
    space_->eval_ref(xi, v.data(), dv.data());
    Eigen::VectorXd out = Eigen::VectorXd::Zero(d_);
    for (int j = 0; j < n; ++j)
        out += (dv[j] / h) * coeffs_.col(space_->cell_dof(m, j));
    return out;
}

FieldNorms norms(const FeField& F) {
    const auto& space = F.space();
    const auto& quad = space.quad();
    const auto& B = space.quad_values();
    const auto& D = space.quad_derivs();
    const int n = space.degree() + 1;
    const int d = F.components();
    const int nq = quad.size();

    double l2sq = 0.0, l4q = 0.0, h1sq = 0.0;
    Eigen::VectorXd val(d), der(d);
    for (int m = 0; m < space.cell_count(); ++m) {
        const double h = space.mesh().cell_size(m);
        double cl2 = 0.0, cl4 = 0.0, ch1 = 0.0;
        for (int p = 0; p < nq; ++p) {
            val.setZero();
            der.setZero();
            for (int j = 0; j < n; ++j) {
                const auto c = F.coeffs().col(space.cell_dof(m, j));
                val += B(j, p) * c;
                der += (D(j, p) / h) * c;
            }
            const double w = quad.weights[p] * h;
            const double nsq = val.squaredNorm();
            cl2 += w * nsq;
            cl4 += w * nsq * nsq;
            ch1 += w * der.squaredNorm();
        }
        l2sq += cl2;
        l4q += cl4;
        h1sq += ch1;
    }
    return {std::sqrt(l2sq), std::pow(l4q, 0.25), std::sqrt(h1sq)};
}

FeField l2_project(const SpacePtr& space, int d, const SpatialFn& f,
                   const QuadratureRule& quad) {
    const int N = space->dof_count();
    const int n = space->degree() + 1;
    const int nq = quad.size();

    // basis tables at the given quadrature points
    Eigen::MatrixXd B(n, nq), D(n, nq);
    {
        std::vector<double> v(n), dv(n);
        for (int p = 0; p < nq; ++p) {
            space->eval_ref(quad.points[p], v.data(), dv.data());
            for (int j = 0; j < n; ++j) {
                B(j, p) = v[j];
                D(j, p) = dv[j];
            }
        }
    }

    // mass under this quadrature
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(space->cell_count()) * n * n);
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(N, d);
    std::vector<double> fx(d);
    for (int m = 0; m < space->cell_count(); ++m) {
        const double h = space->mesh().cell_size(m);
        const double x0 = space->mesh().cell_left(m);
        Eigen::MatrixXd mloc = Eigen::MatrixXd::Zero(n, n);
        Eigen::MatrixXd rloc = Eigen::MatrixXd::Zero(n, d);
        for (int p = 0; p < nq; ++p) {
            const double w = quad.weights[p] * h;
            f(x0 + quad.points[p] * h, fx.data());
            for (int a = 0; a < n; ++a) {
                for (int b = 0; b < n; ++b) mloc(a, b) += w * B(a, p) * B(b, p);
                for (int i = 0; i < d; ++i) rloc(a, i) += w * B(a, p) * fx[i];
            }
        }
        for (int a = 0; a < n; ++a) {
            const int ga = space->cell_dof(m, a);
            for (int b = 0; b < n; ++b)
                trip.emplace_back(ga, space->cell_dof(m, b), mloc(a, b));
            rhs.row(ga) += rloc.row(a);
        }
    }
    Eigen::SparseMatrix<double> mass(N, N);
    mass.setFromTriplets(trip.begin(), trip.end());
    mass.makeCompressed();
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(mass);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("l2_project: singular mass matrix");

    FeField out(space, d);
    for (int i = 0; i < d; ++i) {
        Eigen::VectorXd ci = solver.solve(rhs.col(i));
        out.coeffs().row(i) = ci.transpose();
    }
    return out;
}

FeField l2_project(const SpacePtr& space, int d, const SpatialFn& f) {
    return l2_project(space, d, f, space->quad());
}

FeField interpolate_nodal(const SpacePtr& space, int d, const SpatialFn& f) {
    FeField out(space, d);
    std::vector<double> fx(d);
    for (int a = 0; a < space->dof_count(); ++a) {
        f(space->dof_position(a), fx.data());
        for (int i = 0; i < d; ++i) out.coeffs()(i, a) = fx[i];
    }
    return out;
}

} // namespace vmkdv
