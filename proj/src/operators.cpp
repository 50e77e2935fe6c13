#include "vmkdv/operators.hpp"

#include <stdexcept>
#include <vector>

namespace vmkdv {

namespace {

// Reference-cell integrals with the space's quadrature.
void reference_matrices(const LagrangeSpace& space, Eigen::MatrixXd& mref,
                        Eigen::MatrixXd& cref, Eigen::MatrixXd& sref) {
    const int n = space.degree() + 1;
    const auto& quad = space.quad();
    const auto& B = space.quad_values();
    const auto& D = space.quad_derivs();
    mref.setZero(n, n);
    cref.setZero(n, n);
    sref.setZero(n, n);
    for (int p = 0; p < quad.size(); ++p) {
        const double w = quad.weights[p];
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                mref(a, b) += w * B(a, p) * B(b, p);
                cref(a, b) += w * B(a, p) * D(b, p);
                sref(a, b) += w * D(a, p) * D(b, p);
            }
    }
}

Eigen::SparseMatrix<double> scatter_scalar(const LagrangeSpace& space,
                                           const Eigen::MatrixXd& ref,
                                           double h_power) {
    const int N = space.dof_count();
    const int n = space.degree() + 1;
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(space.cell_count()) * n * n);
    for (int m = 0; m < space.cell_count(); ++m) {
        const double h = space.mesh().cell_size(m);
        const double scale = h_power == 1.0 ? h : (h_power == -1.0 ? 1.0 / h : 1.0);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                trip.emplace_back(space.cell_dof(m, a), space.cell_dof(m, b),
                                  scale * ref(a, b));
    }
    Eigen::SparseMatrix<double> A(N, N);
    A.setFromTriplets(trip.begin(), trip.end());
    A.makeCompressed();
    return A;
}

} // namespace

SpaceOperators build_operators(const LagrangeSpace& space) {
    SpaceOperators ops;
    reference_matrices(space, ops.mref, ops.cref, ops.sref);
    ops.mass = scatter_scalar(space, ops.mref, 1.0);
    ops.conv = scatter_scalar(space, ops.cref, 0.0);
    ops.stiff = scatter_scalar(space, ops.sref, -1.0);
    ops.mass_solver.compute(ops.mass);
    if (ops.mass_solver.info() != Eigen::Success)
        throw std::runtime_error("operators: mass matrix factorization failed");
    return ops;
}

Eigen::SparseMatrix<double> assemble_mass(const LagrangeSpace& space, int d) {
    if (d < 1) throw std::invalid_argument("assemble_mass: d must be >= 1");
    Eigen::MatrixXd mref, cref, sref;
    reference_matrices(space, mref, cref, sref);
    Eigen::SparseMatrix<double> scalar = scatter_scalar(space, mref, 1.0);
    if (d == 1) return scalar;
    const int N = space.dof_count();
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(scalar.nonZeros()) * d);
    for (int k = 0; k < scalar.outerSize(); ++k)
        for (Eigen::SparseMatrix<double>::InnerIterator it(scalar, k); it; ++it)
            for (int i = 0; i < d; ++i)
                trip.emplace_back(i * N + it.row(), i * N + it.col(), it.value());
    Eigen::SparseMatrix<double> A(d * N, d * N);
    A.setFromTriplets(trip.begin(), trip.end());
    A.makeCompressed();
    return A;
}

} // namespace vmkdv
