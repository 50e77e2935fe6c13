#pragma once

#include "vmkdv/space.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

namespace vmkdv {

/// Scalar periodic Galerkin matrices, N x N in the cell-major DOF layout.
/// mass(a,b)  = int phi_b phi_a,  conv(a,b) = int phi_b' phi_a,
/// stiff(a,b) = int phi_b' phi_a'.
struct SpaceOperators {
    Eigen::SparseMatrix<double> mass;
    Eigen::SparseMatrix<double> conv;
    Eigen::SparseMatrix<double> stiff;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> mass_solver;

    // reference-cell local matrices; physical: M = h*mref, C = cref, S = sref/h
    Eigen::MatrixXd mref, cref, sref;
};

SpaceOperators build_operators(const LagrangeSpace& space);

/// Periodic mass matrix for a d-component field in the segregated
/// component-major layout (d diagonal copies of the scalar mass).
Eigen::SparseMatrix<double> assemble_mass(const LagrangeSpace& space, int d);

} // namespace vmkdv
