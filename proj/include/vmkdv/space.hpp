#pragma once

#include "vmkdv/mesh.hpp"

#include <Eigen/Dense>

#include <memory>

namespace vmkdv {

enum class NodeFamily { Equispaced, GaussLobatto };

/// Periodic continuous Lagrange space of degree q on a Mesh.
///
/// DOFs are cell-major with shared cell-boundary nodes: cell m owns local
/// nodes j = 0..q at global index (m*q + j) mod N, N = M*q. The last cell's
/// right node wraps to global DOF 0.
class LagrangeSpace {
public:
    LagrangeSpace(Mesh mesh, int degree, int quad_points = 0,
                  NodeFamily family = NodeFamily::Equispaced);

    const Mesh& mesh() const { return mesh_; }
    int degree() const { return q_; }
    int dof_count() const { return N_; }
    int cell_count() const { return mesh_.cell_count(); }
    NodeFamily node_family() const { return family_; }

    int cell_dof(int m, int j) const { return (m * q_ + j) % N_; }

    /// Physical position of a global DOF.
    double dof_position(int a) const;

    const QuadratureRule& quad() const { return quad_; }

    /// Basis tables at the quadrature points of quad(): value(j, p) and
    /// reference derivatives of local basis j at point p.
    const Eigen::MatrixXd& quad_values() const { return qvals_; }
    const Eigen::MatrixXd& quad_derivs() const { return qderivs_; }
    const Eigen::MatrixXd& quad_derivs2() const { return qderivs2_; }

    /// Reference nodes xi_0 = 0 < ... < xi_q = 1 inside a cell.
    const std::vector<double>& ref_nodes() const { return ref_nodes_; }

    /// All q+1 local basis values and reference derivatives at xi in [0, 1].
    void eval_ref(double xi, double* values, double* derivs) const;
    /// Reference second derivatives at xi.
    void eval_ref2(double xi, double* derivs2) const;

private:
    Mesh mesh_;
    int q_;
    int N_;
    NodeFamily family_;
    std::vector<double> ref_nodes_;
    QuadratureRule quad_;
    Eigen::MatrixXd qvals_;    // (q+1) x nq
    Eigen::MatrixXd qderivs_;  // (q+1) x nq
    Eigen::MatrixXd qderivs2_; // (q+1) x nq
};

using SpacePtr = std::shared_ptr<const LagrangeSpace>;

SpacePtr make_space(Mesh mesh, int degree, int quad_points = 0,
                    NodeFamily family = NodeFamily::Equispaced);

/// Basis values and derivatives of one cell's local functions at given
/// reference points. Physical derivative = reference derivative / cell size.
struct BasisTable {
    Eigen::MatrixXd values;      // (q+1) x npts
    Eigen::MatrixXd ref_derivs;  // (q+1) x npts
    Eigen::MatrixXd phys_derivs; // (q+1) x npts
};

BasisTable eval_basis(const LagrangeSpace& space, int cell,
                      const std::vector<double>& ref_points);

} // namespace vmkdv
