#pragma once

#include "vmkdv/space.hpp"

#include <Eigen/Dense>

#include <functional>

namespace vmkdv {

/// d-component function of x only (initial data).
using SpatialFn = std::function<void(double x, double* out)>;
/// d-component function of (x, t) (exact solutions).
using SpaceTimeFn = std::function<void(double x, double t, double* out)>;

/// A d-component periodic piecewise-polynomial function: d x N coefficient
/// matrix over a shared LagrangeSpace.
class FeField {
public:
    FeField(SpacePtr space, int components);

    const LagrangeSpace& space() const { return *space_; }
    const SpacePtr& space_ptr() const { return space_; }
    int components() const { return d_; }

    Eigen::MatrixXd& coeffs() { return coeffs_; }
    const Eigen::MatrixXd& coeffs() const { return coeffs_; }

    /// Point value; x is reduced modulo L, cell-boundary values taken from
    /// the right cell (left-closed convention).
    Eigen::VectorXd eval(double x) const;
    /// Piecewise derivative under the same convention.
    Eigen::VectorXd deriv(double x) const;

private:
    SpacePtr space_;
    int d_;
    Eigen::MatrixXd coeffs_; // d x N
};

struct FieldNorms {
    double l2 = 0.0;
    double l4 = 0.0;
    double h1_semi = 0.0;
};

/// Quadrature L2, L4 and H1-seminorm of F over [0, L] (space's own rule).
FieldNorms norms(const FeField& F);

/// L2 projection under the given quadrature: assembles the periodic mass
/// matrix and solves d right-hand sides.
FeField l2_project(const SpacePtr& space, int d, const SpatialFn& f,
                   const QuadratureRule& quad);
FeField l2_project(const SpacePtr& space, int d, const SpatialFn& f);

/// Nodal interpolant: coefficients are f at the DOF positions.
FeField interpolate_nodal(const SpacePtr& space, int d, const SpatialFn& f);

} // namespace vmkdv
