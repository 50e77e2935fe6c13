#pragma once

#include <vector>

namespace vmkdv {

/// Periodic 1D mesh on [0, L]: nodes x_0 = 0 < ... < x_M = L with the
/// endpoints identified.
class Mesh {
public:
    Mesh(std::vector<double> nodes, bool uniform);

    double length() const { return nodes_.back(); }
    int cell_count() const { return static_cast<int>(nodes_.size()) - 1; }
    bool uniform() const { return uniform_; }

    double node(int m) const { return nodes_[m]; }
    const std::vector<double>& nodes() const { return nodes_; }

    double cell_left(int m) const { return nodes_[m]; }
    double cell_size(int m) const {
        return uniform_ ? h_ : nodes_[m + 1] - nodes_[m];
    }

    /// Reduce x modulo L into [0, L).
    double wrap(double x) const;

    /// Cell containing wrap(x), left-closed: a point exactly on an interior
    /// node belongs to the cell on its right.
    int locate(double x) const;

private:
    std::vector<double> nodes_;
    bool uniform_;
    double h_ = 0.0; // exact common cell size when uniform
};

/// M equal cells on [0, L]. Cell sizes are all bit-identical (L/M), which the
/// translation-equivariance tests rely on.
Mesh build_uniform_mesh(double L, int M);

/// General mesh from a node list; validates monotonicity and the adjacent
/// cell-size ratio bound rho.
Mesh build_mesh(std::vector<double> nodes, double rho = 4.0);

/// Gauss-Legendre rule on the reference cell [0, 1].
struct QuadratureRule {
    std::vector<double> points;  // in [0, 1]
    std::vector<double> weights; // sum to 1
    int exactness = 0;           // integrates polynomials up to this degree

    int size() const { return static_cast<int>(points.size()); }
};

/// n-point Gauss-Legendre rule, 1 <= n <= 30; exactness 2n - 1.
QuadratureRule gauss_rule(int n_points);

} // namespace vmkdv
