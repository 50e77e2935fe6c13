#pragma once

#include <Eigen/Dense>

#include <vector>

namespace vmkdv {

/// General banded matrix with LU factorization under partial pivoting,
/// LAPACK band storage (kl extra superdiagonals for pivot fill).
class BandedMatrix {
public:
    BandedMatrix() = default;
    BandedMatrix(int n, int kl, int ku) { reset(n, kl, ku); }

    void reset(int n, int kl, int ku);
    void zero();

    int size() const { return n_; }

    /// Entry (i, j); only |i - j| within the band is addressable.
    double& at(int i, int j) { return ab_[static_cast<std::size_t>(j) * ld_ + kl_ + ku_ + i - j]; }
    double at(int i, int j) const { return ab_[static_cast<std::size_t>(j) * ld_ + kl_ + ku_ + i - j]; }
    bool in_band(int i, int j) const { return i - j <= kl_ && j - i <= ku_; }

    /// In-place LU with row pivoting. Returns false on a zero pivot.
    bool factorize();

    /// Solve with the factored matrix, overwriting x (length n).
    void solve_inplace(double* x) const;
    void solve_inplace(Eigen::Ref<Eigen::MatrixXd> X) const;

private:
    int n_ = 0, kl_ = 0, ku_ = 0, ld_ = 0;
    std::vector<double> ab_; // column-major, ld x n
    std::vector<int> piv_;
    bool factored_ = false;
};

/// Direct solver for the node-block cyclic-banded matrix with one extra dense
/// row/column (the "arrow"): size n = N*g + 1, couplings only between nodes
/// within cyclic distance <= reach, plus the arrow. Internally: a banded core
/// over the first N - reach nodes and a dense Schur border holding the last
/// reach nodes and the arrow.
class ArrowBandSolver {
public:
    void reset(int n_nodes, int block, int reach);
    void zero();

    int size() const { return n_nodes_ * g_ + 1; }

    /// Accumulate into entry (i, j) of the logical matrix (node-major
    /// indices; the arrow is index size()-1).
    void add(int i, int j, double v);

    /// Factorize; returns false if singular.
    bool factorize();

    /// x := A^{-1} x.
    void solve_inplace(Eigen::VectorXd& x) const;

private:
    int map(int idx) const { return idx < n0_ ? idx : -(idx - n0_) - 1; } // >=0 core, <0 border

    int n_nodes_ = 0, g_ = 0, reach_ = 0;
    int n0_ = 0; // core size
    int s_ = 0;  // border size = reach*g + 1
    BandedMatrix core_;
    Eigen::MatrixXd F_;     // core x border
    Eigen::MatrixXd G_;     // border x core
    Eigen::MatrixXd D_;     // border x border
    Eigen::MatrixXd X_;     // core^{-1} F
    Eigen::FullPivLU<Eigen::MatrixXd> schur_;
};

} // namespace vmkdv
