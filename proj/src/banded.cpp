#include "vmkdv/banded.hpp"

#include <cmath>
#include <stdexcept>

namespace vmkdv {

void BandedMatrix::reset(int n, int kl, int ku) {
    n_ = n;
    kl_ = kl;
    ku_ = ku;
    ld_ = 2 * kl + ku + 1;
    ab_.assign(static_cast<std::size_t>(ld_) * n_, 0.0);
    piv_.assign(n_, 0);
    factored_ = false;
}

void BandedMatrix::zero() {
    std::fill(ab_.begin(), ab_.end(), 0.0);
    factored_ = false;
}

bool BandedMatrix::factorize() {
    // dgbtf2-style unblocked band LU with partial pivoting. U gains up to
    // kl extra superdiagonals; storage already reserves them.
    const int n = n_, kl = kl_, ku = ku_, ld = ld_;
    double* ab = ab_.data();
    for (int j = 0; j < n; ++j) {
        const int km = std::min(kl, n - 1 - j);
        double* colj = ab + static_cast<std::size_t>(j) * ld + kl + ku;
        int jp = 0;
        double amax = std::abs(colj[0]);
        for (int p = 1; p <= km; ++p) {
            const double v = std::abs(colj[p]);
            if (v > amax) {
                amax = v;
                jp = p;
            }
        }
        piv_[j] = j + jp;
        if (colj[jp] == 0.0) return false;

        const int ju = std::min(j + kl + ku, n - 1);
        if (jp != 0) {
            for (int c = j; c <= ju; ++c) {
                double* colc = ab + static_cast<std::size_t>(c) * ld + kl + ku + j - c;
                std::swap(colc[0], colc[jp]);
            }
        }
        const double pivinv = 1.0 / colj[0];
        for (int p = 1; p <= km; ++p) colj[p] *= pivinv;
        for (int c = j + 1; c <= ju; ++c) {
            double* colc = ab + static_cast<std::size_t>(c) * ld + kl + ku + j - c;
            const double t = colc[0];
            if (t != 0.0) {
                for (int p = 1; p <= km; ++p) colc[p] -= colj[p] * t;
            }
        }
    }
    factored_ = true;
    return true;
}

void BandedMatrix::solve_inplace(double* x) const {
    if (!factored_) throw std::logic_error("BandedMatrix: solve before factorize");
    const int n = n_, kl = kl_, ku = ku_, ld = ld_;
    const double* ab = ab_.data();
    for (int j = 0; j < n - 1; ++j) {
        const int p = piv_[j];
        if (p != j) std::swap(x[j], x[p]);
        const int km = std::min(kl, n - 1 - j);
        const double* colj = ab + static_cast<std::size_t>(j) * ld + kl + ku;
        const double xj = x[j];
        if (xj != 0.0)
            for (int i = 1; i <= km; ++i) x[j + i] -= colj[i] * xj;
    }
    for (int j = n - 1; j >= 0; --j) {
        const double* colj = ab + static_cast<std::size_t>(j) * ld + kl + ku;
        x[j] /= colj[0];
        const double xj = x[j];
        const int top = std::max(0, j - kl - ku);
        if (xj != 0.0)
            for (int i = top; i < j; ++i) x[i] -= colj[i - j] * xj;
    }
}

void BandedMatrix::solve_inplace(Eigen::Ref<Eigen::MatrixXd> X) const {
    for (int c = 0; c < X.cols(); ++c) solve_inplace(X.col(c).data());
}

void ArrowBandSolver::reset(int n_nodes, int block, int reach) {
    if (n_nodes <= reach) throw std::invalid_argument("ArrowBandSolver: need more than `reach` nodes");
    n_nodes_ = n_nodes;
    g_ = block;
    reach_ = reach;
    n0_ = (n_nodes - reach) * block;
    s_ = reach * block + 1;
    const int band = block * (reach + 1) - 1;
    core_.reset(n0_, band, band);
    F_.setZero(n0_, s_);
    G_.setZero(s_, n0_);
    D_.setZero(s_, s_);
}

void ArrowBandSolver::zero() {
    core_.zero();
    F_.setZero();
    G_.setZero();
    D_.setZero();
}

void ArrowBandSolver::add(int i, int j, double v) {
    if (i < n0_) {
        if (j < n0_) core_.at(i, j) += v;
        else F_(i, j - n0_) += v;
    } else {
        if (j < n0_) G_(i - n0_, j) += v;
        else D_(i - n0_, j - n0_) += v;
    }
}

bool ArrowBandSolver::factorize() {
    if (!core_.factorize()) return false;
    X_ = F_;
    core_.solve_inplace(X_);
    schur_.compute(D_ - G_ * X_);
    return schur_.isInvertible();
}

void ArrowBandSolver::solve_inplace(Eigen::VectorXd& x) const {
    Eigen::VectorXd t = x.head(n0_);
    core_.solve_inplace(t.data());
    Eigen::VectorXd y2 = schur_.solve(x.tail(s_) - G_ * t);
    x.head(n0_) = t - X_ * y2;
    x.tail(s_) = y2;
}

} // namespace vmkdv
