#pragma once

#include <Eigen/Dense>

#include <array>
#include <functional>

namespace vmkdv {

/// Travelling-wave parameters of the 1-soliton u = (2 mu / cosh xi) E,
/// xi = mu (x - c) - mu^3 t.
struct SolitonParams {
    double mu = 1.0;
    double shift = 0.0;          // c_mu
    Eigen::VectorXd direction;   // unit vector E

    void validate() const;
};

struct TwoSolitonParams {
    double mu = 0.0;
    double nu = 0.0;
    double shift_mu = 0.0;
    double shift_nu = 0.0;
    Eigen::VectorXd e1;
    Eigen::VectorXd e2;

    void validate() const; // |E1| = |E2| = 1, mu != +-nu
};

Eigen::VectorXd one_soliton(const SolitonParams& p, double x, double t);
Eigen::VectorXd two_soliton(const TwoSolitonParams& p, double x, double t);

/// Sum of three 1-soliton profiles at t = 0.
Eigen::VectorXd three_soliton_ic(const std::array<SolitonParams, 3>& p, double x);

/// (sin(pi x / 20), cos(pi x / 10)).
Eigen::Vector2d trig_ic(double x);

/// Indicator pair: u1 = 1 on [10, 20] else 0; u2 = 0 on [20, 30] else 1.
Eigen::Vector2d box_ic(double x);

/// 4th-order central finite-difference residual of
/// u_t + (3/2) ||u||^2 u_x + u_xxx at (x, t).
Eigen::VectorXd pde_residual_fd(
    const std::function<Eigen::VectorXd(double, double)>& u, double x, double t,
    double stencil_h);

} // namespace vmkdv
