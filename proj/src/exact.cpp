#include "vmkdv/exact.hpp"

#include <cmath>
#include <stdexcept>

namespace vmkdv {

void SolitonParams::validate() const {
    if (mu == 0.0) throw std::invalid_argument("soliton: mu must be nonzero");
    if (std::abs(direction.norm() - 1.0) > 1e-14)
        throw std::invalid_argument("soliton: direction must be a unit vector");
}

void TwoSolitonParams::validate() const {
    if (mu == nu || mu == -nu)
        throw std::invalid_argument("two_soliton: need mu != +-nu");
    if (std::abs(e1.norm() - 1.0) > 1e-14 || std::abs(e2.norm() - 1.0) > 1e-14)
        throw std::invalid_argument("two_soliton: E1, E2 must be unit vectors");
    if (e1.size() != e2.size())
        throw std::invalid_argument("two_soliton: E1, E2 must agree in dimension");
}

Eigen::VectorXd one_soliton(const SolitonParams& p, double x, double t) {
    const double xi = p.mu * (x - p.shift) - p.mu * p.mu * p.mu * t;
    return (2.0 * p.mu / std::cosh(xi)) * p.direction;
}

Eigen::VectorXd two_soliton(const TwoSolitonParams& p, double x, double t) {
    const double xim = p.mu * (x - p.shift_mu) - p.mu * p.mu * p.mu * t;
    const double xin = p.nu * (x - p.shift_nu) - p.nu * p.nu * p.nu * t;
    const double mu2 = p.mu * p.mu, nu2 = p.nu * p.nu;
    const double G = (mu2 + nu2) * std::cosh(xim) * std::cosh(xin)
                   - 2.0 * p.mu * p.nu * std::sinh(xim) * std::sinh(xin)
                   - 2.0 * p.mu * p.nu * p.e1.dot(p.e2);
    if (G == 0.0) throw std::domain_error("two_soliton: zero denominator G");
    const double Fmn = 2.0 * (nu2 - mu2) * p.nu * std::cosh(xim);
    const double Fnm = 2.0 * (mu2 - nu2) * p.mu * std::cosh(xin);
    return (Fmn / G) * p.e1 + (Fnm / G) * p.e2;
}

Eigen::VectorXd three_soliton_ic(const std::array<SolitonParams, 3>& p, double x) {
    Eigen::VectorXd out = one_soliton(p[0], x, 0.0);
    out += one_soliton(p[1], x, 0.0);
    out += one_soliton(p[2], x, 0.0);
    return out;
}

Eigen::Vector2d trig_ic(double x) {
    return {std::sin(M_PI * x / 20.0), std::cos(M_PI * x / 10.0)};
}

Eigen::Vector2d box_ic(double x) {
    const double u1 = (x >= 10.0 && x <= 20.0) ? 1.0 : 0.0;
    const double u2 = (x >= 20.0 && x <= 30.0) ? 0.0 : 1.0;
    return {u1, u2};
}

Eigen::VectorXd pde_residual_fd(
    const std::function<Eigen::VectorXd(double, double)>& u, double x, double t,
    double h) {
    // 4th-order central stencils
    const auto d1 = [&](auto f) {
        return (-f(2) + 8.0 * f(1) - 8.0 * f(-1) + f(-2)) / (12.0 * h);
    };
    Eigen::VectorXd ut = d1([&](int k) { return u(x, t + k * h); });
    Eigen::VectorXd ux = d1([&](int k) { return u(x + k * h, t); });
    const auto f = [&](int k) { return u(x + k * h, t); };
    Eigen::VectorXd uxxx =
        (-f(3) + 8.0 * f(2) - 13.0 * f(1) + 13.0 * f(-1) - 8.0 * f(-2) + f(-3))
        / (8.0 * h * h * h);
    const Eigen::VectorXd u0 = u(x, t);
    return ut + 1.5 * u0.squaredNorm() * ux + uxxx;
}

} // namespace vmkdv
