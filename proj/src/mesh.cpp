#include "vmkdv/mesh.hpp"

#include <cmath>
#include <stdexcept>

namespace vmkdv {

Mesh::Mesh(std::vector<double> nodes, bool uniform)
    : nodes_(std::move(nodes)), uniform_(uniform) {
    if (uniform_) h_ = nodes_.back() / static_cast<double>(cell_count());
}

double Mesh::wrap(double x) const {
    const double L = length();
    double y = x - L * std::floor(x / L);
    if (y >= L) y -= L; // floor rounding can land exactly on L
    if (y < 0.0) y = 0.0;
    return y;
}

int Mesh::locate(double x) const {
    const double y = wrap(x);
    const int M = cell_count();
    if (uniform_) {
        int m = static_cast<int>(std::floor(y / h_));
        if (m >= M) m = M - 1;
        // left-closed: push to the right cell when y sits on that cell's
        // right node (floor already does this except for rounding edge)
        if (m + 1 < M && y >= nodes_[m + 1]) ++m;
        return m;
    }
    int lo = 0, hi = M;
    while (hi - lo > 1) {
        const int mid = (lo + hi) / 2;
        if (y >= nodes_[mid]) lo = mid;
        else hi = mid;
    }
    return lo;
}

Mesh build_uniform_mesh(double L, int M) {
    if (!(L > 0.0)) throw std::invalid_argument("mesh: domain length must be positive");
    if (M < 2) throw std::invalid_argument("mesh: need at least 2 cells");
    const double h = L / static_cast<double>(M);
    std::vector<double> nodes(M + 1);
    for (int m = 0; m <= M; ++m) nodes[m] = static_cast<double>(m) * h;
    nodes[M] = L; // exact right endpoint
    return Mesh(std::move(nodes), true);
}

Mesh build_mesh(std::vector<double> nodes, double rho) {
    if (nodes.size() < 3) throw std::invalid_argument("mesh: need at least 2 cells");
    if (nodes.front() != 0.0) throw std::invalid_argument("mesh: first node must be 0");
    if (!(rho >= 1.0)) throw std::invalid_argument("mesh: ratio bound must be >= 1");
    for (std::size_t m = 0; m + 1 < nodes.size(); ++m)
        if (!(nodes[m] < nodes[m + 1]))
            throw std::invalid_argument("mesh: nodes must be strictly increasing");
    for (std::size_t m = 0; m + 2 < nodes.size(); ++m) {
        const double r = (nodes[m + 1] - nodes[m]) / (nodes[m + 2] - nodes[m + 1]);
        if (r > rho || r < 1.0 / rho)
            throw std::invalid_argument("mesh: adjacent cell-size ratio exceeds bound");
    }
    return Mesh(std::move(nodes), false);
}

QuadratureRule gauss_rule(int n_points) {
    if (n_points < 1 || n_points > 30)
        throw std::invalid_argument("gauss_rule: n_points must be in [1, 30]");

    const int n = n_points;
    QuadratureRule rule;
    rule.points.resize(n);
    rule.weights.resize(n);
    rule.exactness = 2 * n - 1;

    // Roots of P_n on [-1, 1] by Newton iteration from Chebyshev guesses,
    // then mapped to [0, 1] with weights scaled by the cell measure.
    for (int k = 0; k < (n + 1) / 2; ++k) {
        double t = std::cos(M_PI * (k + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            // Legendre recurrence: p1 = P_n(t), pp = P_n'(t)
            double p0 = 1.0, p1 = t;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * t * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (t * p1 - p0) / (t * t - 1.0);
            const double dt = p1 / pp;
            t -= dt;
            if (std::abs(dt) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - t * t) * pp * pp);
        rule.points[k] = 0.5 * (1.0 - t); // descending t -> ascending x
        rule.points[n - 1 - k] = 0.5 * (1.0 + t);
        rule.weights[k] = 0.5 * w;
        rule.weights[n - 1 - k] = 0.5 * w;
    }
    if (n == 1) {
        rule.points[0] = 0.5;
        rule.weights[0] = 1.0;
    }
    return rule;
}

} // namespace vmkdv
