#pragma once

#include "vmkdv/field.hpp"

#include <vector>

namespace vmkdv {

/// One accepted time level of a run.
struct InvariantRow {
    long step = 0;
    double t = 0.0;
    double f2 = 0.0;
    double f4 = 0.0;
    double f6 = 0.0;
    double multiplier = 0.0;   // P
    double constraint = 0.0;   // int V . W
    int newton_iters = 0;
    double residual = 0.0;
};

struct InvariantSeries {
    std::vector<InvariantRow> rows;
};

/// Running max over m <= n of the per-component L2 errors.
struct ErrorRow {
    long step = 0;
    double t = 0.0;
    std::vector<double> e; // one entry per component
};

struct ErrorSeries {
    std::vector<ErrorRow> rows;
};

/// Shared quadrature accumulations: l2sq = |F|_{L2}^2, l4q = |F|_{L4}^4,
/// h1sq = |F_x|_{L2}^2, all over one pass with the space's rule.
struct SquaredNorms {
    double l2sq = 0.0;
    double l4q = 0.0;
    double h1sq = 0.0;
};
SquaredNorms squared_norms(const FeField& U);

double momentum_F2(const FeField& U);
/// F4 = 1/2 |U_x|^2 - 1/8 |U|_{L4}^4, evaluated with the assembly quadrature.
double energy_F4(const FeField& U);
/// Next hierarchy member; u_xx taken cellwise (broken second derivative).
double hierarchy_F6(const FeField& U);

/// int V . W dx by quadrature.
double constraint_integral(const FeField& V, const FeField& W);

/// Per-component L2 errors |U_i - u_i(., t)| by quadrature.
std::vector<double> l2_errors(const FeField& U, const SpaceTimeFn& exact, double t);

/// EOC(a, h; i) = log(a_{i+1}/a_i) / log(h_{i+1}/h_i).
std::vector<double> eoc(const std::vector<double>& errors,
                        const std::vector<double>& meshsizes);

} // namespace vmkdv
