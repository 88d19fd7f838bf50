#pragma once

#include <functional>

#include "rmhd/solution.hpp"

namespace rmhd {

struct GmcWindow {
    double s_lo = -1.0, s_hi = 1.0;
    double r_lo = -1.0, r_hi = 1.0;
    int n = 17;      // sample points per direction
    double h = 1e-4; // finite-difference step
};

using SurfaceFn = std::function<State(double, double)>;
using GammaFn = std::function<std::array<double, 8>(double, double)>;
using LambdaFn = std::function<Vec4(double, double)>;

// Commutator of the surface's gamma fields, max over the window:
// gamma_1 = df/ds, gamma_2 = df/dr, residual = || d(gamma_2)/ds - d(gamma_1)/dr ||.
double gmc_commutator_residual(const Solution& sol, const GmcWindow& w = {});

// Same check for externally supplied gamma fields (synthetic controls).
double gmc_commutator_residual(const GammaFn& g1, const GammaFn& g2, const GmcWindow& w = {});

// Span condition: d(lambda^s)/d(r^l) must lie in span{lambda^s, lambda^l}.
// Returns the max relative least-squares misfit over the window.
double gmc_span_residual(const Solution& sol, const GmcWindow& w = {});
double gmc_span_residual(const LambdaFn& l1, const LambdaFn& l2, const GmcWindow& w = {});

// Numerical rank of the spatial Jacobian du/dx by central differences and
// singular values, threshold sv_tol * sigma_1.
int jacobian_rank(const Solution& sol, double t, const Vec3& x, double h = 1e-5,
                  double sv_tol = 1e-6);

} // namespace rmhd
