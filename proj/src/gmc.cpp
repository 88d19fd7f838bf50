#include "rmhd/gmc.hpp"

#include <algorithm>
#include <cmath>

#include "rmhd/linalg.hpp"

namespace rmhd {

namespace {

std::array<double, 8> pack(const State& u) {
    return {u.rho, u.p, u.v.x, u.v.y, u.v.z, u.H.x, u.H.y, u.H.z};
}

GammaFn gamma_of_surface(const Solution& sol, int which, double h) {
    return [&sol, which, h](double s, double r) {
        const State up = which == 1 ? sol.surface(s + h, r) : sol.surface(s, r + h);
        const State um = which == 1 ? sol.surface(s - h, r) : sol.surface(s, r - h);
        const auto a = pack(up), b = pack(um);
        std::array<double, 8> g{};
        for (int i = 0; i < 8; ++i) g[i] = (a[i] - b[i]) / (2.0 * h);
        return g;
    };
}

} // namespace

double gmc_commutator_residual(const GammaFn& g1, const GammaFn& g2, const GmcWindow& w) {
    double worst = 0.0;
    for (int i = 0; i < w.n; ++i)
        for (int j = 0; j < w.n; ++j) {
            const double s = w.s_lo + (w.s_hi - w.s_lo) * i / (w.n - 1.0);
            const double r = w.r_lo + (w.r_hi - w.r_lo) * j / (w.n - 1.0);
            const auto g2p = g2(s + w.h, r), g2m = g2(s - w.h, r);
            const auto g1p = g1(s, r + w.h), g1m = g1(s, r - w.h);
            double acc = 0.0, scale = 1e-30;
            const auto g1c = g1(s, r), g2c = g2(s, r);
            for (int c = 0; c < 8; ++c) {
                const double comm = (g2p[c] - g2m[c]) / (2.0 * w.h) - (g1p[c] - g1m[c]) / (2.0 * w.h);
                acc += comm * comm;
                scale = std::max({scale, std::fabs(g1c[c]), std::fabs(g2c[c])});
            }
            worst = std::max(worst, std::sqrt(acc) / std::max(scale, 1e-12));
        }
    return worst;
}

double gmc_commutator_residual(const Solution& sol, const GmcWindow& w) {
    return gmc_commutator_residual(gamma_of_surface(sol, 1, w.h), gamma_of_surface(sol, 2, w.h), w);
}

double gmc_span_residual(const LambdaFn& l1, const LambdaFn& l2, const GmcWindow& w) {
    double worst = 0.0;
    auto misfit = [&](const Vec4& d, const Vec4& a, const Vec4& b) -> double {
        // least-squares projection of d onto span{a, b}
        const double aa = dot(a, a), bb = dot(b, b), ab = dot(a, b);
        const double da = dot(d, a), db = dot(d, b);
        const double det = aa * bb - ab * ab;
        Vec4 proj{};
        if (std::fabs(det) > 1e-14 * std::max(aa * bb, 1e-30)) {
            const double ca = (da * bb - db * ab) / det;
            const double cb = (db * aa - da * ab) / det;
            proj = ca * a + cb * b;
        } else if (aa > 1e-30) {
            proj = (da / aa) * a;
        }
        const double dn = norm(d);
        if (dn < 1e-13 * std::sqrt(std::max(aa, bb))) return 0.0; // constant wave vector
        return norm(d - proj) / dn;
    };
    for (int i = 0; i < w.n; ++i)
        for (int j = 0; j < w.n; ++j) {
            const double s = w.s_lo + (w.s_hi - w.s_lo) * i / (w.n - 1.0);
            const double r = w.r_lo + (w.r_hi - w.r_lo) * j / (w.n - 1.0);
            const Vec4 a = l1(s, r), b = l2(s, r);
            const Vec4 d1 = (1.0 / (2.0 * w.h)) * (l1(s, r + w.h) - l1(s, r - w.h));
            const Vec4 d2 = (1.0 / (2.0 * w.h)) * (l2(s + w.h, r) - l2(s - w.h, r));
            worst = std::max(worst, misfit(d1, a, b));
            worst = std::max(worst, misfit(d2, a, b));
        }
    return worst;
}

double gmc_span_residual(const Solution& sol, const GmcWindow& w) {
    auto l1 = [&sol](double s, double r) { return sol.wavevec(1, s, r); };
    auto l2 = [&sol](double s, double r) { return sol.wavevec(2, s, r); };
    return gmc_span_residual(l1, l2, w);
}

int jacobian_rank(const Solution& sol, double t, const Vec3& x, double h, double sv_tol) {
    std::vector<double> jac(8 * 3, 0.0);
    for (int axis = 0; axis < 3; ++axis) {
        Vec3 xp = x, xm = x;
        xp[axis] += h;
        xm[axis] -= h;
        const Sample sp = sol.evaluate(t, xp), sm = sol.evaluate(t, xm);
        if (!sp.valid || !sm.valid) throw DomainError("jacobian_rank: invalid neighbor sample");
        const auto a = pack(sp.u), b = pack(sm.u);
        for (int c = 0; c < 8; ++c) jac[c * 3 + axis] = (a[c] - b[c]) / (2.0 * h);
    }
    return numerical_rank(jac, 8, 3, sv_tol);
}

} // namespace rmhd
