#include "rmhd/double_waves.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "rmhd/curve_table.hpp"
#include "rmhd/specfun.hpp"

namespace rmhd {

namespace {

nlohmann::json vec_json(const Vec3& v) { return nlohmann::json::array({v.x, v.y, v.z}); }

// F(rho) of the fast families: f - g = eps F(rho), F = 2 v_fast(rho).
double fast_F(double rho, double kappa, double A0, double beta0) {
    return 2.0 * fast_velocity_norm(rho, kappa, A0, beta0);
}

// Monotone inversion of F on [lo, hi]: bisection bracket then Newton polish.
// Returns a negative value when the target lies outside F's range.
double invert_fast_F(double target, double kappa, double A0, double beta0,
                     double lo, double hi) {
    const double H0sq = kappa * A0 * beta0;
    double flo = fast_F(lo, kappa, A0, beta0);
    double fhi = fast_F(hi, kappa, A0, beta0);
    if (target < flo || target > fhi) return -1.0;
    double a = lo, b = hi;
    for (int i = 0; i < 60; ++i) {
        const double m = 0.5 * (a + b);
        if (fast_F(m, kappa, A0, beta0) < target)
            a = m;
        else
            b = m;
    }
    double rho = 0.5 * (a + b);
    for (int i = 0; i < 8; ++i) {
        const double Fv = fast_F(rho, kappa, A0, beta0) - target;
        const double dF = 2.0 * fast_speed(rho, kappa, A0, H0sq) / rho;
        const double step = Fv / dF;
        rho -= step;
        if (!(rho > 0.0)) {
            rho = 0.5 * (a + b);
            break;
        }
        if (std::fabs(step) < 1e-15 * std::max(1.0, rho)) break;
    }
    return rho;
}

// Smallest principal axis of sum_i rows[i] rows[i]^T (3x3 Jacobi).
Vec3 smallest_axis(const std::vector<Vec3>& rows, double* smallest_ev = nullptr) {
    double m[3][3] = {};
    for (const Vec3& v : rows) {
        const double c[3] = {v.x, v.y, v.z};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m[i][j] += c[i] * c[j];
    }
    double q[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    for (int sweep = 0; sweep < 50; ++sweep) {
        double off = std::fabs(m[0][1]) + std::fabs(m[0][2]) + std::fabs(m[1][2]);
        if (off < 1e-300) break;
        for (int p = 0; p < 2; ++p)
            for (int r = p + 1; r < 3; ++r) {
                if (std::fabs(m[p][r]) < 1e-300) continue;
                const double tau = (m[r][r] - m[p][p]) / (2.0 * m[p][r]);
                const double t = (tau >= 0 ? 1.0 : -1.0) / (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t), s = c * t;
                for (int k = 0; k < 3; ++k) {
                    const double mkp = m[k][p], mkr = m[k][r];
                    m[k][p] = c * mkp - s * mkr;
                    m[k][r] = s * mkp + c * mkr;
                }
                for (int k = 0; k < 3; ++k) {
                    const double mpk = m[p][k], mrk = m[r][k];
                    m[p][k] = c * mpk - s * mrk;
                    m[r][k] = s * mpk + c * mrk;
                }
                for (int k = 0; k < 3; ++k) {
                    const double qkp = q[k][p], qkr = q[k][r];
                    q[k][p] = c * qkp - s * qkr;
                    q[k][r] = s * qkp + c * qkr;
                }
            }
    }
    int imin = 0;
    for (int i = 1; i < 3; ++i)
        if (m[i][i] < m[imin][imin]) imin = i;
    if (smallest_ev) *smallest_ev = m[imin][imin];
    Vec3 axis{q[0][imin], q[1][imin], q[2][imin]};
    // deterministic sign: largest component positive
    int big = 0;
    double bv = std::fabs(axis.x);
    if (std::fabs(axis.y) > bv) { big = 1; bv = std::fabs(axis.y); }
    if (std::fabs(axis.z) > bv) big = 2;
    if (axis[big] < 0.0) axis = -axis;
    return normalized(axis);
}

} // namespace

// ---------------------------------------------------------------------------
// Double entropic waves
// ---------------------------------------------------------------------------

SolutionPtr ee_aligned(const EEAlignedInputs& in) {
    if (std::fabs(std::sin(in.phi0 - in.theta0)) < 1e-12)
        throw ConstructError("ee_aligned: coincident wave vectors");
    const Vec3 l1{std::cos(in.phi0), std::sin(in.phi0), 0.0};
    const Vec3 l2{std::cos(in.theta0), std::sin(in.theta0), 0.0};
    auto rho = in.rho;
    auto w = in.w;
    auto Hm = in.Hmag;
    const double p0 = in.p0;

    auto sol = std::make_shared<DoubleWave>();
    sol->family_name = "EE_aligned";
    sol->fields = [=](double s, double r) -> State {
        State u;
        u.rho = rho(s, r);
        const double h = Hm(s, r);
        u.H = {0.0, 0.0, h};
        u.p = p0 - 0.5 * h * h;
        u.v = {0.0, 0.0, w(s, r)};
        return u;
    };
    sol->lam1 = [l1](double, double) -> Vec4 { return {0.0, l1}; };
    sol->lam2 = [l2](double, double) -> Vec4 { return {0.0, l2}; };
    sol->dlam1_ds = sol->dlam1_dr = sol->dlam2_ds = sol->dlam2_dr =
        [](double, double) -> Vec4 { return {}; };
    sol->manifest_mutable() = {{"family", "EE_aligned"}, {"p0", p0},
                               {"phi0", in.phi0}, {"theta0", in.theta0},
                               {"kappa", in.model.kappa}};
    return sol;
}

SolutionPtr ee_perp_a(const EEPerpAInputs& in) {
    auto th = in.theta;
    auto wprof = in.w;
    auto vscal = in.v;
    auto Hm = in.Hmag;
    auto rho = in.rho;
    const double p0 = in.p0;

    auto sol = std::make_shared<DoubleWave>();
    sol->family_name = "EE_perp_a";
    sol->fields = [=](double s, double r) -> State {
        const double c = std::cos(th(r)), sn = std::sin(th(r));
        const Vec3 lperp{-sn, c, 0.0};
        State u;
        u.rho = rho(s, r);
        const double h = Hm(s, r);
        u.H = h * lperp;
        u.p = p0 - 0.5 * h * h;
        u.v = vscal(s, r) * lperp + Vec3{0.0, 0.0, wprof(s)};
        return u;
    };
    sol->lam1 = [th](double, double r) -> Vec4 {
        return {0.0, {std::cos(th(r)), std::sin(th(r)), 0.0}};
    };
    sol->dlam1_ds = [](double, double) -> Vec4 { return {}; };
    sol->dlam1_dr = [th](double, double r) -> Vec4 {
        const double d = th.eval(r, 1);
        return {0.0, {-std::sin(th(r)) * d, std::cos(th(r)) * d, 0.0}};
    };
    sol->lam2 = [wprof](double s, double) -> Vec4 { return {-wprof(s), {0.0, 0.0, 1.0}}; };
    sol->dlam2_ds = [wprof](double s, double) -> Vec4 { return {-wprof.eval(s, 1), {}}; };
    sol->dlam2_dr = [](double, double) -> Vec4 { return {}; };

    auto& j = sol->manifest_mutable();
    j = {{"family", "EE_perp_a"}, {"p0", p0}, {"kappa", in.model.kappa}};
    // theta(r) and w(s) cannot both vary without breaking incompressibility.
    double thvar = 0.0, wvar = 0.0;
    for (int i = 0; i <= 32; ++i) {
        const double q = -4.0 + 8.0 * i / 32.0;
        thvar = std::max(thvar, std::fabs(th.eval(q, 1)));
        wvar = std::max(wvar, std::fabs(wprof.eval(q, 1)));
    }
    j["exact"] = !(thvar > 1e-12 && wvar > 1e-12);
    return sol;
}

SolutionPtr ee_perp_b(const EEPerpBInputs& in) {
    const double c = std::cos(in.theta0), sn = std::sin(in.theta0);
    const Vec3 l1{c, sn, 0.0};
    const Vec3 e0{-sn, c, 0.0};
    auto v = in.v;
    auto w = in.w;
    auto Hp = in.Hperp;
    auto H3 = in.H3;
    auto rho = in.rho;
    const double p0 = in.p0;

    auto sol = std::make_shared<DoubleWave>();
    sol->family_name = "EE_perp_b";
    sol->fields = [=](double s, double r) -> State {
        State u;
        u.rho = rho(s, r);
        u.H = Hp(s) * e0 + Vec3{0.0, 0.0, H3(s)};
        u.p = p0 - 0.5 * norm2(u.H);
        u.v = v(s) * e0 + Vec3{0.0, 0.0, w(s)};
        return u;
    };
    sol->lam1 = [l1](double, double) -> Vec4 { return {0.0, l1}; };
    sol->dlam1_ds = sol->dlam1_dr = [](double, double) -> Vec4 { return {}; };
    sol->lam2 = [w](double s, double) -> Vec4 { return {-w(s), {0.0, 0.0, 1.0}}; };
    sol->dlam2_ds = [w](double s, double) -> Vec4 { return {-w.eval(s, 1), {}}; };
    sol->dlam2_dr = [](double, double) -> Vec4 { return {}; };
    sol->manifest_mutable() = {{"family", "EE_perp_b"}, {"p0", p0}, {"theta0", in.theta0},
                               {"kappa", in.model.kappa}};
    return sol;
}

// ---------------------------------------------------------------------------
// Double Alfven wave
// ---------------------------------------------------------------------------

SolutionPtr aa(const AAInputs& in) {
    if (!(in.rho0 > 0.0)) throw ConstructError("aa: rho0 must be positive");
    auto Ar = in.angle_r;
    auto Bs = in.angle_s;
    const double M = in.Hmag, rho0 = in.rho0, p0 = in.p0;
    const double eps = in.epsilon, h3 = in.h3_sign;

    // Sphere domain check and partial-degeneracy scan.
    double worst = 0.0, davr = 0.0, davs = 0.0;
    for (int i = 0; i <= 32; ++i)
        for (int k = 0; k <= 32; ++k) {
            const double r = -in.win_r + 2.0 * in.win_r * i / 32.0;
            const double s = -in.win_s + 2.0 * in.win_s * k / 32.0;
            const double sa = std::sin(Ar(r)), sb = std::sin(Bs(s));
            worst = std::max(worst, sa * sa + sb * sb);
            davr = std::max(davr, std::fabs(Ar.eval(r, 1)));
            davs = std::max(davs, std::fabs(Bs.eval(s, 1)));
        }
    if (worst >= 1.0)
        throw ConstructError("aa: angle profiles leave the sphere patch (sin^2 A + sin^2 B >= 1)");

    auto Hfun = [=](double s, double r) -> Vec3 {
        const double h1 = M * std::sin(Ar(r));
        const double h2 = M * std::sin(Bs(s));
        const double rem = M * M - h1 * h1 - h2 * h2;
        return {h1, h2, h3 * std::sqrt(std::max(0.0, rem))};
    };

    auto sol = std::make_shared<DoubleWave>();
    sol->family_name = "AA";
    sol->fields = [=](double s, double r) -> State {
        State u;
        u.rho = rho0;
        u.p = p0;
        u.H = Hfun(s, r);
        u.v = (eps / std::sqrt(rho0)) * u.H;
        return u;
    };
    // lambda^i proportional to the cross product of the matching partial of H
    // with e3; for this sphere parameterization the directions are constant.
    sol->lam1 = [](double, double) -> Vec4 { return {0.0, {1.0, 0.0, 0.0}}; };
    sol->lam2 = [](double, double) -> Vec4 { return {0.0, {0.0, 1.0, 0.0}}; };
    sol->dlam1_ds = sol->dlam1_dr = sol->dlam2_ds = sol->dlam2_dr =
        [](double, double) -> Vec4 { return {}; };
    sol->manifest_mutable() = {{"family", "AA"},
                               {"rho0", rho0},
                               {"p0", p0},
                               {"Hmag", M},
                               {"epsilon", in.epsilon},
                               {"degenerate_partials", (davr < 1e-12 || davs < 1e-12)},
                               {"kappa", in.model.kappa}};
    return sol;
}

// ---------------------------------------------------------------------------
// AE1
// ---------------------------------------------------------------------------

SolutionPtr ae1(const AE1Inputs& in) {
    auto phi = in.phi;
    auto psi = in.psi;
    auto Hc = in.Hcal;
    auto rho = in.rho;
    const int nchk = 256;
    const double lo = in.window.lo, hi = in.window.hi;

    // Derive the wave directions from the orthogonality relations (vea):
    // lambda2 perp {phi', phi'', phi''', psi, psi'}, lambda1 perp {phi, phi', phi''}.
    std::vector<Vec3> rows2, rows1;
    for (int i = 0; i <= nchk; ++i) {
        const double r = lo + (hi - lo) * i / nchk;
        rows2.push_back(phi.eval(r, 1));
        rows2.push_back(phi.eval(r, 2));
        rows2.push_back(phi.eval(r, 3));
        rows2.push_back(psi.eval(r, 0));
        rows2.push_back(psi.eval(r, 1));
        rows1.push_back(phi.eval(r, 0));
        rows1.push_back(phi.eval(r, 1));
        rows1.push_back(phi.eval(r, 2));
    }
    const Vec3 l2 = smallest_axis(rows2);
    const Vec3 l1 = smallest_axis(rows1);
    double scale = 1e-30, res2 = 0.0, res1 = 0.0;
    for (const Vec3& v : rows2) scale = std::max(scale, norm(v));
    for (const Vec3& v : rows2) res2 = std::max(res2, std::fabs(dot(v, l2)));
    for (const Vec3& v : rows1) res1 = std::max(res1, std::fabs(dot(v, l1)));
    if (res2 > in.vea_tol * scale || res1 > in.vea_tol * scale)
        throw ConstructError("ae1: orthogonality relations violated by phi/psi profiles");

    // Coefficients of the beta ODE over the window.
    double Lmax = 0.0, Omax = 0.0, cscale = 1e-30;
    for (int i = 0; i <= nchk; ++i) {
        const double r = lo + (hi - lo) * i / nchk;
        const Vec3 p1 = phi.eval(r, 1), p2 = phi.eval(r, 2), p3 = phi.eval(r, 3);
        const Vec3 ps = psi.eval(r, 0), ps1 = psi.eval(r, 1);
        const double L = dot(cross(p1, ps), p2);
        const double c2 = dot(cross(p1, p2), p3);
        const double c1 = dot(cross(p1, ps), p3) + dot(cross(p1, p2), ps1);
        const double c0 = dot(cross(p1, ps), ps1);
        Lmax = std::max(Lmax, std::fabs(L));
        Omax = std::max({Omax, std::fabs(c2), std::fabs(c1), std::fabs(c0)});
        const double nn = norm(p1) * norm(ps) * std::max({norm(p2), norm(p3), norm(ps1), 1e-30});
        cscale = std::max(cscale, nn);
    }

    std::string ode_mode;
    std::function<double(double)> beta;
    if (Lmax > 1e-8 * cscale) {
        // Nondegenerate leading coefficient: integrate the beta equation.
        const double branch = in.alpha_branch;
        auto beta_rhs = [=](double r, double b) -> double {
            const Vec3 p1 = phi.eval(r, 1), p2 = phi.eval(r, 2), p3 = phi.eval(r, 3);
            const Vec3 ps = psi.eval(r, 0), ps1 = psi.eval(r, 1);
            const double L = dot(cross(p1, ps), p2);
            const double n1 = norm2(p1);
            const double q = dot(p1, p2) * b + dot(p1, ps);
            const double disc = q * q - n1 * (norm2(p2) * b * b + 2.0 * dot(p2, ps) * b +
                                              norm2(ps) - Hc(r) * Hc(r));
            const double sq = std::sqrt(std::max(0.0, disc));
            const double c2 = dot(cross(p1, p2), p3);
            const double c1 = dot(cross(p1, ps), p3) + dot(cross(p1, p2), ps1) -
                              dot(p1, p2) / n1 * L;
            const double c0 = -L / n1 * (dot(p1, ps) - branch * sq) + dot(cross(p1, ps), ps1);
            return -(c2 * b * b + c1 * b + c0) / L;
        };
        // fixed-step RK4, h = 1e-3
        const double h = 1e-3;
        const int n = (int)std::ceil((hi - lo) / h);
        auto rk4 = [&](double r0, double b0, double dir, std::vector<double>& out) {
            out.assign(n + 1, b0);
            double b = b0, r = r0;
            for (int i = 0; i < n; ++i) {
                const double hh = dir * h;
                const double k1 = beta_rhs(r, b);
                const double k2 = beta_rhs(r + hh / 2, b + hh * k1 / 2);
                const double k3 = beta_rhs(r + hh / 2, b + hh * k2 / 2);
                const double k4 = beta_rhs(r + hh, b + hh * k3);
                b += hh / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
                r += hh;
                out[i + 1] = b;
            }
        };
        auto fwd = std::make_shared<std::vector<double>>();
        auto bwd = std::make_shared<std::vector<double>>();
        rk4(in.r_ref, in.beta_init, +1.0, *fwd);
        rk4(in.r_ref, in.beta_init, -1.0, *bwd);
        const double rref = in.r_ref;
        beta = [=](double r) -> double {
            const double u = (r - rref) / 1e-3;
            const auto& tab = (u >= 0.0) ? *fwd : *bwd;
            double au = std::fabs(u);
            int i = (int)au;
            if (i >= (int)tab.size() - 1) i = (int)tab.size() - 2;
            const double t = au - i;
            return tab[i] * (1.0 - t) + tab[i + 1] * t;
        };
        ode_mode = "rk4";
    } else if (Omax <= 1e-10 * cscale) {
        // Every coefficient vanishes identically: the ODE is vacuous and beta
        // stays at its initial value.
        const double b0 = in.beta_init;
        beta = [b0](double) { return b0; };
        ode_mode = "vacuous";
    } else {
        throw ConstructError("ae1: vanishing leading ODE coefficient");
    }

    // alpha from the quadratic |H|^2 = Hcal^2, with the caller's branch.
    const double branch = in.alpha_branch;
    auto Hcap = Hc;
    auto alpha = [=](double r) -> double {
        const Vec3 p1 = phi.eval(r, 1), p2 = phi.eval(r, 2);
        const Vec3 ps = psi.eval(r, 0);
        const double b = beta(r);
        const double n1 = norm2(p1);
        const double q = dot(p1, p2) * b + dot(p1, ps);
        const double disc = q * q - n1 * (norm2(p2) * b * b + 2.0 * dot(p2, ps) * b +
                                          norm2(ps) - Hcap(r) * Hcap(r));
        if (disc < 0.0) throw ConstructError("ae1: discriminant negative");
        return (-q + branch * std::sqrt(disc)) / n1;
    };
    // Delta >= 0 over the whole window, checked up front.
    double delta_min = 1e300;
    for (int i = 0; i <= nchk; ++i) {
        const double r = lo + (hi - lo) * i / nchk;
        const Vec3 p1 = phi.eval(r, 1), p2 = phi.eval(r, 2);
        const Vec3 ps = psi.eval(r, 0);
        const double b = beta(r);
        const double q = dot(p1, p2) * b + dot(p1, ps);
        const double disc = q * q - norm2(p1) * (norm2(p2) * b * b + 2.0 * dot(p2, ps) * b +
                                                 norm2(ps) - Hcap(r) * Hcap(r));
        delta_min = std::min(delta_min, disc);
    }
    if (delta_min < 0.0) throw ConstructError("ae1: discriminant negative");

    const double p0 = in.p0, eps = in.epsilon;
    auto Hfun = [=](double r) -> Vec3 {
        return alpha(r) * phi.eval(r, 1) + beta(r) * phi.eval(r, 2) + psi.eval(r, 0);
    };
    auto fields = [=](double, double r) -> State {
        State u;
        u.rho = rho(r);
        const double hc = Hcap(r);
        u.p = p0 - 0.5 * hc * hc;
        u.H = Hfun(r);
        u.v = (eps / std::sqrt(u.rho)) * u.H + phi.eval(r, 0);
        return u;
    };

    auto sol = std::make_shared<DoubleWave>();
    sol->family_name = "AE1";
    sol->fields = fields;
    sol->lam1 = [l1](double, double) -> Vec4 { return {0.0, l1}; };
    sol->dlam1_ds = sol->dlam1_dr = [](double, double) -> Vec4 { return {}; };
    auto lam2full = [=](double, double r) -> Vec4 {
        const State u = fields(0.0, r);
        return {-dot(u.v, l2), l2};
    };
    sol->lam2 = lam2full;
    sol->dlam2_ds = [](double, double) -> Vec4 { return {}; };
    sol->dlam2_dr = fd_partial_r(lam2full);

    // |H|^2 - Hcal^2 along the assembled field; what the alpha formula enforces.
    double hmis = 0.0;
    for (int i = 0; i <= nchk; ++i) {
        const double r = lo + (hi - lo) * i / nchk;
        hmis = std::max(hmis, std::fabs(norm2(Hfun(r)) - Hcap(r) * Hcap(r)));
    }

    if (!in.beta_csv.empty()) {
        std::ofstream csv(in.beta_csv);
        if (!csv) throw ConstructError("ae1: cannot open beta trajectory file " + in.beta_csv);
        csv << "r,beta,alpha,Delta\n";
        char row[160];
        for (int i = 0; i <= nchk; ++i) {
            const double r = lo + (hi - lo) * i / nchk;
            const Vec3 p1 = phi.eval(r, 1), p2 = phi.eval(r, 2);
            const Vec3 ps = psi.eval(r, 0);
            const double b = beta(r);
            const double q = dot(p1, p2) * b + dot(p1, ps);
            const double disc = q * q - norm2(p1) * (norm2(p2) * b * b + 2.0 * dot(p2, ps) * b +
                                                     norm2(ps) - Hcap(r) * Hcap(r));
            std::snprintf(row, sizeof(row), "%.17g,%.17g,%.17g,%.17g\n", r, b, alpha(r), disc);
            csv << row;
        }
    }
    double beta_lo = beta(lo), beta_hi = beta(hi);
    sol->manifest_mutable() = {{"family", "AE1"},
                               {"p0", p0},
                               {"epsilon", in.epsilon},
                               {"alpha_branch", in.alpha_branch},
                               {"ode_mode", ode_mode},
                               {"beta", {{"init", in.beta_init}, {"at_lo", beta_lo}, {"at_hi", beta_hi}}},
                               {"delta_min", delta_min},
                               {"H_norm_mismatch", hmis},
                               {"vea_residual", std::max(res1, res2) / scale},
                               {"lambda1", vec_json(l1)},
                               {"lambda2", vec_json(l2)},
                               {"kappa", in.model.kappa}};
    return sol;
}

// ---------------------------------------------------------------------------
// FF double waves
// ---------------------------------------------------------------------------

SolutionPtr ff_planar(const FFPlanarInputs& in) {
    const double A0 = in.A0, kappa = in.kappa, H0 = in.H0;
    const double beta0 = H0 * H0 / (kappa * A0);
    const double eps = in.epsilon;
    auto f = in.f;
    auto g = in.g;
    auto w = in.w;
    const double rho_lo = in.rho_lo, rho_hi = in.rho_hi;

    auto rho_of = [=](double s, double r) -> double {
        return invert_fast_F(eps * (f(r) - g(s)), kappa, A0, beta0, rho_lo, rho_hi);
    };
    if (rho_of(0.0, 0.0) <= 0.0)
        throw ConstructError("ff_planar: f(r) - g(s) outside the range of F at the origin");

    const double c0u = in.c0u, c0v = in.c0v;
    const double H0sq = H0 * H0;
    auto fields = [=](double s, double r) -> State {
        State u;
        u.rho = rho_of(s, r);
        if (!(u.rho > 0.0)) { u.rho = -1.0; return u; }
        u.p = A0 * std::pow(u.rho, kappa);
        u.H = {0.0, 0.0, u.rho * H0};
        u.v = {c0u + 0.5 * g(s), c0v - 0.5 * f(r), w(s - r)};
        return u;
    };
    auto lam1 = [=](double s, double r) -> Vec4 {
        const double rho = rho_of(s, r);
        const double d = rho > 0.0 ? eps * fast_speed(rho, kappa, A0, H0sq) : 0.0;
        return {d - (c0u + 0.5 * g(s)), {1.0, 0.0, 0.0}};
    };
    auto lam2 = [=](double s, double r) -> Vec4 {
        const double rho = rho_of(s, r);
        const double d = rho > 0.0 ? eps * fast_speed(rho, kappa, A0, H0sq) : 0.0;
        return {d - (c0v - 0.5 * f(r)), {0.0, 1.0, 0.0}};
    };
    auto ddelta = [=](double s, double r, int which) -> double {
        const double rho = rho_of(s, r);
        if (!(rho > 0.0)) return 0.0;
        const double dF = fast_speed(rho, kappa, A0, H0sq);
        const double ddelta_drho = (kappa * (kappa - 1.0) * A0 * std::pow(rho, kappa - 2.0) + H0sq) /
                                   (2.0 * dF);
        const double Fp = 2.0 * dF / rho;
        const double drho = (which == 0) ? -eps * g.eval(s, 1) / Fp : eps * f.eval(r, 1) / Fp;
        return eps * ddelta_drho * drho;
    };

    auto sol = std::make_shared<DoubleWave>();
    sol->family_name = "FF_planar";
    sol->fields = fields;
    sol->lam1 = lam1;
    sol->lam2 = lam2;
    sol->dlam1_ds = [=](double s, double r) -> Vec4 {
        return {ddelta(s, r, 0) - 0.5 * g.eval(s, 1), {}};
    };
    sol->dlam1_dr = [=](double s, double r) -> Vec4 { return {ddelta(s, r, 1), {}}; };
    sol->dlam2_ds = [=](double s, double r) -> Vec4 { return {ddelta(s, r, 0), {}}; };
    sol->dlam2_dr = [=](double s, double r) -> Vec4 {
        return {ddelta(s, r, 1) + 0.5 * f.eval(r, 1), {}};
    };

    double wvar = 0.0;
    for (int i = 0; i <= 32; ++i) wvar = std::max(wvar, std::fabs(w.eval(-4.0 + 0.25 * i, 1)));
    auto& jman = sol->manifest_mutable();
    jman = {{"family", "FF_planar"}, {"A0", A0}, {"kappa", kappa},
            {"H0", H0}, {"beta0", beta0}, {"epsilon", in.epsilon},
            {"exact", kappa == 2.0 && wvar < 1e-12}};
    if (kappa == 1.0) jman["kappa1_branch"] = "artanh real part";
    return sol;
}

SolutionPtr ff_counter(const FFCounterInputs& in) {
    const double A0 = in.A0, kappa = in.kappa, H0 = in.H0;
    const double beta0 = H0 * H0 / (kappa * A0);
    const double eps = in.epsilon;
    const double H0sq = H0 * H0;
    auto f = in.f;
    auto g = in.g;
    auto vp = in.vperp;
    auto w = in.w;
    auto ph = in.phiang;
    const double rho_lo = in.rho_lo, rho_hi = in.rho_hi;

    auto rho_of = [=](double s, double r) -> double {
        return invert_fast_F(eps * (f(r) - g(s)), kappa, A0, beta0, rho_lo, rho_hi);
    };
    if (rho_of(0.0, 0.0) <= 0.0)
        throw ConstructError("ff_counter: f(r) - g(s) outside the range of F at the origin");

    auto fields = [=](double s, double r) -> State {
        State u;
        u.rho = rho_of(s, r);
        if (!(u.rho > 0.0)) { u.rho = -1.0; return u; }
        u.p = A0 * std::pow(u.rho, kappa);
        const double zeta = s + r;
        const double c = std::cos(ph(zeta)), sn = std::sin(ph(zeta));
        u.H = u.rho * H0 * Vec3{0.0, c, sn};
        u.v = {0.5 * (f(r) + g(s)), vp(zeta), w(zeta)};
        return u;
    };
    auto uvel = [=](double s, double r) { return 0.5 * (f(r) + g(s)); };
    auto delta = [=](double s, double r) {
        const double rho = rho_of(s, r);
        return rho > 0.0 ? fast_speed(rho, kappa, A0, H0sq) : 0.0;
    };
    auto lam1 = [=](double s, double r) -> Vec4 { return {delta(s, r) - uvel(s, r), {1.0, 0.0, 0.0}}; };
    auto lam2 = [=](double s, double r) -> Vec4 { return {-(delta(s, r) + uvel(s, r)), {1.0, 0.0, 0.0}}; };
    auto ddelta = [=](double s, double r, int which) -> double {
        const double rho = rho_of(s, r);
        if (!(rho > 0.0)) return 0.0;
        const double dF = fast_speed(rho, kappa, A0, H0sq);
        const double dd = (kappa * (kappa - 1.0) * A0 * std::pow(rho, kappa - 2.0) + H0sq) / (2.0 * dF);
        const double Fp = 2.0 * dF / rho;
        const double drho = (which == 0) ? -eps * g.eval(s, 1) / Fp : eps * f.eval(r, 1) / Fp;
        return dd * drho;
    };

    auto sol = std::make_shared<DoubleWave>();
    sol->family_name = "FF_counter";
    sol->fields = fields;
    sol->lam1 = lam1;
    sol->lam2 = lam2;
    sol->dlam1_ds = [=](double s, double r) -> Vec4 {
        return {ddelta(s, r, 0) - 0.5 * g.eval(s, 1), {}};
    };
    sol->dlam1_dr = [=](double s, double r) -> Vec4 {
        return {ddelta(s, r, 1) - 0.5 * f.eval(r, 1), {}};
    };
    sol->dlam2_ds = [=](double s, double r) -> Vec4 {
        return {-(ddelta(s, r, 0) + 0.5 * g.eval(s, 1)), {}};
    };
    sol->dlam2_dr = [=](double s, double r) -> Vec4 {
        return {-(ddelta(s, r, 1) + 0.5 * f.eval(r, 1)), {}};
    };

    // Transverse profiles of s + r ride the flow only when both f and g are
    // linear with a common slope (or the profiles are constant).
    double trv = 0.0, slope_spread = 0.0;
    for (int i = 0; i <= 32; ++i) {
        const double q = -4.0 + 0.25 * i;
        trv = std::max({trv, std::fabs(vp.eval(q, 1)), std::fabs(w.eval(q, 1)),
                        std::fabs(ph.eval(q, 1))});
        slope_spread = std::max(slope_spread, std::fabs(f.eval(q, 1) - g.eval(q, 1)));
        slope_spread = std::max(slope_spread, std::fabs(f.eval(q, 2)) + std::fabs(g.eval(q, 2)));
    }
    auto& jman = sol->manifest_mutable();
    jman = {{"family", "FF_counter"}, {"A0", A0}, {"kappa", kappa},
            {"H0", H0}, {"beta0", beta0}, {"epsilon", in.epsilon},
            {"kappa2_closed_denominator", 16.0 * (2.0 * A0 + H0 * H0)},
            {"transverse_exact", !(trv > 1e-12 && slope_spread > 1e-12)}};
    if (kappa == 1.0) jman["kappa1_branch"] = "artanh real part";
    return sol;
}

Vec3 ff_counter_current(const Solution& sol, double t, const Vec3& x) {
    const Sample smp = sol.evaluate(t, x);
    if (!smp.valid) throw DomainError("ff_counter_current: point not evaluable");
    const auto& j = sol.manifest();
    const double A0 = j.at("A0"), kappa = j.at("kappa"), H0 = j.at("H0");
    const double H0sq = H0 * H0;
    const double s = smp.s, r = smp.r;
    // phase gradients from the Phi system: grad s, grad r along e1
    const Vec4 X{t, x};
    const double h = 1e-6;
    auto lam = [&](int which, double ss, double rr) { return sol.wavevec(which, ss, rr); };
    const double p11 = 1.0 - dot((1.0 / (2 * h)) * (lam(1, s + h, r) - lam(1, s - h, r)), X);
    const double p12 = -dot((1.0 / (2 * h)) * (lam(1, s, r + h) - lam(1, s, r - h)), X);
    const double p21 = -dot((1.0 / (2 * h)) * (lam(2, s + h, r) - lam(2, s - h, r)), X);
    const double p22 = 1.0 - dot((1.0 / (2 * h)) * (lam(2, s, r + h) - lam(2, s, r - h)), X);
    const double det = p11 * p22 - p12 * p21;
    // [grad s; grad r] = Phi^{-1} [lvec1; lvec2]; both lvec = e1 here
    const double sx = (p22 * 1.0 - p12 * 1.0) / det;
    const double rx = (-p21 * 1.0 + p11 * 1.0) / det;

    const double rho = smp.u.rho;
    const double dF = fast_speed(rho, kappa, A0, H0sq);
    // d rho/ds and d rho/dr through the profile relation eps F = f - g; the
    // derivative values are recovered from the phase-speed closures.
    const Vec4 l1p = sol.wavevec(1, s + h, r), l1m = sol.wavevec(1, s - h, r);
    const Vec4 l2p = sol.wavevec(2, s + h, r), l2m = sol.wavevec(2, s - h, r);
    // lam1_0 - lam2_0 = 2 delta: recover d(delta)/ds, then d(rho)/ds
    const double ddelta_ds = 0.5 * ((l1p.t - l2p.t) - (l1m.t - l2m.t)) / (2.0 * h);
    const Vec4 l1pr = sol.wavevec(1, s, r + h), l1mr = sol.wavevec(1, s, r - h);
    const Vec4 l2pr = sol.wavevec(2, s, r + h), l2mr = sol.wavevec(2, s, r - h);
    const double ddelta_dr = 0.5 * ((l1pr.t - l2pr.t) - (l1mr.t - l2mr.t)) / (2.0 * h);
    const double dddrho = (kappa * (kappa - 1.0) * A0 * std::pow(rho, kappa - 2.0) + H0sq) / (2.0 * dF);
    const double drho_ds = ddelta_ds / dddrho;
    const double drho_dr = ddelta_dr / dddrho;

    const double drho_dx = drho_ds * sx + drho_dr * rx;
    // J = curl(rho H0 e_perp(phi)) with phi frozen on s+r; for the exact
    // transverse-constant family curl reduces to H0 d(rho)/dx rotated.
    const Vec3 Hdir = (1.0 / (rho * H0)) * smp.u.H;
    return H0 * drho_dx * Vec3{0.0, -Hdir.z, Hdir.y};
}

// ---------------------------------------------------------------------------
// FE1 double waves
// ---------------------------------------------------------------------------

SolutionPtr fe1_counter(const FE1CounterInputs& in) {
    const double A0 = in.A0, kappa = in.kappa, H0 = in.H0;
    const double eps = in.epsilon, w0 = in.w_offset;
    auto rho = in.rho;
    auto ph = in.phiang;
    auto al = in.alpha;
    const bool k2 = in.kappa2_special;
    if (k2 && kappa != 2.0)
        throw ConstructError("fe1_counter: kappa2_special requires kappa = 2");
    if (!k2 && kappa == 2.0)
        throw ConstructError("fe1_counter: kappa = 2 needs the special-case inputs (A profile, C2)");
    auto A_r = in.A_r;
    const double C2 = in.C2;
    const double beta0 = H0 * H0 / (kappa * A0);

    auto Hcal = [=](double r) -> double {
        if (!k2) return H0;
        const double hh = C2 - 2.0 * A_r(r);
        return hh >= 0.0 ? std::sqrt(hh) : -1.0;
    };
    if (k2)
        for (int i = 0; i <= 64; ++i) {
            const double r = -4.0 + 8.0 * i / 64.0;
            if (Hcal(r) < 0.0) throw ConstructError("fe1_counter: C2 - 2A(r) negative");
        }

    auto wvel = [=](double s) -> double {
        const double rr = rho(s);
        if (k2) return w0 - eps * 2.0 * std::sqrt(C2 * rr);
        return w0 - eps * fast_velocity_norm(rr, kappa, A0, beta0);
    };
    auto deltaF = [=](double s, double r) -> double {
        const double rr = rho(s);
        if (k2) return std::sqrt(C2 * rr); // kappa p + |H|^2 = C2 rho^2
        (void)r;
        return fast_speed(rr, kappa, A0, H0 * H0);
    };
    auto fields = [=](double s, double r) -> State {
        State u;
        u.rho = rho(s);
        if (!(u.rho > 0.0)) { u.rho = -1.0; return u; }
        const double hc = k2 ? Hcal(r) : H0;
        u.p = k2 ? A_r(r) * u.rho * u.rho : A0 * std::pow(u.rho, kappa);
        const double c = std::cos(ph(r)), sn = std::sin(ph(r));
        u.H = u.rho * hc * Vec3{c, sn, 0.0};
        const Vec3 a = al(r);
        u.v = cross(a, Vec3{0.0, 0.0, 1.0}) + Vec3{0.0, 0.0, wvel(s)};
        return u;
    };
    auto lam1 = [=](double s, double r) -> Vec4 {
        return {eps * deltaF(s, r) - wvel(s), {0.0, 0.0, 1.0}};
    };
    auto lam2 = [=](double s, double) -> Vec4 { return {-wvel(s), {0.0, 0.0, 1.0}}; };

    auto sol = std::make_shared<DoubleWave>();
    sol->family_name = k2 ? "FE1_kappa2" : "FE1_counter";
    sol->fields = fields;
    sol->lam1 = lam1;
    sol->lam2 = lam2;
    sol->dlam1_ds = fd_partial_s(lam1);
    sol->dlam1_dr = fd_partial_r(lam1);
    sol->dlam2_ds = fd_partial_s(lam2);
    sol->dlam2_dr = [](double, double) -> Vec4 { return {}; };

    double rvar = 0.0, svar = 0.0;
    for (int i = 0; i <= 32; ++i) {
        const double q = -4.0 + 0.25 * i;
        rvar = std::max({rvar, std::fabs(ph.eval(q, 1)), norm(al.eval(q, 1)),
                         k2 ? std::fabs(A_r.eval(q, 1)) : 0.0});
        svar = std::max(svar, std::fabs(rho.eval(q, 1)));
    }
    auto& j = sol->manifest_mutable();
    j = {{"family", sol->family_name}, {"A0", A0}, {"kappa", kappa}, {"H0", H0},
         {"beta0", beta0}, {"epsilon", in.epsilon},
         // co-propagating entropic content cannot ride a varying fast wave
         {"exact", !(rvar > 1e-12 && svar > 1e-12)}};
    if (k2) j["C2"] = C2;
    if (kappa == 1.0) j["kappa1_branch"] = "artanh real part";
    return sol;
}

Vec3 fe1_lorentz_force(const Solution& sol, double t, const Vec3& x) {
    const Sample smp = sol.evaluate(t, x);
    if (!smp.valid) throw DomainError("fe1_lorentz_force: point not evaluable");
    // F_m = -(1/2) d(|H|^2)/dz e3 with |H| = rho(s) Hcal(r); chain factors of
    // both phases included.
    const double h = 1e-6;
    auto Hnorm2 = [&](double s, double r) { return norm2(sol.surface(s, r).H); };
    const double dH2_ds = (Hnorm2(smp.s + h, smp.r) - Hnorm2(smp.s - h, smp.r)) / (2.0 * h);
    const double dH2_dr = (Hnorm2(smp.s, smp.r + h) - Hnorm2(smp.s, smp.r - h)) / (2.0 * h);
    const Vec4 X{t, x};
    auto lam = [&](int which, double ss, double rr) { return sol.wavevec(which, ss, rr); };
    const double p11 = 1.0 - dot((1.0 / (2 * h)) * (lam(1, smp.s + h, smp.r) - lam(1, smp.s - h, smp.r)), X);
    const double p12 = -dot((1.0 / (2 * h)) * (lam(1, smp.s, smp.r + h) - lam(1, smp.s, smp.r - h)), X);
    const double p21 = -dot((1.0 / (2 * h)) * (lam(2, smp.s + h, smp.r) - lam(2, smp.s - h, smp.r)), X);
    const double p22 = 1.0 - dot((1.0 / (2 * h)) * (lam(2, smp.s, smp.r + h) - lam(2, smp.s, smp.r - h)), X);
    const double det = p11 * p22 - p12 * p21;
    const double sz = (p22 * 1.0 - p12 * 1.0) / det; // both lvec = e3
    const double rz = (-p21 * 1.0 + p11 * 1.0) / det;
    const double dH2_dz = dH2_ds * sz + dH2_dr * rz;
    return {0.0, 0.0, -0.5 * dH2_dz};
}

SolutionPtr fe1_perp_kappa2(const FE1PerpK2Inputs& in) {
    const double C2 = in.C2, v0y = in.v0y, eps = in.epsilon;
    auto rho = in.rho;
    auto b = in.b;
    auto w = in.w;
    auto A_r = in.A_r;
    for (int i = 0; i <= 64; ++i) {
        const double r = -4.0 + 8.0 * i / 64.0;
        if (C2 - 2.0 * A_r(r) < 0.0) throw ConstructError("fe1_perp_kappa2: C2 - 2A(r) negative");
    }
    auto Hcal = [=](double r) { return std::sqrt(C2 - 2.0 * A_r(r)); };

    auto fields = [=](double s, double r) -> State {
        State u;
        u.rho = rho(s);
        if (!(u.rho > 0.0)) { u.rho = -1.0; return u; }
        u.p = A_r(r) * u.rho * u.rho;
        u.H = {0.0, 0.0, u.rho * Hcal(r)};
        u.v = {b(r) - 2.0 * eps * std::sqrt(C2 * u.rho), v0y, w(r)};
        return u;
    };
    auto lam1 = [=](double s, double r) -> Vec4 {
        const double rr = rho(s);
        const double root = rr > 0.0 ? std::sqrt(C2 * rr) : 0.0;
        return {3.0 * eps * root - b(r), {1.0, 0.0, 0.0}};
    };
    auto lam2 = [=](double, double) -> Vec4 { return {-v0y, {0.0, 1.0, 0.0}}; };

    auto sol = std::make_shared<DoubleWave>();
    sol->family_name = "FE1_perp_kappa2";
    sol->fields = fields;
    sol->lam1 = lam1;
    sol->lam2 = lam2;
    sol->dlam1_ds = [=](double s, double) -> Vec4 {
        const double rr = rho(s);
        if (!(rr > 0.0)) return {};
        return {1.5 * eps * std::sqrt(C2 / rr) * rho.eval(s, 1), {}};
    };
    sol->dlam1_dr = [=](double, double r) -> Vec4 { return {-b.eval(r, 1), {}}; };
    sol->dlam2_ds = sol->dlam2_dr = [](double, double) -> Vec4 { return {}; };

    double bvar = 0.0;
    for (int i = 0; i <= 32; ++i) bvar = std::max(bvar, std::fabs(b.eval(-4.0 + 0.25 * i, 1)));
    sol->manifest_mutable() = {{"family", "FE1_perp_kappa2"}, {"C2", C2}, {"v0y", v0y},
                               {"epsilon", in.epsilon}, {"kappa", 2.0},
                               {"exact", bvar < 1e-12}};
    return sol;
}

Vec3 fe1_perp_vorticity(const Solution& sol, double t, const Vec3& x) {
    const Sample smp = sol.evaluate(t, x);
    if (!smp.valid) throw DomainError("fe1_perp_vorticity: point not evaluable");
    // curl v = w'(r) e1 - [b'(r) + du/ds s_y] e3 with r = y - v0 t (grad r = e2).
    const double h = 1e-6;
    auto uvel = [&](double s, double r) { return sol.surface(s, r).v.x; };
    const double du_ds = (uvel(smp.s + h, smp.r) - uvel(smp.s - h, smp.r)) / (2.0 * h);
    const double du_dr = (uvel(smp.s, smp.r + h) - uvel(smp.s, smp.r - h)) / (2.0 * h);
    auto wvel = [&](double r) { return sol.surface(smp.s, r).v.z; };
    const double dw_dr = (wvel(smp.r + h) - wvel(smp.r - h)) / (2.0 * h);
    const Vec4 X{t, x};
    auto lam = [&](int which, double ss, double rr) { return sol.wavevec(which, ss, rr); };
    const double p11 = 1.0 - dot((1.0 / (2 * h)) * (lam(1, smp.s + h, smp.r) - lam(1, smp.s - h, smp.r)), X);
    const double p12 = -dot((1.0 / (2 * h)) * (lam(1, smp.s, smp.r + h) - lam(1, smp.s, smp.r - h)), X);
    const double det = p11; // Phi = [[p11, p12], [0, 1]] for this family
    // grad s = Phi^{-1} row: s_y = (p11^{-1})(l1_y - p12 l2_y) with l1 = e1, l2 = e2
    const double sy = (0.0 - p12 * 1.0) / det;
    return {dw_dr, 0.0, -(du_dr + du_ds * sy)};
}

// ---------------------------------------------------------------------------
// Existence registry
// ---------------------------------------------------------------------------

std::array<std::array<char, 4>, 4> existence_table() {
    return {{{'+', '+', '+', '-'},
             {'+', '+', '-', '-'},
             {'+', '-', '+', '-'},
             {'-', '-', '-', '-'}}};
}

const char* existence_constructors(int row, int col) {
    static const char* names[4][4] = {
        {"ee_aligned, ee_perp_a, ee_perp_b", "ae1", "fe1_counter, fe1_perp_kappa2", ""},
        {"ae1", "aa", "", ""},
        {"fe1_counter, fe1_perp_kappa2", "", "ff_planar, ff_counter", ""},
        {"", "", "", ""}};
    if (row < 0 || row > 3 || col < 0 || col > 3) return "";
    return names[row][col];
}

} // namespace rmhd
