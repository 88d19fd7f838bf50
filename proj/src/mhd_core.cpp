#include "rmhd/mhd_core.hpp"

#include <algorithm>
#include <cmath>

namespace rmhd {

Matrix8 flux_jacobian(const State& s, const FluidModel& m, int axis) {
    if (!s.valid()) throw DomainError("flux_jacobian: invalid state");
    m.require_valid();
    const double rho = s.rho, p = s.p, kp = m.kappa * p;
    const double u = s.v.x, v = s.v.y, w = s.v.z;
    const double H1 = s.H.x, H2 = s.H.y, H3 = s.H.z;
    Matrix8 A = mat8_zero();
    switch (axis) {
        case 1:
            for (int i = 0; i < 8; ++i) A[i][i] = u;
            A[0][2] = rho;
            A[1][2] = kp;
            A[2][1] = 1.0 / rho;
            A[2][6] = H2 / rho;
            A[2][7] = H3 / rho;
            A[3][6] = -H1 / rho;
            A[4][7] = -H1 / rho;
            A[6][2] = H2;
            A[6][3] = -H1;
            A[7][2] = H3;
            A[7][4] = -H1;
            break;
        case 2:
            for (int i = 0; i < 8; ++i) A[i][i] = v;
            A[0][3] = rho;
            A[1][3] = kp;
            A[2][5] = -H2 / rho;
            A[3][1] = 1.0 / rho;
            A[3][5] = H1 / rho;
            A[3][7] = H3 / rho;
            A[4][7] = -H2 / rho;
            A[5][2] = -H2;
            A[5][3] = H1;
            A[7][3] = H3;
            A[7][4] = -H2;
            break;
        case 3:
            for (int i = 0; i < 8; ++i) A[i][i] = w;
            A[0][4] = rho;
            A[1][4] = kp;
            A[2][5] = -H3 / rho;
            A[3][6] = -H3 / rho;
            A[4][1] = 1.0 / rho;
            A[4][5] = H1 / rho;
            A[4][6] = H2 / rho;
            A[5][2] = -H3;
            A[5][4] = H1;
            A[6][3] = -H3;
            A[6][4] = H2;
            break;
        default:
            throw DomainError("flux_jacobian: axis must be 1, 2 or 3");
    }
    return A;
}

double sound_speed(const State& s, const FluidModel& m) {
    if (!(s.rho > 0.0) || !(s.p > 0.0)) throw DomainError("sound_speed: rho and p must be positive");
    m.require_valid();
    return std::sqrt(m.kappa * s.p / s.rho);
}

CharacteristicSpeeds characteristic_speeds(const State& s, const FluidModel& m, const Vec3& lvec) {
    if (!(s.rho > 0.0)) throw DomainError("characteristic_speeds: rho must be positive");
    const double ln = norm(lvec);
    if (!(ln > 0.0)) throw DomainError("characteristic_speeds: zero wave direction");
    const Vec3 n = lvec / ln;
    const double a = sound_speed(s, m);
    const Vec3 b = s.H / std::sqrt(s.rho);
    // [(a n +- b)^2]^(1/2) read as Euclidean norms; computed on the unit
    // direction and rescaled by |lvec| so delta|lvec|/|lvec| is homogeneous.
    const double X = norm(a * n + b);
    const double Y = norm(a * n - b);
    CharacteristicSpeeds out;
    out.deltaE = 0.0;
    out.deltaA = dot(s.H, lvec) / std::sqrt(s.rho);
    out.deltaS = 0.5 * (X - Y) * ln;
    out.deltaF = 0.5 * (X + Y) * ln;
    return out;
}

double dispersion_residual(const State& s, const FluidModel& m, const WaveVector& wv) {
    const double D = wv.delta_times_norm(s.v);
    const double D2 = D * D;
    const double l2 = norm2(wv.lvec);
    const double a2 = m.kappa * s.p / s.rho;
    const double b2 = norm2(s.H) / s.rho;
    const double hl = dot(s.H, wv.lvec);
    const double alf = hl * hl / s.rho;

    // D^2 (D^2 - (H.l)^2/rho) [D^4 - D^2 (a^2 + |H|^2/rho) |l|^2 + a^2 (H.l)^2 |l|^2 / rho]
    const double quart = D2 * D2 - D2 * (a2 + b2) * l2 + a2 * alf * l2;
    const double value = D2 * (D2 - alf) * quart;

    const double M = std::max(D2, (a2 + b2) * l2);
    const double scale = std::max(M * M * M * M, 1e-300);
    return std::fabs(value) / scale;
}

Matrix8 wave_matrix(const State& s, const FluidModel& m, const WaveVector& wv) {
    Matrix8 out = mat8_zero();
    for (int i = 0; i < 8; ++i) out[i][i] = wv.lambda0;
    const Vec3 l = wv.lvec;
    const double lc[3] = {l.x, l.y, l.z};
    for (int ax = 1; ax <= 3; ++ax) {
        if (lc[ax - 1] == 0.0) continue;
        const Matrix8 A = flux_jacobian(s, m, ax);
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j) out[i][j] += lc[ax - 1] * A[i][j];
    }
    return out;
}

double family_lambda0(const State& s, const FluidModel& m, const Vec3& lvec, const WaveFamily& f) {
    f.require_valid();
    const auto cs = characteristic_speeds(s, m, lvec);
    const double adv = dot(s.v, lvec);
    switch (f.kind) {
        case WaveKind::E1:
        case WaveKind::E2:
        case WaveKind::E3: return -adv;
        case WaveKind::Alfven: return f.epsilon * cs.deltaA - adv;
        case WaveKind::Slow: return f.epsilon * cs.deltaS - adv;
        case WaveKind::Fast: return f.epsilon * cs.deltaF - adv;
    }
    throw DomainError("family_lambda0: bad family");
}

namespace {

Vec3 unit_perp(const Vec3& l) {
    // Deterministic completion: seed with the basis vector least aligned with l.
    const Vec3 n = normalized(l);
    Vec3 seed{1.0, 0.0, 0.0};
    double best = std::fabs(n.x);
    if (std::fabs(n.y) < best) { seed = {0.0, 1.0, 0.0}; best = std::fabs(n.y); }
    if (std::fabs(n.z) < best) seed = {0.0, 0.0, 1.0};
    const Vec3 p = seed - dot(seed, n) * n;
    return normalized(p);
}

Eigenvector normalize_sign(Eigenvector g) {
    const double nrm = g.norm();
    if (nrm == 0.0) {
        g.degenerate = true;
        return g;
    }
    double comps[8] = {g.g_rho, g.g_p, g.g_v.x, g.g_v.y, g.g_v.z, g.g_h.x, g.g_h.y, g.g_h.z};
    int imax = 0;
    for (int i = 1; i < 8; ++i)
        if (std::fabs(comps[i]) > std::fabs(comps[imax])) imax = i;
    const double sgn = comps[imax] >= 0.0 ? 1.0 : -1.0;
    const double f = sgn / nrm;
    g.g_rho *= f;
    g.g_p *= f;
    g.g_v = f * g.g_v;
    g.g_h = f * g.g_h;
    return g;
}

} // namespace

Eigenvector eigenvector(const State& s, const FluidModel& m, const Vec3& lvec,
                        const WaveFamily& f, const EigenOptions& opts) {
    f.require_valid();
    if (!s.valid()) throw DomainError("eigenvector: invalid state");
    if (!(norm(lvec) > 0.0)) throw DomainError("eigenvector: zero wave direction");
    const double sq_rho = std::sqrt(s.rho);
    Eigenvector g;

    switch (f.kind) {
        case WaveKind::E3: {
            g.g_rho = opts.gamma_rho.value_or(1.0);
            return normalize_sign(g);
        }
        case WaveKind::E1:
        case WaveKind::E2: {
            // Kernel at delta = 0 needs H.lvec = 0, gamma_v . lvec = 0 and
            // gamma_p = -(H.h); -(H.lambda) vanishes on the family manifold
            // (lambda perp H) and would fail the wave relation for general h.
            if (std::fabs(dot(s.H, lvec)) > 1e-10 * std::max(1.0, norm(s.H) * norm(lvec))) {
                g.degenerate = true;
                g.note = "entropic family requires H perpendicular to lvec";
            }
            const Vec3 n = normalized(lvec);
            Vec3 gv = opts.gamma_v.value_or(unit_perp(lvec));
            gv = gv - dot(gv, n) * n; // enforce the kernel constraint exactly
            Vec3 h;
            if (opts.h) {
                h = *opts.h;
            } else {
                const Vec3 c = cross(n, s.H);
                h = (norm(c) > 1e-12 * std::max(1.0, norm(s.H))) ? normalized(c) : unit_perp(lvec);
            }
            g.g_rho = opts.gamma_rho.value_or(1.0);
            g.g_p = -dot(s.H, h);
            g.g_v = gv;
            g.g_h = h;
            return normalize_sign(g);
        }
        case WaveKind::Alfven: {
            Vec3 h;
            if (opts.h) {
                h = *opts.h;
            } else {
                const Vec3 c = cross(lvec, s.H);
                if (norm(c) <= 1e-12 * std::max(1.0, norm(s.H) * norm(lvec))) {
                    g.degenerate = true;
                    g.note = "Alfven h construction degenerate: H parallel to lvec";
                    return g;
                }
                h = normalized(c);
            }
            // h must be orthogonal to both lvec and H for the wave relation.
            if (std::fabs(dot(h, lvec)) > 1e-8 * norm(lvec) ||
                std::fabs(dot(h, s.H)) > 1e-8 * std::max(1.0, norm(s.H))) {
                g.degenerate = true;
                g.note = "Alfven h must be orthogonal to lvec and H";
            }
            g.g_v = (f.epsilon / sq_rho) * h;
            g.g_h = h;
            return normalize_sign(g);
        }
        case WaveKind::Slow:
        case WaveKind::Fast: {
            const auto cs = characteristic_speeds(s, m, lvec);
            const double D = f.epsilon * (f.kind == WaveKind::Slow ? cs.deltaS : cs.deltaF);
            const double l2 = norm2(lvec);
            const double hl = dot(s.H, lvec);
            const double D2 = D * D;
            g.g_rho = s.rho * D2 - hl * hl;
            g.g_p = m.kappa * s.p * (D2 - hl * hl / s.rho);
            g.g_v = -D * ((D2 / l2) * lvec - (hl / s.rho) * s.H);
            g.g_h = (D2 / l2) * (l2 * s.H - hl * lvec);
            const double scale = std::max(1.0, s.rho * (cs.deltaF * cs.deltaF + norm2(s.H) / s.rho * l2));
            if (g.norm() <= 1e-10 * scale) {
                g = Eigenvector{};
                g.degenerate = true;
                g.note = "magnetoacoustic eigenvector degenerate (zero formula output)";
                return g;
            }
            return normalize_sign(g);
        }
    }
    throw DomainError("eigenvector: bad family");
}

double wave_relation_residual(const State& s, const FluidModel& m, const WaveVector& wv,
                              const Eigenvector& g) {
    const Matrix8 W = wave_matrix(s, m, wv);
    const std::array<double, 8> x = {g.g_rho, g.g_p, g.g_v.x, g.g_v.y, g.g_v.z,
                                     g.g_h.x, g.g_h.y, g.g_h.z};
    const auto y = mat8_apply(W, x);
    double r = 0.0;
    for (double c : y) r += c * c;
    return std::sqrt(r);
}

double riemann_phase(const WaveVector& wv, double t, const Vec3& x) {
    return wv.lambda0 * t + dot(wv.lvec, x);
}

std::array<Vec4, 3> orthogonal_complement(const WaveVector& wv) {
    const Vec4 lam = wv.as_vec4();
    const double ln = norm(lam);
    if (!(ln > 0.0)) throw DomainError("orthogonal_complement: zero wave vector");
    int skip = 0;
    for (int i = 1; i < 4; ++i)
        if (std::fabs(lam[i]) > std::fabs(lam[skip])) skip = i;

    std::array<Vec4, 3> xi{};
    int count = 0;
    const Vec4 lhat = (1.0 / ln) * lam;
    for (int i = 0; i < 4 && count < 3; ++i) {
        if (i == skip) continue;
        Vec4 e{};
        e[i] = 1.0;
        Vec4 v = e - dot(e, lhat) * lhat;
        for (int j = 0; j < count; ++j) v = v - dot(v, xi[j]) * xi[j];
        const double vn = norm(v);
        if (!(vn > 1e-14)) throw DomainError("orthogonal_complement: degenerate basis");
        xi[count++] = (1.0 / vn) * v;
    }
    return xi;
}

} // namespace rmhd
