#include "rmhd/solution.hpp"

#include <cmath>

namespace rmhd {

PhaseSolve solve_phase(const std::function<Vec4(double)>& wavevec,
                       const std::function<Vec4(double)>& wavevec_deriv,
                       double t, const Vec3& x, double r_guess, const PhaseOptions& opt) {
    PhaseSolve out;
    const Vec4 X{t, x};
    double r = r_guess;
    double F = r - dot(wavevec(r), X);
    for (int it = 0; it < opt.max_iter; ++it) {
        out.iterations = it + 1;
        const double dF = 1.0 - dot(wavevec_deriv(r), X);
        out.phi = dF;
        if (std::fabs(F) <= opt.tol) {
            if (std::fabs(dF) < opt.catastrophe_tol) {
                out.err = PhaseError::GradientCatastrophe;
                out.r = r;
                return out;
            }
            // one polishing step pushes the phase residual to roundoff
            out.r = r - F / dF;
            out.converged = true;
            return out;
        }
        if (std::fabs(dF) < opt.catastrophe_tol) {
            out.err = PhaseError::GradientCatastrophe;
            out.r = r;
            return out;
        }
        double step = -F / dF;
        // halve the step while the residual grows
        double rn = r + step, Fn = rn - dot(wavevec(rn), X);
        int damp = 0;
        while (std::fabs(Fn) > std::fabs(F) && damp < 30) {
            step *= 0.5;
            rn = r + step;
            Fn = rn - dot(wavevec(rn), X);
            ++damp;
        }
        r = rn;
        F = Fn;
        if (!std::isfinite(F)) {
            out.err = PhaseError::Domain;
            out.r = r;
            return out;
        }
    }
    if (std::fabs(F) <= opt.tol) {
        out.r = r;
        out.phi = 1.0 - dot(wavevec_deriv(r), X);
        out.converged = std::fabs(out.phi) >= opt.catastrophe_tol;
        out.err = out.converged ? PhaseError::None : PhaseError::GradientCatastrophe;
        return out;
    }
    out.err = PhaseError::NoConvergence;
    out.r = r;
    return out;
}

Phase2Solve solve_phase2(const std::function<Vec4(double, double)>& lam1,
                         const std::function<Vec4(double, double)>& lam2,
                         const std::function<Vec4(double, double)>& dlam1_ds,
                         const std::function<Vec4(double, double)>& dlam1_dr,
                         const std::function<Vec4(double, double)>& dlam2_ds,
                         const std::function<Vec4(double, double)>& dlam2_dr,
                         double t, const Vec3& x, double s_guess, double r_guess,
                         const PhaseOptions& opt) {
    Phase2Solve out;
    const Vec4 X{t, x};
    double s = s_guess, r = r_guess;
    auto resid = [&](double ss, double rr, double& f1, double& f2) {
        f1 = ss - dot(lam1(ss, rr), X);
        f2 = rr - dot(lam2(ss, rr), X);
    };
    double F1, F2;
    resid(s, r, F1, F2);
    for (int it = 0; it < opt.max_iter; ++it) {
        out.iterations = it + 1;
        const double p11 = 1.0 - dot(dlam1_ds(s, r), X);
        const double p12 = -dot(dlam1_dr(s, r), X);
        const double p21 = -dot(dlam2_ds(s, r), X);
        const double p22 = 1.0 - dot(dlam2_dr(s, r), X);
        const double det = p11 * p22 - p12 * p21;
        out.phi[0][0] = p11;
        out.phi[0][1] = p12;
        out.phi[1][0] = p21;
        out.phi[1][1] = p22;
        out.det_phi = det;
        const double fn = std::max(std::fabs(F1), std::fabs(F2));
        if (std::fabs(det) < opt.catastrophe_tol) {
            out.err = PhaseError::GradientCatastrophe;
            out.s = s;
            out.r = r;
            return out;
        }
        if (fn <= opt.tol) {
            // polishing step, as in the scalar solver
            out.s = s - (p22 * F1 - p12 * F2) / det;
            out.r = r - (-p21 * F1 + p11 * F2) / det;
            out.converged = true;
            return out;
        }
        double ds = -(p22 * F1 - p12 * F2) / det;
        double dr = -(-p21 * F1 + p11 * F2) / det;
        double sn = s + ds, rn = r + dr, G1, G2;
        resid(sn, rn, G1, G2);
        int damp = 0;
        while (std::max(std::fabs(G1), std::fabs(G2)) > fn && damp < 30) {
            ds *= 0.5;
            dr *= 0.5;
            sn = s + ds;
            rn = r + dr;
            resid(sn, rn, G1, G2);
            ++damp;
        }
        s = sn;
        r = rn;
        F1 = G1;
        F2 = G2;
        if (!std::isfinite(F1) || !std::isfinite(F2)) {
            out.err = PhaseError::Domain;
            out.s = s;
            out.r = r;
            return out;
        }
    }
    out.err = PhaseError::NoConvergence;
    out.s = s;
    out.r = r;
    return out;
}

Sample SimpleWave::evaluate(double t, const Vec3& x) const {
    Sample smp;
    // closures may leave their domain (nonpositive density, inversion range);
    // evaluation stays total and reports through the mask
    try {
        const double r0 = guess ? guess(t, x) : dot(lam(0.0), Vec4{t, x});
        const PhaseSolve ps = solve_phase(lam, dlam, t, x, r0, phase_opt);
        smp.r = ps.r;
        smp.phi = ps.phi;
        smp.err = ps.err;
        if (!ps.converged) return smp;
        smp.u = fields(ps.r);
        smp.valid = smp.u.valid();
        if (!smp.valid) smp.err = PhaseError::Domain;
    } catch (const std::exception&) {
        smp.valid = false;
        smp.err = PhaseError::Domain;
    }
    return smp;
}

Sample DoubleWave::evaluate(double t, const Vec3& x) const {
    Sample smp;
    try {
        double s0 = 0.0, r0 = 0.0;
        if (guess) {
            guess(t, x, s0, r0);
        } else {
            const Vec4 X{t, x};
            s0 = dot(lam1(0.0, 0.0), X);
            r0 = dot(lam2(0.0, 0.0), X);
        }
        const Phase2Solve ps = solve_phase2(lam1, lam2, dlam1_ds, dlam1_dr, dlam2_ds, dlam2_dr,
                                            t, x, s0, r0, phase_opt);
        smp.s = ps.s;
        smp.r = ps.r;
        smp.phi = ps.det_phi;
        smp.err = ps.err;
        if (!ps.converged) return smp;
        smp.u = fields(ps.s, ps.r);
        smp.valid = smp.u.valid();
        if (!smp.valid) smp.err = PhaseError::Domain;
    } catch (const std::exception&) {
        smp.valid = false;
        smp.err = PhaseError::Domain;
    }
    return smp;
}

std::function<Vec4(double, double)> fd_partial_s(std::function<Vec4(double, double)> f, double h) {
    return [f = std::move(f), h](double s, double r) {
        return (1.0 / (2.0 * h)) * (f(s + h, r) - f(s - h, r));
    };
}

std::function<Vec4(double, double)> fd_partial_r(std::function<Vec4(double, double)> f, double h) {
    return [f = std::move(f), h](double s, double r) {
        return (1.0 / (2.0 * h)) * (f(s, r + h) - f(s, r - h));
    };
}

} // namespace rmhd
