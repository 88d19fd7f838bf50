#pragma once

#include <array>
#include <optional>

#include "rmhd/linalg.hpp"
#include "rmhd/state.hpp"

namespace rmhd {

// Quasilinear form u_t + A^i u_{x_i} = 0 with u = (rho, p, u, v, w, H1, H2, H3).
Matrix8 flux_jacobian(const State& s, const FluidModel& m, int axis);

double sound_speed(const State& s, const FluidModel& m);

// Values of delta |lvec| for epsilon = +1 (deltaA, deltaS carry the sign of H.lvec).
struct CharacteristicSpeeds {
    double deltaE = 0.0;
    double deltaA = 0.0;
    double deltaS = 0.0;
    double deltaF = 0.0;
};
CharacteristicSpeeds characteristic_speeds(const State& s, const FluidModel& m, const Vec3& lvec);

// Scaled left side of the factored dispersion relation, evaluated at
// D = lambda0 + v.lvec. Zero (to roundoff) iff wv is characteristic.
double dispersion_residual(const State& s, const FluidModel& m, const WaveVector& wv);

Matrix8 wave_matrix(const State& s, const FluidModel& m, const WaveVector& wv);

// Optional caller-supplied free components for the entropic families and
// the Alfven h vector.
struct EigenOptions {
    std::optional<double> gamma_rho;
    std::optional<Vec3> gamma_v;
    std::optional<Vec3> h;
};

// Unit-normalized eigenvector of (lambda0 I + lambda_i A^i) for the family's
// characteristic lambda0. Degeneracies are reported, not papered over.
Eigenvector eigenvector(const State& s, const FluidModel& m, const Vec3& lvec,
                        const WaveFamily& family, const EigenOptions& opts = {});

double wave_relation_residual(const State& s, const FluidModel& m, const WaveVector& wv,
                              const Eigenvector& g);

// Characteristic lambda0 for a family at the given state and direction.
double family_lambda0(const State& s, const FluidModel& m, const Vec3& lvec, const WaveFamily& family);

double riemann_phase(const WaveVector& wv, double t, const Vec3& x);

// Three spacetime 4-vectors orthogonal to wv, Gram-Schmidt on the standard
// basis with the index of the largest |component| skipped.
std::array<Vec4, 3> orthogonal_complement(const WaveVector& wv);

} // namespace rmhd
