#pragma once

#include <array>

#include "rmhd/profiles.hpp"
#include "rmhd/simple_waves.hpp"
#include "rmhd/solution.hpp"

namespace rmhd {

// ---------------------------------------------------------------------------
// Double entropic waves
// ---------------------------------------------------------------------------

struct EEAlignedInputs {
    TwoPhaseScalar rho, w, Hmag;
    double p0 = 2.0;
    double phi0 = 0.0, theta0 = M_PI_2; // constant planar wave angles, distinct
    FluidModel model{};
};
SolutionPtr ee_aligned(const EEAlignedInputs& in);

struct EEPerpAInputs {
    Profile theta;        // theta(r), direction angle of lambda^2
    Profile w;            // w(s); the solution is exact when w is constant
    TwoPhaseScalar v, Hmag, rho;
    double p0 = 2.0;
    FluidModel model{};
};
SolutionPtr ee_perp_a(const EEPerpAInputs& in);

struct EEPerpBInputs {
    double theta0 = 0.0;  // constant wave angle
    Profile v, w, Hperp, H3; // functions of s
    TwoPhaseScalar rho;
    double p0 = 2.0;
    FluidModel model{};
};
SolutionPtr ee_perp_b(const EEPerpBInputs& in);

// ---------------------------------------------------------------------------
// Double Alfven wave
// ---------------------------------------------------------------------------

struct AAInputs {
    Profile angle_r; // H1 = Hmag sin(angle_r(r))
    Profile angle_s; // H2 = Hmag sin(angle_s(s))
    double rho0 = 1.0, p0 = 1.0, Hmag = 1.0;
    int epsilon = +1;
    int h3_sign = +1;
    FluidModel model{};
    double win_s = 4.0, win_r = 4.0; // sphere-domain check box
};
SolutionPtr aa(const AAInputs& in);

// ---------------------------------------------------------------------------
// Alfven-entropic double wave AE1
// ---------------------------------------------------------------------------

struct AE1Inputs {
    VectorProfile phi; // drift curve phi(r)
    VectorProfile psi; // psi(r)
    Profile Hcal;      // |H|(r)
    Profile rho;       // rho(r)
    double p0 = 1.0;
    double beta_init = 0.0;
    double r_ref = 0.0;
    int epsilon = +1;
    int alpha_branch = +1;
    FluidModel model{};
    ValidityWindow window{};
    double vea_tol = 1e-10;
    std::string beta_csv; // when set, dump r,beta,alpha,Delta over the window
};
SolutionPtr ae1(const AE1Inputs& in);

// ---------------------------------------------------------------------------
// Double fast magnetoacoustic waves
// ---------------------------------------------------------------------------

struct FFPlanarInputs {
    Profile f; // f(r)
    Profile g; // g(s)
    double A0 = 1.0, kappa = 2.0, H0 = 1.0;
    double c0u = 0.0, c0v = 0.0; // velocity frame constants
    Profile w;                   // transverse w(s - r); exact only for
                                 // opposite-slope linear f, g
    int epsilon = +1;
    double rho_lo = 1e-6, rho_hi = 1e6; // monotone inversion bracket
};
SolutionPtr ff_planar(const FFPlanarInputs& in);

struct FFCounterInputs {
    Profile f; // f(r)
    Profile g; // g(s)
    double A0 = 1.0, kappa = 2.0, H0 = 1.0;
    Profile vperp, w, phiang; // transverse profiles of (s + r); exact when
                              // constant or f, g share one linear slope
    int epsilon = +1;
    double rho_lo = 1e-6, rho_hi = 1e6;
};
SolutionPtr ff_counter(const FFCounterInputs& in);

// Closed-form electric current of the counter-propagating FF wave (chain
// factors from the solved phases included); compare against the
// finite-difference curl.
Vec3 ff_counter_current(const Solution& sol, double t, const Vec3& x);

// ---------------------------------------------------------------------------
// Fast-entropic double waves FE1
// ---------------------------------------------------------------------------

struct FE1CounterInputs {
    Profile rho;         // rho(s)
    Profile phiang;      // H direction angle, function of r
    VectorProfile alpha; // drift alpha(r), velocity = alpha x e3 + w e3
    double A0 = 1.0, kappa = 5.0 / 3.0, H0 = 1.0;
    double w_offset = 0.0;
    int epsilon = +1;
    // kappa = 2 special case: supply A(r) and C2; then p = A(r) rho^2 and
    // |H| direction magnitude Hcal = sqrt(C2 - 2A).
    bool kappa2_special = false;
    Profile A_r;
    double C2 = 1.0;
    FluidModel model{};
};
SolutionPtr fe1_counter(const FE1CounterInputs& in);

// Closed-form Lorentz force of FE1 (chain factors included).
Vec3 fe1_lorentz_force(const Solution& sol, double t, const Vec3& x);

struct FE1PerpK2Inputs {
    Profile rho; // rho(s)
    Profile b;   // b(r); exact solution requires b constant
    Profile w;   // w(r)
    Profile A_r; // A(r) with 2A + Hcal^2 = C2
    double C2 = 1.0;
    double v0y = 0.0;
    int epsilon = +1;
};
SolutionPtr fe1_perp_kappa2(const FE1PerpK2Inputs& in);

// Closed-form vorticity of the perpendicular kappa=2 FE1 wave.
Vec3 fe1_perp_vorticity(const Solution& sol, double t, const Vec3& x);

// ---------------------------------------------------------------------------
// Existence registry (rows/cols E, A, F, S)
// ---------------------------------------------------------------------------

std::array<std::array<char, 4>, 4> existence_table();
const char* existence_constructors(int row, int col); // names covering a '+'

} // namespace rmhd
