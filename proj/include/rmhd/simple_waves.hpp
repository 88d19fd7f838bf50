#pragma once

#include "rmhd/profiles.hpp"
#include "rmhd/solution.hpp"

namespace rmhd {

struct ConstructError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// delta_F(rho) = sqrt(kappa A0 rho^(kappa-1) + H0sq rho) for a field H = rho H0
// perpendicular to the propagation direction (positive root).
double fast_speed(double rho, double kappa, double A0, double H0sq);

// Flow-speed magnitude of the fast orthogonal wave; branches kappa = 1
// (extended arctanh), kappa = 2 (closed), else hypergeometric. Satisfies
// v'(rho) = fast_speed(rho)/rho, which is the reduced-ODE content checked
// by the tests.
double fast_velocity_norm(double rho, double kappa, double A0, double beta0);

// Flow-speed magnitude of the parallel slow (compressional) wave,
// with beta0 = H0^2/(kappa A0).
double slow_velocity_norm(double rho, double kappa, double A0, double H0, double beta0);

struct ValidityWindow {
    double lo = -4.0, hi = 4.0;
};

struct E1Inputs {
    VectorProfile H;
    Profile rho;
    Profile alpha, beta; // v' = alpha H + beta H'
    double p0 = 2.0;
    Vec3 v0{};
    double r_ref = 0.0; // v(r_ref) = v0
    FluidModel model{};
    ValidityWindow window{};
};
SolutionPtr entropic_e1(const E1Inputs& in);

struct E2Inputs {
    Profile u, w, Hz, rho;
    double U0 = 0.0;
    double p0 = 2.0;
    FluidModel model{};
    ValidityWindow window{};
};
SolutionPtr entropic_e2(const E2Inputs& in);

struct E3Inputs {
    Profile rho;
    double p0 = 1.0;
    Vec3 v0{}, H0{};
    FluidModel model{};
    ValidityWindow window{};
};
SolutionPtr entropic_e3(const E3Inputs& in);

struct AlfvenInputs {
    Profile theta, phi; // polar / azimuthal angle of H on the sphere |H| = Hmag
    double rho0 = 1.0, p0 = 1.0, Hmag = 1.0;
    Vec3 v0{};
    int epsilon = +1;
    FluidModel model{};
    ValidityWindow window{};
};
SolutionPtr alfven(const AlfvenInputs& in);

struct FastOrthoInputs {
    Profile rho;
    double A0 = 1.0;
    double kappa = 2.0;
    Vec3 lambdaF{1.0, 0.0, 0.0}; // unit propagation direction
    Vec3 H0{0.0, 1.0, 0.0};      // constant direction, perpendicular to lambdaF
    int epsilon = +1;
    ValidityWindow window{};
};
SolutionPtr fast_ortho(const FastOrthoInputs& in);

struct SlowParallelInputs {
    double A0 = 1.0, H0 = 1.0, kappa = 5.0 / 3.0;
    int epsilon = +1;
    Profile chi; // wave direction angle lambda(r) = (cos chi, sin chi, 0)
    ValidityWindow window{};
};
// The construction diagnostics record the measured reduced-system residual
// of this family's fixed profile, which does not vanish (see manifest).
SolutionPtr slow_parallel(const SlowParallelInputs& in);

// Directional residual of the magnetoacoustic reduced ODE system: the
// derivative 7-vector (rho', v', H') must be parallel to the system's
// right-hand side. Returns the relative least-squares misfit, maxed over
// n samples of r in the window.
double reduced_system_residual(const Solution& sol, const FluidModel& m, const Vec3& lvec_hint,
                               double lo, double hi, int n = 64);

// Fills manifest["validity"] by sampling 1024 points of the r-window.
void scan_validity_1d(Solution& sol, const std::function<State(double)>& fields,
                      double lo, double hi);

} // namespace rmhd
