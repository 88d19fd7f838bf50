#pragma once

#include <functional>
#include <memory>
#include <string>

#include <json.hpp>

#include "rmhd/state.hpp"

namespace rmhd {

enum class PhaseError { None, GradientCatastrophe, NoConvergence, Domain };

inline const char* phase_error_name(PhaseError e) {
    switch (e) {
        case PhaseError::None: return "none";
        case PhaseError::GradientCatastrophe: return "gradient_catastrophe";
        case PhaseError::NoConvergence: return "no_convergence";
        case PhaseError::Domain: return "domain";
    }
    return "?";
}

struct PhaseSolve {
    double r = 0.0;
    double phi = 0.0; // dF/dr at the root, the phi(x) factor
    int iterations = 0;
    bool converged = false;
    PhaseError err = PhaseError::None;
};

struct Phase2Solve {
    double s = 0.0, r = 0.0;
    double phi[2][2] = {{1.0, 0.0}, {0.0, 1.0}}; // Phi matrix at the root
    double det_phi = 1.0;
    int iterations = 0;
    bool converged = false;
    PhaseError err = PhaseError::None;
};

struct PhaseOptions {
    double tol = 1e-12;
    int max_iter = 50;
    double catastrophe_tol = 1e-8;
};

// Damped Newton on F(r) = r - lambda0(r) t - lvec(r).x. `wavevec` returns the
// 4-vector, `wavevec_deriv` its r-derivative.
PhaseSolve solve_phase(const std::function<Vec4(double)>& wavevec,
                       const std::function<Vec4(double)>& wavevec_deriv,
                       double t, const Vec3& x, double r_guess,
                       const PhaseOptions& opt = {});

// Coupled 2D Newton on F_l = r^l - lambda^l(s,r) . X.
Phase2Solve solve_phase2(const std::function<Vec4(double, double)>& lam1,
                         const std::function<Vec4(double, double)>& lam2,
                         const std::function<Vec4(double, double)>& dlam1_ds,
                         const std::function<Vec4(double, double)>& dlam1_dr,
                         const std::function<Vec4(double, double)>& dlam2_ds,
                         const std::function<Vec4(double, double)>& dlam2_dr,
                         double t, const Vec3& x, double s_guess, double r_guess,
                         const PhaseOptions& opt = {});

struct Sample {
    State u{};
    bool valid = false;
    PhaseError err = PhaseError::Domain;
    double s = 0.0, r = 0.0;
    double phi = 0.0; // 1D phi or det(Phi)
};

// A constructed closed-form solution: evaluation is pure and thread-safe.
class Solution {
public:
    virtual ~Solution() = default;
    virtual const std::string& family() const = 0;
    virtual int rank_bound() const = 0;
    virtual Sample evaluate(double t, const Vec3& x) const = 0;

    // The defining surface u = f(s, r); simple waves ignore s.
    virtual State surface(double s, double r) const = 0;

    // Wave 4-vectors pulled back to the surface; which = 1 or 2.
    virtual Vec4 wavevec(int which, double s, double r) const = 0;

    virtual const nlohmann::json& manifest() const { return manifest_; }
    nlohmann::json& manifest_mutable() { return manifest_; }

protected:
    nlohmann::json manifest_ = nlohmann::json::object();
};

using SolutionPtr = std::shared_ptr<const Solution>;

// Generic rank-1 solution: fields and wave vector as closures of r.
class SimpleWave final : public Solution {
public:
    std::string family_name;
    std::function<State(double)> fields;
    std::function<Vec4(double)> lam;
    std::function<Vec4(double)> dlam;
    std::function<double(double, const Vec3&)> guess; // initial r guess
    PhaseOptions phase_opt{};

    const std::string& family() const override { return family_name; }
    int rank_bound() const override { return 1; }
    Sample evaluate(double t, const Vec3& x) const override;
    State surface(double, double r) const override { return fields(r); }
    Vec4 wavevec(int, double, double r) const override { return lam(r); }
};

// Generic rank-2 solution: fields and both wave vectors as closures of (s, r).
class DoubleWave final : public Solution {
public:
    std::string family_name;
    std::function<State(double, double)> fields;
    std::function<Vec4(double, double)> lam1, lam2;
    std::function<Vec4(double, double)> dlam1_ds, dlam1_dr, dlam2_ds, dlam2_dr;
    std::function<void(double, const Vec3&, double&, double&)> guess;
    PhaseOptions phase_opt{};

    const std::string& family() const override { return family_name; }
    int rank_bound() const override { return 2; }
    Sample evaluate(double t, const Vec3& x) const override;
    State surface(double s, double r) const override { return fields(s, r); }
    Vec4 wavevec(int which, double s, double r) const override {
        return which == 1 ? lam1(s, r) : lam2(s, r);
    }
};

// Finite-difference partial of a 4-vector closure, used when a constructor
// has no cheap analytic derivative for a phase map.
std::function<Vec4(double, double)> fd_partial_s(std::function<Vec4(double, double)> f, double h = 1e-6);
std::function<Vec4(double, double)> fd_partial_r(std::function<Vec4(double, double)> f, double h = 1e-6);

} // namespace rmhd
