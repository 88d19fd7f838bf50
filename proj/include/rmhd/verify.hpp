#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "rmhd/parallel.hpp"
#include "rmhd/solution.hpp"

namespace rmhd {

struct FieldError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Axis {
    double lo = 0.0, hi = 1.0;
    int n = 8;
};

struct GridSpec {
    double t0 = 0.0;
    double dt = 0.0; // <= 0: set from min cell / max wave speed
    Axis ax[3];      // x, y, z
    double min_valid_fraction = 0.8;
};

// Three time slices (t0 - dt, t0, t0 + dt) of states on a regular grid. The
// parallel sampler writes each point independently into the preallocated
// arrays, so the result is bit-identical for any thread count.
struct SolutionField {
    GridSpec grid;
    FluidModel model;
    double dt = 0.0;
    int nx = 0, ny = 0, nz = 0;
    double hx = 0.0, hy = 0.0, hz = 0.0;
    std::vector<State> u[3];
    std::vector<unsigned char> ok[3];
    double valid_fraction = 0.0;

    size_t idx(int i, int j, int k) const { return ((size_t)i * ny + j) * nz + k; }
    Vec3 point(int i, int j, int k) const {
        return {grid.ax[0].lo + i * hx, grid.ax[1].lo + j * hy, grid.ax[2].lo + k * hz};
    }
};

SolutionField sample_field(const Solution& sol, const FluidModel& model, const GridSpec& grid,
                           Exec exec = Exec::Parallel);

struct EqResidual {
    std::string name;
    double l2 = 0.0;
    double linf = 0.0;
};

struct ResidualReport {
    double h = 0.0; // max cell size over active axes
    double dt = 0.0;
    long interior_points = 0;
    std::vector<EqResidual> eqs;

    const EqResidual& eq(const std::string& name) const;
    nlohmann::json to_json() const;
};

// Nine equations of the governing system: continuity, momentum x/y/z (with the
// (1/rho) H x (curl H) term), pressure (kappa (div v) p), induction x/y/z
// (H_t - curl(v x H)), and div H. Second-order central differences on
// interior points; reductions are serial and compensated, so serial and
// parallel runs agree bitwise.
ResidualReport pde_residual(const SolutionField& f, Exec exec = Exec::Parallel);

std::pair<double, double> div_h(const SolutionField& f); // (l2, linf)

// Pointwise derived fields on the middle slice (boundary entries flagged).
struct DerivedField {
    int nx = 0, ny = 0, nz = 0;
    std::vector<Vec3> v;
    std::vector<unsigned char> ok;
    size_t idx(int i, int j, int k) const { return ((size_t)i * ny + j) * nz + k; }
};
DerivedField lorentz_force(const SolutionField& f); // (H.grad)H - grad(|H|^2/2)
DerivedField vorticity(const SolutionField& f);     // curl v
DerivedField current(const SolutionField& f);       // curl H

// Circulation along a closed polyline advected with the sampled velocity
// (explicit Euler, one step per slice spacing). Returns Gamma(t_k).
std::vector<double> circulation(const Solution& sol, const FluidModel& model,
                                const GridSpec& box, std::vector<Vec3> curve,
                                double t0, double t1, int nt);

struct ConvergenceRow {
    std::string eq;
    std::vector<double> l2;
    double order = 0.0; // from the finest grid pair
    bool exact = false; // residuals at the roundoff floor
};
std::vector<ConvergenceRow> convergence_order(const Solution& sol, const FluidModel& model,
                                              std::vector<GridSpec> grids,
                                              Exec exec = Exec::Parallel);

// Residuals of the reduced double-entropic system: material derivatives,
// div v, force balance, (H.grad)v, div H.
ResidualReport ee_general_check(const SolutionField& f, Exec exec = Exec::Parallel);

} // namespace rmhd
