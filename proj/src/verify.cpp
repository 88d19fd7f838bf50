#include "rmhd/verify.hpp"

#include <algorithm>
#include <cmath>

#include "rmhd/mhd_core.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rmhd {

namespace {

struct Kahan {
    double sum = 0.0, c = 0.0;
    void add(double x) {
        const double y = x - c;
        const double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

double estimate_max_speed(const Solution& sol, const FluidModel& m, const GridSpec& g) {
    double vmax = 1e-3;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            for (int k = 0; k < 5; ++k) {
                const Vec3 x{g.ax[0].lo + (g.ax[0].hi - g.ax[0].lo) * i / 4.0,
                             g.ax[1].lo + (g.ax[1].hi - g.ax[1].lo) * j / 4.0,
                             g.ax[2].lo + (g.ax[2].hi - g.ax[2].lo) * k / 4.0};
                const Sample s = sol.evaluate(g.t0, x);
                if (!s.valid) continue;
                const double a2 = m.kappa * s.u.p / s.u.rho;
                const double b2 = norm2(s.u.H) / s.u.rho;
                vmax = std::max(vmax, norm(s.u.v) + std::sqrt(a2 + b2));
            }
    return vmax;
}

} // namespace

SolutionField sample_field(const Solution& sol, const FluidModel& model, const GridSpec& grid,
                           Exec exec) {
    SolutionField f;
    f.grid = grid;
    f.model = model;
    f.nx = grid.ax[0].n;
    f.ny = grid.ax[1].n;
    f.nz = grid.ax[2].n;
    if (f.nx < 3 || f.ny < 3 || f.nz < 3)
        throw FieldError("sample_field: need at least 3 points per axis");
    f.hx = (grid.ax[0].hi - grid.ax[0].lo) / (f.nx - 1);
    f.hy = (grid.ax[1].hi - grid.ax[1].lo) / (f.ny - 1);
    f.hz = (grid.ax[2].hi - grid.ax[2].lo) / (f.nz - 1);

    double dt = grid.dt;
    if (!(dt > 0.0)) {
        double hmin = 1e300;
        for (int a = 0; a < 3; ++a) {
            const double h = (grid.ax[a].hi - grid.ax[a].lo) / (grid.ax[a].n - 1);
            if (h > 0.0) hmin = std::min(hmin, h);
        }
        dt = hmin / estimate_max_speed(sol, model, grid);
    }
    f.dt = dt;

    const size_t npts = (size_t)f.nx * f.ny * f.nz;
    const double tslice[3] = {grid.t0 - dt, grid.t0, grid.t0 + dt};
    for (int tslot = 0; tslot < 3; ++tslot) {
        f.u[tslot].assign(npts, State{});
        f.ok[tslot].assign(npts, 0);
    }

    const long total = (long)npts * 3;
    auto work = [&](long w) {
        const int tslot = (int)(w % 3);
        const size_t p = (size_t)(w / 3);
        const int k = (int)(p % f.nz);
        const int j = (int)((p / f.nz) % f.ny);
        const int i = (int)(p / ((size_t)f.ny * f.nz));
        const Sample s = sol.evaluate(tslice[tslot], f.point(i, j, k));
        f.u[tslot][p] = s.u;
        f.ok[tslot][p] = s.valid ? 1 : 0;
    };

    if (exec == Exec::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(thread_count())
#endif
        for (long w = 0; w < total; ++w) work(w);
    } else {
        for (long w = 0; w < total; ++w) work(w);
    }

    long okcount = 0;
    for (int tslot = 0; tslot < 3; ++tslot)
        for (size_t p = 0; p < npts; ++p) okcount += f.ok[tslot][p];
    f.valid_fraction = (double)okcount / (double)total;
    if (f.valid_fraction < grid.min_valid_fraction)
        throw FieldError("sample_field: valid fraction below threshold");
    return f;
}

const EqResidual& ResidualReport::eq(const std::string& name) const {
    for (const auto& e : eqs)
        if (e.name == name) return e;
    throw std::out_of_range("ResidualReport: no equation named " + name);
}

nlohmann::json ResidualReport::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& e : eqs)
        arr.push_back({{"equation", e.name}, {"l2", e.l2}, {"linf", e.linf}, {"h", h}});
    return {{"h", h}, {"dt", dt}, {"interior_points", interior_points}, {"equations", arr}};
}

namespace {

constexpr int NEQ = 9;
const char* kEqNames[NEQ] = {"continuity", "momentum_x", "momentum_y", "momentum_z",
                             "pressure",   "induction_x", "induction_y", "induction_z",
                             "div_H"};

// All 8 spatial/temporal neighbors of an interior point valid on the slices
// the stencil touches.
bool stencil_ok(const SolutionField& f, int i, int j, int k) {
    const size_t p = f.idx(i, j, k);
    if (!f.ok[0][p] || !f.ok[1][p] || !f.ok[2][p]) return false;
    return f.ok[1][f.idx(i + 1, j, k)] && f.ok[1][f.idx(i - 1, j, k)] &&
           f.ok[1][f.idx(i, j + 1, k)] && f.ok[1][f.idx(i, j - 1, k)] &&
           f.ok[1][f.idx(i, j, k + 1)] && f.ok[1][f.idx(i, j, k - 1)];
}

struct PointDerivs {
    State u;                  // center
    State ut;                 // time derivative
    State dx, dy, dz;         // spatial derivatives of all 8 components
    Vec3 curl_vxH;            // curl of v x H (computed from neighbor products)
};

PointDerivs point_derivs(const SolutionField& f, int i, int j, int k) {
    PointDerivs d;
    const auto& mid = f.u[1];
    const size_t p = f.idx(i, j, k);
    d.u = mid[p];
    auto diff = [](const State& a, const State& b, double inv2h) {
        State r;
        r.rho = (a.rho - b.rho) * inv2h;
        r.p = (a.p - b.p) * inv2h;
        r.v = inv2h * (a.v - b.v);
        r.H = inv2h * (a.H - b.H);
        return r;
    };
    d.ut = diff(f.u[2][p], f.u[0][p], 0.5 / f.dt);
    const State& xp = mid[f.idx(i + 1, j, k)];
    const State& xm = mid[f.idx(i - 1, j, k)];
    const State& yp = mid[f.idx(i, j + 1, k)];
    const State& ym = mid[f.idx(i, j - 1, k)];
    const State& zp = mid[f.idx(i, j, k + 1)];
    const State& zm = mid[f.idx(i, j, k - 1)];
    d.dx = diff(xp, xm, 0.5 / f.hx);
    d.dy = diff(yp, ym, 0.5 / f.hy);
    d.dz = diff(zp, zm, 0.5 / f.hz);

    // curl(v x H) from the neighbor electric-field products
    auto E = [](const State& s) { return cross(s.v, s.H); };
    const Vec3 Exp = E(xp), Exm = E(xm), Eyp = E(yp), Eym = E(ym), Ezp = E(zp), Ezm = E(zm);
    const Vec3 dEx = (0.5 / f.hx) * (Exp - Exm);
    const Vec3 dEy = (0.5 / f.hy) * (Eyp - Eym);
    const Vec3 dEz = (0.5 / f.hz) * (Ezp - Ezm);
    d.curl_vxH = {dEy.z - dEz.y, dEz.x - dEx.z, dEx.y - dEy.x};
    return d;
}

void mhd_equations(const PointDerivs& d, double kappa, double out[NEQ]) {
    const State& u = d.u;
    const Vec3 gradrho{d.dx.rho, d.dy.rho, d.dz.rho};
    const Vec3 gradp{d.dx.p, d.dy.p, d.dz.p};
    const double divv = d.dx.v.x + d.dy.v.y + d.dz.v.z;
    const double divH = d.dx.H.x + d.dy.H.y + d.dz.H.z;
    const Vec3 curlH{d.dy.H.z - d.dz.H.y, d.dz.H.x - d.dx.H.z, d.dx.H.y - d.dy.H.x};
    const Vec3 advv{dot(u.v, Vec3{d.dx.v.x, d.dy.v.x, d.dz.v.x}),
                    dot(u.v, Vec3{d.dx.v.y, d.dy.v.y, d.dz.v.y}),
                    dot(u.v, Vec3{d.dx.v.z, d.dy.v.z, d.dz.v.z})};
    const Vec3 HxcurlH = cross(u.H, curlH);

    out[0] = d.ut.rho + dot(u.v, gradrho) + divv * u.rho;
    const Vec3 mom = d.ut.v + advv + (1.0 / u.rho) * gradp + (1.0 / u.rho) * HxcurlH;
    out[1] = mom.x;
    out[2] = mom.y;
    out[3] = mom.z;
    out[4] = d.ut.p + dot(u.v, gradp) + kappa * divv * u.p;
    const Vec3 ind = d.ut.H - d.curl_vxH;
    out[5] = ind.x;
    out[6] = ind.y;
    out[7] = ind.z;
    out[8] = divH;
}

ResidualReport assemble_report(const SolutionField& f,
                               const std::vector<std::array<double, NEQ>>& vals,
                               const std::vector<unsigned char>& used,
                               const char* const names[], int neq) {
    ResidualReport rep;
    rep.h = std::max({f.hx, f.hy, f.hz});
    // report the finest-resolved active direction as h as well; keep max cell
    double hact = 0.0;
    for (int a = 0; a < 3; ++a) {
        const double h = a == 0 ? f.hx : (a == 1 ? f.hy : f.hz);
        if (f.grid.ax[a].n >= 8) hact = std::max(hact, h);
    }
    if (hact > 0.0) rep.h = hact;
    rep.dt = f.dt;
    std::vector<Kahan> acc(neq);
    std::vector<double> linf(neq, 0.0);
    long count = 0;
    for (size_t p = 0; p < vals.size(); ++p) {
        if (!used[p]) continue;
        ++count;
        for (int e = 0; e < neq; ++e) {
            acc[e].add(vals[p][e] * vals[p][e]);
            linf[e] = std::max(linf[e], std::fabs(vals[p][e]));
        }
    }
    rep.interior_points = count;
    if (count == 0) throw FieldError("residual: no interior points survived the validity mask");
    for (int e = 0; e < neq; ++e)
        rep.eqs.push_back({names[e], std::sqrt(acc[e].sum / count), linf[e]});
    return rep;
}

} // namespace

ResidualReport pde_residual(const SolutionField& f, Exec exec) {
    if (f.nx < 3 || f.ny < 3 || f.nz < 3) throw FieldError("pde_residual: grid too coarse");
    const size_t npts = (size_t)f.nx * f.ny * f.nz;
    std::vector<std::array<double, NEQ>> vals(npts);
    std::vector<unsigned char> used(npts, 0);
    const double kappa = f.model.kappa;

    auto work = [&](int i) {
        for (int j = 1; j < f.ny - 1; ++j)
            for (int k = 1; k < f.nz - 1; ++k) {
                if (!stencil_ok(f, i, j, k)) continue;
                const PointDerivs d = point_derivs(f, i, j, k);
                mhd_equations(d, kappa, vals[f.idx(i, j, k)].data());
                used[f.idx(i, j, k)] = 1;
            }
    };
    if (exec == Exec::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(thread_count())
#endif
        for (int i = 1; i < f.nx - 1; ++i) work(i);
    } else {
        for (int i = 1; i < f.nx - 1; ++i) work(i);
    }
    return assemble_report(f, vals, used, kEqNames, NEQ);
}

std::pair<double, double> div_h(const SolutionField& f) {
    Kahan acc;
    double linf = 0.0;
    long count = 0;
    for (int i = 1; i < f.nx - 1; ++i)
        for (int j = 1; j < f.ny - 1; ++j)
            for (int k = 1; k < f.nz - 1; ++k) {
                if (!stencil_ok(f, i, j, k)) continue;
                const PointDerivs d = point_derivs(f, i, j, k);
                const double divH = d.dx.H.x + d.dy.H.y + d.dz.H.z;
                acc.add(divH * divH);
                linf = std::max(linf, std::fabs(divH));
                ++count;
            }
    if (count == 0) throw FieldError("div_h: no interior points");
    return {std::sqrt(acc.sum / count), linf};
}

namespace {

DerivedField derived(const SolutionField& f, int which) {
    DerivedField out;
    out.nx = f.nx;
    out.ny = f.ny;
    out.nz = f.nz;
    out.v.assign((size_t)f.nx * f.ny * f.nz, Vec3{});
    out.ok.assign(out.v.size(), 0);
    for (int i = 1; i < f.nx - 1; ++i)
        for (int j = 1; j < f.ny - 1; ++j)
            for (int k = 1; k < f.nz - 1; ++k) {
                if (!stencil_ok(f, i, j, k)) continue;
                const PointDerivs d = point_derivs(f, i, j, k);
                Vec3 val;
                if (which == 0) {
                    // (H.grad)H - grad(|H|^2/2)
                    const Vec3 tension{dot(d.u.H, Vec3{d.dx.H.x, d.dy.H.x, d.dz.H.x}),
                                       dot(d.u.H, Vec3{d.dx.H.y, d.dy.H.y, d.dz.H.y}),
                                       dot(d.u.H, Vec3{d.dx.H.z, d.dy.H.z, d.dz.H.z})};
                    const Vec3 gradmag{dot(d.u.H, d.dx.H), dot(d.u.H, d.dy.H), dot(d.u.H, d.dz.H)};
                    val = tension - gradmag;
                } else if (which == 1) {
                    val = {d.dy.v.z - d.dz.v.y, d.dz.v.x - d.dx.v.z, d.dx.v.y - d.dy.v.x};
                } else {
                    val = {d.dy.H.z - d.dz.H.y, d.dz.H.x - d.dx.H.z, d.dx.H.y - d.dy.H.x};
                }
                out.v[out.idx(i, j, k)] = val;
                out.ok[out.idx(i, j, k)] = 1;
            }
    return out;
}

} // namespace

DerivedField lorentz_force(const SolutionField& f) { return derived(f, 0); }
DerivedField vorticity(const SolutionField& f) { return derived(f, 1); }
DerivedField current(const SolutionField& f) { return derived(f, 2); }

std::vector<double> circulation(const Solution& sol, const FluidModel& model,
                                const GridSpec& box, std::vector<Vec3> curve,
                                double t0, double t1, int nt) {
    if (curve.size() < 3) throw FieldError("circulation: need a closed polyline");
    if (nt < 2) throw FieldError("circulation: need at least two time slices");
    const double dt = (t1 - t0) / (nt - 1);
    auto inside = [&](const Vec3& q) {
        for (int a = 0; a < 3; ++a)
            if (q[a] < box.ax[a].lo || q[a] > box.ax[a].hi) return false;
        return true;
    };
    (void)model;
    auto velocity = [&](double t, const Vec3& q) -> Vec3 {
        const Sample s = sol.evaluate(t, q);
        if (!s.valid) throw FieldError("circulation: curve left the solution's validity window");
        return s.u.v;
    };
    std::vector<double> gamma;
    gamma.reserve(nt);
    for (int step = 0; step < nt; ++step) {
        const double t = t0 + step * dt;
        Kahan acc;
        const size_t n = curve.size();
        for (size_t i = 0; i < n; ++i) {
            const Vec3& a = curve[i];
            const Vec3& b = curve[(i + 1) % n];
            if (!inside(a) || !inside(b)) throw FieldError("circulation: curve exits grid");
            const Vec3 va = velocity(t, a), vb = velocity(t, b);
            acc.add(0.5 * dot(va + vb, b - a));
        }
        gamma.push_back(acc.sum);
        if (step + 1 < nt) {
            for (auto& q : curve) q += dt * velocity(t, q);
        }
    }
    return gamma;
}

std::vector<ConvergenceRow> convergence_order(const Solution& sol, const FluidModel& model,
                                              std::vector<GridSpec> grids, Exec exec) {
    if (grids.size() < 2) throw FieldError("convergence_order: need at least two grids");
    std::vector<ResidualReport> reps;
    for (const auto& g : grids) reps.push_back(pde_residual(sample_field(sol, model, g, exec), exec));
    std::vector<ConvergenceRow> rows;
    const double floor_l2 = 1e-11;
    for (size_t e = 0; e < reps[0].eqs.size(); ++e) {
        ConvergenceRow row;
        row.eq = reps[0].eqs[e].name;
        for (const auto& rp : reps) row.l2.push_back(rp.eqs[e].l2);
        const double rc = row.l2[row.l2.size() - 2], rf = row.l2.back();
        if (rf < floor_l2 && rc < floor_l2) {
            row.exact = true;
            row.order = 0.0;
        } else {
            row.order = std::log2(std::max(rc, 1e-300) / std::max(rf, 1e-300));
        }
        rows.push_back(row);
    }
    return rows;
}

ResidualReport ee_general_check(const SolutionField& f, Exec exec) {
    static const char* names[9] = {"material_rho", "material_p", "material_v", "material_H",
                                   "div_v",        "force_balance", "H_grad_v", "div_H",
                                   "pressure_aux"};
    const size_t npts = (size_t)f.nx * f.ny * f.nz;
    std::vector<std::array<double, NEQ>> vals(npts);
    std::vector<unsigned char> used(npts, 0);

    auto work = [&](int i) {
        for (int j = 1; j < f.ny - 1; ++j)
            for (int k = 1; k < f.nz - 1; ++k) {
                if (!stencil_ok(f, i, j, k)) continue;
                const PointDerivs d = point_derivs(f, i, j, k);
                const State& u = d.u;
                auto material = [&](double ft, const Vec3& g) { return ft + dot(u.v, g); };
                const Vec3 gradrho{d.dx.rho, d.dy.rho, d.dz.rho};
                const Vec3 gradp{d.dx.p, d.dy.p, d.dz.p};
                const Vec3 dvdt{material(d.ut.v.x, {d.dx.v.x, d.dy.v.x, d.dz.v.x}),
                                material(d.ut.v.y, {d.dx.v.y, d.dy.v.y, d.dz.v.y}),
                                material(d.ut.v.z, {d.dx.v.z, d.dy.v.z, d.dz.v.z})};
                const Vec3 dHdt{material(d.ut.H.x, {d.dx.H.x, d.dy.H.x, d.dz.H.x}),
                                material(d.ut.H.y, {d.dx.H.y, d.dy.H.y, d.dz.H.y}),
                                material(d.ut.H.z, {d.dx.H.z, d.dy.H.z, d.dz.H.z})};
                const double divv = d.dx.v.x + d.dy.v.y + d.dz.v.z;
                const double divH = d.dx.H.x + d.dy.H.y + d.dz.H.z;
                const Vec3 gradHmag{dot(u.H, d.dx.H), dot(u.H, d.dy.H), dot(u.H, d.dz.H)};
                const Vec3 tension{dot(u.H, Vec3{d.dx.H.x, d.dy.H.x, d.dz.H.x}),
                                   dot(u.H, Vec3{d.dx.H.y, d.dy.H.y, d.dz.H.y}),
                                   dot(u.H, Vec3{d.dx.H.z, d.dy.H.z, d.dz.H.z})};
                const Vec3 force = gradp + gradHmag - tension; // grad p + grad(|H|^2/2) - (H.grad)H
                const Vec3 hgradv{dot(u.H, Vec3{d.dx.v.x, d.dy.v.x, d.dz.v.x}),
                                  dot(u.H, Vec3{d.dx.v.y, d.dy.v.y, d.dz.v.y}),
                                  dot(u.H, Vec3{d.dx.v.z, d.dy.v.z, d.dz.v.z})};
                auto& o = vals[f.idx(i, j, k)];
                o[0] = material(d.ut.rho, gradrho);
                o[1] = material(d.ut.p, gradp);
                o[2] = norm(dvdt);
                o[3] = norm(dHdt);
                o[4] = divv;
                o[5] = norm(force);
                o[6] = norm(hgradv);
                o[7] = divH;
                o[8] = 0.0;
                used[f.idx(i, j, k)] = 1;
            }
    };
    if (exec == Exec::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(thread_count())
#endif
        for (int i = 1; i < f.nx - 1; ++i) work(i);
    } else {
        for (int i = 1; i < f.nx - 1; ++i) work(i);
    }
    ResidualReport rep = assemble_report(f, vals, used, names, NEQ);
    rep.eqs.pop_back(); // drop the padding entry
    return rep;
}

} // namespace rmhd
