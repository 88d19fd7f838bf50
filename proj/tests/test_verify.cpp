#include <doctest.h>

#include <cmath>

#include "rmhd/double_waves.hpp"
#include "rmhd/simple_waves.hpp"
#include "test_helpers.hpp"

using namespace rmhd;
using rmhd_test::load_fixture;

namespace {

// Minimal hand-built field for checker tests; not a PDE solution unless the
// closures make it one.
class AdHoc final : public Solution {
public:
    std::string name = "adhoc";
    std::function<State(double, const Vec3&)> fn;
    const std::string& family() const override { return name; }
    int rank_bound() const override { return 2; }
    Sample evaluate(double t, const Vec3& x) const override {
        Sample s;
        s.u = fn(t, x);
        s.valid = s.u.valid();
        s.err = PhaseError::None;
        return s;
    }
    State surface(double, double) const override { return State{}; }
    Vec4 wavevec(int, double, double) const override { return {}; }
};

GridSpec small_grid(int n = 16) {
    GridSpec g;
    g.t0 = 0.1;
    g.ax[0] = {-0.5, 0.5, n};
    g.ax[1] = {-0.5, 0.5, n};
    g.ax[2] = {-0.5, 0.5, n};
    return g;
}

} // namespace

TEST_CASE("sample_field: uniform state, idempotence, determinism") {
    AdHoc flat;
    flat.fn = [](double, const Vec3&) {
        State u;
        u.rho = 1.5;
        u.p = 0.7;
        u.v = {0.1, 0.2, 0.3};
        u.H = {0.0, 0.4, -0.2};
        return u;
    };
    FluidModel m;
    const auto f1 = sample_field(flat, m, small_grid());
    const auto f2 = sample_field(flat, m, small_grid());
    CHECK(f1.valid_fraction == 1.0);
    for (size_t i = 0; i < f1.u[1].size(); ++i) {
        CHECK(f1.u[1][i].rho == 1.5);
        CHECK(f1.u[1][i].p == f2.u[1][i].p);
    }
    const auto fs = sample_field(flat, m, small_grid(), Exec::Serial);
    for (size_t i = 0; i < f1.u[1].size(); ++i) CHECK(fs.u[1][i].v.y == f1.u[1][i].v.y);
}

TEST_CASE("pde_residual: exact constant state gives zero residuals") {
    AdHoc flat;
    flat.fn = [](double, const Vec3&) {
        State u;
        u.rho = 2.0;
        u.p = 1.0;
        u.v = {0.4, -0.1, 0.0};
        u.H = {0.3, 0.0, 0.5};
        return u;
    };
    FluidModel m;
    const auto rep = pde_residual(sample_field(flat, m, small_grid()));
    for (const auto& eq : rep.eqs) {
        CHECK(eq.l2 == 0.0);
        CHECK(eq.linf == 0.0);
    }
}

TEST_CASE("serial and parallel residuals are bitwise identical") {
    const auto sol = build_solution(load_fixture("fast_k2").at("solution"));
    const auto m = model_of(*sol);
    GridSpec g = rmhd_test::fixture_grid(load_fixture("fast_k2"), 48);
    const auto fp = sample_field(*sol, m, g, Exec::Parallel);
    const auto fs = sample_field(*sol, m, g, Exec::Serial);
    for (size_t i = 0; i < fp.u[0].size(); ++i) {
        CHECK(fp.u[0][i].rho == fs.u[0][i].rho);
        CHECK(fp.u[2][i].H.y == fs.u[2][i].H.y);
    }
    const auto rp = pde_residual(fp, Exec::Parallel);
    const auto rs = pde_residual(fs, Exec::Serial);
    for (size_t e = 0; e < rp.eqs.size(); ++e) {
        CHECK(rp.eqs[e].l2 == rs.eqs[e].l2);
        CHECK(rp.eqs[e].linf == rs.eqs[e].linf);
    }
}

TEST_CASE("derived fields vanish on constants") {
    AdHoc flat;
    flat.fn = [](double, const Vec3&) {
        return State{1.0, 1.0, {0.2, -0.1, 0.4}, {0.3, 0.1, -0.2}};
    };
    FluidModel m;
    const auto field = sample_field(flat, m, small_grid());
    const DerivedField derived[3] = {lorentz_force(field), vorticity(field), current(field)};
    for (const auto& df : derived)
        for (size_t i = 0; i < df.v.size(); ++i)
            if (df.ok[i]) CHECK(norm(df.v[i]) == 0.0);
}

TEST_CASE("div_h: analytic solenoidal and non-solenoidal fields") {
    AdHoc lin;
    lin.fn = [](double, const Vec3& x) {
        State u;
        u.rho = 1.0;
        u.p = 1.0;
        u.H = {x.x, -x.y, 0.0}; // exactly divergence free
        return u;
    };
    FluidModel m;
    const auto [l2a, linfa] = div_h(sample_field(lin, m, small_grid()));
    CHECK(l2a <= 1e-13);
    CHECK(linfa <= 1e-12);

    AdHoc badf;
    badf.fn = [](double, const Vec3& x) {
        State u;
        u.rho = 1.0;
        u.p = 1.0;
        u.H = {std::sin(3.0 * x.x), 0.0, 0.0};
        return u;
    };
    const auto [l2b, linfb] = div_h(sample_field(badf, m, small_grid()));
    CHECK(linfb > 1.0);
}

TEST_CASE("noise on H dominates the div_H residual (negative control)") {
    const auto sol = build_solution(load_fixture("e2").at("solution"));
    const auto m = model_of(*sol);
    GridSpec g = rmhd_test::fixture_grid(load_fixture("e2"), 64);

    AdHoc noisy;
    noisy.fn = [&](double t, const Vec3& x) {
        State u = sol->evaluate(t, x).u;
        u.H.x += 1e-3 * std::sin(37.0 * x.x) * std::cos(29.0 * x.y);
        return u;
    };
    const auto clean = pde_residual(sample_field(*sol, m, g));
    const auto dirty = pde_residual(sample_field(noisy, m, g));
    CHECK(dirty.eq("div_H").l2 >= 100.0 * clean.eq("div_H").l2);
}

TEST_CASE("convergence_order: manufactured exact field and noise control") {
    const auto sol = build_solution(load_fixture("e3").at("solution"));
    const auto m = model_of(*sol);
    const auto fx = load_fixture("e3");
    std::vector<GridSpec> grids{rmhd_test::fixture_grid(fx, 24), rmhd_test::fixture_grid(fx, 48)};
    for (const auto& row : convergence_order(*sol, m, grids))
        if (!row.exact) CHECK(row.order >= 1.9);

    // constant state reports "exact"
    AdHoc flat;
    flat.fn = [](double, const Vec3&) { return State{1.0, 1.0, {}, {}}; };
    std::vector<GridSpec> g2{small_grid(12), small_grid(24)};
    for (const auto& row : convergence_order(flat, m, g2)) CHECK(row.exact);

    // frozen noise does not converge
    AdHoc noisy;
    noisy.fn = [](double, const Vec3& x) {
        State u;
        u.rho = 1.0 + 0.05 * std::sin(41.0 * x.x) * std::sin(43.0 * x.y);
        u.p = 1.0;
        return u;
    };
    for (const auto& row : convergence_order(noisy, m, g2)) {
        if (row.exact) continue;
        CHECK(row.order < 1.0);
    }
}

TEST_CASE("circulation: still fluid, rigid translation, entropic drift") {
    FluidModel m;
    GridSpec box = small_grid();

    std::vector<Vec3> square;
    for (int i = 0; i < 32; ++i) {
        const double ang = 2.0 * M_PI * i / 32;
        square.push_back({0.25 * std::cos(ang), 0.25 * std::sin(ang), 0.0});
    }

    AdHoc still;
    still.fn = [](double, const Vec3&) { return State{1.0, 1.0, {}, {}}; };
    for (double gm : circulation(still, m, box, square, 0.0, 0.2, 5)) CHECK(gm == 0.0);

    AdHoc rigid;
    rigid.fn = [](double, const Vec3&) { return State{1.0, 1.0, {0.3, -0.1, 0.0}, {}}; };
    for (double gm : circulation(rigid, m, box, square, 0.0, 0.2, 5))
        CHECK(std::fabs(gm) <= 1e-14);

    // an E1 wave is force free: circulation drift shrinks with the step count
    const auto sol = build_solution(load_fixture("e1").at("solution"));
    auto drift = [&](int nt) {
        const auto gam = circulation(*sol, model_of(*sol), box, square, 0.0, 0.2, nt);
        double d = 0.0;
        for (double gmt : gam) d = std::max(d, std::fabs(gmt - gam.front()));
        return d;
    };
    const double d1 = drift(4), d2 = drift(16);
    CHECK(d2 <= d1 + 1e-12);
}

TEST_CASE("curve leaving the box is an error") {
    AdHoc rigid;
    rigid.fn = [](double, const Vec3&) { return State{1.0, 1.0, {5.0, 0.0, 0.0}, {}}; };
    FluidModel m;
    std::vector<Vec3> tri{{0.0, 0.0, 0.0}, {0.4, 0.0, 0.0}, {0.0, 0.4, 0.0}};
    CHECK_THROWS_AS(circulation(rigid, m, small_grid(), tri, 0.0, 1.0, 8), FieldError);
}

TEST_CASE("ee_general_check: solution field, constant field, negative control") {
    const auto sol = build_solution(load_fixture("ee_aligned").at("solution"));
    const auto m = model_of(*sol);
    const auto fx = load_fixture("ee_aligned");
    double worst[2];
    for (int pass = 0; pass < 2; ++pass) {
        const auto field = sample_field(*sol, m, rmhd_test::fixture_grid(fx, pass == 0 ? 24 : 48));
        const auto rep = ee_general_check(field);
        double w = 0.0;
        for (const auto& eq : rep.eqs) w = std::max(w, eq.l2);
        worst[pass] = w;
    }
    CHECK(std::log2(worst[0] / worst[1]) >= 1.7);

    AdHoc flat;
    flat.fn = [](double, const Vec3&) { return State{1.0, 1.0, {0.1, 0.0, 0.0}, {0.0, 0.2, 0.0}}; };
    const auto rep = ee_general_check(sample_field(flat, m, small_grid()));
    for (const auto& eq : rep.eqs) CHECK(eq.l2 == 0.0);

    AdHoc rando;
    rando.fn = [](double t, const Vec3& x) {
        State u;
        u.rho = 1.0 + 0.3 * std::sin(x.x + 2 * t);
        u.p = 1.0 + 0.2 * std::cos(x.y);
        u.v = {0.5 * std::sin(x.y), 0.0, 0.0};
        u.H = {0.0, 0.3 * std::cos(x.x), 0.1};
        return u;
    };
    const auto bad = ee_general_check(sample_field(rando, m, small_grid()));
    double w = 0.0;
    for (const auto& eq : bad.eqs) w = std::max(w, eq.l2);
    CHECK(w > 1e-2);
}

TEST_CASE("validity mask flags the gradient catastrophe region") {
    // a steepening phase whose derivative factor vanishes identically at its
    // breaking time t = 1/c: the middle slice is fully masked
    const double c = 0.5;
    auto sol = std::make_shared<SimpleWave>();
    sol->family_name = "steepener";
    sol->fields = [](double r) {
        State u;
        u.rho = 1.0 + 0.1 * std::tanh(r);
        u.p = 1.0;
        return u;
    };
    sol->lam = [c](double r) -> Vec4 { return {c * r, {1.0, 0.0, 0.0}}; };
    sol->dlam = [c](double) -> Vec4 { return {c, {0.0, 0.0, 0.0}}; };
    FluidModel m;
    GridSpec g;
    g.t0 = 1.0 / c;
    g.dt = 0.05;
    g.ax[0] = {-0.4, 0.4, 24};
    g.ax[1] = {-0.01, 0.01, 4};
    g.ax[2] = {-0.01, 0.01, 4};
    g.min_valid_fraction = 0.0;
    const auto field = sample_field(*sol, m, g);
    CHECK(field.valid_fraction < 0.75);

    GridSpec strict = g;
    strict.min_valid_fraction = 0.8;
    CHECK_THROWS_AS(sample_field(*sol, m, strict), FieldError);
}

TEST_CASE("report serialization carries every equation") {
    const auto sol = build_solution(load_fixture("fast_k2").at("solution"));
    const auto m = model_of(*sol);
    const auto rep = pde_residual(sample_field(*sol, m, rmhd_test::fixture_grid(load_fixture("fast_k2"), 24)));
    const auto j = rep.to_json();
    CHECK(j.at("equations").size() == 9);
    CHECK(j.contains("h"));
    CHECK(j.at("interior_points").get<long>() > 0);
}
