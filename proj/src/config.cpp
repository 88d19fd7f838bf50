#include "rmhd/config.hpp"

namespace rmhd {

using nlohmann::json;

Vec3 parse_vec3(const json& node) {
    if (!node.is_array() || node.size() != 3) throw ConfigError("expected a 3-vector [x, y, z]");
    return {node[0].get<double>(), node[1].get<double>(), node[2].get<double>()};
}

namespace {

Profile prof(const json& profiles, const char* key, double fallback) {
    if (profiles.contains(key)) return parse_profile(profiles.at(key));
    return Profile::constant(fallback);
}

Profile prof_req(const json& profiles, const char* key) {
    if (!profiles.contains(key)) throw ConfigError(std::string("missing profile \"") + key + "\"");
    return parse_profile(profiles.at(key));
}

TwoPhaseScalar tp(const json& profiles, const char* key, double fallback) {
    if (profiles.contains(key)) return parse_two_phase(profiles.at(key));
    TwoPhaseScalar t;
    t.c0 = fallback;
    return t;
}

VectorProfile vprof_req(const json& profiles, const char* key) {
    if (!profiles.contains(key)) throw ConfigError(std::string("missing vector profile \"") + key + "\"");
    return parse_vector_profile(profiles.at(key));
}

double cnum(const json& c, const char* key, double fallback) { return c.value(key, fallback); }

double cnum_req(const json& c, const char* key) {
    if (!c.contains(key)) throw ConfigError(std::string("missing constant \"") + key + "\"");
    return c.at(key).get<double>();
}

} // namespace

SolutionPtr build_solution(const json& node) {
    if (!node.is_object() || !node.contains("family"))
        throw ConfigError("solution node must carry a \"family\" tag");
    const std::string fam = node.at("family").get<std::string>();
    const json c = node.value("constants", json::object());
    const json p = node.value("profiles", json::object());
    FluidModel model;
    model.kappa = cnum(c, "kappa", 5.0 / 3.0);
    model.A0 = cnum(c, "A0", 1.0);

    if (fam == "entropic_e1" || fam == "E1") {
        E1Inputs in;
        in.H = vprof_req(p, "H");
        in.rho = prof_req(p, "rho");
        in.alpha = prof(p, "alpha", 0.0);
        in.beta = prof(p, "beta", 0.0);
        in.p0 = cnum(c, "p0", 2.0);
        if (c.contains("v0")) in.v0 = parse_vec3(c.at("v0"));
        in.model = model;
        return entropic_e1(in);
    }
    if (fam == "entropic_e2" || fam == "E2") {
        E2Inputs in;
        in.u = prof_req(p, "u");
        in.w = prof(p, "w", 0.0);
        in.Hz = prof_req(p, "H");
        in.rho = prof_req(p, "rho");
        in.U0 = cnum(c, "U0", 0.0);
        in.p0 = cnum(c, "p0", 2.0);
        in.model = model;
        return entropic_e2(in);
    }
    if (fam == "entropic_e3" || fam == "E3") {
        E3Inputs in;
        in.rho = prof_req(p, "rho");
        in.p0 = cnum(c, "p0", 1.0);
        if (c.contains("v0")) in.v0 = parse_vec3(c.at("v0"));
        if (c.contains("H0")) in.H0 = parse_vec3(c.at("H0"));
        in.model = model;
        return entropic_e3(in);
    }
    if (fam == "alfven" || fam == "A") {
        AlfvenInputs in;
        in.theta = prof_req(p, "theta");
        in.phi = prof_req(p, "phi");
        in.rho0 = cnum(c, "rho0", 1.0);
        in.p0 = cnum(c, "p0", 1.0);
        in.Hmag = cnum(c, "Hmag", 1.0);
        if (c.contains("v0")) in.v0 = parse_vec3(c.at("v0"));
        in.epsilon = (int)cnum(c, "epsilon", 1);
        in.model = model;
        return alfven(in);
    }
    if (fam == "fast_ortho" || fam == "F") {
        FastOrthoInputs in;
        in.rho = prof_req(p, "rho");
        in.A0 = cnum_req(c, "A0");
        in.kappa = cnum_req(c, "kappa");
        in.lambdaF = parse_vec3(c.at("lambdaF"));
        in.H0 = parse_vec3(c.at("H0"));
        in.epsilon = (int)cnum(c, "epsilon", 1);
        return fast_ortho(in);
    }
    if (fam == "slow_parallel" || fam == "S") {
        SlowParallelInputs in;
        in.A0 = cnum_req(c, "A0");
        in.H0 = cnum_req(c, "H0");
        in.kappa = cnum_req(c, "kappa");
        in.epsilon = (int)cnum(c, "epsilon", 1);
        in.chi = prof(p, "chi", 0.0);
        return slow_parallel(in);
    }
    if (fam == "ee_aligned") {
        EEAlignedInputs in;
        in.rho = tp(p, "rho", 1.0);
        in.w = tp(p, "w", 0.0);
        in.Hmag = tp(p, "H", 0.5);
        in.p0 = cnum(c, "p0", 2.0);
        in.phi0 = cnum(c, "phi0", 0.0);
        in.theta0 = cnum(c, "theta0", M_PI_2);
        in.model = model;
        return ee_aligned(in);
    }
    if (fam == "ee_perp_a") {
        EEPerpAInputs in;
        in.theta = prof_req(p, "theta");
        in.w = prof(p, "w", 0.0);
        in.v = tp(p, "v", 0.0);
        in.Hmag = tp(p, "H", 0.5);
        in.rho = tp(p, "rho", 1.0);
        in.p0 = cnum(c, "p0", 2.0);
        in.model = model;
        return ee_perp_a(in);
    }
    if (fam == "ee_perp_b") {
        EEPerpBInputs in;
        in.theta0 = cnum(c, "theta0", 0.0);
        in.v = prof(p, "v", 0.0);
        in.w = prof(p, "w", 0.0);
        in.Hperp = prof(p, "Hperp", 0.5);
        in.H3 = prof(p, "H3", 0.0);
        in.rho = tp(p, "rho", 1.0);
        in.p0 = cnum(c, "p0", 2.0);
        in.model = model;
        return ee_perp_b(in);
    }
    if (fam == "aa" || fam == "AA") {
        AAInputs in;
        in.angle_r = prof_req(p, "angle_r");
        in.angle_s = prof_req(p, "angle_s");
        in.rho0 = cnum(c, "rho0", 1.0);
        in.p0 = cnum(c, "p0", 1.0);
        in.Hmag = cnum(c, "Hmag", 1.0);
        in.epsilon = (int)cnum(c, "epsilon", 1);
        in.h3_sign = (int)cnum(c, "h3_sign", 1);
        in.model = model;
        return aa(in);
    }
    if (fam == "ae1" || fam == "AE1") {
        AE1Inputs in;
        in.phi = vprof_req(p, "phi");
        in.psi = vprof_req(p, "psi");
        in.Hcal = prof_req(p, "Hcal");
        in.rho = prof_req(p, "rho");
        in.p0 = cnum(c, "p0", 1.0);
        in.beta_init = cnum(c, "beta_init", 0.0);
        in.epsilon = (int)cnum(c, "epsilon", 1);
        in.alpha_branch = (int)cnum(c, "alpha_branch", 1);
        in.beta_csv = node.value("beta_csv", c.value("beta_csv", std::string{}));
        in.model = model;
        return ae1(in);
    }
    if (fam == "ff_planar") {
        FFPlanarInputs in;
        in.f = prof_req(p, "f");
        in.g = prof_req(p, "g");
        in.w = prof(p, "w", 0.0);
        in.A0 = cnum_req(c, "A0");
        in.kappa = cnum_req(c, "kappa");
        in.H0 = cnum_req(c, "H0");
        in.c0u = cnum(c, "c0u", 0.0);
        in.c0v = cnum(c, "c0v", 0.0);
        in.epsilon = (int)cnum(c, "epsilon", 1);
        in.rho_lo = cnum(c, "rho_lo", 1e-6);
        in.rho_hi = cnum(c, "rho_hi", 1e6);
        return ff_planar(in);
    }
    if (fam == "ff_counter") {
        FFCounterInputs in;
        in.f = prof_req(p, "f");
        in.g = prof_req(p, "g");
        in.vperp = prof(p, "vperp", 0.0);
        in.w = prof(p, "w", 0.0);
        in.phiang = prof(p, "phi", 0.0);
        in.A0 = cnum_req(c, "A0");
        in.kappa = cnum_req(c, "kappa");
        in.H0 = cnum_req(c, "H0");
        in.epsilon = (int)cnum(c, "epsilon", 1);
        in.rho_lo = cnum(c, "rho_lo", 1e-6);
        in.rho_hi = cnum(c, "rho_hi", 1e6);
        return ff_counter(in);
    }
    if (fam == "fe1_counter" || fam == "fe1_kappa2") {
        FE1CounterInputs in;
        in.rho = prof_req(p, "rho");
        in.phiang = prof(p, "phi", 0.0);
        if (p.contains("alpha")) in.alpha = parse_vector_profile(p.at("alpha"));
        in.A0 = cnum(c, "A0", 1.0);
        in.kappa = cnum(c, "kappa", 5.0 / 3.0);
        in.H0 = cnum(c, "H0", 1.0);
        in.w_offset = cnum(c, "w_offset", 0.0);
        in.epsilon = (int)cnum(c, "epsilon", 1);
        in.kappa2_special = fam == "fe1_kappa2" || c.value("kappa2_special", false);
        if (in.kappa2_special) {
            in.kappa = 2.0;
            in.A_r = prof(p, "A", 0.4);
            in.C2 = cnum(c, "C2", 1.0);
        }
        in.model.kappa = in.kappa;
        in.model.A0 = in.A0;
        return fe1_counter(in);
    }
    if (fam == "fe1_perp_kappa2") {
        FE1PerpK2Inputs in;
        in.rho = prof_req(p, "rho");
        in.b = prof(p, "b", 0.0);
        in.w = prof(p, "w", 0.0);
        in.A_r = prof(p, "A", 0.4);
        in.C2 = cnum_req(c, "C2");
        in.v0y = cnum(c, "v0y", 0.0);
        in.epsilon = (int)cnum(c, "epsilon", 1);
        return fe1_perp_kappa2(in);
    }
    throw ConfigError("unknown solution family: " + fam);
}

GridSpec parse_grid(const json& node) {
    GridSpec g;
    if (!node.is_object()) throw ConfigError("grid must be an object");
    g.t0 = node.value("t0", 0.0);
    g.dt = node.value("dt", 0.0);
    g.min_valid_fraction = node.value("min_valid_fraction", 0.8);
    const char* axes[3] = {"x", "y", "z"};
    for (int a = 0; a < 3; ++a) {
        if (node.contains(axes[a])) {
            const auto& ax = node.at(axes[a]);
            g.ax[a].lo = ax.at("min").get<double>();
            g.ax[a].hi = ax.at("max").get<double>();
            g.ax[a].n = ax.at("n").get<int>();
            if (!(g.ax[a].hi > g.ax[a].lo)) throw ConfigError("grid axis: max must exceed min");
            const bool active = g.ax[a].n >= 8;
            if (!active && g.ax[a].n < 3) throw ConfigError("grid axis: n must be >= 3");
        } else {
            g.ax[a] = {-0.05, 0.05, 4}; // thin slab for an inactive axis
        }
    }
    return g;
}

GridSpec grid_at_level(const json& node, int n_active) {
    GridSpec g = parse_grid(node);
    const double scale = 64.0 / n_active;
    const char* axes[3] = {"x", "y", "z"};
    for (int a = 0; a < 3; ++a) {
        const bool active = node.contains(axes[a]) && node.at(axes[a]).value("active", true);
        if (active) {
            g.ax[a].n = n_active;
        } else {
            const double mid = 0.5 * (g.ax[a].lo + g.ax[a].hi);
            const double half = 0.5 * (g.ax[a].hi - g.ax[a].lo) * scale;
            g.ax[a].lo = mid - half;
            g.ax[a].hi = mid + half;
        }
    }
    if (node.contains("dt64")) g.dt = node.at("dt64").get<double>() * scale;
    return g;
}

FluidModel model_of(const Solution& sol) {
    FluidModel m;
    const auto& j = sol.manifest();
    m.kappa = j.value("kappa", 5.0 / 3.0);
    m.A0 = j.value("A0", 1.0);
    return m;
}

} // namespace rmhd
