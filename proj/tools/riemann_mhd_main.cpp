// riemann-mhd: construct closed-form MHD wave solutions from JSON configs,
// sample them to CSV, and verify them against the governing equations.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rmhd/config.hpp"
#include "rmhd/csvio.hpp"
#include "rmhd/gmc.hpp"
#include "rmhd/mhd_core.hpp"

using nlohmann::json;
using namespace rmhd;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitConstruct = 3;
constexpr int kExitSample = 4;
constexpr int kExitVerify = 5;

json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config: " + path);
    json j;
    in >> j;
    return j;
}

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream out(out_path);
        out << j.dump(2) << "\n";
    }
}

int cmd_eigen(const json& cfg, const std::string& out_path) {
    State st;
    const json& s = cfg.at("state");
    st.rho = s.at("rho").get<double>();
    st.p = s.at("p").get<double>();
    st.v = parse_vec3(s.at("v"));
    st.H = parse_vec3(s.at("H"));
    FluidModel m;
    m.kappa = cfg.at("model").at("kappa").get<double>();
    const Vec3 lvec = parse_vec3(cfg.at("lvec"));
    if (!st.valid() || !(m.kappa > 0.0) || !(norm(lvec) > 0.0))
        throw ConfigError("eigen: invalid state, model, or direction");

    const auto cs = characteristic_speeds(st, m, lvec);
    json out;
    out["speeds"] = {{"deltaE", cs.deltaE}, {"deltaA", cs.deltaA},
                     {"deltaS", cs.deltaS}, {"deltaF", cs.deltaF}};
    out["sound_speed"] = sound_speed(st, m);

    json fams = json::array();
    const WaveKind kinds[6] = {WaveKind::E1, WaveKind::E2, WaveKind::E3,
                               WaveKind::Alfven, WaveKind::Slow, WaveKind::Fast};
    json disp = json::array();
    for (WaveKind k : kinds) {
        const bool entropic = k == WaveKind::E1 || k == WaveKind::E2 || k == WaveKind::E3;
        for (int eps : {+1, -1}) {
            WaveFamily fam{k, eps};
            const double l0 = family_lambda0(st, m, lvec, fam);
            WaveVector wv{l0, lvec};
            json frec = {{"family", wave_kind_name(k)},
                         {"epsilon", entropic ? 0 : eps},
                         {"lambda0", l0}};
            frec["dispersion_residual"] = dispersion_residual(st, m, wv);
            const Eigenvector g = eigenvector(st, m, lvec, fam);
            frec["degenerate"] = g.degenerate;
            if (!g.note.empty()) frec["note"] = g.note;
            if (!g.degenerate) {
                frec["gamma"] = {{"rho", g.g_rho},
                                 {"p", g.g_p},
                                 {"v", {g.g_v.x, g.g_v.y, g.g_v.z}},
                                 {"h", {g.g_h.x, g.g_h.y, g.g_h.z}}};
                frec["wave_relation_residual"] = wave_relation_residual(st, m, wv, g);
            }
            fams.push_back(frec);
            if (entropic) break; // entropic lambda0 carries no orientation
        }
    }
    out["families"] = fams;
    emit(out, out_path);
    return 0;
}

json validity_of(const Solution& sol) {
    const auto& man = sol.manifest();
    return man.contains("validity") ? man.at("validity") : json::object();
}

int cmd_construct(const json& cfg, const std::string& out_path) {
    const SolutionPtr sol = build_solution(cfg.at("solution"));
    json out = sol->manifest();
    out["rank_bound"] = sol->rank_bound();
    emit(out, out_path);
    return 0;
}

SampleLattice parse_lattice(const json& g) {
    SampleLattice lat;
    lat.t0 = g.value("t0", 0.0);
    lat.t1 = g.value("t1", lat.t0);
    lat.nt = g.value("nt", 1);
    const char* axes[3] = {"x", "y", "z"};
    for (int a = 0; a < 3; ++a) {
        if (g.contains(axes[a])) {
            const auto& ax = g.at(axes[a]);
            lat.ax[a].lo = ax.at("min").get<double>();
            lat.ax[a].hi = ax.at("max").get<double>();
            lat.ax[a].n = ax.at("n").get<int>();
        } else {
            lat.ax[a] = {0.0, 0.0, 1};
        }
    }
    return lat;
}

int cmd_sample(const json& cfg, const std::string& out_path) {
    const SolutionPtr sol = build_solution(cfg.at("solution"));
    const SampleLattice lat = parse_lattice(cfg.at("grid"));
    double valid = 0.0;
    const std::string csv = sample_csv(*sol, lat, Exec::Parallel, &valid);
    const double need = cfg.value("min_valid_fraction", 0.8);
    if (valid < need) {
        std::cerr << "sampling validity " << valid << " below threshold " << need << "\n";
        return kExitSample;
    }
    if (out_path.empty()) {
        std::cout << csv;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        out << csv;
    }
    return 0;
}

int cmd_verify(const json& cfg, const std::string& out_path) {
    const SolutionPtr sol = build_solution(cfg.at("solution"));
    const FluidModel model = model_of(*sol);
    json checks = cfg.value("checks", json::array({"pde", "divH"}));
    const json thr = cfg.value("thresholds", json::object());
    const double order_min = thr.value("order_min", 1.8);
    const double gmc_tol = thr.value("gmc", 1e-6);

    json report;
    report["family"] = sol->family();
    bool pass = true;

    auto grids_from = [&](const json& g) {
        std::vector<GridSpec> grids;
        const auto ns = g.value("levels", std::vector<int>{64, 128, 256});
        for (int n : ns) grids.push_back(grid_at_level(g, n));
        return grids;
    };

    for (const auto& chk : checks) {
        const std::string name = chk.get<std::string>();
        if (name == "pde" || name == "divH") {
            const auto grids = grids_from(cfg.at("grid"));
            const auto rows = convergence_order(*sol, model, grids);
            json jr = json::array();
            bool ok = true;
            for (const auto& row : rows) {
                if (name == "divH" && row.eq != "div_H") continue;
                const bool rowok = row.exact || row.order >= order_min;
                ok = ok && rowok;
                jr.push_back({{"equation", row.eq}, {"l2", row.l2},
                              {"order", row.exact ? json("exact") : json(row.order)},
                              {"pass", rowok}});
            }
            report[name] = {{"rows", jr}, {"pass", ok}};
            pass = pass && ok;
        } else if (name == "gmc") {
            const double comm = gmc_commutator_residual(*sol);
            const double span = gmc_span_residual(*sol);
            const bool ok = comm <= gmc_tol && span <= gmc_tol;
            report["gmc"] = {{"commutator", comm}, {"span", span}, {"pass", ok}};
            pass = pass && ok;
        } else if (name == "rank") {
            const GridSpec g = parse_grid(cfg.at("grid"));
            int worst = 0;
            for (int i = 0; i < 10; ++i) {
                const Vec3 x{g.ax[0].lo + (g.ax[0].hi - g.ax[0].lo) * (0.15 + 0.08 * i),
                             g.ax[1].lo + (g.ax[1].hi - g.ax[1].lo) * (0.2 + 0.06 * i),
                             g.ax[2].lo + (g.ax[2].hi - g.ax[2].lo) * 0.5};
                try {
                    worst = std::max(worst, jacobian_rank(*sol, g.t0, x));
                } catch (const DomainError&) {
                }
            }
            const bool ok = worst <= sol->rank_bound();
            report["rank"] = {{"max_observed", worst}, {"bound", sol->rank_bound()}, {"pass", ok}};
            pass = pass && ok;
        } else {
            throw ConfigError("unknown check: " + name);
        }
    }
    report["pass"] = pass;
    report["validity"] = validity_of(*sol);
    emit(report, out_path);
    return pass ? 0 : kExitVerify;
}

int cmd_table1(const std::string& format, const std::string& out_path) {
    const auto tab = existence_table();
    const char* names[4] = {"E", "A", "F", "S"};
    if (format == "json") {
        json out;
        json rows = json::array();
        for (int i = 0; i < 4; ++i) {
            json row;
            row["wave"] = names[i];
            for (int j = 0; j < 4; ++j) {
                json cell = {{"exists", std::string(1, tab[i][j])}};
                const std::string ctors = existence_constructors(i, j);
                if (!ctors.empty()) cell["constructors"] = ctors;
                row[names[j]] = cell;
            }
            rows.push_back(row);
        }
        out["table"] = rows;
        emit(out, out_path);
    } else {
        std::ostringstream os;
        os << "waves  E  A  F  S\n";
        for (int i = 0; i < 4; ++i) {
            os << names[i] << "     ";
            for (int j = 0; j < 4; ++j) os << " " << tab[i][j] << " ";
            os << "\n";
        }
        os << "\n";
        for (int i = 0; i < 4; ++i)
            for (int j = i; j < 4; ++j)
                if (tab[i][j] == '+')
                    os << names[i] << "x" << names[j] << ": " << existence_constructors(i, j)
                       << "\n";
        if (out_path.empty()) {
            std::cout << os.str();
        } else {
            std::ofstream out(out_path);
            out << os.str();
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Closed-form MHD simple and double Riemann waves: construction, "
                 "sampling, and numerical verification"};
    app.require_subcommand(1);

    std::string config_path, out_path, format = "text";
    auto add_common = [&](CLI::App* sub, bool need_config) {
        if (need_config)
            sub->add_option("--config", config_path, "JSON config path")->required();
        sub->add_option("--out", out_path, "output path (default stdout)");
    };
    auto* eigen = app.add_subcommand("eigen", "characteristic speeds, eigenvectors, residuals");
    add_common(eigen, true);
    auto* construct = app.add_subcommand("construct", "build a solution, report its manifest");
    add_common(construct, true);
    auto* sample = app.add_subcommand("sample", "sample a solution to CSV");
    add_common(sample, true);
    auto* verify = app.add_subcommand("verify", "run verification checks, write a report");
    add_common(verify, true);
    auto* table1 = app.add_subcommand("table1", "double-wave existence table");
    add_common(table1, false);
    table1->add_option("--format", format, "text or json");

    CLI11_PARSE(app, argc, argv);

    try {
        if (eigen->parsed()) return cmd_eigen(load_config(config_path), out_path);
        if (construct->parsed()) return cmd_construct(load_config(config_path), out_path);
        if (sample->parsed()) return cmd_sample(load_config(config_path), out_path);
        if (verify->parsed()) return cmd_verify(load_config(config_path), out_path);
        if (table1->parsed()) return cmd_table1(format, out_path);
    } catch (const ConstructError& e) {
        std::cerr << "construction error: " << e.what() << "\n";
        return kExitConstruct;
    } catch (const FieldError& e) {
        std::cerr << "sampling error: " << e.what() << "\n";
        return kExitSample;
    } catch (const std::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
