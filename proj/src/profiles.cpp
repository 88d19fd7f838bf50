#include "rmhd/profiles.hpp"

#include <cmath>

namespace rmhd {

using nlohmann::json;

double ProfileTerm::eval(double r, int order) const {
    if (order < 0 || order > 3) throw ProfileError("profile derivative order must be 0..3");
    switch (kind) {
        case Kind::Const:
            return order == 0 ? c : 0.0;
        case Kind::Poly: {
            // Horner on the falling-factorial-weighted coefficients
            double sum = 0.0;
            for (int k = (int)coeff.size() - 1; k >= order; --k) {
                double f = 1.0;
                for (int j = 0; j < order; ++j) f *= (k - j);
                sum = sum * r + f * coeff[k];
            }
            return sum;
        }
        case Kind::Sin:
            return amp * std::pow(freq, order) * std::sin(freq * r + phase + order * M_PI_2);
        case Kind::Gauss: {
            const double u = (r - mu) / sigma;
            const double g = amp * std::exp(-0.5 * u * u);
            const double is = 1.0 / sigma;
            switch (order) {
                case 0: return g;
                case 1: return -u * is * g;
                case 2: return (u * u - 1.0) * is * is * g;
                case 3: return (3.0 * u - u * u * u) * is * is * is * g;
            }
            return 0.0;
        }
        case Kind::Tanh: {
            const double u = std::tanh(slope * (r - center));
            const double s2 = 1.0 - u * u;
            switch (order) {
                case 0: return amp * u;
                case 1: return amp * slope * s2;
                case 2: return -2.0 * amp * slope * slope * u * s2;
                case 3: return -2.0 * amp * slope * slope * slope * s2 * (1.0 - 3.0 * u * u);
            }
            return 0.0;
        }
    }
    throw ProfileError("profile term: bad kind");
}

double Profile::eval(double r, int order) const {
    double sum = 0.0;
    for (const auto& t : terms) sum += t.eval(r, order);
    return sum;
}

Profile Profile::constant(double c) {
    ProfileTerm t;
    t.kind = ProfileTerm::Kind::Const;
    t.c = c;
    return Profile{{t}};
}

Profile Profile::poly(std::vector<double> coeff) {
    if (coeff.size() > 7) throw ProfileError("poly degree must be <= 6");
    ProfileTerm t;
    t.kind = ProfileTerm::Kind::Poly;
    t.coeff = std::move(coeff);
    return Profile{{t}};
}

Profile Profile::sine(double amp, double freq, double phase) {
    ProfileTerm t;
    t.kind = ProfileTerm::Kind::Sin;
    t.amp = amp;
    t.freq = freq;
    t.phase = phase;
    return Profile{{t}};
}

Profile Profile::gauss(double amp, double mu, double sigma) {
    if (!(sigma > 0.0)) throw ProfileError("sigma must be > 0");
    ProfileTerm t;
    t.kind = ProfileTerm::Kind::Gauss;
    t.amp = amp;
    t.mu = mu;
    t.sigma = sigma;
    return Profile{{t}};
}

Profile Profile::tanh_step(double amp, double slope, double center) {
    ProfileTerm t;
    t.kind = ProfileTerm::Kind::Tanh;
    t.amp = amp;
    t.slope = slope;
    t.center = center;
    return Profile{{t}};
}

Profile& Profile::add(Profile other) {
    for (auto& t : other.terms) terms.push_back(std::move(t));
    return *this;
}

namespace {

ProfileTerm parse_term(const json& node) {
    if (!node.is_object() || !node.contains("kind"))
        throw ProfileError("profile term must be an object with a \"kind\"");
    const std::string kind = node.at("kind").get<std::string>();
    ProfileTerm t;
    auto need = [&](const char* key) -> double {
        if (!node.contains(key)) throw ProfileError(std::string("profile term missing \"") + key + "\"");
        return node.at(key).get<double>();
    };
    if (kind == "const") {
        t.kind = ProfileTerm::Kind::Const;
        t.c = need("c");
    } else if (kind == "poly") {
        t.kind = ProfileTerm::Kind::Poly;
        t.coeff = node.at("coeff").get<std::vector<double>>();
        if (t.coeff.size() > 7) throw ProfileError("poly degree must be <= 6");
    } else if (kind == "sin") {
        t.kind = ProfileTerm::Kind::Sin;
        t.amp = need("amp");
        t.freq = need("freq");
        t.phase = node.value("phase", 0.0);
    } else if (kind == "gauss") {
        t.kind = ProfileTerm::Kind::Gauss;
        t.amp = need("a");
        t.mu = need("mu");
        t.sigma = need("sigma");
        if (!(t.sigma > 0.0)) throw ProfileError("sigma must be > 0");
    } else if (kind == "tanh") {
        t.kind = ProfileTerm::Kind::Tanh;
        t.amp = need("amp");
        t.slope = need("slope");
        t.center = node.value("center", 0.0);
    } else {
        throw ProfileError("unknown profile kind: " + kind);
    }
    for (double v : t.coeff)
        if (!std::isfinite(v)) throw ProfileError("profile parameter must be finite");
    for (double v : {t.c, t.amp, t.freq, t.phase, t.mu, t.sigma, t.slope, t.center})
        if (!std::isfinite(v)) throw ProfileError("profile parameter must be finite");
    return t;
}

json serialize_term(const ProfileTerm& t) {
    json j;
    switch (t.kind) {
        case ProfileTerm::Kind::Const: j = {{"kind", "const"}, {"c", t.c}}; break;
        case ProfileTerm::Kind::Poly: j = {{"kind", "poly"}, {"coeff", t.coeff}}; break;
        case ProfileTerm::Kind::Sin:
            j = {{"kind", "sin"}, {"amp", t.amp}, {"freq", t.freq}, {"phase", t.phase}};
            break;
        case ProfileTerm::Kind::Gauss:
            j = {{"kind", "gauss"}, {"a", t.amp}, {"mu", t.mu}, {"sigma", t.sigma}};
            break;
        case ProfileTerm::Kind::Tanh:
            j = {{"kind", "tanh"}, {"amp", t.amp}, {"slope", t.slope}, {"center", t.center}};
            break;
    }
    return j;
}

} // namespace

Profile parse_profile(const json& node) {
    Profile p;
    if (node.is_number()) {
        p.terms.push_back(parse_term(json{{"kind", "const"}, {"c", node.get<double>()}}));
        return p;
    }
    if (node.is_object() && node.contains("terms")) {
        for (const auto& t : node.at("terms")) p.terms.push_back(parse_term(t));
        return p;
    }
    if (node.is_object()) {
        p.terms.push_back(parse_term(node));
        return p;
    }
    if (node.is_array()) {
        for (const auto& t : node) p.terms.push_back(parse_term(t));
        return p;
    }
    throw ProfileError("profile node must be a number, term, or {\"terms\": [...]}");
}

json serialize_profile(const Profile& p) {
    json terms = json::array();
    for (const auto& t : p.terms) terms.push_back(serialize_term(t));
    return json{{"terms", terms}};
}

VectorProfile parse_vector_profile(const json& node) {
    if (!node.is_object()) throw ProfileError("vector profile must be {\"x\":...,\"y\":...,\"z\":...}");
    VectorProfile v;
    if (node.contains("x")) v.x = parse_profile(node.at("x"));
    if (node.contains("y")) v.y = parse_profile(node.at("y"));
    if (node.contains("z")) v.z = parse_profile(node.at("z"));
    return v;
}

json serialize_vector_profile(const VectorProfile& p) {
    return json{{"x", serialize_profile(p.x)},
                {"y", serialize_profile(p.y)},
                {"z", serialize_profile(p.z)}};
}

double TwoPhaseScalar::eval(double s, double r, int ds, int dr) const {
    double sum = 0.0;
    if (ds == 0 && dr == 0) sum += c0;
    if (dr == 0) sum += fs.eval(s, ds);
    if (ds == 0) sum += fr.eval(r, dr);
    for (const auto& [P, Q] : products) sum += P.eval(s, ds) * Q.eval(r, dr);
    return sum;
}

TwoPhaseScalar parse_two_phase(const json& node) {
    TwoPhaseScalar p;
    if (node.is_number()) {
        p.c0 = node.get<double>();
        return p;
    }
    if (!node.is_object()) throw ProfileError("two-phase scalar must be a number or object");
    p.c0 = node.value("const", 0.0);
    if (node.contains("s")) p.fs = parse_profile(node.at("s"));
    if (node.contains("r")) p.fr = parse_profile(node.at("r"));
    if (node.contains("sr")) {
        for (const auto& pr : node.at("sr"))
            p.products.emplace_back(parse_profile(pr.at("s")), parse_profile(pr.at("r")));
    }
    return p;
}

json serialize_two_phase(const TwoPhaseScalar& p) {
    json j{{"const", p.c0}, {"s", serialize_profile(p.fs)}, {"r", serialize_profile(p.fr)}};
    json prods = json::array();
    for (const auto& [P, Q] : p.products)
        prods.push_back(json{{"s", serialize_profile(P)}, {"r", serialize_profile(Q)}});
    j["sr"] = prods;
    return j;
}

} // namespace rmhd
