#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "rmhd/vec.hpp"

namespace rmhd {

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Nondimensional units throughout, magnetic permeability set to one.
struct State {
    double rho = 1.0;
    double p = 1.0;
    Vec3 v{};
    Vec3 H{};

    bool valid() const {
        return rho > 0.0 && p > 0.0 && std::isfinite(rho) && std::isfinite(p) &&
               std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z) &&
               std::isfinite(H.x) && std::isfinite(H.y) && std::isfinite(H.z);
    }
};

struct FluidModel {
    double kappa = 5.0 / 3.0; // adiabatic exponent
    double A0 = 1.0;          // entropic constant where p = A0 rho^kappa applies

    void require_valid() const {
        if (!(kappa > 0.0)) throw DomainError("FluidModel: kappa must be positive");
    }
};

struct WaveVector {
    double lambda0 = 0.0;
    Vec3 lvec{};

    // delta |lvec| = lambda0 + v . lvec, the speed relative to the fluid.
    double delta_times_norm(const Vec3& v) const { return lambda0 + dot(v, lvec); }
    Vec4 as_vec4() const { return {lambda0, lvec}; }
};

enum class WaveKind { E1, E2, E3, Alfven, Slow, Fast };

struct WaveFamily {
    WaveKind kind = WaveKind::Fast;
    int epsilon = +1; // orientation, +1 or -1

    void require_valid() const {
        if (epsilon != 1 && epsilon != -1) throw DomainError("WaveFamily: epsilon must be +1 or -1");
    }
};

inline const char* wave_kind_name(WaveKind k) {
    switch (k) {
        case WaveKind::E1: return "E1";
        case WaveKind::E2: return "E2";
        case WaveKind::E3: return "E3";
        case WaveKind::Alfven: return "A";
        case WaveKind::Slow: return "S";
        case WaveKind::Fast: return "F";
    }
    return "?";
}

struct Eigenvector {
    double g_rho = 0.0;
    double g_p = 0.0;
    Vec3 g_v{};
    Vec3 g_h{};
    bool degenerate = false;
    std::string note;

    double norm() const {
        return std::sqrt(g_rho * g_rho + g_p * g_p + norm2(g_v) + norm2(g_h));
    }
};

} // namespace rmhd
