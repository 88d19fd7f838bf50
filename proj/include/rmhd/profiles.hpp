#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "rmhd/vec.hpp"

namespace rmhd {

struct ProfileError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Closed primitive set with exact analytic derivatives up to order 3:
//   const   c
//   poly    sum_k coeff[k] r^k, degree <= 6
//   sin     amp * sin(freq r + phase)
//   gauss   amp * exp(-(r-mu)^2 / (2 sigma^2)), sigma > 0
//   tanh    amp * tanh(slope (r - center))
struct ProfileTerm {
    enum class Kind { Const, Poly, Sin, Gauss, Tanh };
    Kind kind = Kind::Const;
    double c = 0.0;
    std::vector<double> coeff;
    double amp = 0.0, freq = 0.0, phase = 0.0;
    double mu = 0.0, sigma = 1.0;
    double slope = 0.0, center = 0.0;

    double eval(double r, int order) const;
};

struct Profile {
    std::vector<ProfileTerm> terms;

    double eval(double r, int order = 0) const;
    double operator()(double r) const { return eval(r, 0); }

    static Profile constant(double c);
    static Profile poly(std::vector<double> coeff);
    static Profile sine(double amp, double freq, double phase = 0.0);
    static Profile gauss(double amp, double mu, double sigma);
    static Profile tanh_step(double amp, double slope, double center = 0.0);
    Profile& add(Profile other);
};

Profile parse_profile(const nlohmann::json& node);
nlohmann::json serialize_profile(const Profile& p);

struct VectorProfile {
    Profile x, y, z;
    Vec3 eval(double r, int order = 0) const {
        return {x.eval(r, order), y.eval(r, order), z.eval(r, order)};
    }
    Vec3 operator()(double r) const { return eval(r, 0); }
};

VectorProfile parse_vector_profile(const nlohmann::json& node);
nlohmann::json serialize_vector_profile(const VectorProfile& p);

// Scalar field of two Riemann invariants, built from the 1D primitives:
//   c0 + S(s) + R(r) + sum_k Pk(s) Qk(r)
struct TwoPhaseScalar {
    double c0 = 0.0;
    Profile fs; // function of s
    Profile fr; // function of r
    std::vector<std::pair<Profile, Profile>> products;

    double eval(double s, double r, int ds = 0, int dr = 0) const;
    double operator()(double s, double r) const { return eval(s, r); }
};

TwoPhaseScalar parse_two_phase(const nlohmann::json& node);
nlohmann::json serialize_two_phase(const TwoPhaseScalar& p);

} // namespace rmhd
