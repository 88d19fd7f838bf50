#pragma once

#include <array>
#include <cmath>

namespace rmhd {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
};

inline Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator-(Vec3 a) { return {-a.x, -a.y, -a.z}; }
inline Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
inline Vec3 operator*(Vec3 a, double s) { return s * a; }
inline Vec3 operator/(Vec3 a, double s) { return {a.x / s, a.y / s, a.z / s}; }
inline Vec3& operator+=(Vec3& a, Vec3 b) { a = a + b; return a; }
inline Vec3& operator-=(Vec3& a, Vec3 b) { a = a - b; return a; }

inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(Vec3 a, Vec3 b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm2(Vec3 a) { return dot(a, a); }
inline double norm(Vec3 a) { return std::sqrt(norm2(a)); }
inline Vec3 normalized(Vec3 a) { return a / norm(a); }

// Spacetime covector (lambda0, lambda_vec); pairs with events (t, x).
struct Vec4 {
    double t = 0.0;
    Vec3 s{};

    double& operator[](int i) { return i == 0 ? t : s[i - 1]; }
    double operator[](int i) const { return i == 0 ? t : s[i - 1]; }
};

inline Vec4 operator+(Vec4 a, Vec4 b) { return {a.t + b.t, a.s + b.s}; }
inline Vec4 operator-(Vec4 a, Vec4 b) { return {a.t - b.t, a.s - b.s}; }
inline Vec4 operator*(double c, Vec4 a) { return {c * a.t, c * a.s}; }
inline double dot(Vec4 a, Vec4 b) { return a.t * b.t + dot(a.s, b.s); }
inline double norm(Vec4 a) { return std::sqrt(dot(a, a)); }

} // namespace rmhd
