#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "rmhd/linalg.hpp"

using namespace rmhd;

TEST_CASE("singular values of a small matrix") {
    // 3x2 columns (2,0,2), (0,1,-1): gram eigenvalues 5 +- sqrt(13)
    std::vector<double> a = {2, 0, 0, 1, 2, -1};
    auto sv = singular_values(a, 3, 2);
    REQUIRE(sv.size() == 2);
    CHECK(sv[0] == doctest::Approx(std::sqrt(5.0 + std::sqrt(13.0))).epsilon(1e-12));
    CHECK(sv[1] == doctest::Approx(std::sqrt(5.0 - std::sqrt(13.0))).epsilon(1e-12));
}

TEST_CASE("numerical rank detects deficiency") {
    std::vector<double> a = {1, 2, 2, 4, 3, 6}; // second column = 2x first
    CHECK(numerical_rank(a, 3, 2, 1e-10) == 1);
    std::vector<double> b = {1, 0, 0, 1, 1, 1};
    CHECK(numerical_rank(b, 3, 2, 1e-10) == 2);
}

TEST_CASE("poly_roots recovers known roots") {
    // (x-1)(x-2)(x+3) = x^3 - 7x + 6
    auto roots = poly_roots({1.0, 0.0, -7.0, 6.0});
    std::vector<double> re;
    for (auto z : roots) {
        CHECK(std::fabs(z.imag()) < 1e-10);
        re.push_back(z.real());
    }
    std::sort(re.begin(), re.end());
    CHECK(re[0] == doctest::Approx(-3.0).epsilon(1e-10));
    CHECK(re[1] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(re[2] == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("eigenvalues8 handles repeated eigenvalues") {
    Matrix8 m = mat8_zero();
    const double diag[8] = {2.0, 2.0, -1.0, 3.0, 3.0, 3.0, 0.5, -0.5};
    for (int i = 0; i < 8; ++i) m[i][i] = diag[i];
    m[0][2] = 0.7; // upper-triangular coupling keeps the spectrum
    m[3][6] = -0.4;
    m[1][7] = 0.2;
    auto ev = eigenvalues8(m);
    std::vector<double> re;
    for (auto z : ev) {
        CHECK(std::fabs(z.imag()) < 1e-12);
        re.push_back(z.real());
    }
    std::sort(re.begin(), re.end());
    std::vector<double> expect(diag, diag + 8);
    std::sort(expect.begin(), expect.end());
    for (int i = 0; i < 8; ++i) CHECK(re[i] == doctest::Approx(expect[i]).epsilon(1e-11));
}

TEST_CASE("charpoly8 matches determinant evaluation") {
    Matrix8 m = mat8_zero();
    unsigned s = 12345;
    auto rnd = [&s]() {
        s = s * 1664525u + 1013904223u;
        return (double)(s >> 8) / (1u << 24) - 0.5;
    };
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) m[i][j] = rnd();
    const auto c = charpoly8(m);
    for (double x : {0.3, -1.2, 2.0}) {
        double p = 0.0;
        for (double ci : c) p = p * x + ci;
        Matrix8 xm;
        for (int i = 0; i < 8; ++i) {
            for (int j = 0; j < 8; ++j) xm[i][j] = -m[i][j];
            xm[i][i] += x;
        }
        CHECK(p == doctest::Approx(mat8_det(xm)).epsilon(1e-9));
    }
}
