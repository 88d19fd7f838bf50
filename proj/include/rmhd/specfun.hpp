#pragma once

#include <stdexcept>

namespace rmhd {

struct SpecfunError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Gauss hypergeometric 2F1(a, b; c; z) for real z <= 0.5 (all uses here have
// z <= 0). Direct power series for |z| <= 0.5; Pfaff transform
// 2F1(a,b;c;z) = (1-z)^(-a) 2F1(a, c-b; c; z/(z-1)) for z < -0.5.
double hyp2f1(double a, double b, double c, double z);

// Euler-integral evaluation by adaptive quadrature, c > b > 0, z < 1.
// Kept independent of the series path; this is the verification oracle.
double hyp2f1_oracle(double a, double b, double c, double z);

// Real arctanh extended past |x| = 1 by the real part convention
// 0.5 ln((x+1)/(x-1)); pole at x = 1 and x = -1.
double artanh_real(double x);

} // namespace rmhd
