#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "rmhd/verify.hpp"

namespace rmhd {

// Sample the solution on a time-space lattice and render CSV with the fixed
// header t,x,y,z,rho,p,u,v,w,H1,H2,H3,valid. Rows are lexicographic in
// (t, x, y, z), floating values printed with 17 significant digits; output is
// bit-identical for any thread count.
struct SampleLattice {
    double t0 = 0.0, t1 = 0.0;
    int nt = 1;
    Axis ax[3];
};

std::string sample_csv(const Solution& sol, const SampleLattice& lat,
                       Exec exec = Exec::Parallel, double* valid_fraction = nullptr);

} // namespace rmhd
