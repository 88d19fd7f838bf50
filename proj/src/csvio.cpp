#include "rmhd/csvio.hpp"

#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rmhd {

namespace {

void put17(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;
}

} // namespace

std::string sample_csv(const Solution& sol, const SampleLattice& lat, Exec exec,
                       double* valid_fraction) {
    const int nt = lat.nt < 1 ? 1 : lat.nt;
    const long npts = (long)nt * lat.ax[0].n * lat.ax[1].n * lat.ax[2].n;
    std::vector<std::string> rows(npts);
    std::vector<unsigned char> ok(npts, 0);

    auto coord = [](const Axis& a, int i) {
        return a.n > 1 ? a.lo + (a.hi - a.lo) * i / (a.n - 1.0) : a.lo;
    };
    auto work = [&](long w) {
        long rem = w;
        const int k = (int)(rem % lat.ax[2].n);
        rem /= lat.ax[2].n;
        const int j = (int)(rem % lat.ax[1].n);
        rem /= lat.ax[1].n;
        const int i = (int)(rem % lat.ax[0].n);
        rem /= lat.ax[0].n;
        const int it = (int)rem;
        const double t = nt > 1 ? lat.t0 + (lat.t1 - lat.t0) * it / (nt - 1.0) : lat.t0;
        const Vec3 x{coord(lat.ax[0], i), coord(lat.ax[1], j), coord(lat.ax[2], k)};
        const Sample s = sol.evaluate(t, x);
        std::string& row = rows[w];
        row.reserve(260);
        put17(row, t);
        row += ',';
        put17(row, x.x);
        row += ',';
        put17(row, x.y);
        row += ',';
        put17(row, x.z);
        const double cols[8] = {s.u.rho, s.u.p, s.u.v.x, s.u.v.y,
                                s.u.v.z, s.u.H.x, s.u.H.y, s.u.H.z};
        for (double c : cols) {
            row += ',';
            put17(row, s.valid ? c : 0.0);
        }
        row += s.valid ? ",1\n" : ",0\n";
        ok[w] = s.valid ? 1 : 0;
    };

    if (exec == Exec::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(thread_count())
#endif
        for (long w = 0; w < npts; ++w) work(w);
    } else {
        for (long w = 0; w < npts; ++w) work(w);
    }

    long good = 0;
    for (auto b : ok) good += b;
    if (valid_fraction) *valid_fraction = npts > 0 ? (double)good / npts : 0.0;

    std::string out = "t,x,y,z,rho,p,u,v,w,H1,H2,H3,valid\n";
    size_t bytes = out.size();
    for (const auto& r : rows) bytes += r.size();
    out.reserve(bytes);
    for (const auto& r : rows) out += r;
    return out;
}

} // namespace rmhd
