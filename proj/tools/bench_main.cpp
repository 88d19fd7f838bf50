// Benchmark: serial reference vs OpenMP kernels for field sampling and
// residual evaluation, on a sinusoidal fast-wave field.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "rmhd/simple_waves.hpp"
#include "rmhd/verify.hpp"

using namespace rmhd;

namespace {

template <typename F>
double timed(F&& fn, int reps = 3) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
}

} // namespace

int main(int argc, char** argv) {
    int n = argc > 1 ? std::atoi(argv[1]) : 192;

    FastOrthoInputs in;
    in.rho = Profile::constant(1.0).add(Profile::sine(0.25, 0.5));
    in.A0 = 1.0;
    in.kappa = 2.0;
    in.lambdaF = {1.0, 0.0, 0.0};
    in.H0 = {0.0, std::sqrt(2.0), 0.0};
    const SolutionPtr sol = fast_ortho(in);
    FluidModel m;
    m.kappa = 2.0;

    GridSpec g;
    g.t0 = 0.1;
    g.ax[0] = {-1.0, 1.0, n};
    g.ax[1] = {-1.0, 1.0, n};
    g.ax[2] = {-0.05, 0.05, 4};

    std::printf("grid %d x %d x 4, threads cap %d\n", n, n, thread_count());

    SolutionField fs, fp;
    const double t_sample_serial = timed([&] { fs = sample_field(*sol, m, g, Exec::Serial); });
    const double t_sample_par = timed([&] { fp = sample_field(*sol, m, g, Exec::Parallel); });
    const double t_res_serial = timed([&] { (void)pde_residual(fs, Exec::Serial); });
    const double t_res_par = timed([&] { (void)pde_residual(fp, Exec::Parallel); });

    // serial and parallel paths must agree bitwise
    bool same = fs.u[1].size() == fp.u[1].size();
    for (size_t i = 0; same && i < fs.u[1].size(); ++i)
        same = fs.u[1][i].rho == fp.u[1][i].rho && fs.u[1][i].p == fp.u[1][i].p &&
               fs.u[1][i].v.x == fp.u[1][i].v.x && fs.u[1][i].H.y == fp.u[1][i].H.y;
    const auto rs = pde_residual(fs, Exec::Serial);
    const auto rp = pde_residual(fp, Exec::Parallel);
    for (size_t e = 0; same && e < rs.eqs.size(); ++e)
        same = rs.eqs[e].l2 == rp.eqs[e].l2 && rs.eqs[e].linf == rp.eqs[e].linf;

    std::printf("%-22s %10s %10s %8s\n", "kernel", "serial[s]", "openmp[s]", "speedup");
    std::printf("%-22s %10.4f %10.4f %8.2fx\n", "sample_field", t_sample_serial, t_sample_par,
                t_sample_serial / t_sample_par);
    std::printf("%-22s %10.4f %10.4f %8.2fx\n", "pde_residual", t_res_serial, t_res_par,
                t_res_serial / t_res_par);
    std::printf("serial/parallel results identical: %s\n", same ? "yes" : "NO");
    return same ? 0 : 1;
}
