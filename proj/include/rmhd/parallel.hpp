#pragma once

namespace rmhd {

enum class Exec { Serial, Parallel };

// Thread cap from the RIEMANN_MHD_THREADS environment variable (read once).
// Returns at least 1; without OpenMP support everything runs serially.
int thread_count();

} // namespace rmhd
