#pragma once

namespace pppca::par {

// Worker count used by the OpenMP kernels. Resolution order:
// explicit set_threads() > PPPCA_THREADS env var > OpenMP default.
// All kernels are written so results are bitwise identical for any count.
int max_threads();
void set_threads(int n);

}  // namespace pppca::par
