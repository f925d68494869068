#pragma once

#include <complex>
#include <vector>

#include "thzmix/bloch.hpp"
#include "thzmix/medium.hpp"

namespace thzmix {

// Gauss-Hermite quadrature matched to the 1-D Maxwell-Boltzmann distribution
// w(vz) = exp(-vz^2/vp^2)/(vp sqrt(pi)). Weights are normalized to sum to 1.
struct VelocityGrid {
    std::vector<double> nodes;    // cm/s, symmetric about 0
    std::vector<double> weights;  // > 0, sum = 1
};

VelocityGrid velocity_grid(double vp, int n);

// Doppler-averaged steady-state solution: weighted sum of per-class solves in
// fixed node order (bit-reproducible). Both coherence frames and the averaged
// populations are reported.
struct AveragedCoherences {
    std::complex<double> sigma31{}, sigma32{}, sigma21{};  // paper frame
    std::complex<double> s31{}, s32{}, s21{};              // engine frame
    double rho11 = 0, rho22 = 0, rho33 = 0;
};

AveragedCoherences averaged_coherences(const AtomicMedium& m, const FieldState& f,
                                       const VelocityGrid& grid);

}  // namespace thzmix
