#pragma once

#include <array>
#include <complex>

#include "thzmix/medium.hpp"

namespace thzmix {

// Steady-state density matrix of one velocity class. Coherences are reported
// in two frames:
//  - sigma31/sigma32/sigma21: the paper-convention slow coherences
//    sigma_ns = s_ns * e^{-i arg(C_ns)} that obey the first-order formulas;
//  - s31/s32/s21: the rotating-frame solution tied to the complex couplings,
//    the quantity the propagation engine consumes (regular at C -> 0).
struct DensityMatrixState {
    double rho11 = 0, rho22 = 0, rho33 = 0;
    std::complex<double> sigma31{}, sigma32{}, sigma21{};
    std::complex<double> s31{}, s32{}, s21{};
};

// Real linear generator of the Bloch evolution with the trace folded in:
// coordinates x = (rho11, rho22, Re s31, Im s31, Re s32, Im s32, Re s21, Im s21),
// rho33 = 1 - rho11 - rho22 eliminated. The steady state solves the stacked
// 9x8 system A x = -b in the least-squares sense (exactly, as the system is
// consistent). All rates and detunings are expressed in units of gamma31.
struct BlochGenerator {
    std::array<std::array<long double, 8>, 9> A{};
    std::array<long double, 9> b{};
    // couplings cached for the frame mapping (gamma31 units)
    std::complex<double> c31{}, c32{}, cT{};
};

// Builds the closed-loop Lambda Bloch generator for one velocity class.
// Doppler shifts enter as delta31 - k31 vz and delta32 - k32 vz; the sigma21
// coherence sees their difference (the closed-loop residual with kT vz).
BlochGenerator build_generator(const AtomicMedium& m, const FieldState& f, double vz);

// Unique trace-1 steady state of the generator. Residual ||L rho|| <= 1e-11
// in the operator's natural scale; raises NonUniqueSteadyStateError when the
// kernel is degenerate (e.g. all couplings zero with Gamma = gamma21 = 0).
DensityMatrixState solve_steady_state(const BlochGenerator& gen);

struct FirstOrderSigma {
    std::complex<double> sigma31{}, sigma32{}, sigma21{};
};

// First-order steady-state coherences in gT/gamma:
//   Im s31 = (gT g32/g0^2) sinPhi        Re s31 = -gT g32 (g32^2-g31^2)/g0^4 cosPhi
//   Im s32 = -(gT g31/g0^2) sinPhi       Re s32 = +gT g31 (g32^2-g31^2)/g0^4 cosPhi
//   Im s21 = -(g31 g32/g0^2) sinPhi      Re s21 = -(g31 g32/g0^2) cosPhi
// with g0^2 = g31^2 + g32^2.
FirstOrderSigma first_order_sigma(double g31, double g32, double gT, double Phi);

struct MetastablePopulations {
    double rho11 = 0, rho22 = 0;
};

// rho11 = g32^2/g0^2 - 2 gT g31 g32 gamma sinPhi / g0^4, rho22 = 1 - rho11.
MetastablePopulations first_order_populations(double g31, double g32, double gT,
                                              double Phi, double gamma);

}  // namespace thzmix
