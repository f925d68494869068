#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "thzmix/doppler.hpp"
#include "thzmix/medium.hpp"
#include "thzmix/rk45.hpp"

namespace thzmix {

// Dimensionless state of the reduced three-wave system (Eqs. of the
// photon-flux amplitudes u_m and the loop phase).
struct ReducedState {
    double u1 = 0.0, u2 = 0.0, uT = 0.0;  // amplitudes, >= 0
    double Phi = 0.0;                     // rad
    double zeta = 0.0;                    // dimensionless length
};

struct ReducedDerivatives {
    double du1 = 0.0, du2 = 0.0, duT = 0.0, dPhi = 0.0;
};

// Constants of motion: S = u1^2 + u2^2, B = u1^2 + uT^2, C = uT^2 - u2^2,
// Pi = u1*u2*uT*cos(Phi).
struct MotionConstants {
    double S = 0.0, B = 0.0, C = 0.0, Pi = 0.0;
};
MotionConstants constants_of_motion(const ReducedState& s);

// Amplitude/phase right-hand side of the reduced system:
//   du1/dzeta = -u2*uT*sin(Phi), du2/dzeta = u1*uT*sin(Phi),
//   duT/dzeta = u1*u2*sin(Phi),
//   dPhi/dzeta = cos(Phi)*(u1^2 uT^2 + u1^2 u2^2 - u2^2 uT^2)/(u1 u2 uT),
// the unique phase law that conserves Pi together with the amplitude
// equations. Near an amplitude zero (< 1e-12) the phase derivative is the
// one induced by the regular complex-envelope formulation (dPhi = 0 there).
ReducedDerivatives reduced_rhs(const ReducedState& s);

struct TrajectorySample {
    double tau = 0.0;        // dimensionless optical length
    double z_cm = 0.0;       // physical length
    double zeta = 0.0;       // reduced length
    double I31 = 0.0, I32 = 0.0, IT = 0.0;  // W/cm^2 (0 when no medium attached)
    double u1sq = 0.0, u2sq = 0.0, uTsq = 0.0;  // photon-flux fractions
    double Phi = 0.0;        // rad
    double rho33 = 0.0;      // Doppler-averaged excited population (full path)
    double inv_S = 0.0, inv_B = 0.0, inv_C = 0.0, inv_Pi = 0.0;  // drift from initial value
};

struct PropagationTrajectory {
    std::vector<TrajectorySample> samples;
    std::string scenario;  // label, set by the caller
    std::string mode;      // "reduced" or "full"
    double rtol = 0.0;
    int velocityNodes = 0;
    Rk45Stats stats;
    std::size_t polarizationEvals = 0;  // full path: steady-state solves
    std::size_t polarizationCacheHits = 0;
};

struct ReducedOptions {
    double rtol = 1e-9;
    double atol = 1e-14;
    std::size_t nSamples = 401;         // uniformly spaced in zeta, incl. endpoints
    double invariantBudget = 1e-9;      // step rejection threshold on drift
};

// Integrates the reduced system over zeta in [state.zeta, state.zeta + span]
// using the complex-envelope representation (regular at amplitude zeros).
PropagationTrajectory propagate_reduced(const ReducedState& initial, double span,
                                        const ReducedOptions& opt = {});

// Complex-envelope spatial derivatives of the three fields for a given
// Doppler-averaged polarization, in physical units:
//   dE31/dz = -K31*Im(sigma31~), E31*dphi31/dz = -K31*Re(sigma31~),
// K31 = 4*pi*N*d31*omega31/c (and likewise 32 with d32, T with mu, omegaT).
// Returned as d/dz of the complex envelopes a31, a32, aT (statV/cm or G per cm).
struct MaxwellDerivatives {
    std::complex<double> da31_dz, da32_dz, daT_dz;
};
MaxwellDerivatives maxwell_rhs(const FieldState& f, const AveragedCoherences& sigma,
                               const AtomicMedium& m);

struct FullOptions {
    double rtol = 1e-7;
    double atol = 1e-12;
    int velocityNodes = 64;
    std::size_t nSamples = 201;       // uniformly spaced in tau, incl. endpoints
    bool cachePolarization = true;    // exact-state memo of steady-state solves
    double totalLossBudget = 0.05;    // step rejection if one step changes the
                                      // photon-count invariants by more than
                                      // budget * current scale
};

// Integrates the envelope Maxwell equations over tau in [0, tauSpan] with the
// Doppler-averaged steady-state polarization recomputed at every integrator
// stage. State is carried as the complex couplings in gamma31 units.
PropagationTrajectory propagate_full(const AtomicMedium& m, const FieldState& initial,
                                     double tauSpan, const FullOptions& opt = {});

// Per-interval finite-difference residuals of the photon-count (Manley-Rowe)
// relations d(F31 + F32)/dzeta and d(F31 + FT)/dzeta, with F_m the
// photon-flux fractions u_m^2 of the trajectory.
struct ManleyRoweResiduals {
    std::vector<double> d_sum_optical;  // size samples-1
    std::vector<double> d_31_T;
};
ManleyRoweResiduals manley_rowe_residuals(const PropagationTrajectory& t);

// Fills the physical columns (I31, I32, IT in W/cm^2; tau, z_cm) of a reduced
// trajectory given the medium and the physical input state at zeta = 0.
void attach_physical_units(PropagationTrajectory& t, const AtomicMedium& m,
                           const FieldState& initial);

}  // namespace thzmix
