#pragma once

#include <complex>

namespace thzmix {

enum class DipoleKind { Electric, Magnetic };

// Weisskopf-Wigner dipole moment from a spontaneous decay rate:
// d^2 = 3*hbar*lambda^3*gamma / (32*pi^3), Gaussian units. The magnetic
// moment obeys the same relation with H in place of E.
double dipole_from_decay(double gamma, double lambda_cm, DipoleKind kind);

// Three-level Lambda medium: |3> excited, |1>,|2> metastable. Optical
// transitions 3-1 and 3-2 (electric dipole), THz transition 2-1 (magnetic
// dipole). Immutable after construction.
class AtomicMedium {
public:
    // Frequencies are derived from the wavelengths; omegaT = omega31 - omega32
    // so the multiphoton resonance holds by construction.
    static AtomicMedium from_wavelengths(double gamma31, double gamma32, double gamma21,
                                         double Gamma, double lambda31_cm, double lambda32_cm,
                                         double density_cm3, double temperatureK,
                                         double massAMU,
                                         double theta31 = 0.0, double theta32 = 0.0,
                                         double theta12 = 0.0);

    // Explicit frequencies; rejects omega31 - omega32 - omegaT != 0 beyond
    // 1e-9 relative.
    static AtomicMedium from_frequencies(double omega31, double omega32, double omegaT,
                                         double gamma31, double gamma32, double gamma21,
                                         double Gamma, double density_cm3,
                                         double temperatureK, double massAMU,
                                         double theta31 = 0.0, double theta32 = 0.0,
                                         double theta12 = 0.0);

    double omega31 = 0, omega32 = 0, omegaT = 0;  // rad/s
    double lambda31 = 0, lambda32 = 0;            // cm
    double gamma31 = 0, gamma32 = 0, gamma21 = 0; // 1/s
    double Gamma = 0;                             // sigma12 dephasing, 1/s
    double d31 = 0, d32 = 0, mu = 0;              // statC*cm (derived)
    double N = 0;                                 // 1/cm^3
    double temperatureK = 0;
    double massAMU = 0;
    double vp = 0;                                // sqrt(2 kB T / m), cm/s
    double theta31 = 0, theta32 = 0, theta12 = 0; // constant dipole phases

    double k31() const;  // optical wavenumbers, rad/cm
    double k32() const;
    double kT() const;

private:
    AtomicMedium() = default;
    void validate() const;
};

// Complex slowly-varying envelopes, stored as couplings C_ns = g_ns*e^{+i*chi_ns}
// (rad/s): C31 = d31*a31/(2 hbar), C32 = d32*a32/(2 hbar), CT = mu*aT/(2 hbar),
// with chi_ns = arg(C_ns) the envelope phase plus the constant dipole phase.
struct FieldState {
    std::complex<double> c31{0.0, 0.0};
    std::complex<double> c32{0.0, 0.0};
    std::complex<double> cT{0.0, 0.0};
    double delta31 = 0.0;  // laser detunings, rad/s
    double delta32 = 0.0;

    double g31() const { return std::abs(c31); }  // Rabi frequencies, rad/s
    double g32() const { return std::abs(c32); }
    double gT() const { return std::abs(cT); }

    // Relative loop phase Phi = (chi31 - chi32) - chi12; chi_ns = +arg(C_ns).
    double Phi() const;

    // Field amplitudes E31, E32 (statV/cm) and H (G) for a given medium.
    double E31(const AtomicMedium& m) const;
    double E32(const AtomicMedium& m) const;
    double H(const AtomicMedium& m) const;

    // Build from Rabi magnitudes (rad/s) and the loop phase. c31, c32 are laid
    // on the real axis and the loop phase is carried by cT.
    static FieldState from_rabi(double g31, double g32, double gT, double Phi,
                                double delta31 = 0.0, double delta32 = 0.0);
};

// I = (c/8pi) * E^2 with g = d*E/(2 hbar); returns W/cm^2.
double intensity_from_rabi(double g, double d);
// Inverse of intensity_from_rabi; exact round trip to 1e-12 relative.
double rabi_from_intensity(double intensity_W_cm2, double d);

// Maximum photon/power conversion efficiency omegaT/omega31.
double efficiency_bound(const AtomicMedium& m);

// Optical length tau = (3 pi c^2 / 2 omega31^2) * N * z.
double tau_from_z(const AtomicMedium& m, double z_cm);
double z_from_tau(const AtomicMedium& m, double tau);

// Paper's printed tau->zeta conversion:
// zeta = tau * (mu/d31) * sqrt(omegaT/omega31) * (hbar*gamma31/d31) * (8 pi I/c)^(-1/2)
// with I the total intensity in W/cm^2. (See also calibrated_zeta_rate for the
// internally consistent conversion used by the compare pipeline.)
double zeta_from_tau(const AtomicMedium& m, double tau, double totalIntensity_W_cm2);

// First-principles dzeta/dtau for the reduced mapping, evaluated at a field
// state: cT * sqrt(P0') / g0^2 in the paper's dimensionless normalization,
// where P0' is the omega^2 g^2/gamma photon-flux normalization. Constant along
// the path when the optical couplings' gamma/omega weights are equal.
double calibrated_zeta_rate(const AtomicMedium& m, double g31_rabi, double g32_rabi);

struct PumpingThreshold {
    double intensity_W_cm2;   // Eq. (25) right-hand side scale
    double rabi_sq;           // Eq. (24) form: g0^2 threshold, (rad/s)^2
};

// Minimum total pump intensity for coherence trapping to survive Doppler
// dephasing: I >> (Gamma/gamma31) * (k31 vp/gamma31)^2 * 16 pi^2 hbar gamma31 c / (3 lambda31^3).
PumpingThreshold pumping_threshold(const AtomicMedium& m);

}  // namespace thzmix
