#include "thzmix/medium.hpp"

#include <cmath>

#include "thzmix/constants.hpp"
#include "thzmix/errors.hpp"

namespace thzmix {

namespace {
constexpr double c = constants::c_light;
constexpr double hbar = constants::hbar;
constexpr double pi = constants::pi;
}  // namespace

double dipole_from_decay(double gamma, double lambda_cm, DipoleKind /*kind*/) {
    if (lambda_cm <= 0.0)
        throw InvalidParameterError("dipole_from_decay: wavelength must be positive");
    if (gamma < 0.0)
        throw InvalidParameterError("dipole_from_decay: decay rate must be non-negative");
    return std::sqrt(3.0 * hbar * lambda_cm * lambda_cm * lambda_cm * gamma / (32.0 * pi * pi * pi));
}

void AtomicMedium::validate() const {
    if (gamma31 < 0 || gamma32 < 0 || gamma21 < 0 || Gamma < 0)
        throw InvalidParameterError("AtomicMedium: rates must be non-negative");
    if (N <= 0)
        throw InvalidParameterError("AtomicMedium: density must be positive");
    if (temperatureK < 0)
        throw InvalidParameterError("AtomicMedium: temperature must be non-negative");
    if (massAMU <= 0)
        throw InvalidParameterError("AtomicMedium: mass must be positive");
    const double res = omega31 - omega32 - omegaT;
    if (std::abs(res) > 1e-9 * omega31)
        throw InvalidParameterError("AtomicMedium: multiphoton resonance violated: "
                                    "omega31 - omega32 - omegaT = " + std::to_string(res));
}

AtomicMedium AtomicMedium::from_wavelengths(double gamma31, double gamma32, double gamma21,
                                            double Gamma, double lambda31_cm, double lambda32_cm,
                                            double density_cm3, double temperatureK,
                                            double massAMU,
                                            double theta31, double theta32, double theta12) {
    if (lambda31_cm <= 0 || lambda32_cm <= 0)
        throw InvalidParameterError("AtomicMedium: wavelengths must be positive");
    if (lambda32_cm <= lambda31_cm)
        throw InvalidParameterError("AtomicMedium: lambda32 must exceed lambda31 (omegaT > 0)");
    AtomicMedium m;
    m.lambda31 = lambda31_cm;
    m.lambda32 = lambda32_cm;
    m.omega31 = 2.0 * pi * c / lambda31_cm;
    m.omega32 = 2.0 * pi * c / lambda32_cm;
    m.omegaT = m.omega31 - m.omega32;
    m.gamma31 = gamma31;
    m.gamma32 = gamma32;
    m.gamma21 = gamma21;
    m.Gamma = Gamma;
    m.N = density_cm3;
    m.temperatureK = temperatureK;
    m.massAMU = massAMU;
    m.theta31 = theta31;
    m.theta32 = theta32;
    m.theta12 = theta12;
    m.d31 = dipole_from_decay(gamma31, lambda31_cm, DipoleKind::Electric);
    m.d32 = dipole_from_decay(gamma32, lambda32_cm, DipoleKind::Electric);
    m.mu = dipole_from_decay(gamma21, 2.0 * pi * c / m.omegaT, DipoleKind::Magnetic);
    m.vp = std::sqrt(2.0 * constants::kB * temperatureK / (massAMU * constants::amu));
    m.validate();
    return m;
}

AtomicMedium AtomicMedium::from_frequencies(double omega31, double omega32, double omegaT,
                                            double gamma31, double gamma32, double gamma21,
                                            double Gamma, double density_cm3,
                                            double temperatureK, double massAMU,
                                            double theta31, double theta32, double theta12) {
    if (omega31 <= 0 || omega32 <= 0 || omegaT <= 0)
        throw InvalidParameterError("AtomicMedium: frequencies must be positive");
    AtomicMedium m;
    m.omega31 = omega31;
    m.omega32 = omega32;
    m.omegaT = omegaT;
    m.lambda31 = 2.0 * pi * c / omega31;
    m.lambda32 = 2.0 * pi * c / omega32;
    m.gamma31 = gamma31;
    m.gamma32 = gamma32;
    m.gamma21 = gamma21;
    m.Gamma = Gamma;
    m.N = density_cm3;
    m.temperatureK = temperatureK;
    m.massAMU = massAMU;
    m.theta31 = theta31;
    m.theta32 = theta32;
    m.theta12 = theta12;
    m.d31 = dipole_from_decay(gamma31, m.lambda31, DipoleKind::Electric);
    m.d32 = dipole_from_decay(gamma32, m.lambda32, DipoleKind::Electric);
    m.mu = dipole_from_decay(gamma21, 2.0 * pi * c / omegaT, DipoleKind::Magnetic);
    m.vp = std::sqrt(2.0 * constants::kB * temperatureK / (massAMU * constants::amu));
    m.validate();
    return m;
}

double AtomicMedium::k31() const { return omega31 / c; }
double AtomicMedium::k32() const { return omega32 / c; }
double AtomicMedium::kT() const { return omegaT / c; }

double FieldState::Phi() const {
    return std::arg(c31) - std::arg(c32) - std::arg(cT);
}

double FieldState::E31(const AtomicMedium& m) const { return 2.0 * hbar * g31() / m.d31; }
double FieldState::E32(const AtomicMedium& m) const { return 2.0 * hbar * g32() / m.d32; }
double FieldState::H(const AtomicMedium& m) const { return 2.0 * hbar * gT() / m.mu; }

FieldState FieldState::from_rabi(double g31, double g32, double gT, double Phi,
                                 double delta31, double delta32) {
    if (g31 < 0 || g32 < 0 || gT < 0)
        throw InvalidParameterError("FieldState: Rabi frequencies must be non-negative");
    FieldState f;
    f.c31 = {g31, 0.0};
    f.c32 = {g32, 0.0};
    f.cT = std::polar(gT, -Phi);
    f.delta31 = delta31;
    f.delta32 = delta32;
    return f;
}

double intensity_from_rabi(double g, double d) {
    if (g < 0)
        throw InvalidParameterError("intensity_from_rabi: g must be non-negative");
    if (d <= 0) {
        if (g > 0)
            throw InvalidParameterError("intensity_from_rabi: zero dipole with non-zero Rabi");
        return 0.0;
    }
    const double E = 2.0 * hbar * g / d;
    return (c / (8.0 * pi)) * E * E / constants::erg_per_W;
}

double rabi_from_intensity(double intensity_W_cm2, double d) {
    if (intensity_W_cm2 < 0)
        throw InvalidParameterError("rabi_from_intensity: intensity must be non-negative");
    if (d <= 0) {
        if (intensity_W_cm2 > 0)
            throw InvalidParameterError("rabi_from_intensity: zero dipole with non-zero intensity");
        return 0.0;
    }
    const double E = std::sqrt(8.0 * pi * intensity_W_cm2 * constants::erg_per_W / c);
    return d * E / (2.0 * hbar);
}

double efficiency_bound(const AtomicMedium& m) { return m.omegaT / m.omega31; }

double tau_from_z(const AtomicMedium& m, double z_cm) {
    if (z_cm < 0)
        throw InvalidParameterError("tau_from_z: z must be non-negative");
    return 3.0 * pi * c * c / (2.0 * m.omega31 * m.omega31) * m.N * z_cm;
}

double z_from_tau(const AtomicMedium& m, double tau) {
    if (tau < 0)
        throw InvalidParameterError("z_from_tau: tau must be non-negative");
    return tau / (3.0 * pi * c * c / (2.0 * m.omega31 * m.omega31) * m.N);
}

double zeta_from_tau(const AtomicMedium& m, double tau, double totalIntensity_W_cm2) {
    if (totalIntensity_W_cm2 <= 0)
        throw InvalidParameterError("zeta_from_tau: total intensity must be positive");
    if (tau < 0)
        throw InvalidParameterError("zeta_from_tau: tau must be non-negative");
    const double I = totalIntensity_W_cm2 * constants::erg_per_W;
    return tau * (m.mu / m.d31) * std::sqrt(m.omegaT / m.omega31) *
           (hbar * m.gamma31 / m.d31) / std::sqrt(8.0 * pi * I / c);
}

double calibrated_zeta_rate(const AtomicMedium& m, double g31_rabi, double g32_rabi) {
    const double g0sq = g31_rabi * g31_rabi + g32_rabi * g32_rabi;
    if (g0sq <= 0)
        throw InvalidParameterError("calibrated_zeta_rate: g0 must be positive");
    // Photon-flux normalization P0' = sum_m g_m^2 omega_m^2 / gamma_m over the
    // optical fields; u_m = g_m omega_m / sqrt(gamma_m P0'),
    // uT = gT omegaT / sqrt(gamma21 P0'). With the engine rates
    // dgT/dtau = cT g31 g32/g0^2 (cT = (gamma21/gamma31)(omega31/omegaT)^2) the
    // reduced equation duT/dzeta = u1 u2 fixes
    // dzeta/dtau = cT * omegaT * sqrt(gamma31 gamma32 / gamma21) * sqrt(P0')
    //              / (omega31 omega32 g0^2) in gamma31-normalized units.
    const double P0 = g31_rabi * g31_rabi * m.omega31 * m.omega31 / m.gamma31 +
                      g32_rabi * g32_rabi * m.omega32 * m.omega32 / m.gamma32;
    const double cT = (m.gamma21 / m.gamma31) * (m.omega31 / m.omegaT) * (m.omega31 / m.omegaT);
    return cT * m.omegaT * std::sqrt(m.gamma31 * m.gamma32 / m.gamma21) * std::sqrt(P0) /
           (m.omega31 * m.omega32 * g0sq);
}

PumpingThreshold pumping_threshold(const AtomicMedium& m) {
    if (m.gamma31 <= 0)
        throw InvalidParameterError("pumping_threshold: gamma31 must be positive");
    const double kvp = m.k31() * m.vp;
    const double ratio = m.Gamma / m.gamma31;
    PumpingThreshold t;
    t.rabi_sq = ratio * kvp * kvp;
    const double lam3 = m.lambda31 * m.lambda31 * m.lambda31;
    t.intensity_W_cm2 = ratio * (kvp / m.gamma31) * (kvp / m.gamma31) *
                        16.0 * pi * pi * hbar * m.gamma31 * c / (3.0 * lam3) /
                        constants::erg_per_W;
    return t;
}

}  // namespace thzmix
