#include "thzmix/propagation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstring>

#include "thzmix/constants.hpp"
#include "thzmix/errors.hpp"

namespace thzmix {

namespace {

using cplx = std::complex<double>;

// photon flux per unit area (1/cm^2/s) of a field with Rabi frequency g and
// dipole moment d on a transition of frequency omega
double photon_flux(double g_rabi, double d, double omega) {
    const double I_erg = intensity_from_rabi(g_rabi, d) * constants::erg_per_W;
    return I_erg / (constants::hbar * omega);
}

}  // namespace

MotionConstants constants_of_motion(const ReducedState& s) {
    MotionConstants c;
    c.S = s.u1 * s.u1 + s.u2 * s.u2;
    c.B = s.u1 * s.u1 + s.uT * s.uT;
    c.C = s.uT * s.uT - s.u2 * s.u2;
    c.Pi = s.u1 * s.u2 * s.uT * std::cos(s.Phi);
    return c;
}

ReducedDerivatives reduced_rhs(const ReducedState& s) {
    if (s.u1 < 0 || s.u2 < 0 || s.uT < 0)
        throw InvalidParameterError("reduced_rhs: amplitudes must be non-negative");
    ReducedDerivatives d;
    const double sinPhi = std::sin(s.Phi);
    d.du1 = -s.u2 * s.uT * sinPhi;
    d.du2 = s.u1 * s.uT * sinPhi;
    d.duT = s.u1 * s.u2 * sinPhi;
    const double prod = s.u1 * s.u2 * s.uT;
    if (s.u1 < 1e-12 || s.u2 < 1e-12 || s.uT < 1e-12) {
        // At an amplitude zero the complex-envelope flow is regular and the
        // instantaneous phase velocity is finite only through the product
        // representation; the limit of the conserved-Pi law is 0 there.
        d.dPhi = 0.0;
    } else {
        const double u1sq = s.u1 * s.u1, u2sq = s.u2 * s.u2, uTsq = s.uT * s.uT;
        d.dPhi = std::cos(s.Phi) * (u1sq * uTsq + u1sq * u2sq - u2sq * uTsq) / prod;
    }
    return d;
}

PropagationTrajectory propagate_reduced(const ReducedState& initial, double span,
                                        const ReducedOptions& opt) {
    if (span < 0) throw InvalidParameterError("propagate_reduced: span must be >= 0");
    if (opt.nSamples < 2 && span > 0)
        throw InvalidParameterError("propagate_reduced: need at least 2 samples");
    const double S0 = initial.u1 * initial.u1 + initial.u2 * initial.u2;
    if (std::fabs(S0 - 1.0) > 1e-9)
        throw InvalidParameterError("propagate_reduced: u1^2 + u2^2 must equal 1");

    // Complex envelopes: w1 = u1, w2 = u2 on the real axis, the loop phase
    // Phi = arg w1 - arg w2 - arg wT carried by wT.
    std::vector<double> y = {initial.u1, 0.0,
                             initial.u2, 0.0,
                             initial.uT * std::cos(-initial.Phi),
                             initial.uT * std::sin(-initial.Phi)};

    const MotionConstants c0 = constants_of_motion(initial);

    auto unpack = [](const std::vector<double>& v) {
        return std::array<cplx, 3>{cplx(v[0], v[1]), cplx(v[2], v[3]), cplx(v[4], v[5])};
    };
    auto rhs = [&](double, const std::vector<double>& v, std::vector<double>& dv) {
        const auto w = unpack(v);
        const cplx d1 = cplx(0, -1) * w[1] * w[2];
        const cplx d2 = cplx(0, -1) * w[0] * std::conj(w[2]);
        const cplx dT = cplx(0, -1) * w[0] * std::conj(w[1]);
        dv = {d1.real(), d1.imag(), d2.real(), d2.imag(), dT.real(), dT.imag()};
    };
    auto state_of = [&](const std::vector<double>& v, double zeta) {
        const auto w = unpack(v);
        ReducedState s;
        s.u1 = std::abs(w[0]);
        s.u2 = std::abs(w[1]);
        s.uT = std::abs(w[2]);
        s.Phi = std::arg(w[0]) - std::arg(w[1]) - std::arg(w[2]);
        s.zeta = zeta;
        return s;
    };
    auto monitor = [&](double t, const std::vector<double>& v) {
        const MotionConstants c = constants_of_motion(state_of(v, t));
        const double drift = std::max({std::fabs(c.S - c0.S), std::fabs(c.B - c0.B),
                                       std::fabs(c.C - c0.C), std::fabs(c.Pi - c0.Pi)});
        return drift <= opt.invariantBudget;
    };

    PropagationTrajectory traj;
    traj.mode = "reduced";
    traj.rtol = opt.rtol;

    Rk45Options ro;
    ro.rtol = opt.rtol;
    ro.atol = opt.atol;

    auto push_sample = [&](double zeta) {
        const ReducedState s = state_of(y, zeta);
        const MotionConstants c = constants_of_motion(s);
        TrajectorySample smp;
        smp.zeta = zeta;
        smp.u1sq = s.u1 * s.u1;
        smp.u2sq = s.u2 * s.u2;
        smp.uTsq = s.uT * s.uT;
        smp.Phi = s.Phi;
        smp.inv_S = c.S - c0.S;
        smp.inv_B = c.B - c0.B;
        smp.inv_C = c.C - c0.C;
        smp.inv_Pi = c.Pi - c0.Pi;
        traj.samples.push_back(smp);
    };

    push_sample(initial.zeta);
    if (span == 0) return traj;

    const std::size_t n = opt.nSamples;
    for (std::size_t i = 1; i < n; ++i) {
        const double z0 = initial.zeta + span * double(i - 1) / double(n - 1);
        const double z1 = initial.zeta + span * double(i) / double(n - 1);
        const Rk45Stats st = integrate_rk45(rhs, z0, z1, y, ro, monitor);
        traj.stats.n_accepted += st.n_accepted;
        traj.stats.n_rejected += st.n_rejected;
        traj.stats.n_rhs_evals += st.n_rhs_evals;
        push_sample(z1);
    }
    return traj;
}

MaxwellDerivatives maxwell_rhs(const FieldState& f, const AveragedCoherences& sigma,
                               const AtomicMedium& m) {
    // Literal slowly-varying-envelope equations: for each transition,
    //   dE/dz = -K * Im(sigma~), E * dphi/dz = -K * Re(sigma~),
    // combined into the complex envelope a = E e^{i phi}:
    //   da/dz = -i K conj(sigma~) e^{i phi}.
    const double K31 = 4.0 * M_PI * m.N * m.d31 * m.omega31 / constants::c;
    const double K32 = 4.0 * M_PI * m.N * m.d32 * m.omega32 / constants::c;
    const double KT = 4.0 * M_PI * m.N * m.mu * m.omegaT / constants::c;
    const cplx mi(0.0, -1.0);
    auto env_phase = [](const cplx& coupling, double theta) {
        if (std::abs(coupling) == 0.0) return cplx(1.0, 0.0);
        return std::polar(1.0, std::arg(coupling) - theta);
    };
    MaxwellDerivatives d;
    d.da31_dz = mi * K31 * std::conj(sigma.sigma31) * env_phase(f.c31, m.theta31);
    d.da32_dz = mi * K32 * std::conj(sigma.sigma32) * env_phase(f.c32, m.theta32);
    d.daT_dz = mi * KT * std::conj(sigma.sigma21) * env_phase(f.cT, m.theta12);
    return d;
}

PropagationTrajectory propagate_full(const AtomicMedium& m, const FieldState& initial,
                                     double tauSpan, const FullOptions& opt) {
    if (tauSpan < 0) throw InvalidParameterError("propagate_full: tau span must be >= 0");
    if (opt.velocityNodes < 1)
        throw InvalidParameterError("propagate_full: velocityNodes must be >= 1");

    const VelocityGrid grid = velocity_grid(m.vp, opt.velocityNodes);

    // State: complex couplings in units of gamma31; spatial variable tau.
    // dG31/dtau = +i*s31, dG32/dtau = +i*c32*s32, dGT/dtau = +i*cT*s21 with
    // c32 = (gamma32/gamma31)(omega31/omega32)^2, cT = (gamma21/gamma31)(omega31/omegaT)^2,
    // the photon-count-conserving weights of the tau normalization.
    const double c32 = (m.gamma32 / m.gamma31) * (m.omega31 / m.omega32) * (m.omega31 / m.omega32);
    const double cT = (m.gamma21 / m.gamma31) * (m.omega31 / m.omegaT) * (m.omega31 / m.omegaT);

    std::vector<double> y = {initial.c31.real() / m.gamma31, initial.c31.imag() / m.gamma31,
                             initial.c32.real() / m.gamma31, initial.c32.imag() / m.gamma31,
                             initial.cT.real() / m.gamma31, initial.cT.imag() / m.gamma31};

    PropagationTrajectory traj;
    traj.mode = "full";
    traj.rtol = opt.rtol;
    traj.velocityNodes = opt.velocityNodes;

    auto field_of = [&](const std::vector<double>& v) {
        FieldState f;
        f.c31 = cplx(v[0], v[1]) * m.gamma31;
        f.c32 = cplx(v[2], v[3]) * m.gamma31;
        f.cT = cplx(v[4], v[5]) * m.gamma31;
        f.delta31 = initial.delta31;
        f.delta32 = initial.delta32;
        return f;
    };

    // Exact-state memo of the Doppler-averaged steady state: the embedded
    // pair re-evaluates the FSAL stage and sampling revisits accepted states.
    struct MemoEntry {
        std::array<double, 6> key;
        AveragedCoherences value;
        bool valid = false;
    };
    std::array<MemoEntry, 8> memo{};
    std::size_t memoNext = 0;

    auto polarization = [&](const std::vector<double>& v) -> AveragedCoherences {
        std::array<double, 6> key;
        std::copy(v.begin(), v.end(), key.begin());
        if (opt.cachePolarization) {
            for (const MemoEntry& e : memo)
                if (e.valid && e.key == key) {
                    ++traj.polarizationCacheHits;
                    return e.value;
                }
        }
        const AveragedCoherences s = averaged_coherences(m, field_of(v), grid);
        ++traj.polarizationEvals;
        if (opt.cachePolarization) {
            memo[memoNext] = {key, s, true};
            memoNext = (memoNext + 1) % memo.size();
        }
        return s;
    };

    auto rhs = [&](double, const std::vector<double>& v, std::vector<double>& dv) {
        const AveragedCoherences s = polarization(v);
        const cplx i1(0.0, 1.0);
        const cplx d31 = i1 * s.s31;
        const cplx d32 = i1 * c32 * s.s32;
        const cplx dT = i1 * cT * s.s21;
        dv = {d31.real(), d31.imag(), d32.real(), d32.imag(), dT.real(), dT.imag()};
    };

    // Input photon-flux normalization: u_m^2 = F_m / (F31(0) + F32(0)).
    const double F31_0 = photon_flux(initial.g31(), m.d31, m.omega31);
    const double F32_0 = photon_flux(initial.g32(), m.d32, m.omega32);
    const double F0 = F31_0 + F32_0;
    if (F0 <= 0.0)
        throw InvalidParameterError("propagate_full: at least one optical input must be nonzero");
    const double Iin_W = intensity_from_rabi(initial.g31(), m.d31) +
                         intensity_from_rabi(initial.g32(), m.d32);

    auto fractions = [&](const FieldState& f) {
        return std::array<double, 3>{photon_flux(f.g31(), m.d31, m.omega31) / F0,
                                     photon_flux(f.g32(), m.d32, m.omega32) / F0,
                                     photon_flux(f.gT(), m.mu, m.omegaT) / F0};
    };
    const auto u0 = fractions(initial);
    const double S0 = u0[0] + u0[1];
    const double B0 = u0[0] + u0[2];
    const double C0 = u0[2] - u0[1];
    const double Pi0 = std::sqrt(std::max(0.0, u0[0] * u0[1] * u0[2])) * std::cos(initial.Phi());

    auto monitor = [&](double, const std::vector<double>& v) {
        // Reject steps with an unphysical jump in the optical photon count;
        // its true evolution is slow (loss of order rho33 per unit tau).
        const auto u = fractions(field_of(v));
        return u[0] + u[1] <= S0 + opt.totalLossBudget &&
               u[0] + u[1] >= -opt.totalLossBudget;
    };

    auto push_sample = [&](double tau) {
        const FieldState f = field_of(y);
        const AveragedCoherences s = polarization(y);
        const auto u = fractions(f);
        TrajectorySample smp;
        smp.tau = tau;
        smp.z_cm = z_from_tau(m, tau);
        smp.zeta = zeta_from_tau(m, tau, Iin_W);
        smp.I31 = intensity_from_rabi(f.g31(), m.d31);
        smp.I32 = intensity_from_rabi(f.g32(), m.d32);
        smp.IT = intensity_from_rabi(f.gT(), m.mu);
        smp.u1sq = u[0];
        smp.u2sq = u[1];
        smp.uTsq = u[2];
        smp.Phi = f.Phi();
        smp.rho33 = s.rho33;
        const double Pi = std::sqrt(std::max(0.0, u[0] * u[1] * u[2])) * std::cos(f.Phi());
        smp.inv_S = u[0] + u[1] - S0;
        smp.inv_B = u[0] + u[2] - B0;
        smp.inv_C = u[2] - u[1] - C0;
        smp.inv_Pi = Pi - Pi0;
        traj.samples.push_back(smp);
    };

    Rk45Options ro;
    ro.rtol = opt.rtol;
    ro.atol = opt.atol;

    push_sample(0.0);
    if (tauSpan == 0) return traj;
    if (opt.nSamples < 2)
        throw InvalidParameterError("propagate_full: need at least 2 samples");

    const std::size_t n = opt.nSamples;
    for (std::size_t i = 1; i < n; ++i) {
        const double t0 = tauSpan * double(i - 1) / double(n - 1);
        const double t1 = tauSpan * double(i) / double(n - 1);
        try {
            const Rk45Stats st = integrate_rk45(rhs, t0, t1, y, ro, monitor);
            traj.stats.n_accepted += st.n_accepted;
            traj.stats.n_rejected += st.n_rejected;
            traj.stats.n_rhs_evals += st.n_rhs_evals;
        } catch (const SolverError& e) {
            throw SolverError(std::string(e.what()) + " (full path, tau in [" +
                              std::to_string(t0) + ", " + std::to_string(t1) + "])");
        }
        push_sample(t1);
    }
    return traj;
}

ManleyRoweResiduals manley_rowe_residuals(const PropagationTrajectory& t) {
    if (t.samples.size() < 2)
        throw InvalidParameterError("manley_rowe_residuals: need at least 2 samples");
    ManleyRoweResiduals r;
    const std::size_t n = t.samples.size();
    r.d_sum_optical.reserve(n - 1);
    r.d_31_T.reserve(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const TrajectorySample& a = t.samples[i];
        const TrajectorySample& b = t.samples[i + 1];
        double dx = b.zeta - a.zeta;
        if (dx == 0.0) dx = 1.0;  // constant trajectory: report raw differences
        r.d_sum_optical.push_back(((b.u1sq + b.u2sq) - (a.u1sq + a.u2sq)) / dx);
        r.d_31_T.push_back(((b.u1sq + b.uTsq) - (a.u1sq + a.uTsq)) / dx);
    }
    return r;
}

void attach_physical_units(PropagationTrajectory& t, const AtomicMedium& m,
                           const FieldState& initial) {
    const double F31_0 = photon_flux(initial.g31(), m.d31, m.omega31);
    const double F32_0 = photon_flux(initial.g32(), m.d32, m.omega32);
    const double F0 = F31_0 + F32_0;
    if (F0 <= 0.0)
        throw InvalidParameterError("attach_physical_units: zero input flux");
    const double rate = calibrated_zeta_rate(m, initial.g31(), initial.g32());
    const double toW = constants::hbar / constants::erg_per_W;
    for (TrajectorySample& s : t.samples) {
        s.I31 = s.u1sq * F0 * m.omega31 * toW;
        s.I32 = s.u2sq * F0 * m.omega32 * toW;
        s.IT = s.uTsq * F0 * m.omegaT * toW;
        s.tau = (rate > 0.0) ? s.zeta / rate : 0.0;
        s.z_cm = z_from_tau(m, s.tau);
    }
}

}  // namespace thzmix
