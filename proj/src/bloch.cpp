#include "thzmix/bloch.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>

#include "thzmix/errors.hpp"

namespace thzmix {

namespace {

using CLD = std::complex<long double>;
using Mat3 = Eigen::Matrix<CLD, 3, 3>;

// Master-equation right-hand side for one 3x3 density operator, all rates in
// gamma31 units. Levels: 0 = |1>, 1 = |2>, 2 = |3>.
struct BlochParams {
    CLD C31, C32, CT;
    long double D1, D2;           // delta31 - k31 vz, delta32 - k32 vz
    long double g31u, g32u, g21u; // gamma31, gamma32, gamma21 / gamma31
    long double Gam;              // sigma12 dephasing / gamma31
};

Mat3 master_rhs(const Mat3& rho, const BlochParams& p) {
    Mat3 H = Mat3::Zero();
    H(2, 2) = -p.D1;
    H(1, 1) = -p.D2;
    H(2, 0) = -p.C31;
    H(2, 1) = -p.C32;
    H(1, 0) = -p.CT;
    H(0, 2) = -std::conj(p.C31);
    H(1, 2) = -std::conj(p.C32);
    H(0, 1) = -std::conj(p.CT);

    const CLD i1(0.0L, 1.0L);
    Mat3 out = -i1 * (H * rho - rho * H);

    // gamma31 |1><3|, gamma32 |2><3|, gamma21 |1><2|: population transfer.
    // L rho L^+ - 1/2 {L^+L, rho} with L = sqrt(rate)|a><b|:
    auto decay = [&](int a, int b, long double rate) {
        out(a, a) += rate * rho(b, b);
        for (int j = 0; j < 3; ++j) {
            out(b, j) -= rate * 0.5L * rho(b, j);
            out(j, b) -= rate * 0.5L * rho(j, b);
        }
    };
    decay(0, 2, p.g31u);
    decay(1, 2, p.g32u);
    decay(0, 1, p.g21u);

    // Pure dephasing of sigma12: L = sqrt(Gam/2) diag(1, -1, 0).
    if (p.Gam != 0.0L) {
        const long double G = p.Gam;
        out(0, 1) -= G * rho(0, 1);
        out(1, 0) -= G * rho(1, 0);
        out(0, 2) -= 0.25L * G * rho(0, 2);
        out(2, 0) -= 0.25L * G * rho(2, 0);
        out(1, 2) -= 0.25L * G * rho(1, 2);
        out(2, 1) -= 0.25L * G * rho(2, 1);
    }
    return out;
}

// 9 real coordinates: (rho11, rho22, rho33, Re s31, Im s31, Re s32, Im s32,
// Re s21, Im s21). Hermiticity supplies the lower triangle.
Mat3 from_coords(const std::array<long double, 9>& y) {
    Mat3 r = Mat3::Zero();
    r(0, 0) = y[0];
    r(1, 1) = y[1];
    r(2, 2) = y[2];
    r(2, 0) = CLD(y[3], y[4]);
    r(0, 2) = CLD(y[3], -y[4]);
    r(2, 1) = CLD(y[5], y[6]);
    r(1, 2) = CLD(y[5], -y[6]);
    r(1, 0) = CLD(y[7], y[8]);
    r(0, 1) = CLD(y[7], -y[8]);
    return r;
}

std::array<long double, 9> to_coords(const Mat3& r) {
    return {r(0, 0).real(), r(1, 1).real(), r(2, 2).real(),
            r(2, 0).real(), r(2, 0).imag(),
            r(2, 1).real(), r(2, 1).imag(),
            r(1, 0).real(), r(1, 0).imag()};
}

}  // namespace

BlochGenerator build_generator(const AtomicMedium& m, const FieldState& f, double vz) {
    if (!std::isfinite(vz))
        throw InvalidParameterError("build_generator: vz must be finite");
    if (m.gamma31 <= 0)
        throw InvalidParameterError("build_generator: gamma31 must be positive");

    BlochParams p;
    const double g = m.gamma31;
    const std::complex<double> phase31 = std::polar(1.0, m.theta31);
    const std::complex<double> phase32 = std::polar(1.0, m.theta32);
    const std::complex<double> phase12 = std::polar(1.0, m.theta12);
    const std::complex<double> c31 = f.c31 / g * phase31;
    const std::complex<double> c32 = f.c32 / g * phase32;
    const std::complex<double> cT = f.cT / g * phase12;
    p.C31 = CLD(c31.real(), c31.imag());
    p.C32 = CLD(c32.real(), c32.imag());
    p.CT = CLD(cT.real(), cT.imag());
    p.D1 = static_cast<long double>((f.delta31 - m.k31() * vz) / g);
    p.D2 = static_cast<long double>((f.delta32 - m.k32() * vz) / g);
    p.g31u = 1.0L;
    p.g32u = static_cast<long double>(m.gamma32 / g);
    p.g21u = static_cast<long double>(m.gamma21 / g);
    p.Gam = static_cast<long double>(m.Gamma / g);

    // Column j of the 9x9 real map, then eliminate rho33 = 1 - rho11 - rho22.
    std::array<std::array<long double, 9>, 9> L9{};
    for (int j = 0; j < 9; ++j) {
        std::array<long double, 9> y{};
        y[j] = 1.0L;
        const auto col = to_coords(master_rhs(from_coords(y), p));
        for (int i = 0; i < 9; ++i) L9[i][j] = col[i];
    }

    BlochGenerator gen;
    gen.c31 = c31;
    gen.c32 = c32;
    gen.cT = cT;
    for (int i = 0; i < 9; ++i) {
        gen.b[i] = L9[i][2];  // rho33 = 1 contribution
        for (int j = 0; j < 8; ++j) {
            const int src = (j < 2) ? j : j + 1;
            gen.A[i][j] = L9[i][src];
            if (j < 2) gen.A[i][j] -= L9[i][2];  // rho33 = -rho11 - rho22 part
        }
    }
    return gen;
}

DensityMatrixState solve_steady_state(const BlochGenerator& gen) {
    Eigen::Matrix<long double, 9, 8> A;
    Eigen::Matrix<long double, 9, 1> b;
    for (int i = 0; i < 9; ++i) {
        b(i) = -gen.b[i];
        for (int j = 0; j < 8; ++j) A(i, j) = gen.A[i][j];
    }

    Eigen::JacobiSVD<Eigen::Matrix<long double, 9, 8>> svd(
        A, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const long double smax = sv(0);
    const long double smin = sv(7);
    if (smax <= 0.0L || smin / smax < 1e-17L)
        throw NonUniqueSteadyStateError(
            "solve_steady_state: degenerate drive, steady state is not unique "
            "(singular-value ratio " + std::to_string(static_cast<double>(smin / smax)) + ")");

    const Eigen::Matrix<long double, 8, 1> x = svd.solve(b);

    const long double resid = (A * x - b).norm();
    const long double scale = smax * std::max<long double>(x.norm(), 1.0L);
    if (resid > 1e-11L * scale)
        throw SolverError("solve_steady_state: residual " +
                          std::to_string(static_cast<double>(resid / scale)) +
                          " exceeds tolerance");

    DensityMatrixState st;
    st.rho11 = static_cast<double>(x(0));
    st.rho22 = static_cast<double>(x(1));
    st.rho33 = static_cast<double>(1.0L - x(0) - x(1));
    st.s31 = {static_cast<double>(x(2)), static_cast<double>(x(3))};
    st.s32 = {static_cast<double>(x(4)), static_cast<double>(x(5))};
    st.s21 = {static_cast<double>(x(6)), static_cast<double>(x(7))};

    auto unwind = [](std::complex<double> s, std::complex<double> cpl) {
        if (std::abs(cpl) == 0.0) return s;  // phase reference undefined; identity
        return s * std::polar(1.0, -std::arg(cpl));
    };
    st.sigma31 = unwind(st.s31, gen.c31);
    st.sigma32 = unwind(st.s32, gen.c32);
    st.sigma21 = unwind(st.s21, gen.cT);
    return st;
}

FirstOrderSigma first_order_sigma(double g31, double g32, double gT, double Phi) {
    const double g0sq = g31 * g31 + g32 * g32;
    if (g0sq <= 0.0)
        throw InvalidParameterError("first_order_sigma: g31^2 + g32^2 must be positive");
    const double s = std::sin(Phi), co = std::cos(Phi);
    const double asym = (g32 * g32 - g31 * g31) / (g0sq * g0sq);
    FirstOrderSigma out;
    out.sigma31 = {-gT * g32 * asym * co, gT * g32 / g0sq * s};
    out.sigma32 = {gT * g31 * asym * co, -gT * g31 / g0sq * s};
    out.sigma21 = {-g31 * g32 / g0sq * co, -g31 * g32 / g0sq * s};
    return out;
}

MetastablePopulations first_order_populations(double g31, double g32, double gT,
                                              double Phi, double gamma) {
    const double g0sq = g31 * g31 + g32 * g32;
    if (g0sq <= 0.0)
        throw InvalidParameterError("first_order_populations: g31^2 + g32^2 must be positive");
    const double shift = 2.0 * gT * g31 * g32 * gamma * std::sin(Phi) / (g0sq * g0sq);
    MetastablePopulations p;
    p.rho11 = g32 * g32 / g0sq - shift;
    p.rho22 = g31 * g31 / g0sq + shift;
    return p;
}

}  // namespace thzmix
