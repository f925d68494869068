#include "thzmix/elliptic.hpp"

#include <cmath>
#include <vector>

#include "thzmix/errors.hpp"
#include "thzmix/medium.hpp"

namespace thzmix {

double complete_K(double k) {
    if (!(k >= 0.0 && k < 1.0))
        throw DomainError("complete_K: modulus must satisfy 0 <= k < 1");
    double a = 1.0;
    double b = std::sqrt(1.0 - k * k);
    while (std::fabs(a - b) > 1e-16 * a) {
        const double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    return M_PI / (a + b);  // a ~ b at convergence; average once more
}

JacobiSncndn jacobi_sncndn(double x, double k) {
    if (!(k >= 0.0 && k <= 1.0))
        throw DomainError("jacobi_sncndn: modulus must satisfy 0 <= k <= 1");
    if (k < 1e-12) return {std::sin(x), std::cos(x), 1.0};
    if (1.0 - k < 1e-12) {
        const double s = std::tanh(x);
        const double c = 1.0 / std::cosh(x);
        return {s, c, c};
    }
    // Descending Landen: record moduli until k_n is negligible, then unwind.
    std::vector<double> a_seq, c_seq;
    double a = 1.0, b = std::sqrt(1.0 - k * k), c = k;
    a_seq.push_back(a);
    c_seq.push_back(c);
    while (std::fabs(c) > 1e-16 * a) {
        const double an = 0.5 * (a + b);
        const double cn_ = 0.5 * (a - b);
        b = std::sqrt(a * b);
        a = an;
        c = cn_;
        a_seq.push_back(a);
        c_seq.push_back(c);
    }
    const int n = static_cast<int>(a_seq.size()) - 1;
    double phi = std::ldexp(1.0, n) * a_seq[n] * x;
    for (int i = n; i > 0; --i)
        phi = 0.5 * (phi + std::asin(c_seq[i] / a_seq[i] * std::sin(phi)));
    const double sn = std::sin(phi);
    const double cn = std::cos(phi);
    const double dn = std::sqrt(1.0 - k * k * sn * sn);
    return {sn, cn, dn};
}

double jacobi_sn(double x, double k) { return jacobi_sncndn(x, k).sn; }

double jacobi_cd(double x, double k) {
    const JacobiSncndn j = jacobi_sncndn(x, k);
    return j.cn / j.dn;
}

AnalyticPoint analytic_solution(double zeta, double u10) {
    if (!(u10 > 0.0 && u10 < 1.0))
        throw DomainError("analytic_solution: u10 must lie in (0, 1)");
    const double cd = jacobi_cd(zeta, u10);  // sn(zeta + K) = cd(zeta)
    const double u1sq = u10 * u10 * cd * cd;
    return {u1sq, 1.0 - u1sq, u10 * u10 - u1sq};
}

double zeta_max(double u10) {
    if (!(u10 > 0.0 && u10 < 1.0))
        throw DomainError("zeta_max: u10 must lie in (0, 1)");
    return complete_K(u10);
}

double K_log_approx(double u20sq) {
    if (!(u20sq > 0.0 && u20sq < 1.0))
        throw DomainError("K_log_approx: u20^2 must lie in (0, 1)");
    return 0.5 * std::log(16.0 / u20sq);
}

double thz_intensity_analytic(double zeta, double I31_in, const AtomicMedium& m, double u10) {
    if (!(I31_in > 0.0)) throw InvalidParameterError("thz_intensity_analytic: I31_in must be positive");
    const AnalyticPoint p = analytic_solution(zeta, u10);
    // uT^2 is the THz photon-flux fraction of the injected optical flux;
    // with u2(0)^2 = 1 - u10^2 the flux scale is I31(0)/(u10^2 * hbar*omega31).
    return I31_in * (m.omegaT / m.omega31) * p.uTsq / (u10 * u10);
}

}  // namespace thzmix
