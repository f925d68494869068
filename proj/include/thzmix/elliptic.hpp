#pragma once

namespace thzmix {

// Complete elliptic integral of the first kind via the arithmetic-geometric
// mean; relative error < 1e-14. Domain 0 <= k < 1 (K(1) diverges).
double complete_K(double k);

// Jacobi elliptic functions by descending Landen transformation.
// Domain 0 <= k <= 1 (k = 1 degenerates to tanh/sech). Absolute error < 1e-12.
struct JacobiSncndn {
    double sn, cn, dn;
};
JacobiSncndn jacobi_sncndn(double x, double k);
double jacobi_sn(double x, double k);
double jacobi_cd(double x, double k);  // cd = cn/dn; sn(x + K) = cd(x)

// Closed-form generation-branch solution (uT(0) = 0, cosPhi = 0):
//   u1^2 = u10^2 sn^2(zeta + K; u10), u2^2 = 1 - u1^2, uT^2 = u10^2 - u1^2.
struct AnalyticPoint {
    double u1sq, u2sq, uTsq;
};
AnalyticPoint analytic_solution(double zeta, double u10);

// Maximum-conversion length zeta_max = K(u10) and its logarithmic
// approximation (1/2) ln(16/u20^2), u20^2 = 1 - u10^2.
double zeta_max(double u10);
double K_log_approx(double u20sq);

// THz intensity of the closed-form solution in input-intensity units:
// I_T(zeta) = I31(0) * (omegaT/omega31) * (1 - cd^2[zeta; u10]).
class AtomicMedium;
double thz_intensity_analytic(double zeta, double I31_in, const AtomicMedium& m, double u10);

}  // namespace thzmix
