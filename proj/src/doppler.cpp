#include "thzmix/doppler.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "thzmix/errors.hpp"

namespace thzmix {

VelocityGrid velocity_grid(double vp, int n) {
    if (n < 1)
        throw InvalidParameterError("velocity_grid: node count must be >= 1");
    if (vp < 0)
        throw InvalidParameterError("velocity_grid: vp must be non-negative");
    VelocityGrid g;
    if (vp == 0.0 || n == 1) {
        g.nodes = {0.0};
        g.weights = {1.0};
        return g;
    }

    // Golub-Welsch for the Hermite weight e^{-t^2}: symmetric tridiagonal
    // Jacobi matrix with off-diagonals sqrt(k/2).
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        const double beta = std::sqrt(0.5 * k);
        J(k, k - 1) = beta;
        J(k - 1, k) = beta;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    std::vector<double> x(n), w(n);
    for (int i = 0; i < n; ++i) {
        x[i] = es.eigenvalues()(i);  // ascending
        const double v0 = es.eigenvectors()(0, i);
        w[i] = v0 * v0;  // relative weights; total mass normalized below
    }
    // Enforce exact symmetry about 0.
    for (int i = 0; i < n / 2; ++i) {
        const int j = n - 1 - i;
        const double xs = 0.5 * (x[j] - x[i]);
        x[i] = -xs;
        x[j] = xs;
        const double ws = 0.5 * (w[i] + w[j]);
        w[i] = ws;
        w[j] = ws;
    }
    if (n % 2 == 1) x[n / 2] = 0.0;
    double sum = 0.0;
    for (double wi : w) sum += wi;

    g.nodes.resize(n);
    g.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        g.nodes[i] = vp * x[i];
        g.weights[i] = w[i] / sum;
    }
    return g;
}

AveragedCoherences averaged_coherences(const AtomicMedium& m, const FieldState& f,
                                       const VelocityGrid& grid) {
    if (grid.nodes.empty() || grid.nodes.size() != grid.weights.size())
        throw InvalidParameterError("averaged_coherences: invalid velocity grid");
    AveragedCoherences out;
    for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
        DensityMatrixState st;
        try {
            st = solve_steady_state(build_generator(m, f, grid.nodes[i]));
        } catch (const std::exception& e) {
            throw SolverError("averaged_coherences: node " + std::to_string(i) +
                              " (vz = " + std::to_string(grid.nodes[i]) + " cm/s): " + e.what());
        }
        const double w = grid.weights[i];
        out.sigma31 += w * st.sigma31;
        out.sigma32 += w * st.sigma32;
        out.sigma21 += w * st.sigma21;
        out.s31 += w * st.s31;
        out.s32 += w * st.s32;
        out.s21 += w * st.s21;
        out.rho11 += w * st.rho11;
        out.rho22 += w * st.rho22;
        out.rho33 += w * st.rho33;
    }
    return out;
}

}  // namespace thzmix
