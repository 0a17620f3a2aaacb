#include "fade/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <boost/math/constants/constants.hpp>

#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "fade/errors.hpp"
#include "fade/fractional_calculus.hpp"

namespace fade {

namespace {

template <class Real>
QuadratureRule<Real> build_gauss_legendre(int n) {
    using std::abs;
    using std::cos;
    QuadratureRule<Real> rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const Real eps = std::numeric_limits<Real>::epsilon();
    const Real pi = boost::math::constants::pi<Real>();
    for (int i = 0; i < (n + 1) / 2; ++i) {
        Real z = cos(pi * (Real(i) + Real(0.75)) / (Real(n) + Real(0.5)));
        Real derivative(0);
        for (int iter = 0; iter < 100; ++iter) {
            Real p0(1), p1(z);
            for (int k = 1; k < n; ++k) {
                const Real p2 = (Real(2 * k + 1) * z * p1 - Real(k) * p0) / Real(k + 1);
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) { p1 = z; p0 = Real(1); }
            derivative = Real(n) * (z * p1 - p0) / (z * z - Real(1));
            const Real step = p1 / derivative;
            z -= step;
            if (abs(step) <= Real(4) * eps) break;
        }
        // Recompute P_n' at the converged node.
        Real p0(1), p1(z);
        for (int k = 1; k < n; ++k) {
            const Real p2 = (Real(2 * k + 1) * z * p1 - Real(k) * p0) / Real(k + 1);
            p0 = p1;
            p1 = p2;
        }
        derivative = n == 1 ? Real(1) : Real(n) * (z * p1 - p0) / (z * z - Real(1));
        const Real w = Real(1) / ((Real(1) - z * z) * derivative * derivative);
        // Map [-1,1] -> [0,1]; the weight halves.
        rule.nodes[i] = (Real(1) - z) / Real(2);
        rule.nodes[n - 1 - i] = (Real(1) + z) / Real(2);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

template <class Real>
const QuadratureRule<Real>& cached_gauss_legendre(int n) {
    if (n < 1) throw DomainError("Gauss-Legendre rule needs at least one node");
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<QuadratureRule<Real>>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<QuadratureRule<Real>>(build_gauss_legendre<Real>(n));
    return *slot;
}

}  // namespace

const QuadratureRule<double>& gauss_legendre_01(int n) { return cached_gauss_legendre<double>(n); }

const QuadratureRule<wide_real>& gauss_legendre_01_wide(int n) {
    return cached_gauss_legendre<wide_real>(n);
}

QuadratureRule<double> gauss_jacobi_01(int n, double a, double b) {
    if (n < 1) throw DomainError("Gauss-Jacobi rule needs at least one node");
    if (!(a > -1.0) || !(b > -1.0)) {
        throw DomainError("Gauss-Jacobi exponents must exceed -1");
    }
    // Jacobi matrix of the monic recurrence for (1-y)^a (1+y)^b on [-1,1].
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
    const double ab = a + b;
    for (int k = 0; k < n; ++k) {
        const double s = 2.0 * k + ab;
        jacobi(k, k) = k == 0 ? (b - a) / (ab + 2.0) : (b * b - a * a) / (s * (s + 2.0));
        if (k + 1 < n) {
            const double m = k + 1.0;
            const double t = 2.0 * m + ab;
            double off2 = 0.0;
            if (k == 0) {
                off2 = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
            } else {
                off2 = 4.0 * m * (m + a) * (m + b) * (m + ab) / (t * t * (t + 1.0) * (t - 1.0));
            }
            jacobi(k, k + 1) = jacobi(k + 1, k) = std::sqrt(off2);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("Gauss-Jacobi eigenvalue problem failed");
    }
    // Total mass of the weight on [0,1]: B(a+1, b+1).
    const double mass = std::exp(std::lgamma(a + 1.0) + std::lgamma(b + 1.0) - std::lgamma(ab + 2.0));
    QuadratureRule<double> rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        const double y = solver.eigenvalues()(i);
        const double v0 = solver.eigenvectors()(0, i);
        rule.nodes[i] = 0.5 * (1.0 + y);
        rule.weights[i] = mass * v0 * v0;
    }
    return rule;
}

}  // namespace fade
