#pragma once

// Legendre scaling functions phi_i(x) = sqrt(2i+1) P_i(2x-1) on [0,1]:
// an orthonormal basis of L^2[0,1]. Each phi_i is stored both as its
// recurrence (for evaluation) and as an exact monomial expansion
//   phi_i(x) = sqrt(2i+1) * sum_k (-1)^{i+k} (i+k)! / ((i-k)! (k!)^2) x^k
// (for the Caputo monomial rules).

#include <Eigen/Core>

#include <cmath>
#include <functional>
#include <vector>

#include "fade/fractional_calculus.hpp"
#include "fade/wide.hpp"

namespace fade {

/// Largest supported basis index n (functions phi_0 ... phi_n).
inline constexpr int kMaxBasisIndex = 32;

/// Legendre-scaling coefficients c_0..c_n of a function on [0,1].
class CoefficientVector {
public:
    CoefficientVector() = default;
    explicit CoefficientVector(Eigen::VectorXd values);

    static CoefficientVector zero(int n) { return CoefficientVector(Eigen::VectorXd::Zero(n + 1)); }
    static CoefficientVector unit(int n, int i);

    /// Basis index n; the vector holds n + 1 values.
    int n() const { return static_cast<int>(values_.size()) - 1; }
    int size() const { return static_cast<int>(values_.size()); }
    double operator[](int i) const { return values_(i); }
    const Eigen::VectorXd& values() const { return values_; }

private:
    Eigen::VectorXd values_;
};

class BasisSet {
public:
    /// Builds phi_0..phi_n; throws DomainError unless 0 <= n <= kMaxBasisIndex.
    explicit BasisSet(int n);

    int n() const { return n_; }
    int size() const { return n_ + 1; }

    /// Signed integers (-1)^{i+k} (i+k)!/((i-k)!(k!)^2), k = 0..i, held exactly.
    const std::vector<wide_real>& integer_coefficients(int i) const;

    /// Monomial coefficients of phi_i rounded to double.
    std::vector<double> monomial_coefficients(int i) const;

    GeneralizedPolynomial polynomial(int i) const;
    BasicGeneralizedPolynomial<wide_real> wide_polynomial(int i) const;

    /// phi_i(x) by the three-term recurrence for P_i(2x-1).
    double evaluate(int i, double x) const;

    /// phi_i(x) by summing the monomial expansion in extended precision.
    double evaluate_monomial(int i, double x) const;

    /// (phi_0(x), ..., phi_n(x)).
    Eigen::VectorXd evaluate_all(double x) const;

private:
    void check_index(int i) const;

    int n_;
    std::vector<std::vector<wide_real>> integer_coefficients_;
};

BasisSet build_basis(int n);

double evaluate_basis(const BasisSet& basis, int i, double x);

/// Values phi_0(x)..phi_n(x) by recurrence, for any floating type.
template <class Real>
std::vector<Real> legendre_scaling_values(int n, const Real& x) {
    using std::sqrt;
    std::vector<Real> out(n + 1);
    const Real y = Real(2) * x - Real(1);
    Real p0(1), p1(y);
    out[0] = Real(1);
    if (n >= 1) out[1] = sqrt(Real(3)) * y;
    for (int k = 1; k < n; ++k) {
        const Real p2 = (Real(2 * k + 1) * y * p1 - Real(k) * p0) / Real(k + 1);
        p0 = p1;
        p1 = p2;
        out[k + 1] = sqrt(Real(2 * k + 3)) * p2;
    }
    return out;
}

/// Moments integral_0^1 x^mu phi_j(x) dx for j = 0..n and mu > -1, from the
/// cancellation-free product form
///   integral_0^1 x^mu P_j(2x-1) dx = prod_{m<j}(mu-m) / prod_{m=1}^{j+1}(mu+m).
template <class Real>
std::vector<Real> legendre_moments(const Real& mu, int n) {
    using std::sqrt;
    std::vector<Real> out(n + 1);
    Real shifted = Real(1) / (mu + Real(1));
    for (int j = 0; j <= n; ++j) {
        out[j] = sqrt(Real(2 * j + 1)) * shifted;
        shifted *= (mu - Real(j)) / (mu + Real(j + 2));
    }
    return out;
}

/// c_i = <f, phi_i> by 64-point Gauss-Legendre, cross-checked against 128
/// points; throws NumericalError if the two disagree by more than 1e-10.
CoefficientVector project(const std::function<double(double)>& f, int n);

/// Exact projection of a generalized polynomial in x.
CoefficientVector project(const GeneralizedPolynomial& f, int n);

/// u(x) = sum_i c_i phi_i(x).
double synthesize(const CoefficientVector& c, double x);

}  // namespace fade
