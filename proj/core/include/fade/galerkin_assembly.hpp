#pragma once

// Galerkin reduction of
//   D_t^alpha u = -nu D_x^beta u + k D_x^gamma u + f(x,t)
// onto phi_0..phi_n. The fractional derivative matrices are
//   a_ij = <D^beta phi_i, phi_j>,  b_ij = <D^gamma phi_i, phi_j>,
// and matching coefficients of phi_j gives c_j^alpha = sum_i (k b_ij - nu a_ij) c_i + r_j,
// so the matrix acting on c is M = (k b - nu a)^T.

#include <Eigen/Core>

#include <functional>
#include <vector>

#include "fade/expression.hpp"
#include "fade/fractional_calculus.hpp"
#include "fade/legendre_basis.hpp"

namespace fade {

/// <D^order phi_i, phi_j> for i, j <= n, order in (0,2]. Evaluated in closed
/// form (Caputo monomial rule, then exact moments of phi_j) in extended
/// precision. Rows i < ceil(order) are exactly zero.
Eigen::MatrixXd fractional_galerkin_matrix(const BasisSet& basis, double order);

/// Advection matrix a, beta in (0,1].
Eigen::MatrixXd derivative_matrix(const BasisSet& basis, double beta);

/// Dispersion matrix b, gamma in (0,2].
Eigen::MatrixXd dispersion_matrix(const BasisSet& basis, double gamma);

/// M = (k b - nu a)^T.
Eigen::MatrixXd system_matrix(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double nu, double k);

/// Projected source r(t) = (<f(., t), phi_j>)_j.
class SourceCoefficients {
public:
    /// r = 0.
    explicit SourceCoefficients(int n);

    /// Analytic path: each r_j is a generalized polynomial in t.
    explicit SourceCoefficients(std::vector<GeneralizedPolynomial> components);

    /// Numeric path: r(t) evaluated by quadrature on demand.
    SourceCoefficients(int n, std::function<Eigen::VectorXd(double)> numeric);

    int n() const { return n_; }
    bool is_zero() const { return zero_; }
    bool is_analytic() const { return !numeric_; }

    /// Components r_j(t); empty unless is_analytic().
    const std::vector<GeneralizedPolynomial>& components() const { return components_; }

    Eigen::VectorXd operator()(double t) const;

private:
    int n_;
    bool zero_ = true;
    std::vector<GeneralizedPolynomial> components_;
    std::function<Eigen::VectorXd(double)> numeric_;
};

/// Projects f(x,t) onto the basis. Monomial sums c x^p t^q are projected
/// exactly; anything else falls back to per-t quadrature.
SourceCoefficients source_coefficients(const Expression& f, const BasisSet& basis);

struct FractionalOrders {
    double alpha = 1.0;
    double beta = 1.0;
    double gamma = 2.0;
};

struct GalerkinSystem {
    int n = 0;
    FractionalOrders orders;
    double nu = 0.0;
    double k = 0.0;
    Eigen::MatrixXd advection;   // a
    Eigen::MatrixXd dispersion;  // b
    Eigen::MatrixXd matrix;      // M
    SourceCoefficients source{0};
    /// Set when the source could not be classified and uses quadrature.
    bool numeric_source = false;
};

/// Builds the full system; validates alpha in (0,1], beta in (0,1], gamma in (0,2].
GalerkinSystem assemble(const BasisSet& basis, FractionalOrders orders, double nu, double k,
                        const Expression& source);

}  // namespace fade
