#include "fade/galerkin_assembly.hpp"

#include <cmath>
#include <map>
#include <string>

#include "fade/errors.hpp"
#include "fade/wide.hpp"

namespace fade {

namespace {

void check_order(double order, double upper, const char* name) {
    if (!(order > 0.0 && order <= upper)) {
        throw DomainError(std::string(name) + " = " + std::to_string(order) + " outside (0, " +
                          std::to_string(upper) + "]");
    }
}

}  // namespace

Eigen::MatrixXd fractional_galerkin_matrix(const BasisSet& basis, double order) {
    check_order(order, 2.0, "derivative order");
    const int n = basis.n();
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n + 1, n + 1);
    for (int i = 0; i <= n; ++i) {
        const auto derivative = caputo_derivative(basis.wide_polynomial(i), order);
        std::vector<wide_real> row(n + 1, wide_real(0));
        for (const auto& term : derivative.terms()) {
            const auto moments = legendre_moments<wide_real>(term.exponent, n);
            for (int j = 0; j <= n; ++j) row[j] += term.coefficient * moments[j];
        }
        for (int j = 0; j <= n; ++j) out(i, j) = static_cast<double>(row[j]);
    }
    return out;
}

Eigen::MatrixXd derivative_matrix(const BasisSet& basis, double beta) {
    check_order(beta, 1.0, "beta");
    return fractional_galerkin_matrix(basis, beta);
}

Eigen::MatrixXd dispersion_matrix(const BasisSet& basis, double gamma) {
    check_order(gamma, 2.0, "gamma");
    return fractional_galerkin_matrix(basis, gamma);
}

Eigen::MatrixXd system_matrix(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double nu, double k) {
    if (a.rows() != a.cols() || a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DomainError("system_matrix: a and b must be square and of equal size");
    }
    return (k * b - nu * a).transpose();
}

SourceCoefficients::SourceCoefficients(int n) : n_(n) {}

SourceCoefficients::SourceCoefficients(std::vector<GeneralizedPolynomial> components)
    : n_(static_cast<int>(components.size()) - 1), components_(std::move(components)) {
    for (const auto& r : components_) {
        if (!r.is_zero()) zero_ = false;
    }
}

SourceCoefficients::SourceCoefficients(int n, std::function<Eigen::VectorXd(double)> numeric)
    : n_(n), zero_(false), numeric_(std::move(numeric)) {}

Eigen::VectorXd SourceCoefficients::operator()(double t) const {
    if (numeric_) return numeric_(t);
    Eigen::VectorXd out = Eigen::VectorXd::Zero(n_ + 1);
    for (int j = 0; j < static_cast<int>(components_.size()); ++j) out(j) = components_[j](t);
    return out;
}

SourceCoefficients source_coefficients(const Expression& f, const BasisSet& basis) {
    const int n = basis.n();
    const Classification cls = classify(f);
    if (cls.is_monomial_sum()) {
        if (cls.terms.empty()) return SourceCoefficients(n);
        // r_j(t) = sum over terms c t^q <x^p, phi_j>
        std::vector<std::vector<Term>> per_component(n + 1);
        for (const auto& m : cls.terms) {
            const auto moments = legendre_moments<double>(m.x_power, n);
            for (int j = 0; j <= n; ++j) {
                per_component[j].push_back({m.coefficient * moments[j], m.t_power});
            }
        }
        std::vector<GeneralizedPolynomial> components;
        components.reserve(n + 1);
        for (auto& terms : per_component) components.emplace_back(std::move(terms), Variable::t);
        return SourceCoefficients(std::move(components));
    }
    auto numeric = [f, n](double t) {
        return project([&](double x) { return eval(f, x, t); }, n).values();
    };
    return SourceCoefficients(n, std::move(numeric));
}

GalerkinSystem assemble(const BasisSet& basis, FractionalOrders orders, double nu, double k,
                        const Expression& source) {
    check_order(orders.alpha, 1.0, "alpha");
    check_order(orders.beta, 1.0, "beta");
    check_order(orders.gamma, 2.0, "gamma");
    if (!std::isfinite(nu) || !std::isfinite(k)) throw DomainError("nu and k must be finite");
    GalerkinSystem sys;
    sys.n = basis.n();
    sys.orders = orders;
    sys.nu = nu;
    sys.k = k;
    sys.advection = derivative_matrix(basis, orders.beta);
    sys.dispersion = dispersion_matrix(basis, orders.gamma);
    sys.matrix = system_matrix(sys.advection, sys.dispersion, nu, k);
    sys.source = source_coefficients(source, basis);
    sys.numeric_source = !sys.source.is_analytic();
    return sys;
}

}  // namespace fade
