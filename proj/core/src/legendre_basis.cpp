#include "fade/legendre_basis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fade/errors.hpp"
#include "fade/quadrature.hpp"

namespace fade {

namespace {

void check_unit_interval(double x) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw DomainError("point " + std::to_string(x) + " lies outside [0,1]");
    }
}

// C(n, k) built multiplicatively; every intermediate is an integer below 2^113.
wide_real binomial(int n, int k) {
    wide_real c(1);
    for (int j = 1; j <= k; ++j) c = c * (n - k + j) / j;
    return c;
}

}  // namespace

CoefficientVector::CoefficientVector(Eigen::VectorXd values) : values_(std::move(values)) {
    if (values_.size() == 0) throw DomainError("coefficient vector must hold at least one value");
    if (!values_.allFinite()) throw NumericalError("coefficient vector has non-finite entries");
}

CoefficientVector CoefficientVector::unit(int n, int i) {
    if (i < 0 || i > n) throw DomainError("unit vector index out of range");
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n + 1);
    v(i) = 1.0;
    return CoefficientVector(std::move(v));
}

BasisSet::BasisSet(int n) : n_(n) {
    if (n < 0 || n > kMaxBasisIndex) {
        throw DomainError("basis index n = " + std::to_string(n) + " outside supported range [0, " +
                          std::to_string(kMaxBasisIndex) + "]");
    }
    integer_coefficients_.resize(n + 1);
    for (int i = 0; i <= n; ++i) {
        auto& coeffs = integer_coefficients_[i];
        coeffs.resize(i + 1);
        for (int k = 0; k <= i; ++k) {
            // (i+k)! / ((i-k)! (k!)^2) = C(i+k, k) * C(i, k)
            const wide_real magnitude = binomial(i + k, k) * binomial(i, k);
            coeffs[k] = ((i + k) % 2 == 0) ? magnitude : wide_real(-magnitude);
        }
    }
}

void BasisSet::check_index(int i) const {
    if (i < 0 || i > n_) {
        throw DomainError("basis function index " + std::to_string(i) + " outside [0, " +
                          std::to_string(n_) + "]");
    }
}

const std::vector<wide_real>& BasisSet::integer_coefficients(int i) const {
    check_index(i);
    return integer_coefficients_[i];
}

std::vector<double> BasisSet::monomial_coefficients(int i) const {
    check_index(i);
    const wide_real scale = sqrt(wide_real(2 * i + 1));
    std::vector<double> out;
    out.reserve(i + 1);
    for (const auto& c : integer_coefficients_[i]) out.push_back(static_cast<double>(scale * c));
    return out;
}

GeneralizedPolynomial BasisSet::polynomial(int i) const {
    const auto coeffs = monomial_coefficients(i);
    std::vector<Term> terms;
    terms.reserve(coeffs.size());
    for (std::size_t k = 0; k < coeffs.size(); ++k) terms.push_back({coeffs[k], static_cast<double>(k)});
    return GeneralizedPolynomial(std::move(terms), Variable::x);
}

BasicGeneralizedPolynomial<wide_real> BasisSet::wide_polynomial(int i) const {
    check_index(i);
    const wide_real scale = sqrt(wide_real(2 * i + 1));
    std::vector<BasicTerm<wide_real>> terms;
    terms.reserve(i + 1);
    for (int k = 0; k <= i; ++k) {
        terms.push_back({scale * integer_coefficients_[i][k], static_cast<double>(k)});
    }
    return BasicGeneralizedPolynomial<wide_real>(std::move(terms), Variable::x);
}

double BasisSet::evaluate(int i, double x) const {
    check_index(i);
    check_unit_interval(x);
    return legendre_scaling_values(i, x)[i];
}

double BasisSet::evaluate_monomial(int i, double x) const {
    check_index(i);
    check_unit_interval(x);
    const wide_real xw(x);
    wide_real sum(0);
    const auto& coeffs = integer_coefficients_[i];
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) sum = sum * xw + *it;
    return static_cast<double>(sqrt(wide_real(2 * i + 1)) * sum);
}

Eigen::VectorXd BasisSet::evaluate_all(double x) const {
    check_unit_interval(x);
    const auto values = legendre_scaling_values(n_, x);
    return Eigen::Map<const Eigen::VectorXd>(values.data(), n_ + 1);
}

BasisSet build_basis(int n) { return BasisSet(n); }

double evaluate_basis(const BasisSet& basis, int i, double x) { return basis.evaluate(i, x); }

namespace {

Eigen::VectorXd project_with(const std::function<double(double)>& f, int n,
                             const QuadratureRule<double>& rule) {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(n + 1);
    for (std::size_t q = 0; q < rule.size(); ++q) {
        const double fx = f(rule.nodes[q]);
        const auto phi = legendre_scaling_values(n, rule.nodes[q]);
        for (int i = 0; i <= n; ++i) c(i) += rule.weights[q] * fx * phi[i];
    }
    return c;
}

}  // namespace

CoefficientVector project(const std::function<double(double)>& f, int n) {
    if (n < 0 || n > kMaxBasisIndex) throw DomainError("projection size out of range");
    const Eigen::VectorXd coarse = project_with(f, n, gauss_legendre_01(64));
    const Eigen::VectorXd fine = project_with(f, n, gauss_legendre_01(128));
    for (int i = 0; i <= n; ++i) {
        if (!std::isfinite(fine(i))) {
            throw NumericalError("projection produced a non-finite coefficient");
        }
        if (std::abs(fine(i) - coarse(i)) > 1e-10 * std::max(1.0, std::abs(fine(i)))) {
            throw NumericalError("projection quadrature did not converge for coefficient " +
                                 std::to_string(i));
        }
    }
    return CoefficientVector(fine);
}

CoefficientVector project(const GeneralizedPolynomial& f, int n) {
    if (n < 0 || n > kMaxBasisIndex) throw DomainError("projection size out of range");
    Eigen::VectorXd c = Eigen::VectorXd::Zero(n + 1);
    for (const auto& term : f.terms()) {
        const auto moments = legendre_moments<double>(term.exponent, n);
        for (int i = 0; i <= n; ++i) c(i) += term.coefficient * moments[i];
    }
    return CoefficientVector(std::move(c));
}

double synthesize(const CoefficientVector& c, double x) {
    check_unit_interval(x);
    const auto phi = legendre_scaling_values(c.n(), x);
    double sum = 0.0;
    for (int i = 0; i <= c.n(); ++i) sum += c[i] * phi[i];
    return sum;
}

}  // namespace fade
