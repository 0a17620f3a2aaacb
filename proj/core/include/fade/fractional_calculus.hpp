#pragma once

// Exact fractional calculus on generalized polynomials sum_m c_m * v^{e_m}
// (real exponents e_m > -1). Caputo derivatives and Riemann-Liouville
// integrals act term by term through the gamma-function monomial rules.

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "fade/errors.hpp"

namespace fade {

/// Gamma function for z > 0 (Lanczos approximation, exact at small integers).
/// Throws DomainError for z <= 0 and NumericalError when Gamma(z) overflows.
double gamma(double z);

/// Gamma(a) / Gamma(b) for a, b > 0, switching to log-gamma when either
/// argument is large enough that the individual values would overflow.
double gamma_ratio(double a, double b);

/// Exponents closer than this are merged during canonicalization, and an
/// exponent within this distance of an integer counts as that integer.
inline constexpr double kExponentTolerance = 1e-12;

enum class Variable { x, t };

template <class Real>
struct BasicTerm {
    Real coefficient;
    Real exponent;
};

template <class Real>
class BasicGeneralizedPolynomial {
public:
    using real_type = Real;
    using term_type = BasicTerm<Real>;

    explicit BasicGeneralizedPolynomial(Variable var = Variable::x) : var_(var) {}

    BasicGeneralizedPolynomial(std::vector<term_type> terms, Variable var = Variable::x)
        : terms_(std::move(terms)), var_(var) {
        normalize();
    }

    BasicGeneralizedPolynomial(std::initializer_list<term_type> terms, Variable var = Variable::x)
        : BasicGeneralizedPolynomial(std::vector<term_type>(terms), var) {}

    static BasicGeneralizedPolynomial constant(Real c, Variable var = Variable::x) {
        return BasicGeneralizedPolynomial({term_type{c, Real(0)}}, var);
    }

    static BasicGeneralizedPolynomial monomial(Real c, Real exponent, Variable var = Variable::x) {
        return BasicGeneralizedPolynomial({term_type{c, exponent}}, var);
    }

    std::span<const term_type> terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    Variable variable() const { return var_; }

    /// Coefficient of v^exponent, zero if absent.
    Real coefficient(const Real& exponent) const {
        using std::abs;
        for (const auto& term : terms_) {
            if (abs(term.exponent - exponent) <= Real(kExponentTolerance)) return term.coefficient;
        }
        return Real(0);
    }

    Real operator()(const Real& v) const {
        using std::pow;
        Real sum(0);
        for (const auto& term : terms_) {
            if (term.exponent == Real(0)) {
                sum += term.coefficient;  // 0^0 = 1
            } else {
                sum += term.coefficient * pow(v, term.exponent);
            }
        }
        return sum;
    }

    BasicGeneralizedPolynomial operator-() const {
        auto out = *this;
        for (auto& term : out.terms_) term.coefficient = -term.coefficient;
        return out;
    }

    BasicGeneralizedPolynomial& operator+=(const BasicGeneralizedPolynomial& other) {
        terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
        normalize();
        return *this;
    }

    BasicGeneralizedPolynomial& operator-=(const BasicGeneralizedPolynomial& other) {
        return *this += -other;
    }

    BasicGeneralizedPolynomial& operator*=(const Real& scale) {
        for (auto& term : terms_) term.coefficient *= scale;
        normalize();
        return *this;
    }

    friend BasicGeneralizedPolynomial operator+(BasicGeneralizedPolynomial a,
                                                const BasicGeneralizedPolynomial& b) {
        return a += b;
    }
    friend BasicGeneralizedPolynomial operator-(BasicGeneralizedPolynomial a,
                                                const BasicGeneralizedPolynomial& b) {
        return a -= b;
    }
    friend BasicGeneralizedPolynomial operator*(BasicGeneralizedPolynomial p, const Real& s) {
        return p *= s;
    }
    friend BasicGeneralizedPolynomial operator*(const Real& s, BasicGeneralizedPolynomial p) {
        return p *= s;
    }

    /// Pointwise product; exponents add.
    friend BasicGeneralizedPolynomial operator*(const BasicGeneralizedPolynomial& a,
                                                const BasicGeneralizedPolynomial& b) {
        std::vector<term_type> out;
        out.reserve(a.size() * b.size());
        for (const auto& ta : a.terms_) {
            for (const auto& tb : b.terms_) {
                out.push_back({ta.coefficient * tb.coefficient, ta.exponent + tb.exponent});
            }
        }
        return BasicGeneralizedPolynomial(std::move(out), a.var_);
    }

private:
    void normalize() {
        for (const auto& term : terms_) {
            if (!(term.exponent > Real(-1))) {
                throw DomainError("generalized polynomial exponent " +
                                  std::to_string(static_cast<double>(term.exponent)) +
                                  " is not integrable on [0,1]");
            }
        }
        std::sort(terms_.begin(), terms_.end(),
                  [](const term_type& a, const term_type& b) { return a.exponent < b.exponent; });
        std::vector<term_type> merged;
        merged.reserve(terms_.size());
        for (const auto& term : terms_) {
            if (!merged.empty() && term.exponent - merged.back().exponent <= Real(kExponentTolerance)) {
                merged.back().coefficient += term.coefficient;
            } else {
                merged.push_back(term);
            }
        }
        std::erase_if(merged, [](const term_type& t) { return t.coefficient == Real(0); });
        terms_ = std::move(merged);
    }

    std::vector<term_type> terms_;
    Variable var_;
};

using Term = BasicTerm<double>;
using GeneralizedPolynomial = BasicGeneralizedPolynomial<double>;

namespace detail {

/// Returns the nonnegative integer an exponent snaps to, or -1.
inline long snapped_integer(double exponent) {
    const double r = std::round(exponent);
    if (r >= 0.0 && std::abs(exponent - r) <= kExponentTolerance) return static_cast<long>(r);
    return -1;
}

/// Gamma(k+1)/Gamma(k+1-order) for integer k >= ceil(order). The integer part
/// is accumulated in Real; only 1/Gamma(ceil(order)+1-order) passes through
/// double precision, and it is a common factor across all k.
template <class Real>
Real caputo_integer_factor(long k, double order) {
    const long m = static_cast<long>(std::ceil(order));
    Real factor(m == 1 ? 1 : 2);  // m!
    for (long j = m + 1; j <= k; ++j) {
        factor *= Real(j);
        factor /= Real(j) - Real(order);
    }
    return factor / Real(gamma(static_cast<double>(m) + 1.0 - order));
}

}  // namespace detail

/// Caputo derivative of order in (0, 2], term by term:
///   D x^k = Gamma(k+1)/Gamma(k+1-order) x^{k-order}   (k in N0, k >= ceil(order),
///                                                       or k not integer, k > floor(order))
///   D x^k = 0                                          (k in N0, k < ceil(order)).
/// Non-integer exponents k <= floor(order) are rejected with DomainError.
template <class Real>
BasicGeneralizedPolynomial<Real> caputo_derivative(const BasicGeneralizedPolynomial<Real>& p,
                                                   double order) {
    if (!(order > 0.0 && order <= 2.0)) {
        throw DomainError("Caputo order must lie in (0, 2], got " + std::to_string(order));
    }
    const double ceil_order = std::ceil(order);
    const double floor_order = std::floor(order);
    std::vector<BasicTerm<Real>> out;
    out.reserve(p.size());
    for (const auto& term : p.terms()) {
        const double exponent = static_cast<double>(term.exponent);
        const long k = detail::snapped_integer(exponent);
        if (k >= 0) {
            if (static_cast<double>(k) < ceil_order) continue;
            out.push_back({term.coefficient * detail::caputo_integer_factor<Real>(k, order),
                           Real(k) - Real(order)});
        } else {
            if (!(exponent > floor_order)) {
                throw DomainError("Caputo rule of order " + std::to_string(order) +
                                  " does not apply to exponent " + std::to_string(exponent));
            }
            const double factor = gamma_ratio(exponent + 1.0, exponent + 1.0 - order);
            out.push_back({term.coefficient * Real(factor), term.exponent - Real(order)});
        }
    }
    return BasicGeneralizedPolynomial<Real>(std::move(out), p.variable());
}

/// Riemann-Liouville integral I^order x^k = Gamma(k+1)/Gamma(k+1+order) x^{k+order};
/// order 0 is the identity.
template <class Real>
BasicGeneralizedPolynomial<Real> rl_integral(const BasicGeneralizedPolynomial<Real>& p, double order) {
    if (!(order >= 0.0)) {
        throw DomainError("Riemann-Liouville order must be nonnegative, got " + std::to_string(order));
    }
    if (order == 0.0) return p;
    std::vector<BasicTerm<Real>> out;
    out.reserve(p.size());
    for (const auto& term : p.terms()) {
        const double exponent = static_cast<double>(term.exponent);
        const double factor = gamma_ratio(exponent + 1.0, exponent + 1.0 + order);
        out.push_back({term.coefficient * Real(factor), term.exponent + Real(order)});
    }
    return BasicGeneralizedPolynomial<Real>(std::move(out), p.variable());
}

/// Definite integral over [0,1]: sum_m c_m / (e_m + 1).
template <class Real>
Real integrate_01(const BasicGeneralizedPolynomial<Real>& p) {
    Real sum(0);
    for (const auto& term : p.terms()) sum += term.coefficient / (term.exponent + Real(1));
    return sum;
}

}  // namespace fade
