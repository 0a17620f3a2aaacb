#include "fade/fractional_ode.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "fade/errors.hpp"
#include "fade/fractional_calculus.hpp"
#include "fade/quadrature.hpp"

namespace fade {

const char* to_string(PropagatorKind kind) {
    switch (kind) {
        case PropagatorKind::matrix_exp: return "matrix-exp";
        case PropagatorKind::alpha_exp: return "alpha-exp";
        case PropagatorKind::mittag_leffler: return "mittag-leffler";
    }
    return "unknown";
}

namespace {

void check_square(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols()) throw DomainError("propagator matrix must be square");
    if (!m.allFinite()) throw DomainError("propagator matrix has non-finite entries");
}

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw DomainError("time order alpha = " + std::to_string(alpha) + " outside (0, 1]");
    }
}

double max_norm(const Eigen::MatrixXd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

// Element-wise Neumaier summation.
class CompensatedSum {
public:
    CompensatedSum(Eigen::Index rows, Eigen::Index cols)
        : sum_(Eigen::MatrixXd::Zero(rows, cols)), carry_(Eigen::MatrixXd::Zero(rows, cols)) {}

    void add(const Eigen::MatrixXd& term) {
        for (Eigen::Index i = 0; i < sum_.size(); ++i) {
            const double s = sum_.data()[i];
            const double x = term.data()[i];
            const double t = s + x;
            carry_.data()[i] += std::abs(s) >= std::abs(x) ? (s - t) + x : (x - t) + s;
            sum_.data()[i] = t;
        }
    }

    Eigen::MatrixXd value() const { return sum_ + carry_; }

private:
    Eigen::MatrixXd sum_;
    Eigen::MatrixXd carry_;
};

}  // namespace

Eigen::MatrixXd matrix_exponential(const Eigen::MatrixXd& m, double t) {
    check_square(m);
    if (!(t >= 0.0)) throw DomainError("matrix_exponential: t must be nonnegative");
    const Eigen::MatrixXd scaled = m * t;
    Eigen::MatrixXd out = scaled.exp();
    if (!out.allFinite()) throw NumericalError("matrix exponential overflowed");
    return out;
}

Eigen::MatrixXd mittag_leffler_series(const Eigen::MatrixXd& z, double alpha, double b,
                                      const SeriesControl& control, SeriesDiagnostics* diagnostics) {
    check_square(z);
    if (!(alpha > 0.0) || !(b > 0.0)) throw DomainError("Mittag-Leffler parameters must be positive");
    const Eigen::Index size = z.rows();
    CompensatedSum sum(size, size);
    Eigen::MatrixXd term = Eigen::MatrixXd::Identity(size, size) / gamma(b);
    sum.add(term);
    double previous = max_norm(term);
    for (int i = 1; i <= control.max_terms; ++i) {
        // term_i = term_{i-1} Z Gamma((i-1) alpha + b) / Gamma(i alpha + b)
        const double ratio = gamma_ratio((i - 1) * alpha + b, i * alpha + b);
        term = (term * z) * ratio;
        const double norm = max_norm(term);
        if (!std::isfinite(norm)) throw NumericalError("Mittag-Leffler series overflowed");
        const Eigen::MatrixXd partial = sum.value();
        if (norm < control.tolerance * max_norm(partial) && norm <= previous) {
            if (diagnostics) *diagnostics = {i, norm};
            return partial;
        }
        sum.add(term);
        previous = norm;
    }
    throw NumericalError("Mittag-Leffler series did not reach tolerance " + std::to_string(control.tolerance) +
                         " within " + std::to_string(control.max_terms) +
                         " terms (last term norm " + std::to_string(previous) + ")");
}

Eigen::MatrixXd alpha_exponential(const Eigen::MatrixXd& m, double alpha, double t,
                                  const SeriesControl& control, SeriesDiagnostics* diagnostics) {
    check_alpha(alpha);
    if (!(t > 0.0)) throw DomainError("alpha_exponential requires t > 0");
    const double scale = std::pow(t, alpha);
    return std::pow(t, alpha - 1.0) * mittag_leffler_series(m * scale, alpha, alpha, control, diagnostics);
}

Eigen::MatrixXd mittag_leffler_propagator(const Eigen::MatrixXd& m, double alpha, double t,
                                          const SeriesControl& control, SeriesDiagnostics* diagnostics) {
    check_alpha(alpha);
    if (!(t >= 0.0)) throw DomainError("mittag_leffler_propagator requires t >= 0");
    return mittag_leffler_series(m * std::pow(t, alpha), alpha, 1.0, control, diagnostics);
}

Propagator::Propagator(PropagatorKind kind, Eigen::MatrixXd m, double alpha, SeriesControl control)
    : kind_(kind), m_(std::move(m)), alpha_(alpha), control_(control) {
    check_square(m_);
    check_alpha(alpha);
    if (kind == PropagatorKind::matrix_exp && alpha != 1.0) {
        throw DomainError("the matrix-exponential propagator requires alpha = 1");
    }
    if (kind == PropagatorKind::alpha_exp && !(alpha < 1.0)) {
        throw DomainError("the alpha-exponential propagator requires alpha in (0, 1)");
    }
}

Eigen::MatrixXd Propagator::operator()(double t, SeriesDiagnostics* diagnostics) const {
    switch (kind_) {
        case PropagatorKind::matrix_exp:
            if (diagnostics) *diagnostics = {};
            return matrix_exponential(m_, t);
        case PropagatorKind::alpha_exp: return alpha_exponential(m_, alpha_, t, control_, diagnostics);
        case PropagatorKind::mittag_leffler:
            return mittag_leffler_propagator(m_, alpha_, t, control_, diagnostics);
    }
    throw DomainError("unknown propagator kind");
}

PropagatorKind default_propagator(double alpha) {
    return alpha == 1.0 ? PropagatorKind::matrix_exp : PropagatorKind::mittag_leffler;
}

CoefficientVector propagate_homogeneous(const GalerkinSystem& sys, const CoefficientVector& c0, double t,
                                        PropagatorKind kind, const SeriesControl& control) {
    if (c0.size() != sys.matrix.rows()) {
        throw DomainError("initial coefficients do not match the system size");
    }
    const Propagator propagator(kind, sys.matrix, sys.orders.alpha, control);
    return CoefficientVector(propagator(t) * c0.values());
}

namespace {

struct PowerTerm {
    double exponent;
    Eigen::VectorXd coefficients;
};

// Groups the analytic source components by time exponent: r(s) = sum_mu v_mu s^mu.
std::vector<PowerTerm> collect_powers(const SourceCoefficients& source, int size) {
    std::vector<PowerTerm> powers;
    const auto& components = source.components();
    for (int j = 0; j < static_cast<int>(components.size()); ++j) {
        for (const auto& term : components[j].terms()) {
            auto it = std::find_if(powers.begin(), powers.end(), [&](const PowerTerm& p) {
                return std::abs(p.exponent - term.exponent) <= kExponentTolerance;
            });
            if (it == powers.end()) {
                powers.push_back({term.exponent, Eigen::VectorXd::Zero(size)});
                it = std::prev(powers.end());
            }
            it->coefficients(j) += term.coefficient;
        }
    }
    return powers;
}

// int_0^t e^{M(t-s)} sum_j v_j s^j ds for integer powers, from the exponential of
//   [ M  V ]      V = [0! v_0, 1! v_1, ..., d! v_d],  S the shift w_j' = w_{j-1}.
//   [ 0  S ]
Eigen::VectorXd augmented_convolution(const Eigen::MatrixXd& m, const std::vector<PowerTerm>& powers, double t) {
    long degree = 0;
    for (const auto& p : powers) degree = std::max(degree, detail::snapped_integer(p.exponent));
    const Eigen::Index size = m.rows();
    const Eigen::Index extra = degree + 1;
    Eigen::MatrixXd augmented = Eigen::MatrixXd::Zero(size + extra, size + extra);
    augmented.topLeftCorner(size, size) = m;
    for (const auto& p : powers) {
        const long j = detail::snapped_integer(p.exponent);
        augmented.block(0, size + j, size, 1) += std::tgamma(static_cast<double>(j) + 1.0) * p.coefficients;
    }
    for (long j = 1; j <= degree; ++j) augmented(size + j, size + j - 1) = 1.0;
    const Eigen::MatrixXd e = matrix_exponential(augmented, t);
    return e.block(0, size, size, 1);
}

Eigen::VectorXd analytic_convolution(const GalerkinSystem& sys, double t, PropagatorKind kind,
                                     const SeriesControl& control) {
    const Eigen::Index size = sys.matrix.rows();
    const auto powers = collect_powers(sys.source, static_cast<int>(size));
    const double alpha = sys.orders.alpha;
    const bool integer_powers = std::all_of(powers.begin(), powers.end(), [](const PowerTerm& p) {
        return detail::snapped_integer(p.exponent) >= 0;
    });
    if (kind == PropagatorKind::matrix_exp && integer_powers) {
        return augmented_convolution(sys.matrix, powers, t);
    }
    const Eigen::MatrixXd z = sys.matrix * std::pow(t, alpha);
    Eigen::VectorXd out = Eigen::VectorXd::Zero(size);
    for (const auto& p : powers) {
        const double mu = p.exponent;
        const Eigen::MatrixXd e = mittag_leffler_series(z, alpha, alpha + mu + 1.0, control);
        out += gamma(mu + 1.0) * std::pow(t, alpha + mu) * (e * p.coefficients);
    }
    return out;
}

Eigen::VectorXd quadrature_convolution(const GalerkinSystem& sys, double t, PropagatorKind kind,
                                       const SeriesControl& control, int nodes) {
    const double alpha = sys.orders.alpha;
    const Eigen::Index size = sys.matrix.rows();
    if (alpha == 1.0) {
        // Smooth kernel e^{M tau}: plain Gauss-Legendre in tau = t u.
        const auto& rule = gauss_legendre_01(nodes);
        Eigen::VectorXd out = Eigen::VectorXd::Zero(size);
        for (std::size_t q = 0; q < rule.size(); ++q) {
            const double tau = t * rule.nodes[q];
            const Eigen::MatrixXd kernel = kind == PropagatorKind::matrix_exp
                                               ? matrix_exponential(sys.matrix, tau)
                                               : mittag_leffler_series(sys.matrix * tau, 1.0, 1.0, control);
            out += rule.weights[q] * (kernel * sys.source(t - tau));
        }
        return t * out;
    }
    // Term by term:
    //   int_0^t K(t-s) r(s) ds = sum_i M^i / Gamma((i+1) alpha) int_0^t tau^{(i+1) alpha - 1} r(t - tau) dtau,
    // each integral taken with a Gauss-Jacobi rule that carries its own power weight.
    CompensatedSum sum(size, 1);
    Eigen::MatrixXd power = Eigen::MatrixXd::Identity(size, size);
    double previous = std::numeric_limits<double>::infinity();
    for (int i = 0; i < control.max_terms; ++i) {
        const double order = (i + 1) * alpha;
        const auto rule = gauss_jacobi_01(nodes, 0.0, order - 1.0);
        Eigen::VectorXd moment = Eigen::VectorXd::Zero(size);
        for (std::size_t q = 0; q < rule.size(); ++q) moment += rule.weights[q] * sys.source(t - t * rule.nodes[q]);
        const double scale = std::exp(order * std::log(t) - std::lgamma(order));
        const Eigen::MatrixXd term = power * moment * scale;
        const double norm = max_norm(term);
        if (!std::isfinite(norm)) throw NumericalError("source convolution series overflowed");
        sum.add(term);
        if (i > 0 && norm <= control.tolerance * max_norm(sum.value()) && norm <= previous) return sum.value();
        previous = norm;
        power = power * sys.matrix;
    }
    throw NumericalError("source convolution series did not reach tolerance within " +
                         std::to_string(control.max_terms) + " terms");
}

}  // namespace

CoefficientVector convolve_source(const GalerkinSystem& sys, double t, PropagatorKind kind,
                                  const SeriesControl& control) {
    check_alpha(sys.orders.alpha);
    if (!(t >= 0.0)) throw DomainError("convolve_source requires t >= 0");
    const Eigen::Index size = sys.matrix.rows();
    if (t == 0.0 || sys.source.is_zero()) return CoefficientVector(Eigen::VectorXd::Zero(size));
    if (sys.source.is_analytic()) return CoefficientVector(analytic_convolution(sys, t, kind, control));
    const Eigen::VectorXd coarse = quadrature_convolution(sys, t, kind, control, 32);
    const Eigen::VectorXd fine = quadrature_convolution(sys, t, kind, control, 64);
    const double scale = std::max(1.0, fine.cwiseAbs().maxCoeff());
    if ((fine - coarse).cwiseAbs().maxCoeff() > 1e-9 * scale) {
        throw NumericalError("source convolution quadrature did not converge at t = " + std::to_string(t));
    }
    return CoefficientVector(fine);
}

}  // namespace fade
