#include "fade/solver.hpp"

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "fade/errors.hpp"

namespace fade {

const char* to_string(PropagatorChoice choice) {
    switch (choice) {
        case PropagatorChoice::auto_select: return "auto";
        case PropagatorChoice::paper_literal: return "paper-literal";
        case PropagatorChoice::mittag_leffler: return "mittag-leffler";
    }
    return "unknown";
}

PropagatorChoice parse_propagator_choice(std::string_view text) {
    if (text == "auto") return PropagatorChoice::auto_select;
    if (text == "paper-literal") return PropagatorChoice::paper_literal;
    if (text == "mittag-leffler") return PropagatorChoice::mittag_leffler;
    throw DomainError("unknown propagator '" + std::string(text) +
                      "' (expected auto, paper-literal or mittag-leffler)");
}

PropagatorKind resolve_propagator(PropagatorChoice choice, double alpha) {
    switch (choice) {
        case PropagatorChoice::auto_select: return default_propagator(alpha);
        case PropagatorChoice::paper_literal:
            return alpha == 1.0 ? PropagatorKind::matrix_exp : PropagatorKind::alpha_exp;
        case PropagatorChoice::mittag_leffler: return PropagatorKind::mittag_leffler;
    }
    throw DomainError("unknown propagator choice");
}

void validate(const ProblemSpec& spec) {
    auto in_range = [](double v, double upper) { return v > 0.0 && v <= upper; };
    if (!in_range(spec.alpha, 1.0)) throw DomainError("alpha must lie in (0, 1]");
    if (!in_range(spec.beta, 1.0)) throw DomainError("beta must lie in (0, 1]");
    if (!in_range(spec.gamma, 2.0)) throw DomainError("gamma must lie in (0, 2]");
    if (spec.n < 0 || spec.n > kMaxBasisIndex) {
        throw DomainError("n must lie in [0, " + std::to_string(kMaxBasisIndex) + "]");
    }
    if (!std::isfinite(spec.nu) || !std::isfinite(spec.k)) throw DomainError("nu and k must be finite");
}

CoefficientVector initial_coefficients(const Expression& g, int n) {
    const Classification cls = classify(g);
    if (cls.is_monomial_sum()) {
        std::vector<Term> terms;
        for (const auto& m : cls.terms) {
            if (m.t_power == 0.0) terms.push_back({m.coefficient, m.x_power});
        }
        return project(GeneralizedPolynomial(std::move(terms)), n);
    }
    return project([&](double x) { return eval(g, x, 0.0); }, n);
}

Solution::Solution(BasisSet basis, GalerkinSystem system, CoefficientVector initial, PropagatorKind kind,
                   SeriesControl control)
    : basis_(std::move(basis)),
      system_(std::move(system)),
      initial_(std::move(initial)),
      kind_(kind),
      control_(control) {
    if (initial_.size() != system_.matrix.rows()) {
        throw DomainError("initial coefficients do not match the system size");
    }
}

CoefficientVector Solution::coefficients_at(double t, SeriesDiagnostics* diagnostics) const {
    if (!(t >= 0.0)) throw DomainError("time must be nonnegative");
    if (t == 0.0 && kind_ != PropagatorKind::alpha_exp) {
        if (diagnostics) *diagnostics = {};
        return initial_;
    }
    const Propagator propagator(kind_, system_.matrix, system_.orders.alpha, control_);
    Eigen::VectorXd c = propagator(t, diagnostics) * initial_.values();
    if (!system_.source.is_zero()) c += convolve_source(system_, t, kind_, control_).values();
    return CoefficientVector(std::move(c));
}

Solution solve(const ProblemSpec& spec) {
    validate(spec);
    BasisSet basis(spec.n);
    GalerkinSystem system =
        assemble(basis, FractionalOrders{spec.alpha, spec.beta, spec.gamma}, spec.nu, spec.k, spec.f);
    CoefficientVector initial = initial_coefficients(spec.g, spec.n);
    const PropagatorKind kind = resolve_propagator(spec.propagator, spec.alpha);
    return Solution(std::move(basis), std::move(system), std::move(initial), kind, spec.control);
}

double evaluate_solution(const Solution& sol, double x, double t) {
    return synthesize(sol.coefficients_at(t), x);
}

}  // namespace fade
