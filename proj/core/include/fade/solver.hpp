#pragma once

// End-to-end pipeline for
//   D_t^alpha u = -nu D_x^beta u + k D_x^gamma u + f(x,t),  u(x,0) = g(x),  x in [0,1]:
// project g, assemble the Galerkin system, propagate, synthesize u_n(x,t).

#include <string_view>

#include "fade/expression.hpp"
#include "fade/fractional_ode.hpp"
#include "fade/galerkin_assembly.hpp"
#include "fade/legendre_basis.hpp"

namespace fade {

/// auto_select: matrix exponential at alpha = 1, Mittag-Leffler otherwise.
/// paper_literal: alpha-exponential t^{alpha-1} E_{alpha,alpha}(M t^alpha) for alpha < 1.
/// mittag_leffler: E_alpha(M t^alpha) for every alpha.
enum class PropagatorChoice { auto_select, paper_literal, mittag_leffler };

const char* to_string(PropagatorChoice choice);

/// Accepts "auto", "paper-literal" and "mittag-leffler".
PropagatorChoice parse_propagator_choice(std::string_view text);

PropagatorKind resolve_propagator(PropagatorChoice choice, double alpha);

struct ProblemSpec {
    double alpha = 1.0;
    double beta = 1.0;
    double gamma = 2.0;
    double nu = 1.0;
    double k = 1.0;
    Expression g;
    Expression f;
    int n = 4;
    PropagatorChoice propagator = PropagatorChoice::auto_select;
    SeriesControl control;
};

/// Throws DomainError unless alpha, beta in (0,1], gamma in (0,2], 0 <= n <= 32
/// and nu, k are finite.
void validate(const ProblemSpec& spec);

/// c_i(0) = <g, phi_i>. Monomial sums are projected exactly (t is set to 0);
/// other expressions by quadrature.
CoefficientVector initial_coefficients(const Expression& g, int n);

class Solution {
public:
    Solution(BasisSet basis, GalerkinSystem system, CoefficientVector initial, PropagatorKind kind,
             SeriesControl control);

    const BasisSet& basis() const { return basis_; }
    const GalerkinSystem& system() const { return system_; }
    const CoefficientVector& initial() const { return initial_; }
    PropagatorKind propagator() const { return kind_; }
    const SeriesControl& control() const { return control_; }

    /// c(t) = P(t) c(0) + convolution. Returns c(0) unchanged at t = 0 for the
    /// matrix-exponential and Mittag-Leffler propagators.
    CoefficientVector coefficients_at(double t, SeriesDiagnostics* diagnostics = nullptr) const;

private:
    BasisSet basis_;
    GalerkinSystem system_;
    CoefficientVector initial_;
    PropagatorKind kind_;
    SeriesControl control_;
};

Solution solve(const ProblemSpec& spec);

/// u_n(x,t) = sum_i c_i(t) phi_i(x).
double evaluate_solution(const Solution& sol, double x, double t);

}  // namespace fade
