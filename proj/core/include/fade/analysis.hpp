#pragma once

// Verification tools: the truncation estimate for Legendre expansions, the
// Galerkin residual and its weak (test-function) pairing, manufactured
// sources, error reports and convergence studies.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fade/expression.hpp"
#include "fade/solver.hpp"

namespace fade {

/// Squared-norm bound ||f - S_n f||^2 <= (3K^2/8) sum_{i>=n} (2i-3)^{-4}
/// for |f''| <= K, where S_n keeps phi_0..phi_{n-1}. The tail is summed
/// explicitly to i = n + 10^4; the remainder is the midpoint of its integral
/// bracket. Requires n >= 2 and K >= 0.
double truncation_bound(double K, int n);

struct TruncationEstimate {
    /// ||f - S_n f||^2 by quadrature of the squared remainder.
    double quadrature = 0.0;
    /// sum_{i=n}^{n+19} c_i^2.
    double parseval = 0.0;
    /// The two agree to 1e-6 relative (false for slowly decaying spectra).
    bool consistent = true;
};

/// ||f - S_n f||^2 for f(x) (t is set to 0), S_n keeping phi_0..phi_{n-1}.
/// Evaluated in extended precision so values far below double epsilon
/// relative to ||f|| remain meaningful. Requires n >= 0.
TruncationEstimate empirical_truncation_estimate(const Expression& f, int n);

/// empirical_truncation_estimate(f, n).quadrature.
double empirical_truncation(const Expression& f, int n);

/// L2 norm of eps_n = w - S_n w, w = nu D^beta u_n - k D^gamma u_n, where
/// S_n projects onto phi_0..phi_n. Computed in closed form.
double residual_norm(const Solution& sol, double t);

/// A posteriori form of the residual estimate:
///   sqrt(truncation_bound(K, n+1)) * (|nu| + |k|),
/// with K the sampled maximum of |D^2 D^beta u_n| and |D^2 D^gamma u_n| on
/// [0,1]. Infinite when either second derivative is unbounded at x = 0.
double residual_bound(const Solution& sol, double t);

/// integral_0^1 eps_n(x,t) test(x) dx by 128-point Gauss-Legendre quadrature.
double weak_asymptotic_pairing(const Solution& sol, const std::function<double(double)>& test, double t);

/// exp(-1 / (1 - (2x-1)^2)) on (0,1), zero elsewhere.
double bump_function(double x);

/// ||h||_{L2[0,1]} by 128-point Gauss-Legendre quadrature.
double l2_norm(const std::function<double(double)>& h);

/// f = D_t^alpha u + nu D_x^beta u - k D_x^gamma u for u = sum c x^p t^q.
/// Throws DomainError for terms outside the Caputo rules.
MonomialSum manufacture_source(const MonomialSum& u_exact, double alpha, double beta, double gamma, double nu,
                               double k);

struct ErrorSample {
    double x;
    double t;
    double numeric;
    double exact;
    double abs_error;
};

struct ErrorLevel {
    double t;
    double linf;
    /// L2 norm in x by 64-point Gauss-Legendre quadrature.
    double l2;
};

struct ErrorReport {
    int n = 0;
    std::string propagator;
    /// Ordered by t, then x.
    std::vector<ErrorSample> samples;
    std::vector<ErrorLevel> levels;
};

using ExactSolution = std::function<double(double, double)>;

ErrorReport error_report(const Solution& sol, const ExactSolution& exact, const std::vector<double>& xs,
                         const std::vector<double>& ts);

/// Evenly spaced points 0, 1/(count-1), ..., 1; count >= 2.
std::vector<double> uniform_grid(int count);

struct ConvergenceRow {
    int n = 0;
    double t = 0.0;
    double linf_error = 0.0;
    double l2_error = 0.0;
    double residual_norm = 0.0;
    /// truncation_bound(K, n) when K is supplied, NaN otherwise.
    double bound = 0.0;
    /// Empty on success; otherwise the failure message (numeric columns NaN).
    std::string error;
};

/// One row per (n, t), n-major in the given order. Each n is solved on its own
/// task; a failure is recorded in its rows and the study continues.
std::vector<ConvergenceRow> convergence_study(const ProblemSpec& spec_template, const std::vector<int>& n_list,
                                              const std::vector<double>& t_list, const ExactSolution& exact,
                                              const std::vector<double>& xs, std::optional<double> K = {});

}  // namespace fade
