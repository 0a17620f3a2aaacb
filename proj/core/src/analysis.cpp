#include "fade/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <string>
#include <utility>

#include "fade/errors.hpp"
#include "fade/fractional_calculus.hpp"
#include "fade/quadrature.hpp"
#include "fade/wide.hpp"

namespace fade {

namespace {

using WidePolynomial = BasicGeneralizedPolynomial<wide_real>;

constexpr int kTailTerms = 10000;
constexpr int kReferenceExtra = 20;
constexpr int kWideNodes = 128;
constexpr int kPairingNodes = 128;
constexpr int kErrorNodes = 64;
constexpr int kCurvatureSamples = 2001;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// eps_n(x) = w(x) - sum_j p_j phi_j(x) with w = nu D^beta u_n - k D^gamma u_n
// and p_j = <w, phi_j>.
struct ResidualForm {
    WidePolynomial w;
    std::vector<wide_real> projection;
    Eigen::VectorXd coefficients;
};

ResidualForm residual_form(const Solution& sol, double t) {
    const GalerkinSystem& sys = sol.system();
    const int n = sys.n;
    ResidualForm form;
    form.coefficients = sol.coefficients_at(t).values();
    std::vector<BasicTerm<wide_real>> terms;
    for (int i = 0; i <= n; ++i) {
        const wide_real ci(form.coefficients(i));
        if (ci == 0) continue;
        const WidePolynomial phi = sol.basis().wide_polynomial(i);
        if (sys.nu != 0.0) {
            const WidePolynomial d = caputo_derivative(phi, sys.orders.beta);
            for (const auto& term : d.terms()) {
                terms.push_back({wide_real(sys.nu) * ci * term.coefficient, term.exponent});
            }
        }
        if (sys.k != 0.0) {
            const WidePolynomial d = caputo_derivative(phi, sys.orders.gamma);
            for (const auto& term : d.terms()) {
                terms.push_back({-wide_real(sys.k) * ci * term.coefficient, term.exponent});
            }
        }
    }
    form.w = WidePolynomial(std::move(terms));
    form.projection.assign(n + 1, wide_real(0));
    for (const auto& term : form.w.terms()) {
        const auto moments = legendre_moments<wide_real>(term.exponent, n);
        for (int j = 0; j <= n; ++j) form.projection[j] += term.coefficient * moments[j];
    }
    return form;
}

wide_real residual_value(const ResidualForm& form, double x) {
    const wide_real wx(x);
    wide_real value = form.w(wx);
    const int n = static_cast<int>(form.projection.size()) - 1;
    const auto phi = legendre_scaling_values<wide_real>(n, wx);
    for (int j = 0; j <= n; ++j) value -= form.projection[j] * phi[j];
    return value;
}

// Second derivative of sum c x^e, which is unbounded at 0 when some
// e < 2 carries a nonzero e(e-1).
double sampled_curvature(const WidePolynomial& p) {
    std::vector<std::pair<double, double>> second;
    for (const auto& term : p.terms()) {
        const wide_real factor = term.coefficient * term.exponent * (term.exponent - wide_real(1));
        if (factor == 0) continue;
        if (term.exponent < wide_real(2)) return std::numeric_limits<double>::infinity();
        second.emplace_back(static_cast<double>(factor), static_cast<double>(term.exponent - wide_real(2)));
    }
    double best = 0.0;
    for (int s = 0; s < kCurvatureSamples; ++s) {
        const double x = static_cast<double>(s) / (kCurvatureSamples - 1);
        double value = 0.0;
        for (const auto& [c, e] : second) value += e == 0.0 ? c : c * std::pow(x, e);
        best = std::max(best, std::abs(value));
    }
    return best;
}

WidePolynomial weighted_derivative(const Solution& sol, const Eigen::VectorXd& c, double order) {
    WidePolynomial out;
    for (int i = 0; i <= sol.system().n; ++i) {
        if (c(i) == 0.0) continue;
        out += caputo_derivative(sol.basis().wide_polynomial(i), order) * wide_real(c(i));
    }
    return out;
}

}  // namespace

double truncation_bound(double K, int n) {
    if (n < 2) throw DomainError("truncation_bound requires n >= 2");
    if (!(K >= 0.0)) throw DomainError("truncation_bound requires K >= 0");
    auto term = [](double i) { return std::pow(2.0 * i - 3.0, -4.0); };
    const int last = n + kTailTerms;
    double tail = 0.0;
    for (int i = last; i >= n; --i) tail += term(i);
    // sum_{i>last} h(i) lies between the integrals of h from last+1 and from last.
    auto integral_from = [](double a) { return 1.0 / (6.0 * std::pow(2.0 * a - 3.0, 3.0)); };
    tail += 0.5 * (integral_from(last + 1.0) + integral_from(last));
    return 3.0 * K * K / 8.0 * tail;
}

TruncationEstimate empirical_truncation_estimate(const Expression& f, int n) {
    if (n < 0) throw DomainError("empirical_truncation requires n >= 0");
    const int reference = n + kReferenceExtra;
    const auto& rule = gauss_legendre_01_wide(kWideNodes);
    std::vector<wide_real> values(rule.size());
    std::vector<std::vector<wide_real>> phi(rule.size());
    std::vector<wide_real> c(reference, wide_real(0));
    wide_real norm(0);
    for (std::size_t q = 0; q < rule.size(); ++q) {
        values[q] = f.evaluate<wide_real>(rule.nodes[q], wide_real(0));
        if (!boost::multiprecision::isfinite(values[q])) {
            throw NumericalError("f is not finite at x = " + std::to_string(static_cast<double>(rule.nodes[q])));
        }
        phi[q] = legendre_scaling_values<wide_real>(reference - 1, rule.nodes[q]);
        for (int i = 0; i < reference; ++i) c[i] += rule.weights[q] * values[q] * phi[q][i];
        norm += rule.weights[q] * values[q] * values[q];
    }
    wide_real remainder(0);
    for (std::size_t q = 0; q < rule.size(); ++q) {
        wide_real r = values[q];
        for (int i = 0; i < n; ++i) r -= c[i] * phi[q][i];
        remainder += rule.weights[q] * r * r;
    }
    wide_real parseval(0);
    for (int i = n; i < reference; ++i) parseval += c[i] * c[i];

    TruncationEstimate out;
    out.quadrature = static_cast<double>(remainder);
    out.parseval = static_cast<double>(parseval);
    const wide_real scale = remainder > parseval ? remainder : parseval;
    out.consistent = abs(remainder - parseval) <= wide_real(1e-6) * scale + wide_real(1e-30) * norm;
    return out;
}

double empirical_truncation(const Expression& f, int n) { return empirical_truncation_estimate(f, n).quadrature; }

double residual_norm(const Solution& sol, double t) {
    const ResidualForm form = residual_form(sol, t);
    wide_real full(0);
    const auto terms = form.w.terms();
    for (const auto& a : terms) {
        for (const auto& b : terms) {
            full += a.coefficient * b.coefficient / (a.exponent + b.exponent + wide_real(1));
        }
    }
    for (const auto& p : form.projection) full -= p * p;
    return full > 0 ? static_cast<double>(sqrt(full)) : 0.0;
}

double residual_bound(const Solution& sol, double t) {
    const GalerkinSystem& sys = sol.system();
    const Eigen::VectorXd c = sol.coefficients_at(t).values();
    double K = 0.0;
    if (sys.nu != 0.0) K = std::max(K, sampled_curvature(weighted_derivative(sol, c, sys.orders.beta)));
    if (sys.k != 0.0) K = std::max(K, sampled_curvature(weighted_derivative(sol, c, sys.orders.gamma)));
    if (std::isinf(K)) return K;
    return std::sqrt(truncation_bound(K, sys.n + 1)) * (std::abs(sys.nu) + std::abs(sys.k));
}

double weak_asymptotic_pairing(const Solution& sol, const std::function<double(double)>& test, double t) {
    const ResidualForm form = residual_form(sol, t);
    const auto& rule = gauss_legendre_01(kPairingNodes);
    double sum = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q) {
        const double v = test(rule.nodes[q]);
        if (v == 0.0) continue;
        sum += rule.weights[q] * static_cast<double>(residual_value(form, rule.nodes[q])) * v;
    }
    return sum;
}

double bump_function(double x) {
    const double y = 2.0 * x - 1.0;
    if (!(std::abs(y) < 1.0)) return 0.0;
    return std::exp(-1.0 / (1.0 - y * y));
}

double l2_norm(const std::function<double(double)>& h) {
    const auto& rule = gauss_legendre_01(kPairingNodes);
    return std::sqrt(rule.integrate([&](double x) {
        const double v = h(x);
        return v * v;
    }));
}

MonomialSum manufacture_source(const MonomialSum& u_exact, double alpha, double beta, double gamma, double nu,
                               double k) {
    MonomialSum out;
    for (const auto& m : u_exact) {
        const auto dt = caputo_derivative(GeneralizedPolynomial::monomial(1.0, m.t_power, Variable::t), alpha);
        for (const auto& term : dt.terms()) out.push_back({m.coefficient * term.coefficient, m.x_power, term.exponent});
        const auto x_part = GeneralizedPolynomial::monomial(1.0, m.x_power);
        if (nu != 0.0) {
            const auto dx = caputo_derivative(x_part, beta);
            for (const auto& term : dx.terms()) {
                out.push_back({nu * m.coefficient * term.coefficient, term.exponent, m.t_power});
            }
        }
        if (k != 0.0) {
            const auto dx = caputo_derivative(x_part, gamma);
            for (const auto& term : dx.terms()) {
                out.push_back({-k * m.coefficient * term.coefficient, term.exponent, m.t_power});
            }
        }
    }
    return canonical(std::move(out));
}

ErrorReport error_report(const Solution& sol, const ExactSolution& exact, const std::vector<double>& xs,
                         const std::vector<double>& ts) {
    ErrorReport report;
    report.n = sol.system().n;
    report.propagator = to_string(sol.propagator());
    const auto& rule = gauss_legendre_01(kErrorNodes);
    for (double t : ts) {
        const CoefficientVector c = sol.coefficients_at(t);
        ErrorLevel level{t, 0.0, 0.0};
        for (double x : xs) {
            const double numeric = synthesize(c, x);
            const double reference = exact(x, t);
            const double err = std::abs(numeric - reference);
            report.samples.push_back({x, t, numeric, reference, err});
            level.linf = std::max(level.linf, err);
        }
        level.l2 = std::sqrt(rule.integrate([&](double x) {
            const double d = synthesize(c, x) - exact(x, t);
            return d * d;
        }));
        report.levels.push_back(level);
    }
    return report;
}

std::vector<double> uniform_grid(int count) {
    if (count < 2) throw DomainError("grid needs at least two points");
    std::vector<double> out(count);
    for (int i = 0; i < count; ++i) out[i] = static_cast<double>(i) / (count - 1);
    return out;
}

std::vector<ConvergenceRow> convergence_study(const ProblemSpec& spec_template, const std::vector<int>& n_list,
                                              const std::vector<double>& t_list, const ExactSolution& exact,
                                              const std::vector<double>& xs, std::optional<double> K) {
    auto run = [&](int n) {
        std::vector<ConvergenceRow> rows;
        auto failed = [&](double t, const std::string& message) {
            rows.push_back({n, t, kNaN, kNaN, kNaN, kNaN, message});
        };
        std::optional<Solution> sol;
        try {
            ProblemSpec spec = spec_template;
            spec.n = n;
            sol.emplace(solve(spec));
        } catch (const std::exception& e) {
            for (double t : t_list) failed(t, e.what());
            return rows;
        }
        for (double t : t_list) {
            try {
                const ErrorReport report = error_report(*sol, exact, xs, {t});
                ConvergenceRow row;
                row.n = n;
                row.t = t;
                row.linf_error = report.levels.front().linf;
                row.l2_error = report.levels.front().l2;
                row.residual_norm = residual_norm(*sol, t);
                row.bound = K && n >= 2 ? truncation_bound(*K, n) : kNaN;
                rows.push_back(std::move(row));
            } catch (const std::exception& e) {
                failed(t, e.what());
            }
        }
        return rows;
    };
    std::vector<std::future<std::vector<ConvergenceRow>>> tasks;
    tasks.reserve(n_list.size());
    for (int n : n_list) tasks.push_back(std::async(std::launch::async, run, n));
    std::vector<ConvergenceRow> table;
    for (auto& task : tasks) {
        auto rows = task.get();
        table.insert(table.end(), std::make_move_iterator(rows.begin()), std::make_move_iterator(rows.end()));
    }
    return table;
}

}  // namespace fade
