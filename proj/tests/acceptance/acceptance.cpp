#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fade/analysis.hpp"
#include "fade/errors.hpp"
#include "fade/fractional_ode.hpp"
#include "fade/galerkin_assembly.hpp"
#include "fade/solver.hpp"
#include "oracles.hpp"

namespace {

using namespace fade;

struct Outcome {
    bool pass;
    std::string detail;
};

std::string sci(double v) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.3e", v);
    return buffer;
}

double linf_at(const Solution& sol, const ExactSolution& exact, double t) {
    return error_report(sol, exact, uniform_grid(101), {t}).levels.front().linf;
}

ProblemSpec example1(int n) {
    ProblemSpec spec;
    spec.g = parse("exp(-x)");
    spec.n = n;
    return spec;
}

ProblemSpec example2(int n) {
    ProblemSpec spec;
    spec.g = parse("x^2");
    spec.f = Expression::from_monomials(manufacture_source({{1.0, 2.0, 0.0}, {1.0, 0.0, 2.0}}, 1.0, 1.0, 2.0, 1.0, 1.0));
    spec.n = n;
    return spec;
}

ProblemSpec example3(int n, PropagatorChoice choice) {
    ProblemSpec spec;
    spec.alpha = 0.5;
    spec.g = parse("x^2");
    spec.f = Expression::from_monomials(manufacture_source({{1.0, 2.0, 0.0}, {1.0, 0.0, 1.0}}, 0.5, 1.0, 2.0, 1.0, 1.0));
    spec.n = n;
    spec.propagator = choice;
    return spec;
}

const ExactSolution exact1 = [](double x, double t) { return std::exp(-x + 2 * t); };
const ExactSolution exact2 = [](double x, double t) { return x * x + t * t; };
const ExactSolution exact3 = [](double x, double t) { return x * x + t; };

Outcome ac1() {
    const Solution sol = solve(example2(4));
    const double err = linf_at(sol, exact2, 0.1);
    return {err <= 1e-7 && err <= 1e-10, "Linf(t=0.1) = " + sci(err) + " (limits 1e-7, analytic 1e-10)"};
}

Outcome ac2() {
    std::vector<double> errors;
    std::string detail = "Linf(t=0.5):";
    for (int n : {4, 6, 8, 10}) {
        errors.push_back(linf_at(solve(example1(n)), exact1, 0.5));
        detail += " n=" + std::to_string(n) + " " + sci(errors.back());
    }
    bool decreasing = true;
    for (std::size_t i = 1; i < errors.size(); ++i) decreasing = decreasing && errors[i] < errors[i - 1];
    const bool threshold = errors.back() <= 1e-5;
    detail += decreasing ? "; strictly decreasing" : "; NOT decreasing";
    detail += threshold ? "; n=10 within 1e-5" : "; n=10 above 1e-5";
    return {decreasing && threshold, detail};
}

Outcome ac3() {
    const Solution sol = solve(example3(4, PropagatorChoice::mittag_leffler));
    double worst = 0.0;
    for (double t : {0.1, 0.25, 0.5}) worst = std::max(worst, linf_at(sol, exact3, t));
    return {worst <= 1e-6, "max Linf over t in {0.1,0.25,0.5} = " + sci(worst)};
}

Outcome ac4() {
    const Expression f = parse("exp(-x)");
    bool holds = true, decreasing = true;
    double previous = std::numeric_limits<double>::infinity();
    std::string detail = "ratio empirical/bound:";
    for (int n = 2; n <= 12; ++n) {
        const double ratio = empirical_truncation(f, n) / truncation_bound(1.0, n);
        holds = holds && ratio < 1.0;
        decreasing = decreasing && ratio < previous;
        previous = ratio;
        if (n == 2 || n == 7 || n == 12) detail += " n=" + std::to_string(n) + " " + sci(ratio);
    }
    return {holds && decreasing, detail + (holds ? "; bound holds" : "; bound VIOLATED") +
                                     (decreasing ? "; decreasing" : "; NOT decreasing")};
}

Outcome ac5() {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> entry(-1.0, 1.0);
    std::uniform_int_distribution<int> size_pick(1, 8);
    std::uniform_real_distribution<double> time_pick(0.0, 1.0);
    double homogeneous = 0.0, forced = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const int size = size_pick(rng);
        Eigen::MatrixXd m(size, size);
        Eigen::VectorXd r(size);
        for (int i = 0; i < size; ++i) {
            r(i) = entry(rng);
            for (int j = 0; j < size; ++j) m(i, j) = entry(rng);
        }
        const double t = time_pick(rng);
        homogeneous = std::max(homogeneous,
                               (mittag_leffler_propagator(m, 1.0, t) - matrix_exponential(m, t)).cwiseAbs().maxCoeff());

        GalerkinSystem sys;
        sys.n = size - 1;
        sys.matrix = m;
        std::vector<GeneralizedPolynomial> comps;
        for (int i = 0; i < size; ++i) comps.push_back(GeneralizedPolynomial::constant(r(i), Variable::t));
        sys.source = SourceCoefficients(comps);
        Eigen::MatrixXd block = Eigen::MatrixXd::Zero(size + 1, size + 1);
        block.topLeftCorner(size, size) = m * t;
        block.topRightCorner(size, 1) = r * t;
        const Eigen::VectorXd closed = oracle::taylor_exponential(block).topRightCorner(size, 1);
        for (auto kind : {PropagatorKind::matrix_exp, PropagatorKind::mittag_leffler}) {
            forced = std::max(forced, (convolve_source(sys, t, kind).values() - closed).cwiseAbs().maxCoeff());
        }
    }
    return {homogeneous <= 1e-10 && forced <= 1e-10,
            "ML(alpha=1) vs expm " + sci(homogeneous) + "; constant-source convolution " + sci(forced)};
}

Outcome ac6() {
    double worst = 0.0;
    const BasisSet basis(10);
    for (double order : {0.25, 0.5, 0.75, 1.0, 1.5, 2.0}) {
        const Eigen::MatrixXd analytic = fractional_galerkin_matrix(basis, order);
        worst = std::max(worst, (analytic - oracle::galerkin_matrix(10, order)).cwiseAbs().maxCoeff());
    }
    return {worst <= 1e-9, "max |analytic - quadrature| over n<=10 = " + sci(worst)};
}

Outcome ac7() {
    std::string detail;
    bool decrease_integer = true, decrease_fractional = true;
    double prev_int = std::numeric_limits<double>::infinity(), prev_frac = prev_int;
    bool schwarz = true;
    std::string integer_values = "Example 1 residual:", fractional_values = "beta=0.5,gamma=1.5 residual:";
    for (int n : {4, 6, 8, 10}) {
        ProblemSpec frac = example1(n);
        frac.beta = 0.5;
        frac.gamma = 1.5;
        for (const ProblemSpec& spec : {example1(n), frac}) {
            const Solution sol = solve(spec);
            const double res = residual_norm(sol, 0.5);
            const double pairing = weak_asymptotic_pairing(sol, bump_function, 0.5);
            schwarz = schwarz && std::abs(pairing) <= res * l2_norm(bump_function) * (1 + 1e-9) + 1e-15;
            if (spec.beta == 1.0) {
                decrease_integer = decrease_integer && res < prev_int;
                prev_int = res;
                integer_values += " " + sci(res);
            } else {
                decrease_fractional = decrease_fractional && res < prev_frac;
                prev_frac = res;
                fractional_values += " " + sci(res);
            }
        }
    }
    double exact_cases = 0.0;
    for (double t : {0.1, 0.5, 0.9}) {
        exact_cases = std::max(exact_cases, residual_norm(solve(example2(4)), t));
        exact_cases = std::max(exact_cases, residual_norm(solve(example3(4, PropagatorChoice::mittag_leffler)), t));
    }
    const bool zero = exact_cases <= 1e-12;
    detail = integer_values + (decrease_integer ? " (decreasing)" : " (not decreasing)") + "; " + fractional_values +
             (decrease_fractional ? " (decreasing)" : " (not decreasing)") + "; Schwarz " +
             (schwarz ? "holds" : "VIOLATED") + "; Examples 2/3 residual " + sci(exact_cases);
    return {decrease_integer && decrease_fractional && schwarz && zero, detail};
}

Outcome ac8() {
    const BasisSet basis(15);
    const auto& rule = gauss_legendre_01(64);
    double ortho = 0.0;
    for (int i = 0; i <= 15; ++i) {
        for (int j = 0; j <= 15; ++j) {
            const double inner = rule.integrate([&](double x) { return basis.evaluate(i, x) * basis.evaluate(j, x); });
            ortho = std::max(ortho, std::abs(inner - (i == j ? 1.0 : 0.0)));
        }
    }
    double recurrence = 0.0;
    for (int i = 0; i <= 12; ++i) {
        for (int q = 0; q <= 1000; ++q) {
            const double x = q / 1000.0;
            recurrence = std::max(recurrence, std::abs(basis.evaluate(i, x) - basis.evaluate_monomial(i, x)));
        }
    }
    return {ortho <= 1e-12 && recurrence <= 1e-9,
            "orthonormality defect " + sci(ortho) + "; recurrence vs monomial " + sci(recurrence)};
}

Outcome ac9() {
    const Solution literal = solve(example3(4, PropagatorChoice::paper_literal));
    const Solution ml = solve(example3(4, PropagatorChoice::mittag_leffler));
    std::string detail = "alpha-exp u(0.5,t) for t=1e-2..1e-8:";
    bool diverges = true;
    double previous = 0.0;
    for (double t : {1e-2, 1e-4, 1e-6, 1e-8}) {
        const double u = std::abs(evaluate_solution(literal, 0.5, t));
        diverges = diverges && u > 2.0 * previous;
        previous = u;
        detail += " " + sci(u);
    }
    diverges = diverges && previous > 1e3;
    double attach = 0.0;
    for (double x : uniform_grid(101)) {
        const double g = x * x;
        attach = std::max(attach, std::abs(evaluate_solution(ml, x, 1e-10) - g));
        attach = std::max(attach, std::abs(evaluate_solution(ml, x, 0.0) - g));
    }
    detail += diverges ? " (diverges)" : " (bounded)";
    detail += "; Mittag-Leffler max|u(x,0+) - g| = " + sci(attach);
    return {diverges && attach <= 1e-8, detail};
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
        double time_limit;
    };
    const Criterion criteria[] = {
        {"AC1 Example 2 reproduction", ac1, 1.0},
        {"AC2 Example 1 convergence", ac2, 5.0},
        {"AC3 Example 3 reproduction", ac3, 1.0},
        {"AC4 truncation lemma", ac4, 2.0},
        {"AC5 alpha=1 oracle equivalence", ac5, 0.0},
        {"AC6 assembly oracle", ac6, 0.0},
        {"AC7 residual and weak pairing", ac7, 0.0},
        {"AC8 basis health", ac8, 0.0},
        {"AC9 propagator comparison", ac9, 0.0},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome{false, ""};
        try {
            outcome = c.run();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.time_limit > 0.0 && seconds >= c.time_limit) {
            outcome.pass = false;
            outcome.detail += "; over time limit " + sci(c.time_limit) + " s";
        }
        if (!outcome.pass) ++failures;
        std::printf("%s  %-34s %8.3f s  %s\n", outcome.pass ? "PASS" : "FAIL", c.name, seconds, outcome.detail.c_str());
    }
    std::printf("%d of %zu criteria failed\n", failures, std::size(criteria));
    return failures == 0 ? 0 : 1;
}
