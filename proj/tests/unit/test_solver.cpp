#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "fade/errors.hpp"
#include "fade/solver.hpp"

namespace fade {
namespace {

// Crank-Nicolson for u_t = -u_x + u_xx on [0,1] with Dirichlet data from e^{-x+2t}.
std::vector<double> crank_nicolson_example1(double t_end, int cells, int steps) {
    const double dx = 1.0 / cells, dt = t_end / steps;
    const double diffusion = dt / (2 * dx * dx), advection = dt / (4 * dx);
    const double lower = -diffusion - advection, upper = -diffusion + advection, diag = 1 + 2 * diffusion;
    std::vector<double> u(cells + 1);
    for (int i = 0; i <= cells; ++i) u[i] = std::exp(-i * dx);
    std::vector<double> rhs(cells + 1), c(cells + 1), d(cells + 1);
    for (int s = 0; s < steps; ++s) {
        const double t_next = (s + 1) * dt;
        const double left = std::exp(2 * t_next), right = std::exp(-1 + 2 * t_next);
        for (int i = 1; i < cells; ++i) rhs[i] = -lower * u[i - 1] + (2 - diag) * u[i] - upper * u[i + 1];
        rhs[1] -= lower * left;
        rhs[cells - 1] -= upper * right;
        c[1] = upper / diag;
        d[1] = rhs[1] / diag;
        for (int i = 2; i < cells; ++i) {
            const double den = diag - lower * c[i - 1];
            c[i] = upper / den;
            d[i] = (rhs[i] - lower * d[i - 1]) / den;
        }
        u[cells - 1] = d[cells - 1];
        for (int i = cells - 2; i >= 1; --i) u[i] = d[i] - c[i] * u[i + 1];
        u[0] = left;
        u[cells] = right;
    }
    return u;
}

ProblemSpec example1(int n) {
    ProblemSpec spec;
    spec.g = parse("exp(-x)");
    spec.n = n;
    return spec;
}

TEST(Solver, PropagatorChoiceParsing) {
    EXPECT_EQ(parse_propagator_choice("auto"), PropagatorChoice::auto_select);
    EXPECT_EQ(parse_propagator_choice("paper-literal"), PropagatorChoice::paper_literal);
    EXPECT_EQ(parse_propagator_choice("mittag-leffler"), PropagatorChoice::mittag_leffler);
    EXPECT_THROW(parse_propagator_choice("pade"), DomainError);
    EXPECT_EQ(resolve_propagator(PropagatorChoice::auto_select, 1.0), PropagatorKind::matrix_exp);
    EXPECT_EQ(resolve_propagator(PropagatorChoice::auto_select, 0.5), PropagatorKind::mittag_leffler);
    EXPECT_EQ(resolve_propagator(PropagatorChoice::paper_literal, 0.5), PropagatorKind::alpha_exp);
    EXPECT_EQ(resolve_propagator(PropagatorChoice::paper_literal, 1.0), PropagatorKind::matrix_exp);
    EXPECT_EQ(resolve_propagator(PropagatorChoice::mittag_leffler, 1.0), PropagatorKind::mittag_leffler);
    EXPECT_STREQ(to_string(PropagatorChoice::paper_literal), "paper-literal");
}

TEST(Solver, Validation) {
    ProblemSpec spec;
    EXPECT_NO_THROW(validate(spec));
    spec.alpha = 1.2;
    EXPECT_THROW(validate(spec), DomainError);
    spec = {};
    spec.gamma = 0.0;
    EXPECT_THROW(validate(spec), DomainError);
    spec = {};
    spec.n = 33;
    EXPECT_THROW(validate(spec), DomainError);
    spec = {};
    spec.nu = std::nan("");
    EXPECT_THROW(validate(spec), DomainError);
    EXPECT_THROW(solve(spec), DomainError);
}

TEST(Solver, InitialCoefficients) {
    const auto sq = initial_coefficients(parse("x^2"), 3);
    EXPECT_NEAR(sq[0], 0.3333333333, 1e-10);
    EXPECT_NEAR(sq[1], 0.2886751346, 1e-10);
    EXPECT_NEAR(sq[2], 0.0745355992, 1e-10);
    EXPECT_NEAR(sq[3], 0.0, 1e-15);
    const auto phi1 = initial_coefficients(parse("3^0.5*(2*x - 1)"), 4);
    for (int i = 0; i <= 4; ++i) EXPECT_NEAR(phi1[i], i == 1 ? 1.0 : 0.0, 1e-15);
    EXPECT_NEAR(initial_coefficients(parse("exp(-x)"), 0)[0], 1.0 - std::exp(-1.0), 1e-14);
    // t-dependent terms are dropped at t = 0.
    EXPECT_NEAR(initial_coefficients(parse("x^2 + t"), 3)[0], 1.0 / 3.0, 1e-15);
}

TEST(Solver, Example2PointValue) {
    ProblemSpec spec;
    spec.g = parse("x^2");
    spec.f = parse("2*x + 2*t - 2");
    const Solution sol = solve(spec);
    EXPECT_EQ(sol.propagator(), PropagatorKind::matrix_exp);
    EXPECT_NEAR(evaluate_solution(sol, 0.5, 0.5), 0.5, 1e-8);
}

TEST(Solver, Example3PointValue) {
    ProblemSpec spec;
    spec.alpha = 0.5;
    spec.g = parse("x^2");
    spec.f = parse("2*x - 2 + 1.1283791670955126*t^0.5");
    spec.propagator = PropagatorChoice::mittag_leffler;
    const Solution sol = solve(spec);
    EXPECT_EQ(sol.propagator(), PropagatorKind::mittag_leffler);
    EXPECT_NEAR(evaluate_solution(sol, 0.5, 0.25), 0.5, 1e-6);
}

TEST(Solver, TimeZeroReturnsProjectedInitialData) {
    for (auto choice : {PropagatorChoice::auto_select, PropagatorChoice::mittag_leffler}) {
        ProblemSpec spec = example1(8);
        spec.propagator = choice;
        const Solution sol = solve(spec);
        const auto c0 = initial_coefficients(spec.g, 8);
        for (int i = 0; i <= 8; ++i) EXPECT_EQ(sol.coefficients_at(0.0)[i], c0[i]);
        EXPECT_EQ(evaluate_solution(sol, 0.3, 0.0), synthesize(c0, 0.3));
    }
    ProblemSpec literal = example1(4);
    literal.alpha = 0.5;
    literal.propagator = PropagatorChoice::paper_literal;
    EXPECT_THROW(solve(literal).coefficients_at(0.0), DomainError);
}

TEST(Solver, ZeroDataGivesZeroSolution) {
    for (double alpha : {0.5, 1.0}) {
        ProblemSpec spec;
        spec.alpha = alpha;
        const Solution sol = solve(spec);
        for (double t : {0.0, 0.4, 1.0}) EXPECT_EQ(sol.coefficients_at(t).values().cwiseAbs().maxCoeff(), 0.0);
    }
}

TEST(Solver, LinearInData) {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    auto random_poly = [&](int degree, bool with_t) {
        MonomialSum terms;
        for (int k = 0; k <= degree; ++k) {
            terms.push_back({coef(rng), static_cast<double>(k), 0.0});
            if (with_t) terms.push_back({coef(rng), static_cast<double>(k), 1.0});
        }
        return canonical(terms);
    };
    for (double alpha : {1.0, 0.6}) {
        for (int n : alpha == 1.0 ? std::vector<int>{2, 4, 6} : std::vector<int>{2, 3, 4}) {
            const MonomialSum g1 = random_poly(n, false), g2 = random_poly(n, false);
            const MonomialSum f1 = random_poly(n, true), f2 = random_poly(n, true);
            auto sum = [](MonomialSum a, const MonomialSum& b, double scale) {
                for (auto m : b) {
                    m.coefficient *= scale;
                    a.push_back(m);
                }
                return canonical(a);
            };
            auto run = [&](const MonomialSum& g, const MonomialSum& f) {
                ProblemSpec spec;
                spec.alpha = alpha;
                spec.beta = 0.75;
                spec.gamma = 1.5;
                spec.n = n;
                spec.g = Expression::from_monomials(g);
                spec.f = Expression::from_monomials(f);
                return solve(spec);
            };
            const Solution a = run(g1, f1), b = run(g2, f2), combo = run(sum(g1, g2, 2.0), sum(f1, f2, 2.0));
            for (double t : {0.1, 0.3}) {
                for (double x : {0.0, 0.4, 1.0}) {
                    const double expected = evaluate_solution(a, x, t) + 2.0 * evaluate_solution(b, x, t);
                    EXPECT_NEAR(evaluate_solution(combo, x, t), expected, 1e-10);
                }
            }
        }
    }
}

TEST(Solver, SeriesCapSurfacesAsNumericalError) {
    ProblemSpec spec = example1(10);
    spec.alpha = 0.5;
    spec.beta = 0.75;
    spec.gamma = 1.5;
    const Solution sol = solve(spec);
    EXPECT_THROW(sol.coefficients_at(0.5), NumericalError);
}

TEST(Solver, HomogeneityInInitialData) {
    ProblemSpec one = example1(8), two = example1(8);
    two.g = parse("2*exp(-x)");
    const Solution a = solve(one), b = solve(two);
    for (double x : {0.0, 0.5, 1.0}) EXPECT_NEAR(evaluate_solution(b, x, 0.5), 2.0 * evaluate_solution(a, x, 0.5), 1e-12);
}

TEST(Solver, Example1AgainstCrankNicolsonReference) {
    const int cells = 1000;
    const auto reference = crank_nicolson_example1(0.5, cells, 500);
    double oracle_error = 0.0;
    for (int i = 0; i <= cells; ++i) oracle_error = std::max(oracle_error, std::abs(reference[i] - std::exp(-i / 1000.0 + 1.0)));
    EXPECT_LE(oracle_error, 2e-4);

    // Independent cross-check: |u_n - CN| cannot exceed |u_n - exact| + |CN - exact|.
    const Solution sol = solve(example1(11));
    double solver_error = 0.0, gap = 0.0;
    for (int i = 0; i <= cells; i += 10) {
        const double x = i / 1000.0;
        const double u = evaluate_solution(sol, x, 0.5);
        solver_error = std::max(solver_error, std::abs(u - std::exp(-x + 1.0)));
        gap = std::max(gap, std::abs(u - reference[i]));
    }
    EXPECT_LE(gap, solver_error + oracle_error);
    EXPECT_LE(solver_error, 3e-4);
}

TEST(Solver, Example1ConvergesAtQuarterPoints) {
    double previous = std::numeric_limits<double>::infinity();
    for (int n : {4, 6, 8, 10, 11}) {
        const Solution sol = solve(example1(n));
        double err = 0.0;
        for (double x : {0.0, 0.25, 0.5, 0.75, 1.0}) err = std::max(err, std::abs(evaluate_solution(sol, x, 0.5) - std::exp(-x + 1.0)));
        EXPECT_LT(err, previous) << "n " << n;
        previous = err;
    }
}

}  // namespace
}  // namespace fade
