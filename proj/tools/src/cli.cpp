#include "fade_tools/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "fade/analysis.hpp"
#include "fade/errors.hpp"
#include "fade_tools/output.hpp"

namespace fade::tools {

namespace fs = std::filesystem;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<ErrorSample> sample_solution(const Solution& sol, const RunConfig& config) {
    if (config.exact) {
        const Expression exact = *config.exact;
        return error_report(sol, [&](double x, double t) { return eval(exact, x, t); }, config.x_points,
                            config.t_list)
            .samples;
    }
    std::vector<ErrorSample> samples;
    for (double t : config.t_list) {
        const CoefficientVector c = sol.coefficients_at(t);
        for (double x : config.x_points) samples.push_back({x, t, synthesize(c, x), kNaN, kNaN});
    }
    return samples;
}

void print_summary(const std::vector<ErrorSample>& samples, const Solution& sol, std::ostream& out) {
    out << "n = " << sol.system().n << ", propagator = " << to_string(sol.propagator()) << '\n';
    double current_t = kNaN;
    double linf = 0.0;
    auto flush = [&] {
        if (!std::isnan(current_t)) {
            out << "t = " << format_number(current_t) << "  max abs error = " << format_number(linf) << '\n';
        }
    };
    for (const auto& s : samples) {
        if (s.t != current_t) {
            flush();
            current_t = s.t;
            linf = std::isnan(s.abs_error) ? kNaN : 0.0;
        }
        if (!std::isnan(linf)) linf = std::max(linf, s.abs_error);
    }
    flush();
}

void emit_solution(const RunConfig& config, const fs::path& dir, const std::string& title, bool svg,
                   std::ostream& out) {
    const Solution sol = solve(config.spec);
    const auto samples = sample_solution(sol, config);
    write_atomic(dir / "solution.csv", solution_csv(samples));
    if (svg) {
        if (config.exact) write_atomic(dir / "error_curves.svg", error_curves_svg(samples, title));
        write_atomic(dir / "overlay.svg", overlay_svg(samples, title));
    }
    print_summary(samples, sol, out);
}

MonomialSum exact_monomials(const char* text) {
    const Classification cls = classify(parse(text));
    return cls.terms;
}

}  // namespace

RunConfig example_config(int id, const ExampleOptions& options) {
    RunConfig config;
    ProblemSpec& spec = config.spec;
    spec.nu = 1.0;
    spec.k = 1.0;
    spec.propagator = options.propagator;
    switch (id) {
        case 1: {
            spec.alpha = options.alpha.value_or(1.0);
            spec.beta = options.beta.value_or(1.0);
            spec.gamma = options.gamma.value_or(2.0);
            spec.n = options.n.value_or(10);
            spec.g = parse("exp(-x)");
            if (spec.alpha == 1.0 && spec.beta == 1.0 && spec.gamma == 2.0) config.exact = parse("exp(-x + 2*t)");
            config.t_list = {0.00001, 0.1, 0.5, 0.9, 0.99999};
            break;
        }
        case 2: {
            spec.alpha = options.alpha.value_or(1.0);
            spec.beta = options.beta.value_or(1.0);
            spec.gamma = options.gamma.value_or(2.0 * spec.beta);
            spec.n = options.n.value_or(4);
            spec.g = parse("x^2");
            const MonomialSum u = exact_monomials("x^2 + t^2");
            spec.f = Expression::from_monomials(manufacture_source(u, spec.alpha, spec.beta, spec.gamma, 1.0, 1.0));
            config.exact = Expression::from_monomials(u);
            config.t_list = {0.1, 0.25, 0.5, 0.75, 0.9};
            break;
        }
        case 3: {
            spec.alpha = options.alpha.value_or(0.5);
            spec.beta = options.beta.value_or(1.0);
            spec.gamma = options.gamma.value_or(2.0);
            spec.n = options.n.value_or(4);
            spec.g = parse("x^2");
            const MonomialSum u = exact_monomials("x^2 + t");
            spec.f = Expression::from_monomials(manufacture_source(u, spec.alpha, spec.beta, spec.gamma, 1.0, 1.0));
            config.exact = Expression::from_monomials(u);
            config.t_list = {0.1, 0.25, 0.5, 0.75, 0.9};
            break;
        }
        default: throw ConfigError("example must be 1, 2 or 3");
    }
    if (options.t_list) config.t_list = *options.t_list;
    config.x_points = uniform_grid(101);
    validate(spec);
    return config;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Spectral Galerkin solver for fractional advection-dispersion equations", "fade"};
    app.require_subcommand(1);

    std::string out_dir = ".";
    bool no_svg = false;

    auto* solve_cmd = app.add_subcommand("solve", "Solve a configured problem and write solution.csv");
    std::string config_path;
    solve_cmd->add_option("--config", config_path, "key = value problem file")->required();
    solve_cmd->add_option("--out", out_dir, "output directory");
    solve_cmd->add_flag("--no-svg", no_svg, "skip SVG plots");

    auto* example_cmd = app.add_subcommand("example", "Run one of the reference problems");
    int example_id = 0;
    ExampleOptions options;
    int n_opt = 0;
    double alpha_opt = 0.0, beta_opt = 0.0, gamma_opt = 0.0;
    std::string propagator = "auto";
    std::vector<double> t_list_opt;
    example_cmd->add_option("id", example_id, "1, 2 or 3")->required()->check(CLI::Range(1, 3));
    auto* n_flag = example_cmd->add_option("--n", n_opt, "highest basis index");
    auto* alpha_flag = example_cmd->add_option("--alpha", alpha_opt, "time order");
    auto* beta_flag = example_cmd->add_option("--beta", beta_opt, "advection order");
    auto* gamma_flag = example_cmd->add_option("--gamma", gamma_opt, "dispersion order");
    example_cmd->add_option("--propagator", propagator, "auto, paper-literal or mittag-leffler");
    auto* t_flag = example_cmd->add_option("--t-list", t_list_opt, "comma separated times")->delimiter(',');
    example_cmd->add_option("--out", out_dir, "output directory");
    example_cmd->add_flag("--no-svg", no_svg, "skip SVG plots");

    auto* convergence_cmd = app.add_subcommand("convergence", "Tabulate errors over several basis sizes");
    std::vector<int> n_list;
    double K = 0.0;
    convergence_cmd->add_option("--config", config_path, "key = value problem file")->required();
    convergence_cmd->add_option("--n-list", n_list, "comma separated basis sizes")->required()->delimiter(',');
    auto* k_flag = convergence_cmd->add_option("--K", K, "bound on |f''| for the truncation column");
    convergence_cmd->add_option("--out", out_dir, "output directory");

    auto* bound_cmd = app.add_subcommand("bound", "Compare the truncation estimate with its bound");
    std::string f_text;
    double bound_K = 0.0;
    int n_max = 0;
    bound_cmd->add_option("--f", f_text, "expression in x")->required();
    bound_cmd->add_option("--K", bound_K, "bound on |f''| over [0,1]")->required();
    bound_cmd->add_option("--n-max", n_max, "largest n (rows start at 2)")->required();
    auto* bound_out = bound_cmd->add_option("--out", out_dir, "also write bound.csv here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        const fs::path dir(out_dir);
        if (*solve_cmd) {
            const RunConfig config = load_config(config_path);
            emit_solution(config, dir, "fade solve", !no_svg, out);
        } else if (*example_cmd) {
            if (*n_flag) options.n = n_opt;
            if (*alpha_flag) options.alpha = alpha_opt;
            if (*beta_flag) options.beta = beta_opt;
            if (*gamma_flag) options.gamma = gamma_opt;
            if (*t_flag) options.t_list = t_list_opt;
            options.propagator = parse_propagator_choice(propagator);
            const RunConfig config = example_config(example_id, options);
            if (!config.exact) out << "no closed-form solution for these orders; u_exact is nan\n";
            if (config.spec.f.text() != "0") out << "f(x,t) = " << config.spec.f.text() << '\n';
            emit_solution(config, dir, "example " + std::to_string(example_id), !no_svg, out);
        } else if (*convergence_cmd) {
            const RunConfig config = load_config(config_path);
            if (!config.exact) throw ConfigError("convergence needs an 'exact' expression in the config");
            const Expression exact = *config.exact;
            std::optional<double> bound_constant;
            if (*k_flag) bound_constant = K;
            const auto rows = convergence_study(config.spec, n_list, config.t_list,
                                                [&](double x, double t) { return eval(exact, x, t); },
                                                config.x_points, bound_constant);
            const std::string csv = convergence_csv(rows);
            write_atomic(dir / "convergence.csv", csv);
            out << csv;
            for (const auto& row : rows) {
                if (!row.error.empty()) err << "n = " << row.n << ", t = " << row.t << ": " << row.error << '\n';
            }
        } else if (*bound_cmd) {
            const Expression f = parse(f_text);
            if (n_max < 2) throw ConfigError("--n-max must be at least 2");
            std::vector<BoundRow> rows;
            bool all_hold = true;
            for (int n = 2; n <= n_max; ++n) {
                const BoundRow row{n, empirical_truncation(f, n), truncation_bound(bound_K, n)};
                all_hold = all_hold && row.empirical <= row.bound;
                rows.push_back(row);
            }
            const std::string csv = bound_csv(rows);
            if (*bound_out) write_atomic(dir / "bound.csv", csv);
            out << csv;
            if (!all_hold) err << "the bound is violated for at least one n\n";
        }
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return 2;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

}  // namespace fade::tools
