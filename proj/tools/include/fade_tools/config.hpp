#pragma once

// Flat "key = value" run configuration. Recognized keys:
//   alpha, beta, gamma, nu, k, n, g, f, exact, t_list, x_points, propagator
// '#' starts a comment; lists are comma separated. x_points is either a point
// count (uniform grid on [0,1]) or an explicit list.

#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

#include "fade/errors.hpp"
#include "fade/expression.hpp"
#include "fade/solver.hpp"

namespace fade::tools {

class ConfigError : public DomainError {
public:
    using DomainError::DomainError;
};

struct RunConfig {
    ProblemSpec spec;
    std::optional<Expression> exact;
    std::vector<double> t_list{0.5};
    std::vector<double> x_points;
};

RunConfig parse_config(std::string_view text);

RunConfig load_config(const std::filesystem::path& path);

/// Comma separated doubles; throws ConfigError.
std::vector<double> parse_number_list(std::string_view text);

}  // namespace fade::tools
