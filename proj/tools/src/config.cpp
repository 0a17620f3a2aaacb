#include "fade_tools/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "fade/analysis.hpp"

namespace fade::tools {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_number(std::string_view text, const std::string& what) {
    text = trim(text);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
        throw ConfigError(what + ": expected a number, got '" + std::string(text) + "'");
    }
    return value;
}

int parse_int(std::string_view text, const std::string& what) {
    text = trim(text);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        throw ConfigError(what + ": expected an integer, got '" + std::string(text) + "'");
    }
    return value;
}

Expression parse_expression(std::string_view text, const std::string& what) {
    try {
        return parse(trim(text));
    } catch (const SyntaxError& e) {
        throw ConfigError(what + ": " + e.what());
    }
}

}  // namespace

std::vector<double> parse_number_list(std::string_view text) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        out.push_back(parse_number(piece, "list entry"));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

RunConfig parse_config(std::string_view text) {
    RunConfig config;
    std::set<std::string> seen;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_number = 0;
    while (std::getline(in, raw)) {
        ++line_number;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        const std::string where = "line " + std::to_string(line_number);
        if (eq == std::string_view::npos) throw ConfigError(where + ": expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));
        if (!seen.insert(key).second) throw ConfigError(where + ": duplicate key '" + key + "'");
        const std::string what = where + " (" + key + ")";
        try {
            if (key == "alpha") {
                config.spec.alpha = parse_number(value, what);
            } else if (key == "beta") {
                config.spec.beta = parse_number(value, what);
            } else if (key == "gamma") {
                config.spec.gamma = parse_number(value, what);
            } else if (key == "nu") {
                config.spec.nu = parse_number(value, what);
            } else if (key == "k") {
                config.spec.k = parse_number(value, what);
            } else if (key == "n") {
                config.spec.n = parse_int(value, what);
            } else if (key == "g") {
                config.spec.g = parse_expression(value, what);
            } else if (key == "f") {
                config.spec.f = parse_expression(value, what);
            } else if (key == "exact") {
                config.exact = parse_expression(value, what);
            } else if (key == "t_list") {
                config.t_list = parse_number_list(value);
            } else if (key == "x_points") {
                if (value.find(',') == std::string_view::npos) {
                    config.x_points = uniform_grid(parse_int(value, what));
                } else {
                    config.x_points = parse_number_list(value);
                }
            } else if (key == "propagator") {
                config.spec.propagator = parse_propagator_choice(value);
            } else {
                throw ConfigError(where + ": unknown key '" + key + "'");
            }
        } catch (const ConfigError&) {
            throw;
        } catch (const DomainError& e) {
            throw ConfigError(what + ": " + e.what());
        }
    }
    if (!seen.contains("g")) throw ConfigError("missing required key 'g'");
    if (config.x_points.empty()) config.x_points = uniform_grid(101);
    if (config.t_list.empty()) throw ConfigError("t_list must not be empty");
    for (double t : config.t_list) {
        if (t < 0.0) throw ConfigError("t_list entries must be nonnegative");
    }
    for (double x : config.x_points) {
        if (x < 0.0 || x > 1.0) throw ConfigError("x_points must lie in [0, 1]");
    }
    try {
        validate(config.spec);
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    return config;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

}  // namespace fade::tools
