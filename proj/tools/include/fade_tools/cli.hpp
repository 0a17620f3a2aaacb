#pragma once

// Batch front end. Subcommands:
//   solve --config FILE [--out DIR] [--no-svg]
//   example <1|2|3> [--n N] [--alpha A] [--beta B] [--gamma G]
//                   [--propagator auto|paper-literal|mittag-leffler] [--t-list T,...] [--out DIR] [--no-svg]
//   convergence --config FILE --n-list N,... [--K K] [--out DIR]
//   bound --f EXPR --K K --n-max N [--out DIR]
// Exit status: 0 success, 1 usage or configuration error, 2 numerical failure.

#include <iosfwd>
#include <optional>

#include "fade_tools/config.hpp"

namespace fade::tools {

struct ExampleOptions {
    std::optional<int> n;
    std::optional<double> alpha;
    std::optional<double> beta;
    std::optional<double> gamma;
    std::optional<std::vector<double>> t_list;
    PropagatorChoice propagator = PropagatorChoice::auto_select;
};

/// Presets for the three reference problems:
///   1: u_t = -u_x + u_xx, g = e^{-x}, exact e^{-x+2t} (integer orders only).
///   2: exact x^2 + t^2 with gamma = 2 beta by default; f is manufactured.
///   3: exact x^2 + t with alpha = 1/2 by default; f is manufactured.
RunConfig example_config(int id, const ExampleOptions& options);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fade::tools
