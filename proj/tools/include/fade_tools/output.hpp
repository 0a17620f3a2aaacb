#pragma once

// CSV and SVG emission.

#include <filesystem>
#include <string>
#include <vector>

#include "fade/analysis.hpp"

namespace fade::tools {

/// 17 significant digits, '.' as decimal separator, "nan"/"inf"/"-inf" for
/// non-finite values. Independent of the locale.
std::string format_number(double value);

/// Header x,t,u_numeric,u_exact,abs_error.
std::string solution_csv(const std::vector<ErrorSample>& samples);

/// Header n,t,linf_error,l2_error,residual_norm,bound.
std::string convergence_csv(const std::vector<ConvergenceRow>& rows);

struct BoundRow {
    int n;
    double empirical;
    double bound;
};

/// Header n,empirical,bound,holds.
std::string bound_csv(const std::vector<BoundRow>& rows);

/// Writes to a temporary sibling, then renames over the target.
void write_atomic(const std::filesystem::path& path, const std::string& content);

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    bool dashed = false;
};

/// A standalone SVG 1.1 line chart.
std::string line_chart(const std::string& title, const std::string& x_label, const std::string& y_label,
                       const std::vector<PlotSeries>& series, bool log_y);

/// Absolute error against x, one curve per time level (log scale).
std::string error_curves_svg(const std::vector<ErrorSample>& samples, const std::string& title);

/// Exact (dashed) and numeric solutions against x, one pair per time level.
std::string overlay_svg(const std::vector<ErrorSample>& samples, const std::string& title);

}  // namespace fade::tools
