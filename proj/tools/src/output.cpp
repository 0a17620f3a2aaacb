#include "fade_tools/output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <system_error>

#include "fade/errors.hpp"

namespace fade::tools {

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buffer[64];
    const auto result = std::to_chars(buffer, buffer + sizeof buffer, value, std::chars_format::general, 17);
    return std::string(buffer, result.ptr);
}

std::string solution_csv(const std::vector<ErrorSample>& samples) {
    std::string out = "x,t,u_numeric,u_exact,abs_error\n";
    for (const auto& s : samples) {
        out += format_number(s.x) + ',' + format_number(s.t) + ',' + format_number(s.numeric) + ',' +
               format_number(s.exact) + ',' + format_number(s.abs_error) + '\n';
    }
    return out;
}

std::string convergence_csv(const std::vector<ConvergenceRow>& rows) {
    std::string out = "n,t,linf_error,l2_error,residual_norm,bound\n";
    for (const auto& r : rows) {
        out += std::to_string(r.n) + ',' + format_number(r.t) + ',' + format_number(r.linf_error) + ',' +
               format_number(r.l2_error) + ',' + format_number(r.residual_norm) + ',' + format_number(r.bound) +
               '\n';
    }
    return out;
}

std::string bound_csv(const std::vector<BoundRow>& rows) {
    std::string out = "n,empirical,bound,holds\n";
    for (const auto& r : rows) {
        out += std::to_string(r.n) + ',' + format_number(r.empirical) + ',' + format_number(r.bound) + ',' +
               (r.empirical <= r.bound ? "1" : "0") + '\n';
    }
    return out;
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path temp = path;
    temp += ".tmp";
    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (!out) throw DomainError("cannot write '" + temp.string() + "'");
        out << content;
        out.flush();
        if (!out) throw DomainError("failed writing '" + temp.string() + "'");
    }
    std::error_code ec;
    fs::rename(temp, path, ec);
    if (ec) {
        fs::remove(temp);
        throw DomainError("cannot move output into place at '" + path.string() + "': " + ec.message());
    }
}

namespace {

constexpr double kWidth = 760.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 90.0;
constexpr double kRight = 170.0;
constexpr double kTop = 50.0;
constexpr double kBottom = 60.0;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                "#8c564b", "#e377c2", "#17becf", "#7f7f7f", "#bcbd22"};

std::string escape(const std::string& text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string coord(double v) {
    char buffer[32];
    const auto result = std::to_chars(buffer, buffer + sizeof buffer, v, std::chars_format::fixed, 2);
    return std::string(buffer, result.ptr);
}

std::string tick_label(double v) {
    char buffer[32];
    const auto result = std::to_chars(buffer, buffer + sizeof buffer, v, std::chars_format::general, 4);
    return std::string(buffer, result.ptr);
}

std::map<double, std::vector<const ErrorSample*>> by_time(const std::vector<ErrorSample>& samples) {
    std::map<double, std::vector<const ErrorSample*>> levels;
    for (const auto& s : samples) levels[s.t].push_back(&s);
    return levels;
}

}  // namespace

std::string line_chart(const std::string& title, const std::string& x_label, const std::string& y_label,
                       const std::vector<PlotSeries>& series, bool log_y) {
    auto usable = [&](double y) { return std::isfinite(y) && (!log_y || y > 0.0); };
    double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
    double y_min = x_min, y_max = -x_min;
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !usable(s.y[i])) continue;
            const double y = log_y ? std::log10(s.y[i]) : s.y[i];
            x_min = std::min(x_min, s.x[i]);
            x_max = std::max(x_max, s.x[i]);
            y_min = std::min(y_min, y);
            y_max = std::max(y_max, y);
        }
    }
    if (!std::isfinite(x_min)) {
        x_min = 0.0;
        x_max = 1.0;
        y_min = 0.0;
        y_max = 1.0;
    }
    if (log_y) {
        y_min = std::floor(y_min);
        y_max = std::ceil(y_max);
    }
    if (x_max == x_min) x_max = x_min + 1.0;
    if (y_max == y_min) {
        y_min -= 1.0;
        y_max += 1.0;
    }
    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * plot_w; };
    auto py = [&](double y) { return kTop + (1.0 - (y - y_min) / (y_max - y_min)) * plot_h; };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << coord(kLeft + plot_w / 2) << "\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        << "font-size=\"16\">" << escape(title) << "</text>\n"
        << "<rect x=\"" << coord(kLeft) << "\" y=\"" << coord(kTop) << "\" width=\"" << coord(plot_w)
        << "\" height=\"" << coord(plot_h) << "\" fill=\"none\" stroke=\"black\"/>\n";

    for (int i = 0; i <= 5; ++i) {
        const double xv = x_min + (x_max - x_min) * i / 5.0;
        svg << "<line x1=\"" << coord(px(xv)) << "\" y1=\"" << coord(kTop + plot_h) << "\" x2=\"" << coord(px(xv))
            << "\" y2=\"" << coord(kTop + plot_h + 5) << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << coord(px(xv)) << "\" y=\"" << coord(kTop + plot_h + 20)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << tick_label(xv)
            << "</text>\n";
    }
    std::vector<double> y_ticks;
    if (log_y) {
        const int step = std::max(1, static_cast<int>(std::ceil((y_max - y_min) / 8.0)));
        for (double e = y_min; e <= y_max + 1e-9; e += step) y_ticks.push_back(e);
    } else {
        for (int i = 0; i <= 5; ++i) y_ticks.push_back(y_min + (y_max - y_min) * i / 5.0);
    }
    for (double yv : y_ticks) {
        const std::string label = log_y ? "1e" + std::to_string(static_cast<int>(yv)) : tick_label(yv);
        svg << "<line x1=\"" << coord(kLeft - 5) << "\" y1=\"" << coord(py(yv)) << "\" x2=\"" << coord(kLeft)
            << "\" y2=\"" << coord(py(yv)) << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << coord(kLeft - 8) << "\" y=\"" << coord(py(yv) + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" << label << "</text>\n";
    }
    svg << "<text x=\"" << coord(kLeft + plot_w / 2) << "\" y=\"" << coord(kHeight - 15)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << escape(x_label)
        << "</text>\n"
        << "<text x=\"20\" y=\"" << coord(kTop + plot_h / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
        << coord(kTop + plot_h / 2) << ")\" font-family=\"sans-serif\" font-size=\"13\">" << escape(y_label)
        << "</text>\n";

    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        const char* color = kPalette[k % std::size(kPalette)];
        // Non-plottable values split the curve into separate polylines.
        std::vector<std::string> runs(1);
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !usable(s.y[i])) {
                if (!runs.back().empty()) runs.emplace_back();
                continue;
            }
            const double y = log_y ? std::log10(s.y[i]) : s.y[i];
            runs.back() += coord(px(s.x[i])) + ',' + coord(py(y)) + ' ';
        }
        for (const auto& points : runs) {
            if (points.empty()) continue;
            svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\""
                << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << " points=\"" << points << "\"/>\n";
        }
        const double ly = kTop + 10 + 20.0 * static_cast<double>(k);
        svg << "<line x1=\"" << coord(kWidth - kRight + 15) << "\" y1=\"" << coord(ly) << "\" x2=\""
            << coord(kWidth - kRight + 40) << "\" y2=\"" << coord(ly) << "\" stroke=\"" << color
            << "\" stroke-width=\"1.5\"" << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << "/>\n"
            << "<text x=\"" << coord(kWidth - kRight + 46) << "\" y=\"" << coord(ly + 4)
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape(s.label) << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

std::string error_curves_svg(const std::vector<ErrorSample>& samples, const std::string& title) {
    std::vector<PlotSeries> series;
    for (const auto& [t, level] : by_time(samples)) {
        PlotSeries s{"t = " + tick_label(t), {}, {}, false};
        for (const auto* sample : level) {
            s.x.push_back(sample->x);
            s.y.push_back(sample->abs_error);
        }
        series.push_back(std::move(s));
    }
    return line_chart(title, "x", "absolute error", series, true);
}

std::string overlay_svg(const std::vector<ErrorSample>& samples, const std::string& title) {
    std::vector<PlotSeries> series;
    for (const auto& [t, level] : by_time(samples)) {
        PlotSeries numeric{"numeric t = " + tick_label(t), {}, {}, false};
        PlotSeries exact{"exact t = " + tick_label(t), {}, {}, true};
        for (const auto* sample : level) {
            numeric.x.push_back(sample->x);
            numeric.y.push_back(sample->numeric);
            exact.x.push_back(sample->x);
            exact.y.push_back(sample->exact);
        }
        series.push_back(std::move(numeric));
        series.push_back(std::move(exact));
    }
    return line_chart(title, "x", "u(x, t)", series, false);
}

}  // namespace fade::tools
