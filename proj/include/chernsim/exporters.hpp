// exporters.hpp - deterministic CSV / JSON / SVG emitters.
//
// Floats are written as the shortest decimal that round-trips (std::to_chars),
// so two identical runs produce byte-identical files and re-parsing a CSV
// reproduces the values exactly.

#pragma once

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "chernsim/phase_map.hpp"
#include "chernsim/sweep_dynamics.hpp"
#include "chernsim/topology.hpp"
#include "chernsim/version.hpp"

namespace chernsim {

inline std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace detail {

inline std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    return out;
}

inline std::string sanitize_csv_field(std::string s) {
    for (char& c : s)
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    return s;
}

}  // namespace detail

// Grid CSV: header names the two axes, then one row per cell, row-major with
// the y axis outer.
inline void export_csv(const PhaseGrid& grid, const std::string& path) {
    std::ofstream out = detail::open_out(path);
    out << grid.x_label << ',' << grid.y_label << ",chern,method,min_gap,flag\n";
    for (int iy = 0; iy < grid.y_axis.count; ++iy) {
        for (int ix = 0; ix < grid.x_axis.count; ++ix) {
            const CellDiagnostics& d = grid.diag_at(ix, iy);
            std::string flag = d.error.empty() ? (d.boundary_flag ? "boundary" : "") : d.error;
            out << format_double(grid.x_axis.point(ix)) << ',' << format_double(grid.y_axis.point(iy))
                << ',' << format_double(grid.value_at(ix, iy)) << ',' << to_string(grid.method) << ','
                << format_double(d.min_gap) << ',' << detail::sanitize_csv_field(flag) << '\n';
        }
    }
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

inline void export_csv(const TransitionCut& cut, const std::string& path) {
    std::ofstream out = detail::open_out(path);
    out << "x,chern\n";
    for (int k = 0; k < cut.varying.count; ++k)
        out << format_double(cut.varying.point(k)) << ',' << format_double(cut.values[k]) << '\n';
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

inline void export_csv(const std::vector<RadialCurve>& curves, const std::string& path) {
    std::ofstream out = detail::open_out(path);
    out << "h0_tilde,g_tilde_prime,h0_tilde_prime,chern\n";
    for (const auto& curve : curves)
        for (const auto& pt : curve.points)
            out << format_double(curve.h_0_tilde) << ',' << format_double(pt.g_tilde_prime) << ','
                << format_double(pt.h0_tilde_prime) << ',' << format_double(pt.chern) << '\n';
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

// Curvature CSV: theta, the weighted deviation sum, the curvature, then one
// sy column per channel.
inline void export_curvature_csv(const SweepTrace& trace, const CurvatureTrace& curv,
                                 const std::string& path) {
    std::ofstream out = detail::open_out(path);
    out << "theta_rad,sigma_y_sum,f_phi";
    for (const auto& c : trace.channels) out << ",sy_" << detail::sanitize_csv_field(c.label);
    out << '\n';
    for (int k = 0; k < trace.n_theta(); ++k) {
        out << format_double(trace.theta_grid[k]) << ',' << format_double(trace.weighted_sy(k)) << ','
            << format_double(curv.f_phi[k]);
        for (const auto& c : trace.channels) out << ',' << format_double(c.sy[k]);
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

inline void export_lz_csv(const std::vector<LandauZenerPoint>& points, const std::string& path) {
    std::ofstream out = detail::open_out(path);
    out << "alpha,ground_pop,sz_final\n";
    for (const auto& p : points)
        out << format_double(p.alpha) << ',' << format_double(p.ground_pop_mean) << ','
            << format_double(p.sz_final_mean) << '\n';
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

// JSON mirror of the grid CSV plus run metadata.
inline void export_json(const PhaseGrid& grid, const std::string& path,
                        const PropagationSettings& settings) {
    nlohmann::json j;
    j["tool_version"] = kVersion;
    j["system"] = to_string(grid.system);
    j["method"] = to_string(grid.method);
    j["alpha"] = grid.alpha;
    j["dt_s"] = settings.dt;
    j["n_theta"] = settings.n_theta;
    j["x"] = {{"label", grid.x_label}, {"start", grid.x_axis.start}, {"stop", grid.x_axis.stop},
              {"count", grid.x_axis.count}};
    j["y"] = {{"label", grid.y_label}, {"start", grid.y_axis.start}, {"stop", grid.y_axis.stop},
              {"count", grid.y_axis.count}};
    nlohmann::json cells = nlohmann::json::array();
    for (int iy = 0; iy < grid.y_axis.count; ++iy) {
        for (int ix = 0; ix < grid.x_axis.count; ++ix) {
            const CellDiagnostics& d = grid.diag_at(ix, iy);
            nlohmann::json cell;
            cell["x"] = grid.x_axis.point(ix);
            cell["y"] = grid.y_axis.point(iy);
            const double v = grid.value_at(ix, iy);
            if (std::isnan(v)) cell["chern"] = nullptr;
            else cell["chern"] = v;
            if (std::isnan(d.min_gap)) cell["min_gap"] = nullptr;
            else cell["min_gap"] = d.min_gap;
            if (d.boundary_flag) cell["boundary"] = true;
            if (!d.error.empty()) cell["error"] = d.error;
            cells.push_back(std::move(cell));
        }
    }
    j["cells"] = std::move(cells);
    std::ofstream out = detail::open_out(path);
    out << j.dump(2) << '\n';
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

namespace detail {

// Discrete ramp over C in [0, 3]; NaN cells are grey.
inline std::string heatmap_color(double v) {
    if (std::isnan(v)) return "#bbbbbb";
    static const char* ramp[] = {"#2c356d", "#2e7ebc", "#52c0a6", "#f2e34c"};
    int idx = static_cast<int>(std::lround(std::min(std::max(v, 0.0), 3.0)));
    return ramp[idx];
}

}  // namespace detail

// Self-contained rectangular heatmap with axis tick labels.
inline void export_svg_heatmap(const PhaseGrid& grid, const std::string& path, int width = 640,
                               int height = 520) {
    const int margin_left = 70, margin_bottom = 50, margin_top = 30, margin_right = 20;
    const int plot_w = width - margin_left - margin_right;
    const int plot_h = height - margin_top - margin_bottom;
    const int nx = grid.x_axis.count, ny = grid.y_axis.count;

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    svg << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    svg << "<text x=\"" << margin_left << "\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">"
        << to_string(grid.system) << " phase map (" << to_string(grid.method) << ")</text>\n";

    const double cw = static_cast<double>(plot_w) / nx;
    const double ch = static_cast<double>(plot_h) / ny;
    for (int iy = 0; iy < ny; ++iy) {
        for (int ix = 0; ix < nx; ++ix) {
            // y axis increases upward
            const double px = margin_left + ix * cw;
            const double py = margin_top + (ny - 1 - iy) * ch;
            svg << "<rect x=\"" << format_double(px) << "\" y=\"" << format_double(py) << "\" width=\""
                << format_double(cw + 0.5) << "\" height=\"" << format_double(ch + 0.5) << "\" fill=\""
                << detail::heatmap_color(grid.value_at(ix, iy)) << "\"/>\n";
        }
    }

    auto tick_label = [&](double x, double y, double value, const char* anchor) {
        svg << "<text x=\"" << format_double(x) << "\" y=\"" << format_double(y)
            << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"" << anchor << "\">"
            << format_double(value) << "</text>\n";
    };
    for (int t = 0; t <= 4; ++t) {
        const double fx = grid.x_axis.start + t * (grid.x_axis.stop - grid.x_axis.start) / 4.0;
        tick_label(margin_left + t * plot_w / 4.0, height - margin_bottom + 18, fx, "middle");
        const double fy = grid.y_axis.start + t * (grid.y_axis.stop - grid.y_axis.start) / 4.0;
        tick_label(margin_left - 8, margin_top + plot_h - t * plot_h / 4.0 + 4, fy, "end");
    }
    svg << "<text x=\"" << (margin_left + plot_w / 2) << "\" y=\"" << (height - 12)
        << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">" << grid.x_label
        << "</text>\n";
    svg << "<text x=\"16\" y=\"" << (margin_top + plot_h / 2)
        << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << (margin_top + plot_h / 2) << ")\">" << grid.y_label << "</text>\n";
    svg << "</svg>\n";

    std::ofstream out = detail::open_out(path);
    out << svg.str();
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace chernsim
