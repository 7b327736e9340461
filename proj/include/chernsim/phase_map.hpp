// phase_map.hpp - parameter-grid sweeps for phase diagrams, 1D transition
// cuts, and radial projections onto the three-qubit plane.
//
// Cells are independent and evaluated by a pool of workers pulling indices
// from an atomic counter; results are assembled by index, so the output is
// bit-identical for any worker count. A cell that fails (for example a
// degenerate ground-state initialization on a phase boundary) degrades to
// NaN with its message kept in the diagnostics, never aborting the grid.

#pragma once

#include <atomic>
#include <cmath>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "chernsim/spin_models.hpp"
#include "chernsim/sweep_dynamics.hpp"
#include "chernsim/topology.hpp"

namespace chernsim {

struct AxisSpec {
    double start = 0.0;
    double stop = 0.0;
    int count = 0;

    void validate() const {
        if (!(start < stop)) throw std::invalid_argument("AxisSpec: start must be < stop");
        if (count < 2) throw std::invalid_argument("AxisSpec: count must be >= 2");
    }
    double point(int k) const { return start + k * (stop - start) / (count - 1); }

    // "start:stop:count"
    static AxisSpec parse(const std::string& text) {
        const auto p1 = text.find(':');
        const auto p2 = text.find(':', p1 == std::string::npos ? p1 : p1 + 1);
        if (p1 == std::string::npos || p2 == std::string::npos)
            throw std::invalid_argument("axis spec must be start:stop:count, got '" + text + "'");
        AxisSpec a;
        size_t used = 0;
        a.start = std::stod(text.substr(0, p1), &used);
        a.stop = std::stod(text.substr(p1 + 1, p2 - p1 - 1));
        a.count = std::stoi(text.substr(p2 + 1));
        a.validate();
        return a;
    }
};

struct CellDiagnostics {
    double min_gap = std::numeric_limits<double>::quiet_NaN();
    bool boundary_flag = false;
    std::string error;  // empty when the cell computed cleanly
};

enum class GridSystem { Nv, ThreeQubit };

inline const char* to_string(GridSystem s) {
    return s == GridSystem::Nv ? "nv" : "three-qubit";
}

// Row-major with the y axis outer: cell (ix, iy) lives at iy * count_x + ix.
struct PhaseGrid {
    GridSystem system = GridSystem::Nv;
    ChernMethod method = ChernMethod::MonopoleCount;
    AxisSpec x_axis, y_axis;
    std::string x_label, y_label;
    double alpha = 0.0;
    std::vector<double> values;
    std::vector<CellDiagnostics> diagnostics;

    double value_at(int ix, int iy) const { return values[static_cast<size_t>(iy) * x_axis.count + ix]; }
    const CellDiagnostics& diag_at(int ix, int iy) const {
        return diagnostics[static_cast<size_t>(iy) * x_axis.count + ix];
    }
};

struct GridJob {
    GridSystem system = GridSystem::Nv;
    ChernMethod method = ChernMethod::MonopoleCount;
    AxisSpec x, y;            // nv: x = H0~, y = Hr~; three-qubit: x = g'~, y = H0'~
    double alpha = 2.0;
    double scale = kDefaultAPar;  // a_par (nv) or H_r' (three-qubit), rad/s
    int jobs = 0;                 // worker cap; 0 = hardware concurrency
    PropagationSettings settings;
    int fhs_n_theta = 60;
    int fhs_n_phi = 120;
};

namespace detail {

inline int worker_count(int jobs, size_t n_items) {
    unsigned hw = std::thread::hardware_concurrency();
    int n = jobs > 0 ? jobs : static_cast<int>(hw > 0 ? hw : 1);
    return static_cast<int>(std::min<size_t>(n, n_items));
}

// Deterministic parallel map: fn(i) fills slot i regardless of scheduling.
template <typename Fn>
inline void parallel_for(size_t n_items, int jobs, const Fn& fn) {
    const int workers = worker_count(jobs, n_items);
    if (workers <= 1) {
        for (size_t i = 0; i < n_items; ++i) fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (size_t i = next.fetch_add(1); i < n_items; i = next.fetch_add(1)) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

struct CellValue {
    double value = std::numeric_limits<double>::quiet_NaN();
    CellDiagnostics diag;
};

inline CellValue grid_cell(const GridJob& job, double x, double y) {
    CellValue out;
    try {
        ChernResult r;
        if (job.system == GridSystem::Nv) {
            NVModel model;
            model.a_par = job.scale;
            const NormalizedPoint p{y, x};
            switch (job.method) {
                case ChernMethod::Dynamic: r = chern_dynamic(p, job.alpha, model, job.settings); break;
                case ChernMethod::Fhs: r = chern_fhs_nv(model, p, job.fhs_n_theta, job.fhs_n_phi); break;
                case ChernMethod::MonopoleCount: r = monopole_count_nv(p); break;
            }
        } else {
            ThreeQubitModel model{x * job.scale, y * job.scale, job.scale};
            switch (job.method) {
                case ChernMethod::Dynamic: r = chern_dynamic_three_qubit(model, job.alpha, job.settings); break;
                case ChernMethod::Fhs: r = chern_fhs_three_qubit(model, job.fhs_n_theta, job.fhs_n_phi); break;
                case ChernMethod::MonopoleCount: r = monopole_count_three_qubit(model); break;
            }
        }
        out.value = r.value;
        out.diag.min_gap = r.diagnostics.min_gap;
        out.diag.boundary_flag = r.diagnostics.boundary_flag;
    } catch (const std::exception& e) {
        out.diag.error = e.what();
    }
    return out;
}

}  // namespace detail

inline PhaseGrid sweep_grid(const GridJob& job) {
    job.x.validate();
    job.y.validate();
    job.settings.validate();

    PhaseGrid grid;
    grid.system = job.system;
    grid.method = job.method;
    grid.x_axis = job.x;
    grid.y_axis = job.y;
    grid.x_label = (job.system == GridSystem::Nv) ? "h0_tilde" : "g_tilde_prime";
    grid.y_label = (job.system == GridSystem::Nv) ? "hr_tilde" : "h0_tilde_prime";
    grid.alpha = job.alpha;

    const size_t n_cells = static_cast<size_t>(job.x.count) * job.y.count;
    grid.values.assign(n_cells, std::numeric_limits<double>::quiet_NaN());
    grid.diagnostics.assign(n_cells, CellDiagnostics{});

    detail::parallel_for(n_cells, job.jobs, [&](size_t i) {
        const int ix = static_cast<int>(i % job.x.count);
        const int iy = static_cast<int>(i / job.x.count);
        detail::CellValue cell = detail::grid_cell(job, job.x.point(ix), job.y.point(iy));
        grid.values[i] = cell.value;
        grid.diagnostics[i] = std::move(cell.diag);
    });
    return grid;
}

// One row of a phase diagram: vary one normalized coordinate, hold the other.
struct TransitionCut {
    GridSystem system = GridSystem::Nv;
    ChernMethod method = ChernMethod::MonopoleCount;
    std::string fixed_name;
    double fixed_value = 0.0;
    std::string varying_name;
    AxisSpec varying;
    double alpha = 0.0;
    std::vector<double> values;
    std::vector<CellDiagnostics> diagnostics;
};

// fixed_name: "h0" or "hr" for the NV system; "g" or "h0p" for the chain.
inline TransitionCut transition_cut(const GridJob& base, const std::string& fixed_name,
                                    double fixed_value, const AxisSpec& varying) {
    varying.validate();
    const bool nv = base.system == GridSystem::Nv;
    bool fixed_is_x;
    if (nv && fixed_name == "h0") fixed_is_x = true;
    else if (nv && fixed_name == "hr") fixed_is_x = false;
    else if (!nv && fixed_name == "g") fixed_is_x = true;
    else if (!nv && fixed_name == "h0p") fixed_is_x = false;
    else throw std::invalid_argument("transition_cut: unknown fixed axis '" + fixed_name + "'");

    TransitionCut cut;
    cut.system = base.system;
    cut.method = base.method;
    cut.fixed_name = fixed_name;
    cut.fixed_value = fixed_value;
    cut.varying_name = nv ? (fixed_is_x ? "hr" : "h0") : (fixed_is_x ? "h0p" : "g");
    cut.varying = varying;
    cut.alpha = base.alpha;
    cut.values.assign(varying.count, std::numeric_limits<double>::quiet_NaN());
    cut.diagnostics.assign(varying.count, CellDiagnostics{});

    detail::parallel_for(static_cast<size_t>(varying.count), base.jobs, [&](size_t i) {
        const double v = varying.point(static_cast<int>(i));
        const double x = fixed_is_x ? fixed_value : v;
        const double y = fixed_is_x ? v : fixed_value;
        detail::CellValue cell = detail::grid_cell(base, x, y);
        cut.values[i] = cell.value;
        cut.diagnostics[i] = std::move(cell.diag);
    });
    return cut;
}

// Radial projection: for fixed H0~, sweep Hr~ and report each point in
// three-qubit coordinates together with its dynamic Chern number.
struct RadialPoint {
    double h_r_tilde = 0.0;
    double g_tilde_prime = 0.0;
    double h0_tilde_prime = 0.0;
    double chern = std::numeric_limits<double>::quiet_NaN();
    CellDiagnostics diag;
};

struct RadialCurve {
    double h_0_tilde = 0.0;
    std::vector<RadialPoint> points;
};

inline std::vector<RadialCurve> radial_projection(const std::vector<double>& h0_tildes,
                                                  const AxisSpec& hr_range, double alpha,
                                                  const NVModel& model,
                                                  const PropagationSettings& settings, int jobs = 0) {
    hr_range.validate();
    model.validate();
    std::vector<RadialCurve> curves(h0_tildes.size());
    for (size_t c = 0; c < h0_tildes.size(); ++c) {
        curves[c].h_0_tilde = h0_tildes[c];
        curves[c].points.assign(hr_range.count, RadialPoint{});
    }
    const size_t n = h0_tildes.size() * static_cast<size_t>(hr_range.count);
    detail::parallel_for(n, jobs, [&](size_t i) {
        const size_t c = i / hr_range.count;
        const int k = static_cast<int>(i % hr_range.count);
        RadialPoint& pt = curves[c].points[k];
        pt.h_r_tilde = hr_range.point(k);
        try {
            const NormalizedPoint p{pt.h_r_tilde, h0_tildes[c]};
            const ProjectedPoint proj = project_to_three_qubit(p);
            pt.g_tilde_prime = proj.g_tilde_prime;
            pt.h0_tilde_prime = proj.h0_tilde_prime;
            ChernResult r = chern_dynamic(p, alpha, model, settings);
            pt.chern = r.value;
            pt.diag.min_gap = r.diagnostics.min_gap;
            pt.diag.boundary_flag = r.diagnostics.boundary_flag;
        } catch (const std::exception& e) {
            pt.diag.error = e.what();
        }
    });
    return curves;
}

}  // namespace chernsim
