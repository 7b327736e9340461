// chernsim - command-line driver for the sweep/topology pipelines.
//
// All user-facing radii and offsets are normalized: --hr is H_r/A_par and
// --h0 is H_0/A_par for the NV system; the three-qubit system uses g/H_r'
// and H_0'/H_r'. The hyperfine scale is supplied separately in ordinary
// frequency (--a_par_hz). Exit codes: 0 success, 1 compute error, 2 flag or
// domain error.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chernsim/chernsim.hpp"

namespace {

using namespace chernsim;

struct GlobalConfig {
    double a_par_hz = kDefaultAParHz;  // A_par / 2pi in Hz
    double alpha = 2.0;
    double dt_s = 1e-9;
    int n_theta = 181;
    std::string init = "ground";
    int jobs = 0;

    double a_par() const { return 2.0 * kPi * a_par_hz; }
    PropagationSettings settings() const { return PropagationSettings{dt_s, n_theta}; }
    InitPolicy init_policy() const {
        if (init == "ground") return InitPolicy::GroundState;
        if (init == "electron-zero") return InitPolicy::ElectronZero;
        throw std::invalid_argument("init must be 'ground' or 'electron-zero'");
    }
};

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    if (out.empty()) throw std::invalid_argument("empty list: '" + text + "'");
    return out;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    for (double v : parse_double_list(text)) out.push_back(static_cast<int>(v));
    return out;
}

NVModel nv_model_for(const GlobalConfig& cfg, const std::vector<int>& sectors) {
    NVModel model;
    model.a_par = cfg.a_par();
    if (!sectors.empty()) {
        model.sector_labels = sectors;
        model.sector_weights.assign(sectors.size(), 1.0);
    }
    model.validate();
    return model;
}

ChernMethod parse_method(const std::string& name) {
    if (name == "dynamic") return ChernMethod::Dynamic;
    if (name == "fhs") return ChernMethod::Fhs;
    if (name == "count") return ChernMethod::MonopoleCount;
    throw std::invalid_argument("method must be dynamic, fhs, or count");
}

int cmd_berry(const GlobalConfig& cfg, double hr, double h0, const std::string& out_path,
              const std::vector<int>& sectors) {
    const NVModel model = nv_model_for(cfg, sectors);
    const NormalizedPoint point{hr, h0};
    const LarmorSweep sweep = sweep_from_normalized(point, cfg.alpha, model.a_par);
    const SweepTrace trace = run_nv_sweep(model, sweep, cfg.init_policy(), cfg.settings());
    const CurvatureTrace curv = curvature_from_trace(trace, sweep);
    const ChernResult c = integrate_chern(curv);
    if (!out_path.empty()) export_curvature_csv(trace, curv, out_path);
    std::printf("C = %s (dynamic, alpha=%s)\n", format_double(c.value).c_str(),
                format_double(cfg.alpha).c_str());
    return 0;
}

int cmd_chern(const GlobalConfig& cfg, double hr, double h0, const std::string& method,
              const std::string& out_path) {
    const NVModel model = nv_model_for(cfg, {});
    const NormalizedPoint point{hr, h0};
    ChernResult r;
    switch (parse_method(method)) {
        case ChernMethod::Dynamic: r = chern_dynamic(point, cfg.alpha, model, cfg.settings(),
                                                     cfg.init_policy()); break;
        case ChernMethod::Fhs: r = chern_fhs_nv(model, point); break;
        case ChernMethod::MonopoleCount: r = monopole_count_nv(point); break;
    }
    const bool dynamic = r.method == ChernMethod::Dynamic;
    if (dynamic)
        std::printf("C = %s (%s, alpha=%s)\n", format_double(r.value).c_str(), to_string(r.method),
                    format_double(cfg.alpha).c_str());
    else
        std::printf("C = %s (%s)\n", format_double(r.value).c_str(), to_string(r.method));

    nlohmann::json j;
    j["chern"] = r.value;
    j["method"] = to_string(r.method);
    j["hr_tilde"] = hr;
    j["h0_tilde"] = h0;
    if (dynamic) j["alpha"] = cfg.alpha;
    if (!std::isnan(r.diagnostics.min_gap)) j["min_gap"] = r.diagnostics.min_gap;
    if (!std::isnan(r.diagnostics.refinement_delta))
        j["refinement_delta"] = r.diagnostics.refinement_delta;
    j["boundary"] = r.diagnostics.boundary_flag;
    if (out_path.empty()) {
        std::printf("%s\n", j.dump().c_str());
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open '" + out_path + "' for writing");
        out << j.dump(2) << '\n';
    }
    return 0;
}

int cmd_phase_diagram(const GlobalConfig& cfg, const std::string& system, const std::string& x_spec,
                      const std::string& y_spec, const std::string& method, const std::string& out_path,
                      const std::string& json_path, const std::string& svg_path, int svg_w, int svg_h) {
    GridJob job;
    if (system == "nv") job.system = GridSystem::Nv;
    else if (system == "3q") job.system = GridSystem::ThreeQubit;
    else throw std::invalid_argument("system must be 'nv' or '3q'");
    job.method = parse_method(method);
    job.x = AxisSpec::parse(x_spec);
    job.y = AxisSpec::parse(y_spec);
    job.alpha = cfg.alpha;
    job.scale = cfg.a_par();
    job.jobs = cfg.jobs;
    job.settings = cfg.settings();

    const PhaseGrid grid = sweep_grid(job);
    if (!out_path.empty()) export_csv(grid, out_path);
    if (!json_path.empty()) export_json(grid, json_path, cfg.settings());
    if (!svg_path.empty()) export_svg_heatmap(grid, svg_path, svg_w, svg_h);

    int errors = 0;
    for (const auto& d : grid.diagnostics)
        if (!d.error.empty()) ++errors;
    std::printf("phase diagram %s/%s: %d x %d cells, %d errored\n", system.c_str(), method.c_str(),
                job.x.count, job.y.count, errors);
    return 0;
}

int cmd_lz(const GlobalConfig& cfg, double hr, double h0, const std::string& alphas_text,
           const std::string& out_path, const std::vector<int>& sectors) {
    const NVModel model = nv_model_for(cfg, sectors);
    const std::vector<double> alphas = parse_double_list(alphas_text);
    const auto points =
        landau_zener_scan(model, NormalizedPoint{hr, h0}, alphas, cfg.init_policy(), cfg.settings());
    if (!out_path.empty()) export_lz_csv(points, out_path);
    std::printf("alpha,ground_pop,sz_final\n");
    for (const auto& p : points)
        std::printf("%s,%s,%s\n", format_double(p.alpha).c_str(),
                    format_double(p.ground_pop_mean).c_str(), format_double(p.sz_final_mean).c_str());
    return 0;
}

int cmd_project(double hr, double h0) {
    const ProjectedPoint p = project_to_three_qubit(NormalizedPoint{hr, h0});
    std::printf("%s,%s\n", format_double(p.g_tilde_prime).c_str(),
                format_double(p.h0_tilde_prime).c_str());
    return 0;
}

int cmd_radial(const GlobalConfig& cfg, const std::string& h0_list_text, const std::string& hr_spec,
               const std::string& out_path) {
    const std::vector<double> h0s = parse_double_list(h0_list_text);
    const AxisSpec hr_axis = AxisSpec::parse(hr_spec);
    const NVModel model = nv_model_for(cfg, {});
    const auto curves = radial_projection(h0s, hr_axis, cfg.alpha, model, cfg.settings(), cfg.jobs);
    if (!out_path.empty()) export_csv(curves, out_path);
    std::printf("h0_tilde,g_tilde_prime,h0_tilde_prime,chern\n");
    for (const auto& curve : curves)
        for (const auto& pt : curve.points)
            std::printf("%s,%s,%s,%s\n", format_double(curve.h_0_tilde).c_str(),
                        format_double(pt.g_tilde_prime).c_str(),
                        format_double(pt.h0_tilde_prime).c_str(), format_double(pt.chern).c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Chern-number simulator for swept spin systems"};
    app.fallthrough();

    GlobalConfig cfg;
    app.set_config("--config", "", "Config file with 'key = value' lines (same keys as the options below)")
        ->envname("CHERNSIM_CONFIG");
    app.add_option("--a_par_hz", cfg.a_par_hz,
                   "Hyperfine coupling A_par/2pi in ordinary frequency (Hz)")
        ->capture_default_str();
    app.add_option("--alpha", cfg.alpha, "Adiabaticity parameter alpha = W1 T_ramp / 2pi (dimensionless)")
        ->capture_default_str();
    app.add_option("--dt_s,--dt", cfg.dt_s, "Propagation step size in seconds")->capture_default_str();
    app.add_option("--n_theta,--ntheta", cfg.n_theta, "Number of theta records on [0, pi]")
        ->capture_default_str();
    app.add_option("--init", cfg.init, "Initial state: 'ground' or 'electron-zero'")
        ->capture_default_str();
    app.add_option("--jobs", cfg.jobs, "Worker thread cap for grid sweeps (0 = all cores)")
        ->capture_default_str();

    // berry
    auto* berry = app.add_subcommand("berry", "Berry-curvature trace and Chern number for one sweep");
    double b_hr = 0.0, b_h0 = 0.0;
    std::string b_out, b_sectors;
    berry->add_option("--hr", b_hr, "Normalized sweep radius H_r/A_par (dimensionless)")->required();
    berry->add_option("--h0", b_h0, "Normalized sweep offset H_0/A_par (dimensionless)")->required();
    berry->add_option("--out", b_out, "Curvature CSV output path");
    berry->add_option("--sectors", b_sectors, "Comma list of nuclear sectors to include (default -1,0,+1)");

    // chern
    auto* chern = app.add_subcommand("chern", "Single Chern number by any method");
    double c_hr = 0.0, c_h0 = 0.0;
    std::string c_method = "dynamic", c_out;
    chern->add_option("--hr", c_hr, "Normalized sweep radius H_r/A_par (dimensionless)")->required();
    chern->add_option("--h0", c_h0, "Normalized sweep offset H_0/A_par (dimensionless)")->required();
    chern->add_option("--method", c_method, "dynamic | fhs | count")->required();
    chern->add_option("--out", c_out, "JSON output path (default: print to stdout)");

    // phase-diagram
    auto* phase = app.add_subcommand("phase-diagram", "2D Chern phase map over a normalized grid");
    std::string p_system = "nv", p_x, p_y, p_method = "count", p_out, p_json, p_svg;
    int p_svg_w = 640, p_svg_h = 520;
    phase->add_option("--system", p_system, "nv | 3q")->capture_default_str();
    phase->add_option("--x", p_x,
                      "x axis as start:stop:count (nv: H_0/A_par; 3q: g/H_r', all dimensionless)")
        ->required();
    phase->add_option("--y", p_y,
                      "y axis as start:stop:count (nv: H_r/A_par; 3q: H_0'/H_r', all dimensionless)")
        ->required();
    phase->add_option("--method", p_method, "dynamic | fhs | count")->capture_default_str();
    phase->add_option("--out", p_out, "Grid CSV output path");
    phase->add_option("--json", p_json, "Grid JSON output path");
    phase->add_option("--svg", p_svg, "Heatmap SVG output path");
    phase->add_option("--svg-width", p_svg_w, "SVG width in px")->capture_default_str();
    phase->add_option("--svg-height", p_svg_h, "SVG height in px")->capture_default_str();

    // lz
    auto* lz = app.add_subcommand("lz", "Landau-Zener adiabaticity scan over alpha");
    double l_hr = 0.0, l_h0 = 0.0;
    std::string l_alphas, l_out, l_sectors;
    lz->add_option("--hr", l_hr, "Normalized sweep radius H_r/A_par (dimensionless)")->required();
    lz->add_option("--h0", l_h0, "Normalized sweep offset H_0/A_par (dimensionless)")->required();
    lz->add_option("--alphas", l_alphas, "Comma list of adiabaticity parameters")->required();
    lz->add_option("--out", l_out, "CSV output path (alpha,ground_pop,sz_final)");
    lz->add_option("--sectors", l_sectors, "Comma list of nuclear sectors to include (default -1,0,+1)");

    // project
    auto* project = app.add_subcommand("project", "Map a normalized NV point onto the three-qubit plane");
    double pr_hr = 0.0, pr_h0 = 0.0;
    project->add_option("--hr", pr_hr, "Normalized sweep radius H_r/A_par (dimensionless)")->required();
    project->add_option("--h0", pr_h0, "Normalized sweep offset H_0/A_par, must lie in [-0.5, 1.5]")
        ->required();

    // radial
    auto* radial = app.add_subcommand("radial", "Radial projection curves with dynamic Chern values");
    std::string r_h0_list = "0,0.23,0.45,0.68,0.91", r_hr = "0.22:2.2:20", r_out;
    radial->add_option("--h0-list", r_h0_list, "Comma list of normalized offsets H_0/A_par")
        ->capture_default_str();
    radial->add_option("--hr", r_hr, "Radius range start:stop:count (normalized H_r/A_par)")
        ->capture_default_str();
    radial->add_option("--out", r_out, "CSV output path");

    app.require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (berry->parsed())
            return cmd_berry(cfg, b_hr, b_h0, b_out,
                             b_sectors.empty() ? std::vector<int>{} : parse_int_list(b_sectors));
        if (chern->parsed()) return cmd_chern(cfg, c_hr, c_h0, c_method, c_out);
        if (phase->parsed())
            return cmd_phase_diagram(cfg, p_system, p_x, p_y, p_method, p_out, p_json, p_svg, p_svg_w,
                                     p_svg_h);
        if (lz->parsed())
            return cmd_lz(cfg, l_hr, l_h0, l_alphas, l_out,
                          l_sectors.empty() ? std::vector<int>{} : parse_int_list(l_sectors));
        if (project->parsed()) return cmd_project(pr_hr, pr_h0);
        if (radial->parsed()) return cmd_radial(cfg, r_h0_list, r_hr, r_out);
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
