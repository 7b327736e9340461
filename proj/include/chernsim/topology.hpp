// topology.hpp - Berry curvature and Chern numbers.
//
// Three independent routes to the Chern number of a sweep sphere:
//   dynamic        - Berry curvature from the nonadiabatic deviation,
//                    F_phi(th) = H_r sin th <sy> / (2 v_th), integrated over
//                    the polar angle,
//   monopole-count - geometric count of enclosed ground-state degeneracies,
//   fhs            - lattice link-variable Chern number of the filled band
//                    frame on a discretized (theta, phi) sphere.
//
// Sign conventions: one global constant fixes the dynamic estimator so that
// a single enclosed monopole reads +1 under ground-state transport; the
// lattice orientation constants below are fixed the same way, once, against
// that benchmark, and are never re-tuned.

#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "chernsim/linalg.hpp"
#include "chernsim/spin_models.hpp"
#include "chernsim/sweep_dynamics.hpp"

namespace chernsim {

// Global sign of the dynamic curvature estimator, calibrated on the
// single-sector centered-monopole benchmark (C = +1 at large alpha).
inline constexpr double kCurvatureSign = +1.0;

// Lattice (theta, phi) loop orientation, calibrated on the same benchmark
// family so an enclosed unit monopole reads +1.
inline constexpr double kFhsOrientation = -1.0;

// The three-qubit chain carries the opposite overall Hamiltonian sign, which
// aligns its transported ground band opposite to the NV convention; this
// factor makes the lattice result match the dynamic protocol and the
// monopole count for that system.
inline constexpr double kThreeQubitBandOrientation = -1.0;

enum class ChernMethod { Dynamic, Fhs, MonopoleCount };

inline const char* to_string(ChernMethod m) {
    switch (m) {
        case ChernMethod::Dynamic: return "dynamic";
        case ChernMethod::Fhs: return "fhs";
        case ChernMethod::MonopoleCount: return "monopole-count";
    }
    return "?";
}

struct ChernDiagnostics {
    double min_gap = std::numeric_limits<double>::quiet_NaN();           // rad/s for spectral methods;
                                                                         // normalized surface distance for counts
    double refinement_delta = std::numeric_limits<double>::quiet_NaN();  // |C(full grid) - C(half grid)|
    bool boundary_flag = false;                                          // a degeneracy sits near the sweep sphere
};

struct ChernResult {
    double value = 0.0;
    ChernMethod method = ChernMethod::Dynamic;
    ChernDiagnostics diagnostics;
};

// Berry curvature samples on the theta grid.
enum class Aggregation { Sum, PerChannel };

struct CurvatureTrace {
    std::vector<double> theta_grid;
    std::vector<double> f_phi;                         // aggregated over channels
    std::vector<std::vector<double>> f_phi_channels;   // populated for PerChannel
    Aggregation aggregation = Aggregation::Sum;
};

// F_phi(th) = SIGN * H_r sin th * S_y(th) / (2 v_th) with S_y the weighted
// channel sum. The endpoints are exact zeros (sin 0 = sin pi = 0).
inline CurvatureTrace curvature_from_trace(const SweepTrace& trace, const LarmorSweep& sweep,
                                           Aggregation aggregation = Aggregation::Sum) {
    sweep.validate();
    const int n = trace.n_theta();
    if (n < 3 || trace.channels.empty())
        throw std::invalid_argument("curvature_from_trace: empty or undersized trace");
    for (const auto& c : trace.channels)
        if (static_cast<int>(c.sy.size()) != n)
            throw std::invalid_argument("curvature_from_trace: channel/theta grid mismatch");

    const double pref = kCurvatureSign * sweep.omega1 / (2.0 * sweep.v_theta());
    CurvatureTrace out;
    out.theta_grid = trace.theta_grid;
    out.aggregation = aggregation;
    out.f_phi.assign(n, 0.0);
    if (aggregation == Aggregation::PerChannel)
        out.f_phi_channels.assign(trace.channels.size(), std::vector<double>(n, 0.0));

    for (int k = 0; k < n; ++k) {
        const double sn = (k == 0 || k == n - 1) ? 0.0 : std::sin(trace.theta_grid[k]);
        double sum = 0.0;
        for (size_t c = 0; c < trace.channels.size(); ++c) {
            const double f = pref * sn * trace.channels[c].sy[k];
            sum += trace.channels[c].weight * f;
            if (aggregation == Aggregation::PerChannel) out.f_phi_channels[c][k] = f;
        }
        out.f_phi[k] = sum;
    }
    return out;
}

namespace detail {

inline double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
    double s = 0.0;
    for (size_t i = 0; i + 1 < x.size(); ++i) s += 0.5 * (y[i] + y[i + 1]) * (x[i + 1] - x[i]);
    return s;
}

}  // namespace detail

// C = integral of F_phi over theta, composite trapezoid. The refinement
// delta compares against integration on every other grid point.
inline ChernResult integrate_chern(const CurvatureTrace& c) {
    const int n = static_cast<int>(c.theta_grid.size());
    if (n < 3) throw std::invalid_argument("integrate_chern: need at least 3 grid points");
    ChernResult r;
    r.method = ChernMethod::Dynamic;
    r.value = detail::trapezoid(c.theta_grid, c.f_phi);

    std::vector<double> xs, ys;
    for (int k = 0; k < n; k += 2) {
        xs.push_back(c.theta_grid[k]);
        ys.push_back(c.f_phi[k]);
    }
    if (xs.back() != c.theta_grid.back()) {
        xs.push_back(c.theta_grid.back());
        ys.push_back(c.f_phi.back());
    }
    r.diagnostics.refinement_delta = std::abs(r.value - detail::trapezoid(xs, ys));
    return r;
}

// Degeneracies of the NV system sit at normalized z in {-1, 0, +1}; count
// how many fall strictly inside the sweep sphere.
inline ChernResult monopole_count_nv(const NormalizedPoint& p) {
    p.validate();
    ChernResult r;
    r.method = ChernMethod::MonopoleCount;
    int count = 0;
    double min_dist = std::numeric_limits<double>::infinity();
    for (int m = -1; m <= 1; ++m) {
        const double d = std::abs(p.h_0_tilde - m);
        if (d < p.h_r_tilde) ++count;
        min_dist = std::min(min_dist, std::abs(d - p.h_r_tilde));
    }
    r.value = count;
    r.diagnostics.min_gap = min_dist;
    r.diagnostics.boundary_flag = min_dist < 1e-6;
    return r;
}

namespace detail {

// Minimize a V-shaped gap function on [lo, hi] by golden-section; exact
// level crossings reach machine-zero gaps.
template <typename F>
inline std::pair<double, double> refine_gap_minimum(const F& gap, double lo, double hi, int iters = 200) {
    const double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = gap(c), fd = gap(d);
    for (int i = 0; i < iters && (b - a) > 1e-15 * std::max(std::abs(a), std::abs(b)) + 1e-300; ++i) {
        if (fc < fd) {
            b = d; d = c; fd = fc;
            c = b - inv_phi * (b - a);
            fc = gap(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + inv_phi * (b - a);
            fd = gap(d);
        }
    }
    const double z = 0.5 * (a + b);
    return {z, gap(z)};
}

}  // namespace detail

// Locations of the ground-state degeneracies of the three-qubit chain on
// the z-axis (the candidate monopole positions), found by a grid scan of the
// 8x8 ground gap with golden-section refinement of each near-zero minimum.
// Real crossings are symmetry-protected (total magnetization) and refine to
// machine-zero gaps; avoided crossings do not and are discarded.
inline std::vector<double> three_qubit_ground_degeneracies(const ThreeQubitModel& model,
                                                           int scan_points = 2001) {
    model.validate();
    const double scale = std::max({model.h_r_prime, model.h0_prime, std::sqrt(2.0) * model.g});
    const double zmax = 3.0 * scale;

    auto gap = [&model](double z) {
        return eigh(three_qubit_hamiltonian(model, {0.0, 0.0, z})).ground_gap();
    };

    std::vector<double> zs(scan_points), gs(scan_points);
    for (int i = 0; i < scan_points; ++i) {
        zs[i] = -zmax + 2.0 * zmax * i / (scan_points - 1);
        gs[i] = gap(zs[i]);
    }

    const double candidate_tol = 0.02 * scale;
    const double root_tol = 1e-10 * scale;
    std::vector<double> roots;
    for (int i = 1; i + 1 < scan_points; ++i) {
        if (gs[i] <= gs[i - 1] && gs[i] <= gs[i + 1] && gs[i] < candidate_tol) {
            auto [z, g] = detail::refine_gap_minimum(gap, zs[i - 1], zs[i + 1]);
            if (g < root_tol) {
                bool duplicate = false;
                for (double r0 : roots)
                    if (std::abs(r0 - z) < 1e-8 * scale) duplicate = true;
                if (!duplicate) roots.push_back(z);
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

// Count the degeneracies inside the sweep sphere |z| < H_r'.
inline ChernResult monopole_count_three_qubit(const ThreeQubitModel& model, int scan_points = 2001) {
    const std::vector<double> roots = three_qubit_ground_degeneracies(model, scan_points);
    ChernResult r;
    r.method = ChernMethod::MonopoleCount;
    int count = 0;
    double min_surface_dist = std::numeric_limits<double>::infinity();
    for (double z : roots) {
        if (std::abs(z) < model.h_r_prime) ++count;
        min_surface_dist = std::min(min_surface_dist, std::abs(std::abs(z) - model.h_r_prime));
    }
    r.value = count;
    r.diagnostics.min_gap = min_surface_dist;
    r.diagnostics.boundary_flag = min_surface_dist < 1e-6 * model.h_r_prime;
    return r;
}

// Hamiltonian family over the sweep sphere, (theta, phi) -> H.
using SphereFamily = std::function<HermitianOperator(double theta, double phi)>;

namespace detail {

// det of the k x k overlap matrix <psi_a | psi_b> between two filled frames
// (columns are states). k <= n, tiny LU with partial pivoting.
inline Complex frame_overlap_det(const std::vector<StateVector>& a, const std::vector<StateVector>& b) {
    const int k = static_cast<int>(a.size());
    std::vector<Complex> m(static_cast<size_t>(k) * k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) m[static_cast<size_t>(i) * k + j] = inner(a[i], b[j]);
    Complex det = 1.0;
    for (int col = 0; col < k; ++col) {
        int piv = col;
        for (int r = col + 1; r < k; ++r)
            if (std::abs(m[static_cast<size_t>(r) * k + col]) > std::abs(m[static_cast<size_t>(piv) * k + col]))
                piv = r;
        if (piv != col) {
            for (int j = 0; j < k; ++j)
                std::swap(m[static_cast<size_t>(piv) * k + j], m[static_cast<size_t>(col) * k + j]);
            det = -det;
        }
        const Complex p = m[static_cast<size_t>(col) * k + col];
        det *= p;
        if (std::abs(p) == 0.0) return 0.0;
        for (int r = col + 1; r < k; ++r) {
            const Complex f = m[static_cast<size_t>(r) * k + col] / p;
            for (int j = col; j < k; ++j)
                m[static_cast<size_t>(r) * k + j] -= f * m[static_cast<size_t>(col) * k + j];
        }
    }
    return det;
}

}  // namespace detail

// Link-variable Chern number of the n_filled lowest bands over the sweep
// sphere. Interior theta rows sit at cell centers; the poles close the
// surface as extra rows (the Hamiltonian is phi-independent there), which
// makes the plaquette sum an exact multiple of 2 pi.
inline ChernResult chern_fhs(const SphereFamily& family, int n_filled, int n_theta = 60,
                             int n_phi = 120) {
    if (n_filled < 1) throw std::invalid_argument("chern_fhs: n_filled must be >= 1");
    if (n_theta < 4 || n_phi < 4) throw std::invalid_argument("chern_fhs: grid too coarse");

    std::vector<double> rows;
    rows.push_back(0.0);
    for (int i = 0; i < n_theta; ++i) rows.push_back((i + 0.5) * kPi / n_theta);
    rows.push_back(kPi);
    const int n_rows = static_cast<int>(rows.size());

    std::vector<std::vector<std::vector<StateVector>>> frames(
        n_rows, std::vector<std::vector<StateVector>>(n_phi));
    double min_gap = std::numeric_limits<double>::infinity();
    double scale = 0.0;
    for (int i = 0; i < n_rows; ++i) {
        for (int j = 0; j < n_phi; ++j) {
            const double phi = 2.0 * kPi * j / n_phi;
            const EigenDecomposition dec = eigh(family(rows[i], phi));
            const int dim = dec.dim();
            if (n_filled >= dim) throw std::invalid_argument("chern_fhs: n_filled must be < dim");
            min_gap = std::min(min_gap, dec.eigenvalues[n_filled] - dec.eigenvalues[n_filled - 1]);
            scale = std::max({scale, std::abs(dec.eigenvalues.front()), std::abs(dec.eigenvalues.back())});
            std::vector<StateVector> frame;
            frame.reserve(n_filled);
            for (int b = 0; b < n_filled; ++b) frame.push_back(dec.eigenvector(b));
            frames[i][j] = std::move(frame);
        }
    }
    if (min_gap < 1e-9 * std::max(scale, 1e-300))
        throw std::runtime_error("chern_fhs: degeneracy on sweep sphere (filled-band gap " +
                                 std::to_string(min_gap) + " rad/s)");

    double total = 0.0;
    for (int i = 0; i + 1 < n_rows; ++i) {
        for (int j = 0; j < n_phi; ++j) {
            const int jp = (j + 1) % n_phi;
            const Complex loop = detail::frame_overlap_det(frames[i][j], frames[i + 1][j]) *
                                 detail::frame_overlap_det(frames[i + 1][j], frames[i + 1][jp]) *
                                 detail::frame_overlap_det(frames[i + 1][jp], frames[i][jp]) *
                                 detail::frame_overlap_det(frames[i][jp], frames[i][j]);
            total += std::arg(loop);
        }
    }

    ChernResult r;
    r.method = ChernMethod::Fhs;
    r.value = kFhsOrientation * total / (2.0 * kPi);
    r.diagnostics.min_gap = min_gap;
    if (std::abs(r.value - std::round(r.value)) > 1e-6)
        throw std::runtime_error("chern_fhs: result " + std::to_string(r.value) +
                                 " is not integer within 1e-6");
    return r;
}

// Sphere families for the concrete systems.
inline SphereFamily nv_sector_family(const NVModel& model, int m, const NormalizedPoint& p) {
    const double hr = p.h_r_tilde * model.a_par;
    const double h0 = p.h_0_tilde * model.a_par;
    return [model, m, hr, h0](double theta, double phi) {
        const FieldVector h{hr * std::sin(theta) * std::cos(phi),
                            hr * std::sin(theta) * std::sin(phi), hr * std::cos(theta) + h0};
        return nv_sector_hamiltonian(model, m, h);
    };
}

inline SphereFamily nv_full_family(const NVModel& model, const NormalizedPoint& p) {
    const double hr = p.h_r_tilde * model.a_par;
    const double h0 = p.h_0_tilde * model.a_par;
    return [model, hr, h0](double theta, double phi) {
        const FieldVector h{hr * std::sin(theta) * std::cos(phi),
                            hr * std::sin(theta) * std::sin(phi), hr * std::cos(theta) + h0};
        return nv_full_hamiltonian(model, h);
    };
}

inline SphereFamily three_qubit_family(const ThreeQubitModel& model) {
    return [model](double theta, double phi) {
        const FieldVector h{model.h_r_prime * std::sin(theta) * std::cos(phi),
                            model.h_r_prime * std::sin(theta) * std::sin(phi),
                            model.h_r_prime * std::cos(theta)};
        return three_qubit_hamiltonian(model, h);
    };
}

// Lattice Chern number of the NV system: per-sector ground bands, summed
// (exact by block-diagonality of the full Hamiltonian).
inline ChernResult chern_fhs_nv(const NVModel& model, const NormalizedPoint& p, int n_theta = 60,
                                int n_phi = 120) {
    model.validate();
    ChernResult out;
    out.method = ChernMethod::Fhs;
    out.value = 0.0;
    out.diagnostics.min_gap = std::numeric_limits<double>::infinity();
    for (int m : model.sector_labels) {
        ChernResult r = chern_fhs(nv_sector_family(model, m, p), 1, n_theta, n_phi);
        out.value += r.value;
        out.diagnostics.min_gap = std::min(out.diagnostics.min_gap, r.diagnostics.min_gap);
    }
    return out;
}

// Lattice Chern number of the three-qubit ground band, reported in the
// monopole-count convention (see kThreeQubitBandOrientation).
inline ChernResult chern_fhs_three_qubit(const ThreeQubitModel& model, int n_theta = 60,
                                         int n_phi = 120) {
    model.validate();
    ChernResult r = chern_fhs(three_qubit_family(model), 1, n_theta, n_phi);
    r.value *= kThreeQubitBandOrientation;
    return r;
}

// Full dynamic pipeline for the NV system: bind the normalized point to a
// sweep, propagate all sectors from the ground state, convert the summed
// deviation to curvature, and integrate.
inline ChernResult chern_dynamic(const NormalizedPoint& point, double alpha, const NVModel& model,
                                 const PropagationSettings& settings,
                                 InitPolicy init = InitPolicy::GroundState) {
    const LarmorSweep sweep = sweep_from_normalized(point, alpha, model.a_par);
    const SweepTrace trace = run_nv_sweep(model, sweep, init, settings);
    ChernResult r = integrate_chern(curvature_from_trace(trace, sweep));
    r.diagnostics.min_gap = trace.min_gap;
    r.diagnostics.boundary_flag = monopole_count_nv(point).diagnostics.boundary_flag;
    return r;
}

// Dynamic pipeline for the three-qubit chain: the common field sweeps the
// sphere of radius H_r', the three per-qubit deviations are summed.
inline ChernResult chern_dynamic_three_qubit(const ThreeQubitModel& model, double alpha,
                                             const PropagationSettings& settings) {
    model.validate();
    const LarmorSweep sweep =
        make_sweep(model.h_r_prime, 0.0, ramp_time_for_alpha(alpha, model.h_r_prime));
    const SweepTrace trace = run_three_qubit_sweep(model, sweep, settings);
    ChernResult r = integrate_chern(curvature_from_trace(trace, sweep));
    r.diagnostics.min_gap = trace.min_gap;
    return r;
}

}  // namespace chernsim
