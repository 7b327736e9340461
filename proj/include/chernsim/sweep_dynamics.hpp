// sweep_dynamics.hpp - time-ordered propagation of the sweep protocol.
//
// The propagator is the product of exact exponentials exp(-i dt' H(t_j)) with
// H sampled at the midpoint of each step. Bloch components are recorded on an
// evenly spaced theta grid; the step count is aligned to the grid so every
// record lands exactly on a step boundary (recording mid-sweep is then
// identical to terminating the sweep at that T_meas). Landau-Zener scans
// reuse the same machinery and report terminal ground-state survival.

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "chernsim/linalg.hpp"
#include "chernsim/spin_models.hpp"

namespace chernsim {

struct PropagationSettings {
    double dt = 1e-9;   // target step size, s
    int n_theta = 181;  // records evenly spaced on theta in [0, pi], inclusive

    void validate() const {
        if (!(dt > 0.0)) throw std::invalid_argument("PropagationSettings: dt must be > 0");
        if (n_theta < 3) throw std::invalid_argument("PropagationSettings: n_theta must be >= 3");
    }
};

// GroundState starts each channel in the lowest eigenvector of its H(0);
// ElectronZero starts in the bare |0> state as the experiment does.
enum class InitPolicy { GroundState, ElectronZero };

using HamiltonianOfTime = std::function<HermitianOperator(double)>;

// Called after every step boundary (including step 0) with the state at
// t = step * dt'.
using StepObserver = std::function<void(long step, const StateVector& psi)>;

struct PropagationResult {
    StateVector final_state;
    double norm_drift = 0.0;  // | ||psi(T)|| - 1 |
    double min_gap = 0.0;     // smallest E1 - E0 among the sampled H(t_j), rad/s
};

namespace detail {

inline PropagationResult propagate_steps(const HamiltonianOfTime& h_of_t, const StateVector& psi0,
                                         double t_final, long n_steps, const StepObserver& observe = {}) {
    const double dtp = t_final / static_cast<double>(n_steps);
    StateVector psi = psi0;
    double min_gap = std::numeric_limits<double>::infinity();
    if (observe) observe(0, psi);
    for (long j = 1; j <= n_steps; ++j) {
        const double t_mid = (static_cast<double>(j) - 0.5) * dtp;
        const HermitianOperator h = h_of_t(t_mid);
        if (h.dim() != psi.dim())
            throw std::invalid_argument("propagate: Hamiltonian/state dimension mismatch");
        const EigenDecomposition dec = eigh(h);
        if (dec.dim() >= 2) min_gap = std::min(min_gap, dec.ground_gap());
        psi = evolve_with_eigen(dec, dtp, psi);
        if (observe) observe(j, psi);
    }
    PropagationResult r{psi, std::abs(psi.norm() - 1.0), min_gap};
    return r;
}

inline long step_count(double t_final, double dt) {
    // guard against N+1 from rounding when t_final is an exact multiple of dt
    long n = static_cast<long>(std::ceil(t_final / dt - 1e-9));
    return std::max<long>(n, 1);
}

}  // namespace detail

// Time-ordered evolution of psi0 under h_of_t up to t_final. The step is
// adjusted to dt' = t_final / N with N = ceil(t_final / dt) so the endpoint
// is exact.
inline PropagationResult propagate(const HamiltonianOfTime& h_of_t, const StateVector& psi0,
                                   double t_final, const PropagationSettings& settings,
                                   const StepObserver& observe = {}) {
    settings.validate();
    if (!(t_final > 0.0)) throw std::invalid_argument("propagate: t_final must be > 0");
    return detail::propagate_steps(h_of_t, psi0, t_final, detail::step_count(t_final, settings.dt), observe);
}

// Per-channel Bloch record along the sweep.
struct ChannelTrace {
    std::string label;
    double weight = 1.0;
    std::vector<double> sx, sy, sz;
};

struct SweepTrace {
    std::vector<double> theta_grid;    // n_theta values, 0 to pi inclusive
    std::vector<ChannelTrace> channels;
    double norm_drift = 0.0;           // worst channel
    double min_gap = 0.0;              // smallest instantaneous gap met, rad/s

    int n_theta() const { return static_cast<int>(theta_grid.size()); }
    double weighted_sy(int k) const {
        double s = 0.0;
        for (const auto& c : channels) s += c.weight * c.sy[k];
        return s;
    }
};

namespace detail {

inline std::vector<double> theta_grid(int n_theta) {
    std::vector<double> g(n_theta);
    for (int k = 0; k < n_theta; ++k) g[k] = kPi * k / (n_theta - 1);
    return g;
}

// Steps aligned to the record grid: N = ceil(T/dt) rounded up to a multiple
// of (n_theta - 1), so record k sits at boundary k * N / (n_theta - 1).
inline long aligned_steps(double t_final, double dt, int n_theta) {
    const long q = n_theta - 1;
    long n = step_count(t_final, dt);
    return ((n + q - 1) / q) * q;
}

struct BlochObservables {
    ComplexMatrix ox, oy, oz;
};

// Record sx, sy, sz for one channel at the aligned boundaries.
inline PropagationResult run_channel(const HamiltonianOfTime& h_of_t, const StateVector& psi0,
                                     double t_final, long n_steps, int n_theta,
                                     const BlochObservables& obs, ChannelTrace& out) {
    const long per = n_steps / (n_theta - 1);
    out.sx.assign(n_theta, 0.0);
    out.sy.assign(n_theta, 0.0);
    out.sz.assign(n_theta, 0.0);
    auto observer = [&](long j, const StateVector& psi) {
        if (j % per != 0) return;
        const long k = j / per;
        out.sx[k] = expect(psi, obs.ox);
        out.sy[k] = expect(psi, obs.oy);
        out.sz[k] = expect(psi, obs.oz);
    };
    return propagate_steps(h_of_t, psi0, t_final, n_steps, observer);
}

inline StateVector ground_state_checked(const HermitianOperator& h0, double gap_floor) {
    const EigenDecomposition dec = eigh(h0);
    if (dec.ground_gap() < gap_floor)
        throw std::runtime_error(
            "ground-state initialization failed: H(0) is degenerate (gap " +
            std::to_string(dec.ground_gap()) + " rad/s); perturb the offset to move the "
            "degeneracy off the starting pole");
    return dec.eigenvector(0);
}

}  // namespace detail

// Sweep the NV system. Each nuclear sector is propagated independently (the
// full Hamiltonian is block-diagonal over sectors, so this is exact) and
// recorded as one channel.
inline SweepTrace run_nv_sweep(const NVModel& model, const LarmorSweep& sweep, InitPolicy init,
                               const PropagationSettings& settings) {
    model.validate();
    sweep.validate();
    settings.validate();

    const long n_steps = detail::aligned_steps(sweep.t_ramp, settings.dt, settings.n_theta);
    const detail::BlochObservables obs{pauli_x(), pauli_y(), pauli_z()};

    SweepTrace trace;
    trace.theta_grid = detail::theta_grid(settings.n_theta);
    trace.min_gap = std::numeric_limits<double>::infinity();

    for (size_t c = 0; c < model.sector_labels.size(); ++c) {
        const int m = model.sector_labels[c];
        auto h_of_t = [&model, &sweep, m](double t) {
            return nv_sector_hamiltonian(model, m, larmor_vector(sweep, t));
        };
        StateVector psi0 = (init == InitPolicy::GroundState)
                               ? detail::ground_state_checked(h_of_t(0.0), 1e-9 * sweep.omega1)
                               : StateVector::basis_state(2, 0);
        ChannelTrace channel;
        channel.label = "m" + std::string(m > 0 ? "+" : "") + std::to_string(m);
        channel.weight = model.sector_weights[c];
        PropagationResult r =
            detail::run_channel(h_of_t, psi0, sweep.t_ramp, n_steps, settings.n_theta, obs, channel);
        trace.norm_drift = std::max(trace.norm_drift, r.norm_drift);
        trace.min_gap = std::min(trace.min_gap, r.min_gap);
        trace.channels.push_back(std::move(channel));
    }
    return trace;
}

// Sweep the three-qubit chain with the common control field; records one
// channel per qubit. The initial state is the ground state of the 8x8 H(0).
inline SweepTrace run_three_qubit_sweep(const ThreeQubitModel& model, const LarmorSweep& sweep,
                                        const PropagationSettings& settings) {
    model.validate();
    sweep.validate();
    settings.validate();

    auto h_of_t = [&model, &sweep](double t) {
        return three_qubit_hamiltonian(model, larmor_vector(sweep, t));
    };
    const long n_steps = detail::aligned_steps(sweep.t_ramp, settings.dt, settings.n_theta);
    const StateVector psi0 = detail::ground_state_checked(h_of_t(0.0), 1e-9 * sweep.omega1);

    SweepTrace trace;
    trace.theta_grid = detail::theta_grid(settings.n_theta);
    trace.min_gap = std::numeric_limits<double>::infinity();

    for (int site = 0; site < 3; ++site) {
        const detail::BlochObservables obs{detail::qubit_op(site, pauli_x()),
                                           detail::qubit_op(site, pauli_y()),
                                           detail::qubit_op(site, pauli_z())};
        ChannelTrace channel;
        channel.label = "q" + std::to_string(site + 1);
        PropagationResult r =
            detail::run_channel(h_of_t, psi0, sweep.t_ramp, n_steps, settings.n_theta, obs, channel);
        trace.norm_drift = std::max(trace.norm_drift, r.norm_drift);
        trace.min_gap = std::min(trace.min_gap, r.min_gap);
        trace.channels.push_back(std::move(channel));
    }
    return trace;
}

// Landau-Zener adiabaticity scan: for each alpha, run the full sweep and
// report the terminal overlap with the instantaneous ground state of
// H(T_ramp) plus the terminal <sz>, per sector and weight-averaged.
struct LandauZenerPoint {
    double alpha = 0.0;
    std::vector<double> ground_pop;  // per channel
    std::vector<double> sz_final;    // per channel
    double ground_pop_mean = 0.0;    // weight-normalized
    double sz_final_mean = 0.0;
};

inline std::vector<LandauZenerPoint> landau_zener_scan(const NVModel& model, const NormalizedPoint& point,
                                                       const std::vector<double>& alphas, InitPolicy init,
                                                       const PropagationSettings& settings) {
    model.validate();
    settings.validate();
    std::vector<LandauZenerPoint> out;
    out.reserve(alphas.size());
    for (double alpha : alphas) {
        if (!(alpha > 0.0)) throw std::invalid_argument("landau_zener_scan: alphas must be > 0");
        const LarmorSweep sweep = sweep_from_normalized(point, alpha, model.a_par);
        LandauZenerPoint rec;
        rec.alpha = alpha;
        double wsum = 0.0;
        for (size_t c = 0; c < model.sector_labels.size(); ++c) {
            const int m = model.sector_labels[c];
            auto h_of_t = [&model, &sweep, m](double t) {
                return nv_sector_hamiltonian(model, m, larmor_vector(sweep, t));
            };
            StateVector psi0 = (init == InitPolicy::GroundState)
                                   ? detail::ground_state_checked(h_of_t(0.0), 1e-9 * sweep.omega1)
                                   : StateVector::basis_state(2, 0);
            const long n_steps = detail::step_count(sweep.t_ramp, settings.dt);
            PropagationResult r = detail::propagate_steps(h_of_t, psi0, sweep.t_ramp, n_steps);
            const EigenDecomposition dec_end = eigh(h_of_t(sweep.t_ramp));
            const double pop = std::norm(inner(dec_end.eigenvector(0), r.final_state));
            const double sz = expect(r.final_state, pauli_z());
            rec.ground_pop.push_back(pop);
            rec.sz_final.push_back(sz);
            const double w = model.sector_weights[c];
            rec.ground_pop_mean += w * pop;
            rec.sz_final_mean += w * sz;
            wsum += w;
        }
        if (wsum > 0.0) {
            rec.ground_pop_mean /= wsum;
            rec.sz_final_mean /= wsum;
        }
        out.push_back(std::move(rec));
    }
    return out;
}

}  // namespace chernsim
