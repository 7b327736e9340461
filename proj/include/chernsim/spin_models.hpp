// spin_models.hpp - Hamiltonians and sweep parametrizations.
//
// Builds the hemispherical Larmor sweep H(t) = (W1 sin th, 0, D1 cos th + D2)
// with th(t) = pi t / T_ramp, the NV electron-nuclear system with its three
// nuclear sectors, the interacting three-qubit chain, and the projection map
// between the normalized NV plane (H_r/A, H_0/A) and the three-qubit plane
// (g', H_0').

#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "chernsim/linalg.hpp"

namespace chernsim {

// A_par/2pi = 2.2 MHz hyperfine coupling, stored as an angular frequency.
inline constexpr double kDefaultAParHz = 2.2e6;
inline constexpr double kDefaultAPar = 2.0 * kPi * kDefaultAParHz;  // rad/s

using FieldVector = std::array<double, 3>;  // (H_x, H_y, H_z) in rad/s

// Hemispherical sweep of the Larmor vector, north pole (th = 0) to south
// pole (th = pi) at constant angular velocity. The Rabi and detuning ramp
// amplitudes are locked, omega1 == delta1, so the trajectory is a sphere of
// radius omega1 offset by delta2 along z.
struct LarmorSweep {
    double omega1 = 0.0;  // Rabi amplitude W1, rad/s (sphere radius H_r)
    double delta1 = 0.0;  // detuning ramp amplitude D1, rad/s (== omega1)
    double delta2 = 0.0;  // detuning offset D2, rad/s (sphere offset H_0)
    double t_ramp = 0.0;  // full sweep duration, s
    double phi0 = 0.0;    // azimuth, fixed 0

    void validate() const {
        if (!(omega1 > 0.0)) throw std::invalid_argument("LarmorSweep: omega1 must be > 0");
        if (!(t_ramp > 0.0)) throw std::invalid_argument("LarmorSweep: t_ramp must be > 0");
        if (std::abs(delta1 - omega1) > 1e-12 * omega1)
            throw std::invalid_argument("LarmorSweep: requires delta1 == omega1");
    }

    double v_theta() const { return kPi / t_ramp; }  // polar angular speed, rad/s
};

inline LarmorSweep make_sweep(double omega1, double delta2, double t_ramp, double phi0 = 0.0) {
    LarmorSweep s{omega1, omega1, delta2, t_ramp, phi0};
    s.validate();
    return s;
}

inline double theta_of_t(const LarmorSweep& s, double t) {
    if (t < 0.0 || t > s.t_ramp)
        throw std::invalid_argument("theta_of_t: t outside [0, t_ramp]");
    return kPi * t / s.t_ramp;
}

inline FieldVector larmor_vector(const LarmorSweep& s, double t) {
    const double th = theta_of_t(s, t);
    const double sn = std::sin(th);
    return {s.omega1 * sn * std::cos(s.phi0), s.omega1 * sn * std::sin(s.phi0),
            s.delta1 * std::cos(th) + s.delta2};
}

// alpha = W1 T_ramp / 2pi, the fractional change of the Larmor vector per
// Larmor period; small alpha is nonadiabatic, large alpha adiabatic.
inline double alpha_of(const LarmorSweep& s) {
    s.validate();
    return s.omega1 * s.t_ramp / (2.0 * kPi);
}

inline double ramp_time_for_alpha(double alpha, double omega1) {
    if (!(alpha > 0.0) || !(omega1 > 0.0))
        throw std::invalid_argument("ramp_time_for_alpha: alpha and omega1 must be > 0");
    return 2.0 * kPi * alpha / omega1;
}

// NV electron-nuclear system. The nuclear spin-1 projection m in {-1, 0, +1}
// labels the hyperfine sector; each sector is an independent two-level system
// whose effective z field is offset by m * a_par. Sector weights enter the
// summed tomography signal (default weight 1 per sector).
struct NVModel {
    double a_par = kDefaultAPar;             // rad/s; 0 is the degenerate-sector limit
    std::vector<int> sector_labels = {-1, 0, +1};
    std::vector<double> sector_weights = {1.0, 1.0, 1.0};

    void validate() const {
        if (a_par < 0.0) throw std::invalid_argument("NVModel: a_par must be >= 0");
        if (sector_labels.empty() || sector_labels.size() != sector_weights.size())
            throw std::invalid_argument("NVModel: sector labels/weights mismatch");
        for (int m : sector_labels)
            if (m < -1 || m > 1) throw std::invalid_argument("NVModel: sector label must be -1, 0, or +1");
        for (double w : sector_weights)
            if (w < 0.0) throw std::invalid_argument("NVModel: weights must be >= 0");
    }
};

inline NVModel single_sector_model(int m, double a_par = kDefaultAPar) {
    NVModel model;
    model.a_par = a_par;
    model.sector_labels = {m};
    model.sector_weights = {1.0};
    return model;
}

// H_m = 1/2 [ (H_z + m A) sz + H_x sx + H_y sy ].  The sector degeneracy
// sits at hvec = (0, 0, -m A).
inline HermitianOperator nv_sector_hamiltonian(const NVModel& model, int m, const FieldVector& h) {
    ComplexMatrix out(2);
    const double hz = h[2] + m * model.a_par;
    out(0, 0) = 0.5 * hz;
    out(1, 1) = -0.5 * hz;
    out(0, 1) = 0.5 * Complex(h[0], -h[1]);
    out(1, 0) = 0.5 * Complex(h[0], h[1]);
    return out;
}

// Full 6x6 Hamiltonian, electron (x) nucleus ordering with the nuclear basis
// ordered m = +1, 0, -1 (the Iz = diag(1, 0, -1) convention):
//   H = 1/2 A (sz (x) Iz) + 1/2 (H.sigma) (x) I3
inline HermitianOperator nv_full_hamiltonian(const NVModel& model, const FieldVector& h) {
    ComplexMatrix hs = kron(pauli_z(), spin1_z());
    hs *= Complex(0.5 * model.a_par);
    ComplexMatrix hc(2);
    hc(0, 0) = 0.5 * h[2];
    hc(1, 1) = -0.5 * h[2];
    hc(0, 1) = 0.5 * Complex(h[0], -h[1]);
    hc(1, 0) = 0.5 * Complex(h[0], h[1]);
    hs += kron(hc, identity3());
    return hs;
}

// Nuclear basis index of sector m in the 6x6 ordering above.
inline int nv_sector_index(int m) { return 1 - m; }

// Extract the 2x2 block of the 6x6 Hamiltonian belonging to sector m.
inline ComplexMatrix nv_sector_block(const ComplexMatrix& h6, int m) {
    const int n = nv_sector_index(m);
    ComplexMatrix b(2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) b(i, j) = h6(i * 3 + n, j * 3 + n);
    return b;
}

// Interacting three-qubit chain with a common control field, asymmetric z
// offsets on qubits 1 and 2, and XY couplings on the two bonds:
//   H = -1/2 ( sum_i H.sigma_i + H0' s1z + (H0'/2) s2z
//              - g (s1x s2x + s1y s2y) - g (s2x s3x + s2y s3y) )
struct ThreeQubitModel {
    double g = 0.0;         // inter-qubit XY coupling, rad/s
    double h0_prime = 0.0;  // offset H0', rad/s
    double h_r_prime = 0.0; // sweep-sphere radius H_r', rad/s

    void validate() const {
        if (!(h_r_prime > 0.0)) throw std::invalid_argument("ThreeQubitModel: h_r_prime must be > 0");
        if (g < 0.0) throw std::invalid_argument("ThreeQubitModel: g must be >= 0");
    }
};

namespace detail {

inline ComplexMatrix qubit_op(int site, const ComplexMatrix& op) {
    ComplexMatrix out = (site == 0) ? op : identity2();
    for (int k = 1; k < 3; ++k) out = kron(out, (site == k) ? op : identity2());
    return out;
}

}  // namespace detail

inline HermitianOperator three_qubit_hamiltonian(const ThreeQubitModel& model, const FieldVector& h) {
    using detail::qubit_op;
    ComplexMatrix sum(8);
    for (int site = 0; site < 3; ++site) {
        sum += Complex(h[0]) * qubit_op(site, pauli_x());
        sum += Complex(h[1]) * qubit_op(site, pauli_y());
        sum += Complex(h[2]) * qubit_op(site, pauli_z());
    }
    sum += Complex(model.h0_prime) * qubit_op(0, pauli_z());
    sum += Complex(0.5 * model.h0_prime) * qubit_op(1, pauli_z());

    ComplexMatrix bond12 = kron(kron(pauli_x(), pauli_x()), identity2()) +
                           kron(kron(pauli_y(), pauli_y()), identity2());
    ComplexMatrix bond23 = kron(identity2(), kron(pauli_x(), pauli_x())) +
                           kron(identity2(), kron(pauli_y(), pauli_y()));
    sum += Complex(-model.g) * bond12;
    sum += Complex(-model.g) * bond23;

    sum *= Complex(-0.5);
    return sum;
}

// Normalized sweep coordinates: H_r / A_par and H_0 / A_par.
struct NormalizedPoint {
    double h_r_tilde = 0.0;
    double h_0_tilde = 0.0;

    void validate() const {
        if (!(h_r_tilde > 0.0)) throw std::invalid_argument("NormalizedPoint: h_r_tilde must be > 0");
    }
};

// Normalized three-qubit coordinates: g' = g/H_r' and H_0'/H_r'.
struct ProjectedPoint {
    double g_tilde_prime = 0.0;
    double h0_tilde_prime = 0.0;
};

// Projection of the NV sweep plane onto the three-qubit plane:
//   g'  = sqrt(1 - (1 - |1 - 2 H0~|)^2) / (2 H_r~)
//   H0'~ = (1 - |1 - 2 H0~|) / H_r~
// defined for H0~ in [-0.5, 1.5] where the radicand is nonnegative.
inline ProjectedPoint project_to_three_qubit(const NormalizedPoint& p) {
    p.validate();
    const double s = 1.0 - std::abs(1.0 - 2.0 * p.h_0_tilde);
    const double radicand = 1.0 - s * s;
    if (radicand < 0.0)
        throw std::domain_error("project_to_three_qubit: radicand " + std::to_string(radicand) +
                                " < 0 (h_0_tilde outside [-0.5, 1.5])");
    return {std::sqrt(radicand) / (2.0 * p.h_r_tilde), s / p.h_r_tilde};
}

// Bind a normalized point to sweep parameters: W1 = D1 = H_r~ * A, D2 = H_0~ * A,
// T_ramp from the requested adiabaticity.
inline LarmorSweep sweep_from_normalized(const NormalizedPoint& p, double alpha, double a_par) {
    p.validate();
    if (!(alpha > 0.0)) throw std::invalid_argument("sweep_from_normalized: alpha must be > 0");
    if (!(a_par > 0.0)) throw std::invalid_argument("sweep_from_normalized: a_par must be > 0");
    const double omega1 = p.h_r_tilde * a_par;
    return make_sweep(omega1, p.h_0_tilde * a_par, ramp_time_for_alpha(alpha, omega1));
}

}  // namespace chernsim
