// linalg.hpp - dense complex linear algebra for small Hilbert spaces.
//
// Everything here works on dims of a few (2, 3, 6, 8 in this project):
// Hermitian eigendecomposition via cyclic Jacobi rotations, exact unitary
// propagator steps exp(-i dt H), Kronecker products, expectation values,
// and the standard spin operators. Natural units hbar = 1 throughout; all
// Hamiltonian entries are angular frequencies (rad/s).

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace chernsim {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// Row-major dim x dim complex matrix.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(int dim) : dim_(dim), a_(static_cast<size_t>(dim) * dim, Complex(0.0)) {
        if (dim < 1) throw std::invalid_argument("ComplexMatrix: dim must be >= 1");
    }
    ComplexMatrix(int dim, std::vector<Complex> entries) : dim_(dim), a_(std::move(entries)) {
        if (dim < 1) throw std::invalid_argument("ComplexMatrix: dim must be >= 1");
        if (a_.size() != static_cast<size_t>(dim) * dim)
            throw std::invalid_argument("ComplexMatrix: entries must have dim^2 elements");
    }

    static ComplexMatrix identity(int dim) {
        ComplexMatrix m(dim);
        for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }

    int dim() const { return dim_; }
    Complex& operator()(int i, int j) { return a_[static_cast<size_t>(i) * dim_ + j]; }
    const Complex& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * dim_ + j]; }
    const std::vector<Complex>& entries() const { return a_; }

    ComplexMatrix& operator+=(const ComplexMatrix& o) {
        require_same_dim(o);
        for (size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
        return *this;
    }
    ComplexMatrix& operator-=(const ComplexMatrix& o) {
        require_same_dim(o);
        for (size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
        return *this;
    }
    ComplexMatrix& operator*=(Complex s) {
        for (auto& x : a_) x *= s;
        return *this;
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }

    ComplexMatrix adjoint() const {
        ComplexMatrix r(dim_);
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j) r(i, j) = std::conj((*this)(j, i));
        return r;
    }

    // max_ij |H_ij - conj(H_ji)|
    double hermiticity_error() const {
        double e = 0.0;
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j) e = std::max(e, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
        return e;
    }

private:
    void require_same_dim(const ComplexMatrix& o) const {
        if (o.dim_ != dim_) throw std::invalid_argument("ComplexMatrix: dimension mismatch");
    }

    int dim_ = 0;
    std::vector<Complex> a_;
};

// A Hamiltonian is an ordinary ComplexMatrix; operations that require
// hermiticity validate it on entry.
using HermitianOperator = ComplexMatrix;

// Unit-norm complex state vector. `unchecked` skips the norm validation and
// is reserved for internal results that are unitary images of valid states.
class StateVector {
public:
    StateVector() = default;
    explicit StateVector(std::vector<Complex> amplitudes, double norm_tol = 1e-10)
        : amp_(std::move(amplitudes)) {
        if (amp_.empty()) throw std::invalid_argument("StateVector: empty amplitude vector");
        double dev = std::abs(norm() - 1.0);
        if (dev > norm_tol)
            throw std::invalid_argument("StateVector: not normalized, |norm - 1| = " + std::to_string(dev));
    }

    static StateVector basis_state(int dim, int index) {
        std::vector<Complex> a(dim, Complex(0.0));
        a[index] = 1.0;
        return StateVector(std::move(a));
    }

    static StateVector unchecked(std::vector<Complex> amplitudes) {
        StateVector s;
        s.amp_ = std::move(amplitudes);
        return s;
    }

    int dim() const { return static_cast<int>(amp_.size()); }
    Complex& operator[](int i) { return amp_[i]; }
    const Complex& operator[](int i) const { return amp_[i]; }
    const std::vector<Complex>& amplitudes() const { return amp_; }

    double norm_sq() const {
        double s = 0.0;
        for (const auto& a : amp_) s += std::norm(a);
        return s;
    }
    double norm() const { return std::sqrt(norm_sq()); }

private:
    std::vector<Complex> amp_;
};

inline Complex inner(const StateVector& a, const StateVector& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("inner: dimension mismatch");
    Complex s = 0.0;
    for (int i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

inline StateVector apply(const ComplexMatrix& m, const StateVector& x) {
    if (m.dim() != x.dim()) throw std::invalid_argument("apply: dimension mismatch");
    std::vector<Complex> y(m.dim(), Complex(0.0));
    for (int i = 0; i < m.dim(); ++i) {
        Complex s = 0.0;
        for (int j = 0; j < m.dim(); ++j) s += m(i, j) * x[j];
        y[i] = s;
    }
    return StateVector::unchecked(std::move(y));
}

// Eigendecomposition of a Hermitian matrix: ascending eigenvalues and an
// orthonormal eigenvector matrix (eigenvectors are columns).
struct EigenDecomposition {
    std::vector<double> eigenvalues;
    ComplexMatrix eigenvectors;

    int dim() const { return static_cast<int>(eigenvalues.size()); }
    StateVector eigenvector(int k) const {
        std::vector<Complex> v(eigenvectors.dim());
        for (int i = 0; i < eigenvectors.dim(); ++i) v[i] = eigenvectors(i, k);
        return StateVector::unchecked(std::move(v));
    }
    double ground_gap() const { return eigenvalues.at(1) - eigenvalues.at(0); }
};

inline void require_hermitian(const ComplexMatrix& h, double tol = 1e-10) {
    double e = h.hermiticity_error();
    if (e > tol)
        throw std::invalid_argument("matrix is not Hermitian: max asymmetry " + std::to_string(e));
}

// Cyclic complex Jacobi diagonalization. Exact at machine precision for the
// small dims used here; the accumulated rotation matrix is unitary by
// construction.
inline EigenDecomposition eigh(const HermitianOperator& h) {
    require_hermitian(h);
    const int n = h.dim();
    ComplexMatrix a = h;
    ComplexMatrix v = ComplexMatrix::identity(n);

    double scale = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) scale = std::max(scale, std::abs(a(i, j)));
    const double off_tol = (scale > 0.0 ? scale : 1.0) * 1e-15;

    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
        if (off <= off_tol) break;

        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag < off_tol * 1e-2) continue;

                const Complex phase = apq / mag;
                const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const Complex jpq = s * phase;
                const Complex jqp = -s * std::conj(phase);

                for (int k = 0; k < n; ++k) {  // A <- A J
                    const Complex akp = a(k, p), akq = a(k, q);
                    a(k, p) = akp * c + akq * jqp;
                    a(k, q) = akp * jpq + akq * c;
                }
                for (int k = 0; k < n; ++k) {  // A <- J^dag A
                    const Complex apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk + std::conj(jqp) * aqk;
                    a(q, k) = std::conj(jpq) * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {  // V <- V J
                    const Complex vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp * c + vkq * jqp;
                    v(k, q) = vkp * jpq + vkq * c;
                }
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });

    EigenDecomposition dec;
    dec.eigenvalues.resize(n);
    dec.eigenvectors = ComplexMatrix(n);
    for (int j = 0; j < n; ++j) {
        dec.eigenvalues[j] = a(order[j], order[j]).real();
        for (int i = 0; i < n; ++i) dec.eigenvectors(i, j) = v(i, order[j]);
    }
    return dec;
}

// U = V diag(exp(-i lambda dt)) V^dag, exact up to rounding.
inline ComplexMatrix propagator_from_eigen(const EigenDecomposition& dec, double dt) {
    const int n = dec.dim();
    std::vector<Complex> ph(n);
    for (int k = 0; k < n; ++k) ph[k] = std::exp(Complex(0.0, -dec.eigenvalues[k] * dt));
    ComplexMatrix u(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Complex s = 0.0;
            for (int k = 0; k < n; ++k) s += dec.eigenvectors(i, k) * ph[k] * std::conj(dec.eigenvectors(j, k));
            u(i, j) = s;
        }
    return u;
}

// One factor of the time-ordered product: exp(-i dt H).
inline ComplexMatrix propagator_step(const HermitianOperator& h, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("propagator_step: dt must be > 0");
    return propagator_from_eigen(eigh(h), dt);
}

// Apply exp(-i lambda dt) in the eigenbasis without forming the full matrix.
inline StateVector evolve_with_eigen(const EigenDecomposition& dec, double dt, const StateVector& psi) {
    const int n = dec.dim();
    if (psi.dim() != n) throw std::invalid_argument("evolve_with_eigen: dimension mismatch");
    std::vector<Complex> c(n, Complex(0.0));
    for (int k = 0; k < n; ++k) {
        Complex s = 0.0;
        for (int i = 0; i < n; ++i) s += std::conj(dec.eigenvectors(i, k)) * psi[i];
        c[k] = s * std::exp(Complex(0.0, -dec.eigenvalues[k] * dt));
    }
    std::vector<Complex> y(n, Complex(0.0));
    for (int i = 0; i < n; ++i) {
        Complex s = 0.0;
        for (int k = 0; k < n; ++k) s += dec.eigenvectors(i, k) * c[k];
        y[i] = s;
    }
    return StateVector::unchecked(std::move(y));
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const int da = a.dim(), db = b.dim();
    ComplexMatrix c(da * db);
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < da; ++j)
            for (int k = 0; k < db; ++k)
                for (int l = 0; l < db; ++l) c(i * db + k, j * db + l) = a(i, j) * b(k, l);
    return c;
}

// <psi|A|psi> for Hermitian A; the imaginary residue is checked and dropped.
inline double expect(const StateVector& psi, const HermitianOperator& a) {
    if (psi.dim() != a.dim()) throw std::invalid_argument("expect: dimension mismatch");
    Complex s = 0.0;
    for (int i = 0; i < a.dim(); ++i) {
        Complex row = 0.0;
        for (int j = 0; j < a.dim(); ++j) row += a(i, j) * psi[j];
        s += std::conj(psi[i]) * row;
    }
    double scale = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) scale = std::max(scale, std::abs(a(i, j)));
    if (std::abs(s.imag()) > 1e-10 * std::max(1.0, scale))
        throw std::runtime_error("expect: imaginary residue " + std::to_string(s.imag()));
    return s.real();
}

// Standard spin operators. Qubit basis convention: |0> is the sigma_z
// eigenvector with eigenvalue +1.
enum class SpinOp { PauliX, PauliY, PauliZ, Identity2, Spin1Z, Identity3 };

inline ComplexMatrix pauli_x() { return ComplexMatrix(2, {0.0, 1.0, 1.0, 0.0}); }
inline ComplexMatrix pauli_y() { return ComplexMatrix(2, {0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0}); }
inline ComplexMatrix pauli_z() { return ComplexMatrix(2, {1.0, 0.0, 0.0, -1.0}); }
inline ComplexMatrix identity2() { return ComplexMatrix::identity(2); }
inline ComplexMatrix identity3() { return ComplexMatrix::identity(3); }
// I^z for a spin-1 nucleus: diag(+1, 0, -1)
inline ComplexMatrix spin1_z() {
    ComplexMatrix m(3);
    m(0, 0) = 1.0;
    m(2, 2) = -1.0;
    return m;
}

inline ComplexMatrix spin_ops(SpinOp kind) {
    switch (kind) {
        case SpinOp::PauliX: return pauli_x();
        case SpinOp::PauliY: return pauli_y();
        case SpinOp::PauliZ: return pauli_z();
        case SpinOp::Identity2: return identity2();
        case SpinOp::Spin1Z: return spin1_z();
        case SpinOp::Identity3: return identity3();
    }
    throw std::invalid_argument("spin_ops: unknown kind");
}

}  // namespace chernsim
