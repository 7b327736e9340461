#include <doctest.h>

#include <random>

#include "chernsim/linalg.hpp"

using namespace chernsim;

namespace {

ComplexMatrix random_hermitian(std::mt19937& rng, int dim) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ComplexMatrix h(dim);
    for (int i = 0; i < dim; ++i) {
        h(i, i) = u(rng);
        for (int j = i + 1; j < dim; ++j) {
            const Complex v(u(rng), u(rng));
            h(i, j) = v;
            h(j, i) = std::conj(v);
        }
    }
    return h;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    double e = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) e = std::max(e, std::abs(a(i, j) - b(i, j)));
    return e;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    const int n = a.dim();
    ComplexMatrix c(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const Complex aik = a(i, k);
            for (int j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

}  // namespace

TEST_CASE("eigh on pauli z") {
    const auto dec = eigh(pauli_z());
    CHECK(dec.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(dec.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("eigh on the zero matrix") {
    const auto dec = eigh(ComplexMatrix(2));
    CHECK(dec.eigenvalues[0] == 0.0);
    CHECK(dec.eigenvalues[1] == 0.0);
    // eigenvectors are an orthonormal pair
    const Complex g = inner(dec.eigenvector(0), dec.eigenvector(1));
    CHECK(std::abs(g) < 1e-12);
    CHECK(dec.eigenvector(0).norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("eigh on (sx + sz)/sqrt2") {
    // hand diagonalization: traceless, det = -1, so eigenvalues are -1, +1
    ComplexMatrix h = pauli_x();
    h += pauli_z();
    h *= Complex(1.0 / std::sqrt(2.0));
    const auto dec = eigh(h);
    CHECK(dec.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(dec.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("eigh rejects non-hermitian input naming the asymmetry") {
    ComplexMatrix h(2);
    h(0, 1) = 1.0;  // h(1,0) stays 0
    CHECK_THROWS_WITH_AS(eigh(h), doctest::Contains("asymmetry"), std::invalid_argument);
}

TEST_CASE("eigh reconstruction and orthonormality on random hermitian input") {
    std::mt19937 rng(20260808);
    for (int dim : {2, 6, 8}) {
        for (int rep = 0; rep < 40; ++rep) {
            const ComplexMatrix h = random_hermitian(rng, dim);
            const auto dec = eigh(h);
            for (int k = 1; k < dim; ++k) CHECK(dec.eigenvalues[k] >= dec.eigenvalues[k - 1]);
            // V Lambda V^dag == H
            ComplexMatrix lam(dim);
            for (int k = 0; k < dim; ++k) lam(k, k) = dec.eigenvalues[k];
            const ComplexMatrix rec = matmul(matmul(dec.eigenvectors, lam), dec.eigenvectors.adjoint());
            CHECK(max_abs_diff(rec, h) < 1e-9);
            // Gram matrix == identity
            const ComplexMatrix gram = matmul(dec.eigenvectors.adjoint(), dec.eigenvectors);
            CHECK(max_abs_diff(gram, ComplexMatrix::identity(dim)) < 1e-10);
        }
    }
}

TEST_CASE("propagator of H = 0 is the identity") {
    const ComplexMatrix u = propagator_step(ComplexMatrix(2), 0.7);
    CHECK(max_abs_diff(u, ComplexMatrix::identity(2)) < 1e-14);
}

TEST_CASE("propagator of sz for dt = pi/2") {
    const ComplexMatrix u = propagator_step(pauli_z(), kPi / 2.0);
    CHECK(std::abs(u(0, 0) - Complex(0.0, -1.0)) < 1e-12);
    CHECK(std::abs(u(1, 1) - Complex(0.0, 1.0)) < 1e-12);
    CHECK(std::abs(u(0, 1)) < 1e-12);
}

TEST_CASE("propagator of sx for dt = pi is -identity") {
    // closed form: exp(-i t sx) = cos(t) I - i sin(t) sx
    const ComplexMatrix u = propagator_step(pauli_x(), kPi);
    ComplexMatrix expected = ComplexMatrix::identity(2);
    expected *= Complex(std::cos(kPi));
    ComplexMatrix sx_term = pauli_x();
    sx_term *= Complex(0.0, -std::sin(kPi));
    expected += sx_term;
    CHECK(max_abs_diff(u, expected) < 1e-10);
    ComplexMatrix minus_id = ComplexMatrix::identity(2);
    minus_id *= Complex(-1.0);
    CHECK(max_abs_diff(u, minus_id) < 1e-10);
}

TEST_CASE("propagator rejects nonpositive dt") {
    CHECK_THROWS_AS(propagator_step(pauli_z(), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(propagator_step(pauli_z(), -1.0), std::invalid_argument);
}

TEST_CASE("propagator unitarity on random hermitian input") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> ut(1e-3, 1.0);
    int produced = 0;
    while (produced < 1000) {
        for (int dim : {2, 6, 8}) {
            const ComplexMatrix h = random_hermitian(rng, dim);
            const ComplexMatrix u = propagator_step(h, ut(rng));
            const ComplexMatrix gram = matmul(u.adjoint(), u);
            REQUIRE(max_abs_diff(gram, ComplexMatrix::identity(dim)) < 1e-10);
            ++produced;
        }
    }
}

TEST_CASE("propagator composition: U(a) U(b) == U(a+b)") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> ut(1e-3, 1.0);
    for (int rep = 0; rep < 25; ++rep) {
        const ComplexMatrix h = random_hermitian(rng, 6);
        const double a = ut(rng), b = ut(rng);
        const ComplexMatrix lhs = matmul(propagator_step(h, a), propagator_step(h, b));
        const ComplexMatrix rhs = propagator_step(h, a + b);
        CHECK(max_abs_diff(lhs, rhs) < 1e-9);
    }
}

TEST_CASE("kron identity blocks") {
    const ComplexMatrix i6 = kron(identity2(), identity3());
    CHECK(max_abs_diff(i6, ComplexMatrix::identity(6)) == 0.0);
}

TEST_CASE("kron sz with I3 is diag(1,1,1,-1,-1,-1)") {
    const ComplexMatrix m = kron(pauli_z(), identity3());
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            const Complex want = (i == j) ? Complex(i < 3 ? 1.0 : -1.0) : Complex(0.0);
            CHECK(std::abs(m(i, j) - want) == 0.0);
        }
}

TEST_CASE("kron sx with sx is the 4x4 anti-diagonal") {
    // hand expansion: (sx (x) sx)_{ij} = 1 exactly on the anti-diagonal
    const ComplexMatrix m = kron(pauli_x(), pauli_x());
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const Complex want = (j == 3 - i) ? Complex(1.0) : Complex(0.0);
            CHECK(std::abs(m(i, j) - want) == 0.0);
        }
}

TEST_CASE("expectation values on cardinal states") {
    const StateVector zero = StateVector::basis_state(2, 0);
    CHECK(expect(zero, pauli_z()) == doctest::Approx(1.0).epsilon(1e-14));

    const double r = 1.0 / std::sqrt(2.0);
    const StateVector plus(std::vector<Complex>{r, r});
    CHECK(expect(plus, pauli_x()) == doctest::Approx(1.0).epsilon(1e-14));

    // hand evaluation: <psi| sy |psi> with psi = (|0> + i|1>)/sqrt2 gives +1
    const StateVector plus_i(std::vector<Complex>{r, Complex(0.0, r)});
    CHECK(expect(plus_i, pauli_y()) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("expect rejects dimension mismatch") {
    CHECK_THROWS_AS(expect(StateVector::basis_state(3, 0), pauli_z()), std::invalid_argument);
}

TEST_CASE("spin operator constants") {
    const ComplexMatrix sz = spin_ops(SpinOp::PauliZ);
    CHECK(sz(0, 0) == Complex(1.0));
    CHECK(sz(1, 1) == Complex(-1.0));

    const ComplexMatrix iz = spin_ops(SpinOp::Spin1Z);
    CHECK(iz(0, 0) == Complex(1.0));
    CHECK(iz(1, 1) == Complex(0.0));
    CHECK(iz(2, 2) == Complex(-1.0));

    const ComplexMatrix sy = spin_ops(SpinOp::PauliY);
    CHECK(sy(0, 1) == Complex(0.0, -1.0));
    CHECK(sy(1, 0) == Complex(0.0, 1.0));
    CHECK(sy(0, 0) == Complex(0.0));
}

TEST_CASE("state vector validates normalization") {
    CHECK_THROWS_AS(StateVector(std::vector<Complex>{1.0, 1.0}), std::invalid_argument);
    CHECK_NOTHROW(StateVector(std::vector<Complex>{1.0, 0.0}));
}
