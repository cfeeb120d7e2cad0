#include <doctest.h>

#include "oracles.hpp"
#include "spinrefl/layer_solver.hpp"
#include "spinrefl/stack_solver.hpp"

using namespace spinrefl;
using oracles::Rng;

TEST_SUITE("layer_solver") {

TEST_CASE("k_prime on elementary inputs") {
    CHECK(std::abs(k_prime(2.0, 0.0) - 2.0) == 0.0);
    CHECK(std::abs(k_prime(1.0, 2.0) - cplx(0.0, 1.0)) < 1e-15);  // evanescent
}

TEST_CASE("k_prime matches the frozen high-precision reference") {
    // sqrt(1 - (0.5 - 0.1i)) to 25 digits via arbitrary-precision arithmetic.
    const cplx ref(0.7105990259489800637885618, 0.07036316990897469540852993);
    CHECK(std::abs(k_prime(1.0, cplx(0.5, -0.1)) - ref) < 1e-15);
}

TEST_CASE("branch consistency k'^2 + u + s = k^2 over random arguments") {
    Rng rng(201);
    double worst = 0.0;
    for (int i = 0; i < 2000; ++i) {
        const double k = rng.in(0.05, 3.0);
        const cplx u(rng.in(-2.0, 4.0), -rng.in(0.0, 2.0));
        const cplx s(rng.in(-1.0, 1.0), 0.0);
        const cplx kp = k_prime(k, u, s);
        worst = std::max(worst, std::abs(kp * kp + u + s - k * k));
        CHECK(kp.real() >= 0.0);
        if (u.imag() + s.imag() <= 0.0) CHECK(kp.imag() >= 0.0);  // physical domain
    }
    CHECK(worst < 1e-13);
}

TEST_CASE("interface_r limits") {
    CHECK(std::abs(interface_r(1.5, 0.0)) == 0.0);
    CHECK(std::abs(interface_r(1.0, 1.0) - 1.0) == 0.0);  // total reflection edge
    CHECK(std::abs(interface_r(1.0, 1e8)) > 0.999);       // hard wall
}

TEST_CASE("barrier with u = 0 is transparent") {
    const auto [R, T] = barrier_RT(1.3, 0.0, 2.0);
    CHECK(std::abs(R) == 0.0);
    CHECK(std::abs(T - std::exp(cplx(0.0, 1.3 * 2.0))) < 1e-15);
}

TEST_CASE("lossless barrier conserves flux and matches the RK4 oracle") {
    const double k = 1.0, d = 1.0;
    const cplx u = 2.0;
    const auto [R, T] = barrier_RT(k, u, d);
    CHECK(std::abs(std::norm(R) + std::norm(T) - 1.0) < 1e-12);
    const auto ora = oracles::rk4_barrier(k, u, d);
    CHECK(std::abs(R - ora.R) < 1e-8 * std::abs(ora.R));
    CHECK(std::abs(T - ora.T) < 1e-8 * std::abs(ora.T));
}

TEST_CASE("absorbing barrier loses flux and matches the RK4 oracle") {
    const double k = 1.0, d = 2.0;
    const cplx u(0.5, -0.2);
    const auto [R, T] = barrier_RT(k, u, d);
    CHECK(std::norm(R) + std::norm(T) < 1.0);
    const auto ora = oracles::rk4_barrier(k, u, d);
    CHECK(std::abs(R - ora.R) < 1e-8 * std::abs(ora.R));
    CHECK(std::abs(T - ora.T) < 1e-8 * std::abs(ora.T));
}

TEST_CASE("barrier amplitudes match the RK4 oracle over random cases") {
    Rng rng(202);
    double worst = 0.0;
    for (int i = 0; i < 60; ++i) {
        const double k = rng.in(0.2, 2.2);
        const double up = rng.in(0.05, 3.5);
        const cplx u(up, -rng.in(0.0, up));
        const double d = rng.in(0.2, 2.5);
        const auto [R, T] = barrier_RT(k, u, d);
        const auto ora = oracles::rk4_barrier(k, u, d);
        worst = std::max(worst, std::abs(R - ora.R) / std::max(1e-12, std::abs(ora.R)));
        worst = std::max(worst, std::abs(T - ora.T) / std::max(1e-12, std::abs(ora.T)));
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("barrier is stable through the total-reflection edge") {
    // Approach k' -> 0 from both sides and hit it exactly.
    const double d = 7.0;
    const double k = 0.1;
    for (double eps : {1e-4, 1e-7, 1e-10, 1e-13}) {
        const auto near = barrier_RT(k, k * k * (1.0 - eps), d);
        CHECK(std::isfinite(std::abs(near.R)));
        CHECK(std::abs(std::norm(near.R) + std::norm(near.T) - 1.0) < 1e-9);
    }
    const auto edge = barrier_RT(k, k * k, d);
    const cplx ikd(0.0, k * d);
    CHECK(std::abs(edge.R - (-ikd / (2.0 - ikd))) < 1e-12);
    CHECK(std::abs(edge.T - 2.0 / (2.0 - ikd)) < 1e-12);
    CHECK(std::abs(std::norm(edge.R) + std::norm(edge.T) - 1.0) < 1e-12);
}

TEST_CASE("wave function: free case, matching, and interior oracle value") {
    CHECK(std::abs(barrier_wavefunction(-0.7, 1.0, 0.0, 1.0) -
                   std::exp(cplx(0.0, -0.7))) < 1e-15);

    const double k = 1.0, d = 1.0;
    const cplx u(2.0, -0.1);
    // Continuity at both faces, value and derivative (finite differences).
    const double h = 1e-6;
    for (double x0 : {0.0, d}) {
        const cplx below = barrier_wavefunction(x0 - h, k, u, d);
        const cplx above = barrier_wavefunction(x0 + h, k, u, d);
        CHECK(std::abs(above - below) < 1e-5);
        const cplx d_below =
            (barrier_wavefunction(x0 - h, k, u, d) - barrier_wavefunction(x0 - 3 * h, k, u, d)) /
            (2.0 * h);
        const cplx d_above =
            (barrier_wavefunction(x0 + 3 * h, k, u, d) - barrier_wavefunction(x0 + h, k, u, d)) /
            (2.0 * h);
        CHECK(std::abs(d_above - d_below) < 1e-4);
    }

    const cplx mid = barrier_wavefunction(d / 2, k, cplx(2.0, -0.3), d);
    const cplx ora = oracles::rk4_barrier_value(d / 2, k, cplx(2.0, -0.3), d);
    CHECK(std::abs(mid - ora) < 1e-8);
}

TEST_CASE("layer matrices reduce to the scalar barrier when B = 0") {
    const Layer L(10.0, cplx(0.01, -0.001), {0, 0, 0});
    const auto [R, T] = barrier_RT(0.15, L.u, L.thickness);
    CHECK((layer_T(0.15, L) - T * SpinMatrix::Identity()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((layer_R(0.15, L) - R * SpinMatrix::Identity()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("field along z makes the layer diagonal with shifted potentials") {
    const double B0 = 0.004, k = 0.13;
    const Layer L(20.0, 0.008, {0, 0, B0});
    const SpinMatrix T = layer_T(k, L);
    CHECK(std::abs(T(0, 1)) == 0.0);
    CHECK(std::abs(T(1, 0)) == 0.0);
    CHECK(std::abs(T(0, 0) - barrier_RT(k, 0.008 + B0, 20.0).T) < 1e-15);
    CHECK(std::abs(T(1, 1) - barrier_RT(k, 0.008 - B0, 20.0).T) < 1e-15);
}

TEST_CASE("lossless magnetic layer: flux closes against the exact stack solver") {
    Rng rng(203);
    for (int i = 0; i < 25; ++i) {
        const Layer L(rng.in(5.0, 40.0), rng.in(0.001, 0.02),
                      rng.unit_vector() * rng.in(0.0, 0.01));
        const double k = rng.in(0.05, 0.4);
        const SpinMatrix R = layer_R(k, L), T = layer_T(k, L);
        const auto PR = spin_probabilities(R), PT = spin_probabilities(T);
        CHECK(std::abs(PR.in_plus() + PT.in_plus() - 1.0) < 1e-10);
        CHECK(std::abs(PR.in_minus() + PT.in_minus() - 1.0) < 1e-10);
        const auto exact = exact_stack_solve(k, MirrorStack({L}));
        CHECK((exact.R - R).cwiseAbs().maxCoeff() < 1e-10);
        CHECK((exact.T - T).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("absorption never increases transmission eigenvalue magnitudes") {
    const double k = 0.2, d = 15.0;
    const FieldVector B(0.003, 0.002, 0.0);
    double prev = 2.0;
    for (double us : {0.0, 0.002, 0.005, 0.01, 0.02}) {
        const Layer L(d, cplx(0.01, -us), B);
        const SpinMatrix T = layer_T(k, L);
        Eigen::ComplexEigenSolver<SpinMatrix> es(T);
        const double mag = std::max(std::abs(es.eigenvalues()(0)), std::abs(es.eigenvalues()(1)));
        CHECK(mag <= prev + 1e-12);
        prev = mag;
    }
}

TEST_CASE("Layer construction rejects invalid inputs") {
    CHECK_THROWS_AS(Layer(0.0, 0.01, {0, 0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(Layer(-1.0, 0.01, {0, 0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(Layer(1.0, cplx(0.01, 0.001), {0, 0, 0}), std::invalid_argument);  // gain
    CHECK_NOTHROW(Layer(1.0, cplx(0.01, -0.001), {0, 0, 0}));
}

}  // TEST_SUITE
