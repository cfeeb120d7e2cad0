#pragma once

// Independent numerical oracles used to validate the closed-form solvers.
// They share no code path with the library beyond elementary arithmetic:
// the barrier oracle integrates the wave equation directly with RK4, the
// matrix-function oracle goes through a dense eigendecomposition.

#include <Eigen/Eigenvalues>
#include <complex>
#include <functional>
#include <random>

#include "spinrefl/spin_algebra.hpp"

namespace oracles {

using spinrefl::cplx;
using spinrefl::FieldVector;
using spinrefl::SpinMatrix;

struct BarrierAmplitudes {
    cplx R, T;
};

namespace detail {

// One RK4 step of the first-order system y = (phi, phi'), phi'' = w2 phi.
inline void rk4_step(cplx& phi, cplx& dphi, cplx w2, double h) {
    const auto f = [w2](cplx p, cplx dp) { return std::pair<cplx, cplx>(dp, w2 * p); };
    const auto [k1p, k1d] = f(phi, dphi);
    const auto [k2p, k2d] = f(phi + 0.5 * h * k1p, dphi + 0.5 * h * k1d);
    const auto [k3p, k3d] = f(phi + 0.5 * h * k2p, dphi + 0.5 * h * k2d);
    const auto [k4p, k4d] = f(phi + h * k3p, dphi + h * k3d);
    phi += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
    dphi += h / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);
}

// Integrate phi'' = (u - k^2) phi from x = d down to x = x_end, seeded with
// the transmitted wave phi(d) = 1, phi'(d) = ik.
inline std::pair<cplx, cplx> integrate_back(double x_end, double k, cplx u, double d, int n) {
    const cplx I{0.0, 1.0};
    const cplx w2 = u - k * k;
    cplx phi = 1.0, dphi = I * k;
    const double h = (x_end - d) / n;  // negative
    for (int i = 0; i < n; ++i) rk4_step(phi, dphi, w2, h);
    return {phi, dphi};
}

}  // namespace detail

// R, T of the scalar rectangular barrier by direct integration. At x = 0 the
// solution decomposes into incident and reflected parts:
// a = (phi + phi'/(ik))/2, b = (phi - phi'/(ik))/2, T = 1/a, R = b/a.
inline BarrierAmplitudes rk4_barrier(double k, cplx u, double d, int n = 20000) {
    const cplx I{0.0, 1.0};
    const auto [phi, dphi] = detail::integrate_back(0.0, k, u, d, n);
    const cplx a = 0.5 * (phi + dphi / (I * k));
    const cplx b = 0.5 * (phi - dphi / (I * k));
    return {b / a, 1.0 / a};
}

// Interior wave function at x for unit incidence, by the same integration.
inline cplx rk4_barrier_value(double x, double k, cplx u, double d, int n = 20000) {
    const cplx I{0.0, 1.0};
    const auto [phi0, dphi0] = detail::integrate_back(0.0, k, u, d, n);
    const cplx a = 0.5 * (phi0 + dphi0 / (I * k));
    const auto [phix, dphix] = detail::integrate_back(x, k, u, d, n);
    (void)dphix;
    return phix / a;
}

// f(sigma.B) through an explicit eigendecomposition of the 2x2 matrix,
// independent of the even/odd-split evaluation.
inline SpinMatrix eig_apply(const std::function<cplx(cplx)>& f, const FieldVector& B) {
    SpinMatrix sb;
    sb << B.z(), cplx(B.x(), -B.y()), cplx(B.x(), B.y()), -B.z();
    if (B.norm() == 0.0) return f(0.0) * SpinMatrix::Identity();
    Eigen::ComplexEigenSolver<SpinMatrix> es(sb);
    const SpinMatrix V = es.eigenvectors();
    SpinMatrix D = SpinMatrix::Zero();
    D(0, 0) = f(es.eigenvalues()(0));
    D(1, 1) = f(es.eigenvalues()(1));
    return V * D * V.inverse();
}

// Deterministic uniform helpers for test sweeps.
struct Rng {
    std::mt19937_64 eng;

    explicit Rng(std::uint64_t seed) : eng(seed) {}
    double unit() { return (eng() >> 11) * 0x1.0p-53; }
    double in(double lo, double hi) { return lo + (hi - lo) * unit(); }

    FieldVector unit_vector() {
        // Marsaglia: uniform on the sphere.
        double a, b, s;
        do {
            a = 2.0 * unit() - 1.0;
            b = 2.0 * unit() - 1.0;
            s = a * a + b * b;
        } while (s >= 1.0 || s == 0.0);
        const double r = 2.0 * std::sqrt(1.0 - s);
        return {a * r, b * r, 1.0 - 2.0 * s};
    }

    FieldVector in_plane_unit() {
        const double th = 2.0 * M_PI * unit();
        return {std::cos(th), std::sin(th), 0.0};
    }
};

}  // namespace oracles
