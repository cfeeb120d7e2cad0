#include "spinrefl/treversal.hpp"

#include <cmath>

namespace spinrefl {

namespace {

const cplx I{0.0, 1.0};

// Interior coefficients of the unit-incidence barrier solution at potential
// u: phi = a e^{ik'x} + b e^{-ik'x} for 0 < x < d, from continuity at x = 0.
struct Interior {
    cplx R, T, kp, a, b;
};

Interior interior_of(double k, cplx u, double d) {
    const auto [R, T] = barrier_RT(k, u, d);
    const cplx kp = k_prime(k, u, 0.0);
    const cplx ratio = k / kp;
    return {R, T, kp, 0.5 * ((1.0 + R) + ratio * (1.0 - R)),
            0.5 * ((1.0 + R) - ratio * (1.0 - R))};
}

}  // namespace

cplx ConjugatedPair::phi_l(double x) const {
    const cplx amp = std::conj(barrier_RT(k, u, d).R);
    const cplx us = std::conj(u);
    const Interior in = interior_of(k, us, d);
    if (x <= 0.0) return amp * (std::exp(I * k * x) + in.R * std::exp(-I * k * x));
    if (x >= d) return amp * in.T * std::exp(I * k * (x - d));
    return amp * (in.a * std::exp(I * in.kp * x) + in.b * std::exp(-I * in.kp * x));
}

cplx ConjugatedPair::phi_r(double x) const {
    const cplx amp = std::conj(barrier_RT(k, u, d).T);
    const cplx us = std::conj(u);
    const Interior in = interior_of(k, us, d);
    // Mirror image x -> d - x of the left-incident solution: the rectangular
    // barrier is symmetric, so R and T are shared.
    if (x >= d) return amp * (std::exp(-I * k * (x - d)) + in.R * std::exp(I * k * (x - d)));
    if (x <= 0.0) return amp * in.T * std::exp(-I * k * x);
    return amp * (in.a * std::exp(-I * in.kp * (x - d)) + in.b * std::exp(I * in.kp * (x - d)));
}

cplx identity_18_residual(double k, cplx u, double d) {
    const auto [Ru, Tu] = barrier_RT(k, u, d);
    const auto [Rs, Ts] = barrier_RT(k, std::conj(u), d);
    return std::conj(Ru) * Rs + std::conj(Tu) * Ts - 1.0;
}

double identity_19_residual(double k, cplx u, double d) {
    const auto [Ru, Tu] = barrier_RT(k, u, d);
    const auto [Rs, Ts] = barrier_RT(k, std::conj(u), d);
    return std::abs(std::conj(Ru) * Ts + std::conj(Tu) * Rs);
}

cplx interior_match_residual(double x, double k, cplx u, double d) {
    const ConjugatedPair pair{k, u, d};
    return pair.phi_l(x) + pair.phi_r(x) - std::conj(barrier_wavefunction(x, k, u, d));
}

ConjugateReport conjugate_relations_check(double k, cplx u, double d) {
    const cplx us = std::conj(u);
    ConjugateReport rep{};
    rep.err_kprime = std::abs(k_prime(k, us) - std::conj(k_prime(k, u)));
    rep.err_r = std::abs(interface_r(k, us) - std::conj(interface_r(k, u)));
    rep.gap_R = std::abs(barrier_RT(k, us, d).R - std::conj(barrier_RT(k, u, d).R));
    return rep;
}

std::vector<double> chebyshev_interior_points(double d, int n) {
    std::vector<double> xs(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
        xs[static_cast<std::size_t>(j)] =
            0.5 * d * (1.0 - std::cos(M_PI * (2.0 * j + 1.0) / (2.0 * n)));
    return xs;
}

}  // namespace spinrefl
