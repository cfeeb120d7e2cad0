#include "spinrefl/layer_solver.hpp"

#include <cassert>

namespace spinrefl {

namespace {
const cplx I{0.0, 1.0};
}

Layer::Layer(double thickness_, cplx u_, const FieldVector& B_)
    : thickness(thickness_), u(u_), B(B_) {
    if (!(thickness > 0.0))
        throw std::invalid_argument("Layer: thickness must be positive");
    if (u.imag() > 0.0)
        throw std::invalid_argument("Layer: Im(u) must be <= 0 (u = u' - i u'', u'' >= 0)");
    if (!std::isfinite(u.real()) || !std::isfinite(u.imag()) || !B.allFinite())
        throw std::invalid_argument("Layer: non-finite potential or field");
}

cplx k_prime(double k, cplx u, cplx s) {
    return sqrt_principal(k * k - u - s);
}

cplx interface_r(double k, cplx u, cplx s) {
    const cplx kp = k_prime(k, u, s);
    const cplx den = k + kp;
    // With Re(k') >= 0 and k > 0 the denominator cannot vanish.
    assert(std::abs(den) > 0.0 && "interface_r: degenerate interface k + k' = 0");
    return (k - kp) / den;
}

ScatterPair barrier_RT(double k, cplx u, double d) {
    const cplx kp = k_prime(k, u, 0.0);
    if (kp == cplx(0.0)) {
        // k^2 = u exactly: interior is linear in x; limiting amplitudes.
        const cplx ikd = I * k * d;
        return {-ikd / (2.0 - ikd), 2.0 / (2.0 - ikd)};
    }
    const cplx r = interface_r(k, u, 0.0);
    // 1 - e^{2ik'd} and the denominator written through expm1 so the
    // total-reflection edge k' -> 0 stays cancellation-free:
    //   1 - r^2 e^{2ik'd} = (1 - e^{2ik'd}) + e^{2ik'd} (1 - r)(1 + r),
    // with 1 - r = 2k'/(k + k').
    const cplx em1 = expm1c(2.0 * I * kp * d);     // e^{2ik'd} - 1
    const cplx e2 = em1 + 1.0;                     // e^{2ik'd}
    const cplx one_minus_r = 2.0 * kp / (k + kp);
    const cplx den = -em1 + e2 * one_minus_r * (1.0 + r);
    const cplx R = r * (-em1) / den;
    const cplx T = std::exp(I * kp * d) * one_minus_r * (1.0 + r) / den;
    return {R, T};
}

cplx barrier_wavefunction(double x, double k, cplx u, double d) {
    const auto [R, T] = barrier_RT(k, u, d);
    if (x <= 0.0) return std::exp(I * k * x) + R * std::exp(-I * k * x);
    if (x >= d) return T * std::exp(I * k * (x - d));
    const cplx kp = k_prime(k, u, 0.0);
    // Interior coefficients from continuity at x = 0:
    //   a + b = 1 + R,  ik'(a - b) = ik(1 - R).
    const cplx ratio = k / kp;
    const cplx a = 0.5 * ((1.0 + R) + ratio * (1.0 - R));
    const cplx b = 0.5 * ((1.0 + R) - ratio * (1.0 - R));
    return a * std::exp(I * kp * x) + b * std::exp(-I * kp * x);
}

SpinMatrix layer_T(double k, const Layer& layer) {
    return scalar_function_of(
        [&](cplx s) { return barrier_RT(k, layer.u + s, layer.thickness).T; }, layer.B);
}

SpinMatrix layer_R(double k, const Layer& layer) {
    return scalar_function_of(
        [&](cplx s) { return barrier_RT(k, layer.u + s, layer.thickness).R; }, layer.B);
}

}  // namespace spinrefl
