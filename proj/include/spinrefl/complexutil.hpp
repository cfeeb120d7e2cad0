#pragma once

#include <cmath>
#include <complex>

namespace spinrefl {

using cplx = std::complex<double>;

// exp(z) - 1 without cancellation for small |z|.
// Re(exp(z)-1) = expm1(x) + exp(x)*(cos(y)-1), with cos(y)-1 = -2 sin^2(y/2).
inline cplx expm1c(cplx z) {
    const double x = z.real(), y = z.imag();
    const double ex = std::exp(x);
    const double s = std::sin(0.5 * y);
    return {std::expm1(x) - 2.0 * ex * s * s, ex * std::sin(y)};
}

// Principal square root (Re >= 0) with the imaginary part of an exactly real
// argument normalized to +0.0, so negative-real arguments deterministically
// yield +i*sqrt(|z|) regardless of how a signed zero arose upstream.
inline cplx sqrt_principal(cplx z) {
    if (z.imag() == 0.0) z.imag(+0.0);
    return std::sqrt(z);
}

// sin(z)/z, stable at z = 0.
inline cplx sinc(cplx z) {
    if (std::abs(z) < 1e-8) return 1.0 - z * z / 6.0;
    return std::sin(z) / z;
}

}  // namespace spinrefl
