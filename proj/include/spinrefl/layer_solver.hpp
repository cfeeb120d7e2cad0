#pragma once

// Single uniform slab: scalar rectangular barrier amplitudes and the
// spin-matrix transmission/reflection of a magnetized layer.
//
// Units: lengths nm, wave numbers 1/nm, potentials and fields 1/nm^2
// (the 2m/hbar^2 scaling is already applied). The optical potential is
// u = u' - i u'' with u'' >= 0: absorbing or lossless, never gain.

#include "spinrefl/spin_algebra.hpp"

namespace spinrefl {

struct Layer {
    double thickness;  // nm, > 0
    cplx u;            // 1/nm^2, Im(u) <= 0
    FieldVector B;     // 1/nm^2

    Layer(double thickness, cplx u, const FieldVector& B);
};

// Scalar barrier amplitudes. Incident wave exp(ikx) from x < 0; reflected
// R exp(-ikx); transmitted T exp(ik(x-d)) for x > d.
struct ScatterPair {
    cplx R;
    cplx T;
};

// k'(k, u, s) = sqrt(k^2 - u - s) on the branch that is the principal root
// after normalizing a signed-zero imaginary part to +0. For physical
// arguments (Im(u+s) <= 0) this is exactly the Im(k') >= 0 branch with
// Re >= 0 on the real axis; for conjugated (gain) arguments it is the
// analytic continuation satisfying k'(u*) = conj(k'(u)).
cplx k_prime(double k, cplx u, cplx s = cplx(0.0));

// Interface amplitude r = (k - k')/(k + k').
cplx interface_r(double k, cplx u, cplx s = cplx(0.0));

// Rectangular barrier of thickness d:
//   R = r (1 - e^{2ik'd}) / (1 - r^2 e^{2ik'd}),
//   T = e^{ik'd} (1 - r^2) / (1 - r^2 e^{2ik'd}).
// Evaluated in a cancellation-free arrangement with a finite limit at k' = 0.
ScatterPair barrier_RT(double k, cplx u, double d);

// Full-axis wave function for unit incidence on the scalar barrier:
// exp(ikx) + R exp(-ikx) for x <= 0, a e^{ik'x} + b e^{-ik'x} inside,
// T exp(ik(x-d)) for x >= d. Continuous with continuous derivative.
cplx barrier_wavefunction(double x, double k, cplx u, double d);

// Magnetized layer matrices: the scalar maps T(.), R(.) evaluated on the
// operator u + sigma.B via the even/odd split, i.e. at eigenvalues u +- |B|.
SpinMatrix layer_T(double k, const Layer& layer);
SpinMatrix layer_R(double k, const Layer& layer);

}  // namespace spinrefl
