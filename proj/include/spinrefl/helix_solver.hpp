#pragma once

// Mirror with helicoidal in-plane magnetization
//   B(z) = B (cos(qz + phase0), sin(qz + phase0), 0),  0 <= z <= d,
// solved two independent ways: analytic rotating-frame diagonalization and
// slice discretization through the exact stack solver.

#include "spinrefl/stack_solver.hpp"

namespace spinrefl {

struct HelixMirror {
    double B;       // field magnitude, 1/nm^2, >= 0
    double q;       // pitch wavevector along z, 1/nm; sign = handedness
    double d;       // thickness, nm, > 0
    cplx u;         // optical potential, Im(u) <= 0
    double phase0;  // field direction at the entry face, rad

    HelixMirror(double B, double q, double d, cplx u, double phase0 = 0.0);
};

enum class HelixMethod { analytic, sliced };

struct HelixSolution {
    SpinMatrix R;
    SpinMatrix T;
    double k;
    HelixMethod method;
    int n_slices;  // 0 for analytic

    ScatteringSolution solution() const { return {R, T, k}; }
};

// Freeze the field at each slice midpoint and solve the resulting stack
// exactly; converges to the analytic solution as O(1/n^2).
HelixSolution helix_solve_sliced(double k, const HelixMirror& m, int n_slices);

// Rotating frame psi = exp(-i (qz + phase0) sigma_z / 2) chi turns the
// z-dependent problem into a constant 4x4 first-order system for
// (chi, chi'): chi'' = (u - k^2 + q^2/4 + B sigma_x) chi + i q sigma_z chi'.
// The interior is expanded in its eigenmodes, each exponential anchored at
// the face where it is largest so every basis function stays bounded, and
// (mode coefficients, R, T) are obtained from one bordered 8x8 solve.
// Falls back to sliced(4096) and flags it when interior eigenvalues
// coincide within 1e-9 relative.
HelixSolution helix_solve_analytic(double k, const HelixMirror& m);

// The same physical mirror traversed from the right: q -> -q and
// phase0 -> q d + phase0.
HelixMirror reversed(const HelixMirror& m);

// The slice discretization as a stack (midpoint-frozen field directions).
MirrorStack helix_sliced_stack(const HelixMirror& m, int n_slices);

}  // namespace spinrefl
