#pragma once

// Layer composition: the no-multiple-reflection two-layer approximations,
// the exact spinor transfer-matrix solution for arbitrary stacks (with a
// scattering-matrix path for opaque stacks), the structural decomposition
// of the two-layer transmission, and spin-resolved probabilities.
//
// A neutron is incident from the left vacuum; layers are listed in the
// order it enters them, so the composed transmission is T_n ... T_2 T_1.

#include <vector>

#include "spinrefl/layer_solver.hpp"

namespace spinrefl {

struct MirrorStack {
    std::vector<Layer> layers;  // non-empty; vacuum on both sides

    explicit MirrorStack(std::vector<Layer> layers);
    double total_thickness() const;
};

struct ScatteringSolution {
    SpinMatrix R;
    SpinMatrix T;
    double k;
};

// P(out, in) = |<out|M|in>|^2 in the sigma_z basis; pm means out = +, in = -.
struct ProbTable {
    double pp, pm, mp, mm;

    double sum() const { return pp + pm + mp + mm; }
    // Column sums: total outgoing probability per incident spin.
    double in_plus() const { return pp + mp; }
    double in_minus() const { return pm + mm; }
};

ProbTable spin_probabilities(const SpinMatrix& M);

// T2(sigma.B2) * T1(sigma.B1): transmission with multiple reflections
// between the layers neglected.
SpinMatrix two_layer_T_approx(double k, const Layer& L1, const Layer& L2);

// R1 + T1 R2 T1: reflection with multiple scattering neglected.
SpinMatrix two_layer_R_approx(double k, const Layer& L1, const Layer& L2);

// Exact solution including all multiple reflections. Each layer propagates
// the 4-vector (psi, psi') by a closed-form 4x4 transfer matrix; the
// composed map is converted to (R, T) through the vacuum boundary system.
// When the accumulated evanescent growth sum_i max_s |Im k'_i(s)| l_i
// exceeds 8, the composition switches to layer-by-layer Redheffer star
// products of per-layer scattering matrices, which stays bounded.
// Throws SingularBoundarySystem if the 2x2 extraction is singular.
ScatteringSolution exact_stack_solve(double k, const MirrorStack& stack);

// Structure of the two-layer transmission for in-plane fields:
//   T2 T1 = scalar * I + c_b1 (sigma.b1) + c_b2 (sigma.b2)
//                      + i c_cross (sigma.[b2 x b1])
// with scalar = T1+ T2+ + T1- T2- cos(phi), c_b1 = T1- T2+, c_b2 = T2- T1+,
// c_cross = T1- T2-, and phi the angle from b1 to b2 about +z.
struct CompositionSplit {
    cplx scalar;   // coefficient of I
    cplx c_b1;     // coefficient of sigma.b1
    cplx c_b2;     // coefficient of sigma.b2
    cplx c_cross;  // T1- T2-, multiplying i sigma.[b2 x b1]
    FieldVector b1;
    FieldVector b2;

    double sin_phi() const;  // z-component of b1 x b2
    // Coefficient of sigma_z on the diagonal: -c_cross * sin(phi). With
    // A = scalar and E = effective_diag(), the diagonal probabilities obey
    // |T(++)|^2 = |A|^2 + |E|^2 + 2 Im(A conj(E)) and the - sign for (--).
    cplx effective_diag() const;
    SpinMatrix reassemble() const;
};

// Requires strictly in-plane fields (bz = 0) of nonzero magnitude;
// throws FieldOutOfPlane / ZeroDirection otherwise.
CompositionSplit composition_split(double k, const Layer& L1, const Layer& L2);

}  // namespace spinrefl
