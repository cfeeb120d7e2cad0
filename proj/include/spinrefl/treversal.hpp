#pragma once

// Time-reversal identities for the scalar rectangular barrier with a complex
// potential. The conjugated solutions live at the conjugate potential u*
// (gain instead of absorption): superposing the left-incident solution with
// amplitude conj(R(k,u)) and the right-incident solution with amplitude
// conj(T(k,u)) reproduces the complex conjugate of the original wave
// function everywhere. Three checkable consequences:
//   conj(R(k,u)) R(k,u*) + conj(T(k,u)) T(k,u*) = 1        (left face)
//   conj(R(k,u)) T(k,u*) + conj(T(k,u)) R(k,u*) = 0        (right face)
//   phi_l(x) + phi_r(x) = conj(phi(x; u)) in the interior.

#include <vector>

#include "spinrefl/layer_solver.hpp"

namespace spinrefl {

// The two conjugated solutions at (k, u, d), each a full-axis wave function
// built on the barrier with potential u*.
struct ConjugatedPair {
    double k;
    cplx u;
    double d;

    // Left-incident: conj(R(k,u)) * (unit-incidence solution at u*).
    cplx phi_l(double x) const;
    // Right-incident: conj(T(k,u)) * (unit right-incidence solution at u*),
    // incident wave conj(T(k,u)) exp(-ik(x-d)).
    cplx phi_r(double x) const;
};

// conj(R(k,u)) R(k,u*) + conj(T(k,u)) T(k,u*) - 1; vanishes identically.
cplx identity_18_residual(double k, cplx u, double d);

// |conj(R(k,u)) T(k,u*) + conj(T(k,u)) R(k,u*)|: magnitude of the right
// outgoing wave of the superposed conjugated solutions; vanishes
// identically. (The two terms are exact negatives of each other, so
// neither vanishes alone for complex u.)
double identity_19_residual(double k, cplx u, double d);

// phi_l(x) + phi_r(x) - conj(barrier_wavefunction(x; k, u, d)) for
// 0 < x < d; vanishes identically.
cplx interior_match_residual(double x, double k, cplx u, double d);

// Branch-consistency report: k'(u*) = conj(k'(u)) and r(u*) = conj(r(u))
// hold on this branch (for real u above the edge both sides are real), while
// the full barrier amplitude does not conjugate: the thickness phase
// exp(2ik'd) maps to exp(2i conj(k')d), not to its conjugate, so
// R(k,u*) != conj(R(k,u)) whenever R carries a propagation phase. gap_R
// reports that defect for the barrier of thickness d.
struct ConjugateReport {
    double err_kprime;  // |k'(k,u*) - conj(k'(k,u))|
    double err_r;       // |r(k,u*) - conj(r(k,u))|
    double gap_R;       // |R(k,u*) - conj(R(k,u))|
};

ConjugateReport conjugate_relations_check(double k, cplx u, double d = 1.0);

// Chebyshev-spaced interior points in (0, d), clustered toward both faces.
std::vector<double> chebyshev_interior_points(double d, int n = 64);

}  // namespace spinrefl
