#pragma once

// 2x2 spin algebra in the sigma_z eigenbasis, sigma_z|+-> = +-|+->.
// All probability labels (++, +-, -+, --) throughout the library refer to
// this fixed basis. Fields are vectors in 1/nm^2 (pre-scaled by 2*mu*m/hbar^2).

#include <Eigen/Dense>

#include "spinrefl/complexutil.hpp"
#include "spinrefl/errors.hpp"

namespace spinrefl {

using SpinMatrix = Eigen::Matrix2cd;
using FieldVector = Eigen::Vector3d;

const SpinMatrix& sigma_x();
const SpinMatrix& sigma_y();
const SpinMatrix& sigma_z();

// sigma . b for a unit vector b (|b| = 1 within 1e-12, else ZeroDirection).
SpinMatrix pauli_dot(const FieldVector& b);

// sigma . (b1 x b2); with pauli_dot it satisfies
// (sigma.b1)(sigma.b2) = (b1.b2) I + i sigma.[b1 x b2].
SpinMatrix cross_term(const FieldVector& b1, const FieldVector& b2);

// Even/odd split of a scalar function evaluated on the operator sigma.B:
// f(sigma.B) = f_plus * I + f_minus * (sigma.b),  f_{+-} = (f(B) +- f(-B))/2,
// with B = |B| and b = B/|B|.
struct ScalarSplit {
    cplx f_plus;
    cplx f_minus;
    FieldVector direction;  // unit; arbitrary (zero f_minus) when |B| = 0

    SpinMatrix assemble() const;
};

template <typename F>
ScalarSplit scalar_split(F&& f, const FieldVector& B) {
    const double mag = B.norm();
    if (mag == 0.0) return {f(cplx(0.0)), cplx(0.0), FieldVector(0, 0, 1)};
    const cplx fp = f(cplx(mag));
    const cplx fm = f(cplx(-mag));
    return {0.5 * (fp + fm), 0.5 * (fp - fm), B / mag};
}

// f(sigma.B) as a matrix; |B| = 0 gives f(0) * I.
template <typename F>
SpinMatrix scalar_function_of(F&& f, const FieldVector& B) {
    return scalar_split(std::forward<F>(f), B).assemble();
}

}  // namespace spinrefl
