#include "spinrefl/spin_algebra.hpp"

namespace spinrefl {

namespace {
constexpr double kUnitTol = 1e-12;
const cplx I{0.0, 1.0};
}  // namespace

const SpinMatrix& sigma_x() {
    static const SpinMatrix m = (SpinMatrix() << 0, 1, 1, 0).finished();
    return m;
}

const SpinMatrix& sigma_y() {
    static const SpinMatrix m = (SpinMatrix() << 0, -I, I, 0).finished();
    return m;
}

const SpinMatrix& sigma_z() {
    static const SpinMatrix m = (SpinMatrix() << 1, 0, 0, -1).finished();
    return m;
}

SpinMatrix pauli_dot(const FieldVector& b) {
    if (std::abs(b.norm() - 1.0) > kUnitTol)
        throw ZeroDirection("pauli_dot: direction must be a unit vector, |b| = " +
                            std::to_string(b.norm()));
    SpinMatrix m;
    m << b.z(), cplx(b.x(), -b.y()), cplx(b.x(), b.y()), -b.z();
    return m;
}

SpinMatrix cross_term(const FieldVector& b1, const FieldVector& b2) {
    if (std::abs(b1.norm() - 1.0) > kUnitTol || std::abs(b2.norm() - 1.0) > kUnitTol)
        throw ZeroDirection("cross_term: both directions must be unit vectors");
    const FieldVector c = b1.cross(b2);
    SpinMatrix m;
    m << c.z(), cplx(c.x(), -c.y()), cplx(c.x(), c.y()), -c.z();
    return m;
}

SpinMatrix ScalarSplit::assemble() const {
    if (f_minus == cplx(0.0)) return f_plus * SpinMatrix::Identity();
    return f_plus * SpinMatrix::Identity() + f_minus * pauli_dot(direction);
}

}  // namespace spinrefl
