#include "spinrefl/stack_solver.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>
#include <array>
#include <cmath>
#include <limits>

namespace spinrefl {

namespace {

const cplx I{0.0, 1.0};
using Matrix4 = Eigen::Matrix4cd;

// Growth threshold above which transfer-matrix products are replaced by
// Redheffer star composition of per-layer scattering matrices. Transfer
// entries reach exp(growth), so rounding costs up to eps * exp(growth);
// 8 keeps that below ~3e-13 while the star path is stable at any growth.
constexpr double kGrowthSwitch = 8.0;

// Closed-form 4x4 transfer matrix of one uniform layer, mapping
// (psi, psi') at the entry face to the exit face. 2x2 spin blocks are
// scalar functions of sigma.B evaluated through the even/odd split:
//   [ cos(k'l)          sin(k'l)/k' ]
//   [ -k' sin(k'l)      cos(k'l)    ]
Matrix4 layer_transfer(double k, const Layer& L) {
    const double l = L.thickness;
    const auto eval = [&](cplx s) -> std::array<cplx, 3> {
        const cplx kp = k_prime(k, L.u, s);
        const cplx arg = kp * l;
        return {std::cos(arg), l * sinc(arg), -kp * std::sin(arg)};
    };
    const double mag = L.B.norm();
    SpinMatrix C, S, D;
    if (mag == 0.0) {
        const auto f = eval(0.0);
        C = f[0] * SpinMatrix::Identity();
        S = f[1] * SpinMatrix::Identity();
        D = f[2] * SpinMatrix::Identity();
    } else {
        const auto fp = eval(mag);
        const auto fm = eval(-mag);
        const SpinMatrix sb = pauli_dot(L.B / mag);
        C = 0.5 * (fp[0] + fm[0]) * SpinMatrix::Identity() + 0.5 * (fp[0] - fm[0]) * sb;
        S = 0.5 * (fp[1] + fm[1]) * SpinMatrix::Identity() + 0.5 * (fp[1] - fm[1]) * sb;
        D = 0.5 * (fp[2] + fm[2]) * SpinMatrix::Identity() + 0.5 * (fp[2] - fm[2]) * sb;
    }
    Matrix4 M;
    M.topLeftCorner<2, 2>() = C;
    M.topRightCorner<2, 2>() = S;
    M.bottomLeftCorner<2, 2>() = D;
    M.bottomRightCorner<2, 2>() = C;
    return M;
}

// Extract (R, T) from the composed transfer matrix. Incident spinor chi:
// psi(0) = (I+R)chi, psi'(0) = ik(I-R)chi, psi(d) = T chi, psi'(d) = ik T chi
// give (Am + Bm) R = Bm - Am with Am = ik M00 - M10, Bm = ik M11 + k^2 M01.
ScatteringSolution extract_RT(double k, const Matrix4& M) {
    const SpinMatrix M00 = M.topLeftCorner<2, 2>();
    const SpinMatrix M01 = M.topRightCorner<2, 2>();
    const SpinMatrix M10 = M.bottomLeftCorner<2, 2>();
    const SpinMatrix M11 = M.bottomRightCorner<2, 2>();
    const SpinMatrix Am = I * k * M00 - M10;
    const SpinMatrix Bm = I * k * M11 + k * k * M01;
    const SpinMatrix sys = Am + Bm;

    Eigen::JacobiSVD<SpinMatrix> svd(sys);
    const double smax = svd.singularValues()(0);
    const double smin = svd.singularValues()(1);
    if (!(smin > smax * 1e-14) || !std::isfinite(smax))
        throw SingularBoundarySystem(
            "exact_stack_solve: boundary extraction singular",
            smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity());

    const SpinMatrix R = sys.partialPivLu().solve((Bm - Am).eval());
    const SpinMatrix T =
        M00 * (SpinMatrix::Identity() + R) + I * k * M01 * (SpinMatrix::Identity() - R);
    return {R, T, k};
}

struct SMatrix {
    SpinMatrix r;   // left-incidence reflection
    SpinMatrix t;   // forward transmission
    SpinMatrix rp;  // right-incidence reflection
    SpinMatrix tp;  // backward transmission
};

// Redheffer star: B after A, vacuum gap of zero width between them.
SMatrix star(const SMatrix& A, const SMatrix& B) {
    const SpinMatrix X =
        (SpinMatrix::Identity() - A.rp * B.r).partialPivLu().inverse();
    const SpinMatrix Y =
        (SpinMatrix::Identity() - B.r * A.rp).partialPivLu().inverse();
    return {A.r + A.tp * B.r * X * A.t, B.t * X * A.t,
            B.rp + B.t * A.rp * Y * B.tp, A.tp * Y * B.tp};
}

// A uniform slab is mirror-symmetric, so its right-incidence blocks equal
// the left-incidence ones.
SMatrix layer_smatrix(double k, const Layer& L) {
    const SpinMatrix r = layer_R(k, L);
    const SpinMatrix t = layer_T(k, L);
    return {r, t, r, t};
}

double evanescent_growth(double k, const MirrorStack& stack) {
    double g = 0.0;
    for (const Layer& L : stack.layers) {
        const double mag = L.B.norm();
        const double gp = std::abs(k_prime(k, L.u, mag).imag());
        const double gm = std::abs(k_prime(k, L.u, -mag).imag());
        g += std::max(gp, gm) * L.thickness;
    }
    return g;
}

}  // namespace

MirrorStack::MirrorStack(std::vector<Layer> layers_) : layers(std::move(layers_)) {
    if (layers.empty()) throw std::invalid_argument("MirrorStack: needs at least one layer");
}

double MirrorStack::total_thickness() const {
    double d = 0.0;
    for (const Layer& L : layers) d += L.thickness;
    return d;
}

ProbTable spin_probabilities(const SpinMatrix& M) {
    return {std::norm(M(0, 0)), std::norm(M(0, 1)), std::norm(M(1, 0)), std::norm(M(1, 1))};
}

SpinMatrix two_layer_T_approx(double k, const Layer& L1, const Layer& L2) {
    return layer_T(k, L2) * layer_T(k, L1);
}

SpinMatrix two_layer_R_approx(double k, const Layer& L1, const Layer& L2) {
    const SpinMatrix T1 = layer_T(k, L1);
    return layer_R(k, L1) + T1 * layer_R(k, L2) * T1;
}

ScatteringSolution exact_stack_solve(double k, const MirrorStack& stack) {
    if (!(k > 0.0)) throw std::invalid_argument("exact_stack_solve: k must be positive");
    if (evanescent_growth(k, stack) > kGrowthSwitch) {
        SMatrix S = layer_smatrix(k, stack.layers.front());
        for (std::size_t i = 1; i < stack.layers.size(); ++i)
            S = star(S, layer_smatrix(k, stack.layers[i]));
        return {S.r, S.t, k};
    }
    Matrix4 M = Matrix4::Identity();
    for (const Layer& L : stack.layers) M = layer_transfer(k, L) * M;
    return extract_RT(k, M);
}

double CompositionSplit::sin_phi() const { return b1.cross(b2).z(); }

cplx CompositionSplit::effective_diag() const { return -c_cross * sin_phi(); }

SpinMatrix CompositionSplit::reassemble() const {
    SpinMatrix M = scalar * SpinMatrix::Identity() + c_b1 * pauli_dot(b1) + c_b2 * pauli_dot(b2);
    const FieldVector c = b2.cross(b1);
    if (c.norm() > 0.0) {
        SpinMatrix sc;
        sc << c.z(), cplx(c.x(), -c.y()), cplx(c.x(), c.y()), -c.z();
        M += cplx(0.0, 1.0) * c_cross * sc;
    }
    return M;
}

CompositionSplit composition_split(double k, const Layer& L1, const Layer& L2) {
    if (L1.B.z() != 0.0 || L2.B.z() != 0.0)
        throw FieldOutOfPlane("composition_split: fields must be in-plane (bz = 0)");
    const double B1 = L1.B.norm(), B2 = L2.B.norm();
    if (B1 == 0.0 || B2 == 0.0)
        throw ZeroDirection("composition_split: fields must have nonzero magnitude");
    const auto split1 = scalar_split(
        [&](cplx s) { return barrier_RT(k, L1.u + s, L1.thickness).T; }, L1.B);
    const auto split2 = scalar_split(
        [&](cplx s) { return barrier_RT(k, L2.u + s, L2.thickness).T; }, L2.B);
    const FieldVector b1 = L1.B / B1, b2 = L2.B / B2;
    const double cos_phi = b1.dot(b2);
    return {split1.f_plus * split2.f_plus + split1.f_minus * split2.f_minus * cos_phi,
            split1.f_minus * split2.f_plus,
            split2.f_minus * split1.f_plus,
            split1.f_minus * split2.f_minus,
            b1,
            b2};
}

}  // namespace spinrefl
