#include "spinrefl/helix_solver.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spinrefl {

namespace {

const cplx I{0.0, 1.0};
constexpr int kFallbackSlices = 4096;
constexpr double kDegeneracyTol = 1e-9;

FieldVector helix_field(const HelixMirror& m, double z) {
    const double th = m.q * z + m.phase0;
    return m.B * FieldVector(std::cos(th), std::sin(th), 0.0);
}

}  // namespace

HelixMirror::HelixMirror(double B_, double q_, double d_, cplx u_, double phase0_)
    : B(B_), q(q_), d(d_), u(u_), phase0(phase0_) {
    if (!(d > 0.0)) throw std::invalid_argument("HelixMirror: d must be positive");
    if (B < 0.0) throw std::invalid_argument("HelixMirror: B must be >= 0");
    if (u.imag() > 0.0)
        throw std::invalid_argument("HelixMirror: Im(u) must be <= 0 (absorbing)");
}

HelixMirror reversed(const HelixMirror& m) {
    return {m.B, -m.q, m.d, m.u, m.q * m.d + m.phase0};
}

MirrorStack helix_sliced_stack(const HelixMirror& m, int n_slices) {
    if (n_slices < 1)
        throw std::invalid_argument("helix_sliced_stack: n_slices must be >= 1");
    std::vector<Layer> layers;
    layers.reserve(static_cast<std::size_t>(n_slices));
    const double l = m.d / n_slices;
    for (int i = 0; i < n_slices; ++i)
        layers.emplace_back(l, m.u, helix_field(m, (i + 0.5) * l));
    return MirrorStack(std::move(layers));
}

HelixSolution helix_solve_sliced(double k, const HelixMirror& m, int n_slices) {
    const ScatteringSolution s = exact_stack_solve(k, helix_sliced_stack(m, n_slices));
    return {s.R, s.T, k, HelixMethod::sliced, n_slices};
}

HelixSolution helix_solve_analytic(double k, const HelixMirror& m) {
    if (!(k > 0.0)) throw std::invalid_argument("helix_solve_analytic: k must be positive");

    // Rotating frame psi = U(z) chi, U(z) = exp(-i (qz + phase0) sigma_z / 2):
    // chi'' = (u - k^2 + q^2/4) chi + B sigma_x chi + i q sigma_z chi'.
    // Companion form for (chi, chi'):  G = [ 0  I ; V  iq sigma_z ].
    const cplx v0 = m.u - k * k + 0.25 * m.q * m.q;
    Eigen::Matrix4cd G = Eigen::Matrix4cd::Zero();
    G(0, 2) = 1.0;
    G(1, 3) = 1.0;
    G(2, 0) = v0;
    G(2, 1) = m.B;
    G(3, 0) = m.B;
    G(3, 1) = v0;
    G(2, 2) = I * m.q;
    G(3, 3) = -I * m.q;

    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(G);
    if (es.info() != Eigen::Success)
        return helix_solve_sliced(k, m, kFallbackSlices);
    const Eigen::Vector4cd lam = es.eigenvalues();
    const Eigen::Matrix4cd W = es.eigenvectors();

    double max_abs = 0.0;
    for (int i = 0; i < 4; ++i) max_abs = std::max(max_abs, std::abs(lam(i)));
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (std::abs(lam(i) - lam(j)) < kDegeneracyTol * std::max(max_abs, 1.0))
                return helix_solve_sliced(k, m, kFallbackSlices);

    // Interior chi(z) = sum_j c_j w_j exp(lam_j (z - a_j)) with the anchor
    // a_j at the face where the exponential peaks (z = d for Re lam > 0,
    // z = 0 otherwise), so each basis function is bounded by 1 on [0, d].
    Eigen::Vector4cd f0, fd;
    for (int j = 0; j < 4; ++j) {
        const double a = lam(j).real() > 0.0 ? m.d : 0.0;
        f0(j) = std::exp(lam(j) * (0.0 - a));
        fd(j) = std::exp(lam(j) * (m.d - a));
    }

    const auto U_of = [&](double z) {
        const double th = 0.5 * (m.q * z + m.phase0);
        SpinMatrix U;
        U << std::exp(-I * th), 0.0, 0.0, std::exp(I * th);
        return U;
    };
    const SpinMatrix U0 = U_of(0.0), Ud = U_of(m.d);
    const SpinMatrix Up0 = -I * (0.5 * m.q) * sigma_z() * U0;
    const SpinMatrix Upd = -I * (0.5 * m.q) * sigma_z() * Ud;

    const Eigen::Matrix<cplx, 2, 4> Wt = W.topRows<2>();     // chi rows
    const Eigen::Matrix<cplx, 2, 4> Wb = W.bottomRows<2>();  // chi' rows

    // Unknown columns: [c(4); R(2); T(2)] per incident spinor. Rows:
    // psi(0) - R = 1_in, psi'(0) + ik R = ik 1_in, psi(d) - T = 0,
    // psi'(d) - ik T = 0.
    Eigen::Matrix<cplx, 8, 8> A = Eigen::Matrix<cplx, 8, 8>::Zero();
    Eigen::Matrix<cplx, 8, 2> rhs = Eigen::Matrix<cplx, 8, 2>::Zero();
    const SpinMatrix I2 = SpinMatrix::Identity();

    A.block<2, 4>(0, 0) = U0 * Wt * f0.asDiagonal();
    A.block<2, 2>(0, 4) = -I2;
    rhs.block<2, 2>(0, 0) = I2;

    A.block<2, 4>(2, 0) = Up0 * Wt * f0.asDiagonal() + U0 * Wb * f0.asDiagonal();
    A.block<2, 2>(2, 4) = I * k * I2;
    rhs.block<2, 2>(2, 0) = I * k * I2;

    A.block<2, 4>(4, 0) = Ud * Wt * fd.asDiagonal();
    A.block<2, 2>(4, 6) = -I2;

    A.block<2, 4>(6, 0) = Upd * Wt * fd.asDiagonal() + Ud * Wb * fd.asDiagonal();
    A.block<2, 2>(6, 6) = -I * k * I2;

    Eigen::FullPivLU<Eigen::Matrix<cplx, 8, 8>> lu(A);
    if (!lu.isInvertible()) return helix_solve_sliced(k, m, kFallbackSlices);
    const Eigen::Matrix<cplx, 8, 2> X = lu.solve(rhs);

    HelixSolution out;
    out.R = X.block<2, 2>(4, 0);
    out.T = X.block<2, 2>(6, 0);
    out.k = k;
    out.method = HelixMethod::analytic;
    out.n_slices = 0;
    return out;
}

}  // namespace spinrefl
