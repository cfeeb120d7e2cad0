#include <doctest.h>

#include "oracles.hpp"
#include "spinrefl/spin_algebra.hpp"

using namespace spinrefl;
using oracles::Rng;

namespace {
double max_abs(const SpinMatrix& m) { return m.cwiseAbs().maxCoeff(); }
}  // namespace

TEST_SUITE("spin_algebra") {

TEST_CASE("pauli_dot reproduces the basis matrices") {
    CHECK(max_abs(pauli_dot({0, 0, 1}) - sigma_z()) == 0.0);
    CHECK(max_abs(pauli_dot({1, 0, 0}) - sigma_x()) == 0.0);
    CHECK(max_abs(pauli_dot({0, 1, 0}) - sigma_y()) == 0.0);
}

TEST_CASE("pauli_dot squares to identity for an in-plane direction") {
    const double phi = M_PI / 3.0;
    const SpinMatrix sb = pauli_dot({std::cos(phi), std::sin(phi), 0.0});
    CHECK(max_abs(sb * sb - SpinMatrix::Identity()) < 1e-15);
    CHECK(max_abs(sb - sb.adjoint()) < 1e-15);  // Hermitian
}

TEST_CASE("pauli_dot rejects non-unit directions") {
    CHECK_THROWS_AS(pauli_dot({0, 0, 0}), ZeroDirection);
    CHECK_THROWS_AS(pauli_dot({0.5, 0, 0}), ZeroDirection);
    CHECK_NOTHROW(pauli_dot({1.0 + 5e-13, 0, 0}));  // inside tolerance
}

TEST_CASE("(sigma.b)^2 = I over random directions") {
    Rng rng(101);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const SpinMatrix sb = pauli_dot(rng.unit_vector());
        worst = std::max(worst, max_abs(sb * sb - SpinMatrix::Identity()));
    }
    CHECK(worst < 1e-13);
}

TEST_CASE("product identity (sigma.b1)(sigma.b2) = (b1.b2) I + i sigma.[b1 x b2]") {
    Rng rng(102);
    const cplx I{0.0, 1.0};
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const FieldVector b1 = rng.unit_vector(), b2 = rng.unit_vector();
        const SpinMatrix lhs = pauli_dot(b1) * pauli_dot(b2);
        const SpinMatrix rhs =
            b1.dot(b2) * SpinMatrix::Identity() + I * cross_term(b1, b2);
        worst = std::max(worst, max_abs(lhs - rhs));
    }
    CHECK(worst < 1e-13);
}

TEST_CASE("cross_term axis cases") {
    CHECK(max_abs(cross_term({1, 0, 0}, {0, 1, 0}) - sigma_z()) == 0.0);
    CHECK(max_abs(cross_term({1, 0, 0}, {1, 0, 0})) == 0.0);
    // phi = -pi/2: x_hat x (0,-1,0) = -z_hat
    CHECK(max_abs(cross_term({1, 0, 0}, {std::cos(-M_PI / 2), std::sin(-M_PI / 2), 0}) +
                  sigma_z()) < 1e-15);
}

TEST_CASE("scalar_function_of basic evaluations") {
    const SpinMatrix ident = scalar_function_of([](cplx x) { return x; }, {0, 0, 3});
    CHECK(std::abs(ident(0, 0) - 3.0) < 1e-15);
    CHECK(std::abs(ident(1, 1) + 3.0) < 1e-15);
    CHECK(std::abs(ident(0, 1)) == 0.0);

    const SpinMatrix e0 = scalar_function_of([](cplx x) { return std::exp(x); }, {0, 0, 0});
    CHECK(max_abs(e0 - SpinMatrix::Identity()) == 0.0);
}

TEST_CASE("square-root evaluation on a sigma_x field has eigenvalues i and sqrt(3)") {
    // f(x) = sqrt(k^2 - u - x), k = 1, u = 0, B = (2,0,0): f(2) = i, f(-2) = sqrt(3).
    const SpinMatrix m = scalar_function_of(
        [](cplx x) { return sqrt_principal(1.0 - x); }, {2, 0, 0});
    Eigen::ComplexEigenSolver<SpinMatrix> es(m);
    std::vector<cplx> ev{es.eigenvalues()(0), es.eigenvalues()(1)};
    std::sort(ev.begin(), ev.end(), [](cplx a, cplx b) { return a.real() < b.real(); });
    CHECK(std::abs(ev[0] - cplx(0.0, 1.0)) < 1e-14);
    CHECK(std::abs(ev[1] - std::sqrt(3.0)) < 1e-14);
}

TEST_CASE("scalar_function_of matches the eigendecomposition oracle") {
    Rng rng(103);
    const std::vector<std::function<cplx(cplx)>> fs = {
        [](cplx x) { return std::exp(cplx(0, 1) * x); },
        [](cplx x) { return std::cos(x) + 0.3 * x * x; },
        [](cplx x) { return 1.0 / (x + cplx(2.5, 0.7)); },
    };
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const auto& f = fs[static_cast<std::size_t>(i) % fs.size()];
        FieldVector B = rng.unit_vector() * rng.in(0.1, 2.0);
        worst = std::max(worst, max_abs(scalar_function_of(f, B) - oracles::eig_apply(f, B)));
        // near-degenerate magnitude
        B = rng.unit_vector() * 1e-9;
        worst = std::max(worst, max_abs(scalar_function_of(f, B) - oracles::eig_apply(f, B)));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("ScalarSplit reconstructs f(sigma.B) exactly") {
    Rng rng(104);
    const auto f = [](cplx x) { return std::sin(x) + cplx(0.0, 0.25) * x; };
    const FieldVector B = rng.unit_vector() * 1.7;
    const ScalarSplit split = scalar_split(f, B);
    const SpinMatrix direct =
        split.f_plus * SpinMatrix::Identity() + split.f_minus * pauli_dot(split.direction);
    CHECK(max_abs(direct - scalar_function_of(f, B)) == 0.0);
}

}  // TEST_SUITE
