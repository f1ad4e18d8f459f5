#include <doctest.h>

#include <cmath>
#include <numbers>

#include "discordant/families.hpp"
#include "discordant/state_factory.hpp"
#include "test_support.hpp"

using namespace discordant;
using namespace testing_support;

namespace {

ComplexMatrix explicit_flip(int d) {
    ComplexMatrix f = ComplexMatrix::Zero(d * d, d * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) f(i * d + j, j * d + i) = 1.0;
    return f;
}

ComplexMatrix explicit_p_plus(int d) {
    ComplexMatrix p = ComplexMatrix::Zero(d * d, d * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) p(i * d + i, j * d + j) = 1.0 / d;
    return p;
}

// (1/sqrt d) sum_k lambda^{mk} e_k x e_{k+n}
ComplexVector bell_vector(int m, int n, int d) {
    ComplexVector v = ComplexVector::Zero(d * d);
    for (int k = 0; k < d; ++k)
        v(k * d + (k + n) % d) = std::polar(1.0 / std::sqrt(d), 2.0 * std::numbers::pi * m * k / d);
    return v;
}

CirculantSpec random_spec(int d, std::mt19937_64& rng) {
    std::vector<ComplexMatrix> sectors;
    double total = 0.0;
    for (int n = 0; n < d; ++n) {
        const ComplexMatrix g = gaussian(d, d, rng);
        sectors.push_back(g * g.adjoint());
        total += sectors.back().trace().real();
    }
    for (auto& s : sectors) s /= total;
    return CirculantSpec(std::move(sectors));
}

}  // namespace

TEST_CASE("shift operator") {
    ComplexMatrix s2(2, 2);
    s2 << 0, 1, 1, 0;
    CHECK(dist(shift_operator(2), s2) == 0.0);
    ComplexVector e2 = ComplexVector::Zero(3);
    e2(2) = 1.0;
    const ComplexVector out = shift_operator(3) * e2;
    CHECK(out(0) == Complex(1.0));
    CHECK(out(1) == Complex(0.0));
    for (int d : {2, 3, 5, 7}) {
        ComplexMatrix power = ComplexMatrix::Identity(d, d);
        for (int k = 0; k < d; ++k) power = shift_operator(d) * power;
        CHECK(dist(power, ComplexMatrix::Identity(d, d)) == 0.0);
    }
    CHECK_THROWS_AS(shift_operator(1), DimensionError);
}

TEST_CASE("circulant layout for d = 2 is the X form") {
    ComplexMatrix a(2, 2);
    a << 0.3, Complex(0.05, 0.02), Complex(0.05, -0.02), 0.2;
    ComplexMatrix b(2, 2);
    b << 0.25, Complex(-0.01, 0.03), Complex(-0.01, -0.03), 0.25;
    const DensityMatrix rho = circulant_state(CirculantSpec({a, b}));
    ComplexMatrix x = ComplexMatrix::Zero(4, 4);
    // rows 00, 01, 10, 11
    x(0, 0) = a(0, 0);
    x(0, 3) = a(0, 1);
    x(3, 0) = a(1, 0);
    x(3, 3) = a(1, 1);
    x(1, 1) = b(0, 0);
    x(1, 2) = b(0, 1);
    x(2, 1) = b(1, 0);
    x(2, 2) = b(1, 1);
    CHECK(dist(rho.matrix(), x) < 1e-15);

    ComplexMatrix half = ComplexMatrix::Identity(2, 2) / 2.0;
    const DensityMatrix classical = circulant_state(CirculantSpec({half, ComplexMatrix::Zero(2, 2)}));
    ComplexMatrix diag = ComplexMatrix::Zero(4, 4);
    diag(0, 0) = diag(3, 3) = 0.5;
    CHECK(dist(classical.matrix(), diag) == 0.0);
}

TEST_CASE("circulant layout for d = 3 puts a^(1)_02 at (1, 6)") {
    std::vector<ComplexMatrix> sectors(3, ComplexMatrix::Identity(3, 3) / 9.0);
    sectors[1](0, 2) = Complex(0.01, 0.02);
    sectors[1](2, 0) = Complex(0.01, -0.02);
    const DensityMatrix rho = circulant_state(CirculantSpec(sectors));
    CHECK(rho.matrix()(1, 6) == Complex(0.01, 0.02));
    CHECK(rho.matrix()(6, 1) == Complex(0.01, -0.02));
}

TEST_CASE("project_circulant inverts circulant_state") {
    std::mt19937_64 rng(41);
    for (int d : {2, 3, 5}) {
        for (int trial = 0; trial < 5; ++trial) {
            const CirculantSpec spec = random_spec(d, rng);
            auto back = project_circulant(circulant_state(spec), d);
            REQUIRE(std::holds_alternative<CirculantSpec>(back));
            const auto& got = std::get<CirculantSpec>(back);
            for (int n = 0; n < d; ++n) CHECK(dist(got.sector(n), spec.sector(n)) <= 1e-12);
        }
        auto p = project_circulant(DensityMatrix(explicit_p_plus(d)), d);
        REQUIRE(std::holds_alternative<CirculantSpec>(p));
        CHECK(dist(std::get<CirculantSpec>(p).sector(0), ComplexMatrix::Constant(d, d, 1.0 / d)) < 1e-15);
        for (int n = 1; n < d; ++n) CHECK(std::get<CirculantSpec>(p).sector(n).norm() == 0.0);
    }
    ComplexMatrix m = ComplexMatrix::Identity(4, 4) / 4.0;
    m(0, 1) = m(1, 0) = 0.1;
    auto cross = project_circulant(DensityMatrix(m), 2);
    REQUIRE(std::holds_alternative<NotCirculant>(cross));
    CHECK(std::get<NotCirculant>(cross).residual == doctest::Approx(0.1 * std::sqrt(2.0)));
    CHECK_THROWS_AS(project_circulant(DensityMatrix::maximally_mixed(8), 3), DimensionError);
}

TEST_CASE("circulant spec validation") {
    CHECK_THROWS_AS(CirculantSpec({ComplexMatrix::Identity(2, 2)}), Error);
    CHECK_THROWS_AS(CirculantSpec({ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(2, 2)}), InvalidSpec);
    ComplexMatrix neg = ComplexMatrix::Identity(2, 2) / 4.0;
    neg(0, 1) = neg(1, 0) = 0.3;
    CHECK_THROWS_AS(CirculantSpec({neg, ComplexMatrix::Identity(2, 2) / 4.0}), InvalidSpec);
}

TEST_CASE("Bell projectors from the defining vectors") {
    for (int d : {2, 3, 5}) {
        CHECK(dist(bell_projector(0, 0, d).matrix(), explicit_p_plus(d)) < 1e-14);
        ComplexMatrix total = ComplexMatrix::Zero(d * d, d * d);
        for (int m = 0; m < d; ++m) {
            for (int n = 0; n < d; ++n) {
                const ComplexVector v = bell_vector(m, n, d);
                const ComplexMatrix p = bell_projector(m, n, d).matrix();
                CHECK(dist(p, v * v.adjoint()) < 1e-14);
                CHECK(dist(p * p, p) < 1e-14);
                total += p;
                for (int m2 = 0; m2 < d; ++m2)
                    for (int n2 = 0; n2 < d; ++n2)
                        if (m2 != m || n2 != n) CHECK(std::abs(v.dot(bell_vector(m2, n2, d))) < 1e-14);
            }
        }
        CHECK(dist(total, ComplexMatrix::Identity(d * d, d * d)) < 1e-13);
    }
    // Two qubits: Phi+, Phi-, Psi+, Psi-.
    const double r = 1.0 / std::sqrt(2.0);
    ComplexVector phi_minus = ComplexVector::Zero(4);
    phi_minus(0) = r;
    phi_minus(3) = -r;
    ComplexVector psi_plus = ComplexVector::Zero(4);
    psi_plus(1) = psi_plus(2) = r;
    ComplexVector psi_minus = ComplexVector::Zero(4);
    psi_minus(1) = r;
    psi_minus(2) = -r;
    CHECK(dist(bell_projector(1, 0, 2).matrix(), phi_minus * phi_minus.adjoint()) < 1e-15);
    CHECK(dist(bell_projector(0, 1, 2).matrix(), psi_plus * psi_plus.adjoint()) < 1e-15);
    CHECK(dist(bell_projector(1, 1, 2).matrix(), psi_minus * psi_minus.adjoint()) < 1e-15);
    CHECK_THROWS_AS(bell_projector(2, 0, 2), IndexError);
    CHECK_THROWS_AS(weyl_unitary(0, -1, 3), IndexError);
}

TEST_CASE("Bell-diagonal states match the projector mixture") {
    std::mt19937_64 rng(43);
    for (int d : {2, 3, 5}) {
        for (int trial = 0; trial < 4; ++trial) {
            const BellWeights w = families::random_bell(d, rng);
            const DensityMatrix rho = circulant_state(bell_diagonal_state(w));
            ComplexMatrix mix = ComplexMatrix::Zero(d * d, d * d);
            for (int m = 0; m < d; ++m)
                for (int n = 0; n < d; ++n) {
                    const ComplexVector v = bell_vector(m, n, d);
                    mix += w(m, n) * v * v.adjoint();
                }
            CHECK(dist(rho.matrix(), mix) <= 1e-12);
            const ComplexMatrix mixed = ComplexMatrix::Identity(d, d) / d;
            CHECK(dist(partial_trace(rho, d, d, Side::A).matrix(), mixed) <= 1e-12);
            CHECK(dist(partial_trace(rho, d, d, Side::B).matrix(), mixed) <= 1e-12);
        }
    }
}

TEST_CASE("Bell-diagonal sector matrices in two and three dimensions") {
    RealMatrix uniform = RealMatrix::Constant(2, 2, 0.25);
    const CirculantSpec u = bell_diagonal_state(BellWeights(uniform));
    CHECK(dist(u.sector(0), ComplexMatrix::Identity(2, 2) / 4.0) < 1e-15);
    CHECK(dist(u.sector(1), ComplexMatrix::Identity(2, 2) / 4.0) < 1e-15);

    RealMatrix p2(2, 2);
    p2 << 0.1, 0.2, 0.3, 0.4;
    const CirculantSpec s2 = bell_diagonal_state(BellWeights(p2));
    for (int n = 0; n < 2; ++n) {
        const double x = (p2(0, n) + p2(1, n)) / 2.0;
        const double y = (p2(0, n) - p2(1, n)) / 2.0;
        CHECK(s2.sector(n)(0, 0).real() == doctest::Approx(x));
        CHECK(s2.sector(n)(1, 1).real() == doctest::Approx(x));
        CHECK(s2.sector(n)(0, 1).real() == doctest::Approx(y));
        CHECK(s2.sector(n)(1, 0).real() == doctest::Approx(y));
    }

    RealMatrix p3(3, 3);
    p3 << 0.05, 0.10, 0.15, 0.20, 0.05, 0.10, 0.15, 0.12, 0.08;
    const CirculantSpec s3 = bell_diagonal_state(BellWeights(p3));
    const Complex lam = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
    for (int n = 0; n < 3; ++n) {
        const Complex x = (p3(0, n) + p3(1, n) + p3(2, n)) / 3.0;
        const Complex z = (p3(0, n) + std::conj(lam) * p3(1, n) + lam * p3(2, n)) / 3.0;
        const ComplexMatrix& a = s3.sector(n);
        for (int i = 0; i < 3; ++i) {
            CHECK(std::abs(a(i, i) - x) < 1e-15);
            CHECK(std::abs(a(i, (i + 1) % 3) - z) < 1e-15);
            CHECK(std::abs(a(i, (i + 2) % 3) - std::conj(z)) < 1e-15);
        }
    }
    RealMatrix bad = RealMatrix::Constant(2, 2, 0.3);
    CHECK_THROWS_AS(BellWeights{bad}, InvalidSpec);
    bad << 0.5, 0.5, 0.1, -0.1;
    CHECK_THROWS_AS(BellWeights{bad}, InvalidSpec);
}

TEST_CASE("Werner states") {
    for (int d : {2, 3, 5}) {
        const double lambda = 0.5 / (d + 1.0);
        const ComplexMatrix expect = (1.0 - lambda) / (d * d) * ComplexMatrix::Identity(d * d, d * d) +
                                     lambda / d * explicit_flip(d);
        CHECK(dist(werner_density(d, lambda).matrix(), expect) < 1e-15);

        // The circulant form is the image under I x R, R e_k = e_{-k}.
        ComplexMatrix r = ComplexMatrix::Zero(d, d);
        for (int k = 0; k < d; ++k) r((d - k) % d, k) = 1.0;
        const ComplexMatrix ir = kron(ComplexMatrix::Identity(d, d), r);
        CHECK(dist(circulant_state(werner_state(d, lambda)).matrix(), ir * expect * ir) < 1e-15);

        const CirculantSpec zero = werner_state(d, 0.0);
        for (int n = 0; n < d; ++n) CHECK(dist(zero.sector(n), ComplexMatrix::Identity(d, d) / (d * d)) < 1e-15);

        // PSD window [-1/(d-1), 1/(d+1)].
        CHECK_NOTHROW(werner_density(d, 1.0 / (d + 1.0)));
        CHECK_NOTHROW(werner_density(d, -1.0 / (d - 1.0)));
        CHECK_THROWS_AS(werner_density(d, 1.0 / (d + 1.0) + 1e-3), InvalidSpec);
        CHECK_THROWS_AS(werner_state(d, -1.0 / (d - 1.0) - 1e-3), InvalidSpec);
    }
    CHECK(dist(circulant_state(werner_state(2, 0.3)).matrix(), werner_density(2, 0.3).matrix()) < 1e-15);

    // Two-qubit sector matrices, lambda in range.
    const CirculantSpec w = werner_state(2, 0.3);
    CHECK(w.sector(0)(0, 0).real() == doctest::Approx(0.3 / 2 + 0.7 / 4));
    CHECK(w.sector(1)(0, 1).real() == doctest::Approx(0.3 / 2));
    CHECK(w.sector(1)(0, 0).real() == doctest::Approx(0.7 / 4));
    // lambda = 1 is F/2, which has eigenvalue -1/2.
    CHECK_THROWS_AS(werner_state(2, 1.0), InvalidSpec);
}

TEST_CASE("isotropic states") {
    for (int d : {2, 3, 5}) {
        for (double lambda : {0.0, 0.25, 0.5, 1.0}) {
            const ComplexMatrix expect = (1.0 - lambda) / (d * d) * ComplexMatrix::Identity(d * d, d * d) +
                                         lambda * explicit_p_plus(d);
            CHECK(dist(circulant_state(isotropic_state(d, lambda)).matrix(), expect) < 1e-15);
        }
        CHECK_NOTHROW(isotropic_state(d, -1.0 / (d * d - 1.0)));
        CHECK_THROWS_AS(isotropic_state(d, -1.0 / (d * d - 1.0) - 1e-3), InvalidSpec);
        CHECK_THROWS_AS(isotropic_state(d, 1.001), InvalidSpec);
    }
    const CirculantSpec s = isotropic_state(3, 0.5);
    CHECK(s.sector(0)(1, 1).real() == doctest::Approx(2.0 / 9.0));
    CHECK(s.sector(0)(0, 2).real() == doctest::Approx(0.5 / 3.0));
    CHECK(s.sector(2)(0, 0).real() == doctest::Approx(0.5 / 9.0));
    CHECK(std::abs(s.sector(2)(0, 1)) == 0.0);
}

TEST_CASE("orthogonal-invariant states") {
    for (int d : {2, 3}) {
        const ComplexMatrix id = ComplexMatrix::Identity(d * d, d * d);
        const ComplexMatrix qp = (id + explicit_flip(d)) / 2.0;
        const ComplexMatrix qm = (id - explicit_flip(d)) / 2.0;
        const ComplexMatrix p0 = qp - explicit_p_plus(d);
        CHECK(p0.trace().real() == doctest::Approx(d * (d + 1) / 2.0 - 1.0));
        CHECK(qm.trace().real() == doctest::Approx(d * (d - 1) / 2.0));
        CHECK(dist(orthogonal_invariant_state({1, 0, 0}, d).matrix(), p0 / p0.trace().real()) < 1e-15);
        CHECK(dist(orthogonal_invariant_state({0, 1, 0}, d).matrix(), qm / qm.trace().real()) < 1e-15);
        CHECK(dist(orthogonal_invariant_state({0, 0, 1}, d).matrix(), explicit_p_plus(d)) < 1e-15);
    }
    // Two qubits: the corner between 00 and 11 is (2c - a)/4.
    const double a = 0.2;
    const double b = 0.5;
    const double c = 0.3;
    const ComplexMatrix m = orthogonal_invariant_state({a, b, c}, 2).matrix();
    CHECK(m(3, 0).real() == doctest::Approx((2 * c - a) / 4));
    CHECK(m(0, 3).real() == doctest::Approx((2 * c - a) / 4));
    CHECK(m(0, 0).real() == doctest::Approx((a + 2 * c) / 4));
    CHECK(m(1, 1).real() == doctest::Approx(a / 4 + b / 2));
    CHECK(m(1, 2).real() == doctest::Approx(a / 4 - b / 2));
    CHECK_THROWS_AS(orthogonal_invariant_state({0.5, 0.6, -0.1}, 2), InvalidSpec);
    CHECK_THROWS_AS(orthogonal_invariant_state({0.5, 0.6, 0.1}, 2), InvalidSpec);
}

TEST_CASE("commuting-group invariant states") {
    ComplexMatrix a = ComplexMatrix::Zero(3, 3);
    a(0, 0) = 0.2;
    a(1, 1) = 0.1;
    a(2, 2) = 0.1;
    RealMatrix dm = RealMatrix::Zero(3, 3);
    dm << 0, 0.1, 0.05, 0.1, 0, 0.15, 0.05, 0.15, 0;
    const CirculantSpec s = commuting_group_invariant_state(a, dm);
    CHECK(s.is_diagonal());
    for (int k = 1; k < 3; ++k)
        for (int i = 0; i < 3; ++i) CHECK(s.sector(k)(i, i).real() == dm(i, (i + k) % 3));
    CHECK(ppt_check_commuting(a, dm));

    const CirculantSpec plus = commuting_group_invariant_state(ComplexMatrix::Constant(3, 3, 1.0 / 3.0), RealMatrix::Zero(3, 3));
    CHECK(dist(circulant_state(plus).matrix(), explicit_p_plus(3)) < 1e-15);
    CHECK_FALSE(ppt_check_commuting(ComplexMatrix::Constant(3, 3, 1.0 / 3.0), RealMatrix::Zero(3, 3)));

    ComplexMatrix a2(2, 2);
    a2 << 0.25, 0.3, 0.3, 0.25;
    RealMatrix d2(2, 2);
    d2 << 0, 0.1, 0.9, 0;
    CHECK(ppt_check_commuting(a2, d2));
    a2(0, 1) = a2(1, 0) = 0.5;
    CHECK_FALSE(ppt_check_commuting(a2, RealMatrix::Zero(2, 2)));
    RealMatrix bad = RealMatrix::Zero(2, 2);
    bad(0, 0) = 0.1;
    CHECK_THROWS_AS(commuting_group_invariant_state(ComplexMatrix::Identity(2, 2) * 0.45, bad), InvalidSpec);
}
