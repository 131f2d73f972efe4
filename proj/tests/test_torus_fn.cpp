#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rotalg/errors.hpp"
#include "rotalg/rng.hpp"
#include "rotalg/torus_fn.hpp"

#include "test_support.hpp"

#include <cmath>
#include <complex>
#include <numbers>

using namespace rotalg;

namespace {

TorusFunction cosine() {
    TorusFunction::CoeffMap m;
    m[-1] = Complex(0.5, 0.0);
    m[1] = Complex(0.5, 0.0);
    return TorusFunction::from_coeffs(std::move(m));
}

// Brute sup over a dense grid, independent of the class's own bracketing.
double dense_sup(const TorusFunction& fn, int points) {
    double top = 0.0;
    for (int j = 0; j < points; ++j) {
        top = std::max(top, std::abs(fn.evaluate(static_cast<double>(j) / points)));
    }
    return top;
}

} // namespace

TEST_CASE("wrap_unit lands in the half-open unit interval") {
    CHECK(wrap_unit(0.0) == 0.0);
    CHECK(wrap_unit(1.0) == 0.0);
    CHECK(wrap_unit(-0.25) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(wrap_unit(7.25) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(wrap_unit(-3.0) == 0.0);
    for (double z : {-123.456, -0.9999999, 1e-17, 41.0000001}) {
        const double r = wrap_unit(z);
        CHECK(r >= 0.0);
        CHECK(r < 1.0);
    }
}

TEST_CASE("unit_phase matches direct trig for small arguments") {
    Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        const std::int64_t k = rng.next_int(-40, 40);
        const double t = rng.next_range(-2.0, 2.0);
        const double ang = 2.0 * std::numbers::pi * static_cast<double>(k) * t;
        const Complex direct(std::cos(ang), std::sin(ang));
        CHECK(std::abs(unit_phase(k, t) - direct) < 1e-11);
    }
}

TEST_CASE("unit_phase stays accurate for huge frequencies") {
    // Reference computed from the exact rational value of the double theta
    // (fractions + 60-digit arithmetic).
    const double theta = 0.6180339887498949;
    const Complex got = unit_phase(1000000000007ll, theta);
    CHECK(std::abs(got.real() - 0.18033784758523846) < 1e-12);
    CHECK(std::abs(got.imag() - 0.98360472789038755) < 1e-12);
    CHECK(std::abs(std::abs(got) - 1.0) < 1e-15);
}

TEST_CASE("construction canonicalizes relative dust") {
    TorusFunction::CoeffMap m;
    m[0] = Complex(1.0, 0.0);
    m[5] = Complex(1e-15, 0.0);  // below the relative drop tolerance
    m[2] = Complex(0.0, 0.0);
    const TorusFunction fn = TorusFunction::from_coeffs(std::move(m));
    CHECK(fn.coeffs().size() == 1);
    CHECK(fn.degree() == 0);
    CHECK(fn.coeff(5) == Complex(0.0, 0.0));

    CHECK(TorusFunction::from_coeffs({}).is_zero());
    CHECK(TorusFunction::constant(Complex(0.0, 0.0)).is_zero());
}

TEST_CASE("evaluate: cosine hits -1/2 at a third") {
    const TorusFunction c = cosine();
    const Complex v = c.evaluate(1.0 / 3.0);
    CHECK(std::abs(v.real() - (-0.5)) < 1e-12);
    CHECK(std::abs(v.imag()) < 1e-15);
}

TEST_CASE("evaluate agrees with an exact-arithmetic reference") {
    TorusFunction::CoeffMap m;
    m[-2] = Complex(0.3, -0.1);
    m[0] = Complex(0.25, 0.0);
    m[1] = Complex(-0.5, 0.7);
    m[3] = Complex(0.0, 0.2);
    const TorusFunction fn = TorusFunction::from_coeffs(std::move(m));
    const Complex v = fn.evaluate(0.37);
    CHECK(std::abs(v.real() - 0.035476232803651475) < 1e-13);
    CHECK(std::abs(v.imag() - (-0.38387756882421714)) < 1e-13);
}

TEST_CASE("translate shifts the argument") {
    Rng rng(12);
    for (int i = 0; i < 25; ++i) {
        const TorusFunction fn = testsup::random_torus(rng, 4);
        const double t = rng.next_range(-1.5, 1.5);
        const double z = rng.next_range(0.0, 1.0);
        CHECK(std::abs(fn.translate(t).evaluate(z) - fn.evaluate(z - t)) < 1e-12);
    }
}

TEST_CASE("translate composes additively on coefficients") {
    Rng rng(13);
    const TorusFunction fn = testsup::random_torus(rng, 5);
    const TorusFunction two_step = fn.translate(0.3).translate(0.45);
    const TorusFunction one_step = fn.translate(0.75);
    for (const auto& [k, c] : one_step.coeffs()) {
        CHECK(std::abs(two_step.coeff(k) - c) < 1e-14);
    }
}

TEST_CASE("conjugate is an involution matching pointwise conjugation") {
    Rng rng(14);
    const TorusFunction fn = testsup::random_torus(rng, 5);
    const TorusFunction cc = fn.conjugate().conjugate();
    for (const auto& [k, c] : fn.coeffs()) {
        CHECK(cc.coeff(k) == c);  // two key flips and two std::conj, exact
    }
    for (int j = 0; j < 10; ++j) {
        const double z = rng.next_unit();
        CHECK(std::abs(fn.conjugate().evaluate(z) - std::conj(fn.evaluate(z))) < 1e-12);
    }
}

TEST_CASE("product is the pointwise product") {
    Rng rng(15);
    for (int i = 0; i < 20; ++i) {
        const TorusFunction a = testsup::random_torus(rng, 4);
        const TorusFunction b = testsup::random_torus(rng, 3);
        const TorusFunction ab = a * b;
        CHECK(ab.degree() <= a.degree() + b.degree());
        for (int j = 0; j < 12; ++j) {
            const double z = rng.next_unit();
            CHECK(std::abs(ab.evaluate(z) - a.evaluate(z) * b.evaluate(z)) < 1e-12);
        }
    }
}

TEST_CASE("arithmetic identities") {
    Rng rng(16);
    const TorusFunction a = testsup::random_torus(rng, 4);
    const TorusFunction b = testsup::random_torus(rng, 4);
    const TorusFunction zero;
    CHECK((a - a).is_zero());
    CHECK((a + zero).coeffs() == a.coeffs());
    CHECK((a * zero).is_zero());
    const TorusFunction s = a.scaled(Complex(0.0, 2.0));
    for (const auto& [k, c] : a.coeffs()) {
        CHECK(std::abs(s.coeff(k) - Complex(0.0, 2.0) * c) < 1e-15);
    }
}

TEST_CASE("sup_norm of the cosine is the exact bracket [1, 1]") {
    const Interval iv = cosine().sup_norm(256);
    CHECK(iv.lower == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(iv.upper == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(iv.lower <= iv.upper);
}

TEST_CASE("sup_norm brackets the true sup") {
    Rng rng(17);
    for (int i = 0; i < 40; ++i) {
        const TorusFunction fn = testsup::random_torus(rng, rng.next_int(0, 8));
        const Interval iv = fn.sup_norm();
        CHECK(iv.lower <= iv.upper);
        const double dense = dense_sup(fn, 4099);  // prime count, off the grid
        CHECK(dense <= iv.upper * (1.0 + 1e-12) + 1e-15);
        // The dense grid can undershoot a point value by the derivative slack.
        const double derivative_slack =
            2.0 * std::numbers::pi * static_cast<double>(fn.degree()) * iv.upper / 4099.0;
        CHECK(iv.lower <= dense + derivative_slack + 1e-15);
    }
}

TEST_CASE("sup_norm honors short explicit grids by raising them") {
    const TorusFunction fn = cosine();
    const Interval iv = fn.sup_norm(3);  // below the validity threshold
    CHECK(iv.lower <= iv.upper);
    CHECK(iv.upper >= 1.0 - 1e-12);  // still a true upper bound
}

TEST_CASE("l1 coefficient norm dominates the sup") {
    Rng rng(18);
    const TorusFunction fn = testsup::random_torus(rng, 6);
    CHECK(fn.sup_norm().upper <= fn.l1_coeff_norm() * (1.0 + 1e-12));
}

TEST_CASE("reciprocal of 2 + cos matches the closed form") {
    TorusFunction::CoeffMap m;
    m[-1] = Complex(0.5, 0.0);
    m[0] = Complex(2.0, 0.0);
    m[1] = Complex(0.5, 0.0);
    const TorusFunction fn = TorusFunction::from_coeffs(std::move(m));
    const TorusFunction rho = reciprocal(fn, 1e-8, 64);

    // Fourier coefficients of 1/(2 + cos 2 pi z) are (sqrt3 - 2)^|k|/sqrt3.
    CHECK(std::abs(rho.coeff(0) - Complex(0.57735026918962573, 0.0)) < 1e-12);
    CHECK(std::abs(rho.coeff(1) - Complex(-0.15470053837925152, 0.0)) < 1e-12);
    CHECK(std::abs(rho.coeff(-2) - Complex(0.041451884327380353, 0.0)) < 1e-12);

    // Certified residual: check independently on a dense grid.
    const TorusFunction res = rho * fn - TorusFunction::constant(Complex(1.0, 0.0));
    CHECK(dense_sup(res, 5000) < 1e-8);
}

TEST_CASE("reciprocal refuses functions with zeros") {
    CHECK_THROWS_AS(reciprocal(cosine(), 1e-8, 64), NotBoundedAway);
    CHECK_THROWS_AS(reciprocal(TorusFunction(), 1e-8, 64), NotBoundedAway);
}

TEST_CASE("reciprocal reports an unreachable tolerance") {
    // Positive but strongly peaked: 1/phi needs far more than degree 1.
    TorusFunction::CoeffMap m;
    m[-1] = Complex(0.495, 0.0);
    m[0] = Complex(1.0, 0.0);
    m[1] = Complex(0.495, 0.0);
    const TorusFunction fn = TorusFunction::from_coeffs(std::move(m));
    CHECK_THROWS_AS(reciprocal(fn, 1e-10, 1, 1e-4), ToleranceNotMet);
}

TEST_CASE("reciprocal rejects bad parameters") {
    CHECK_THROWS_AS(reciprocal(cosine(), -1.0, 64), DomainError);
    CHECK_THROWS_AS(reciprocal(cosine(), 1e-8, -3), DomainError);
}
