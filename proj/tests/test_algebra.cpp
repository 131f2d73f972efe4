#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rotalg/algebra.hpp"
#include "rotalg/errors.hpp"
#include "rotalg/rng.hpp"

#include "test_support.hpp"

#include <cmath>
#include <numbers>

using namespace rotalg;

namespace {

const RotationParameter kGolden = RotationParameter::golden();
const Weight kWeight{};

double coeff_gap(const AlgebraElement& a, const AlgebraElement& b) {
    double dev = 0.0;
    const AlgebraElement d = a - b;
    for (const auto& [n, fn] : d.terms()) dev = std::max(dev, fn.l1_coeff_norm());
    return dev;
}

// The index placement this library rejects: the output slot reuses the index
// of the left factor. Kept here as a negative control for the property tests.
AlgebraElement left_indexed_product(const AlgebraElement& f, const AlgebraElement& g) {
    AlgebraElement out(f.rotation(), f.weight());
    const double theta = f.rotation().value();
    for (const auto& [n, fn] : f.terms()) {
        for (const auto& [k, gk] : g.terms()) {
            const int m = n - k;
            out.add_term(n, fn * gk.translate(static_cast<double>(m) * theta));
        }
    }
    return out;
}

} // namespace

TEST_CASE("continued fraction convergents of the golden rotation are Fibonacci") {
    const auto convs = kGolden.convergents();
    REQUIRE(!convs.empty());
    CHECK(convs.front() == std::pair<long long, long long>(1, 1));
    CHECK(convs[1] == std::pair<long long, long long>(1, 2));
    CHECK(convs[2] == std::pair<long long, long long>(2, 3));
    CHECK(convs.back().second == 832040);  // largest Fibonacci number <= 1e6
    long long prev_q = 0;
    for (const auto& [p, q] : convs) {
        CHECK(q > prev_q);
        prev_q = q;
        const double gap = std::abs(kGolden.value() - static_cast<double>(p) / q);
        CHECK(gap < 1.0 / (static_cast<double>(q) * q));
    }
}

TEST_CASE("convergents of a near-rational stop at the reliable digits") {
    const auto convs = continued_fraction_convergents(0.75, 1000000);
    REQUIRE(convs.size() >= 2);
    CHECK(convs[0] == std::pair<long long, long long>(1, 1));
    CHECK(convs[1] == std::pair<long long, long long>(3, 4));
}

TEST_CASE("rotation parameter validates its inputs") {
    CHECK_THROWS_AS(RotationParameter(0.0), DomainError);
    CHECK_THROWS_AS(RotationParameter(1.0), DomainError);
    CHECK_THROWS_AS(RotationParameter(-0.3), DomainError);
    // 1/3 is not a convergent of the golden rotation: |theta - 1/3| > 1/9.
    CHECK_THROWS_AS(RotationParameter(kGolden.value(), true, {{1, 3}}), DomainError);
    CHECK_NOTHROW(RotationParameter(kGolden.value(), true, {{1, 2}, {2, 3}}));
}

TEST_CASE("weight validates and behaves like sigma^|n|") {
    CHECK_THROWS_AS(Weight(0.5), DomainError);
    const Weight w(2.0);
    CHECK(w.omega(3) == 8.0);
    CHECK(w.omega(-3) == 8.0);
    CHECK(w.omega(0) == 1.0);
    CHECK(w.signed_scale(-2) == 0.25);
    CHECK(kWeight.sigma() == std::exp(1.0));
    // log-convexity in the only form the norm needs: omega(m + n) <= omega(m) omega(n)
    const Weight we{};
    for (int m = -6; m <= 6; ++m) {
        for (int n = -6; n <= 6; ++n) {
            CHECK(we.omega(m + n) <= we.omega(m) * we.omega(n) * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("unit element is a two-sided identity, exactly") {
    Rng rng(21);
    const AlgebraElement one = AlgebraElement::unit(kGolden, kWeight);
    for (int i = 0; i < 10; ++i) {
        const AlgebraElement f = testsup::random_element(rng, kGolden, kWeight, 3, 3);
        const AlgebraElement left = one * f;
        const AlgebraElement right = f * one;
        for (const auto& [n, fn] : f.terms()) {
            CHECK(left.term(n).coeffs() == fn.coeffs());
            CHECK(right.term(n).coeffs() == fn.coeffs());
        }
        CHECK(left.support() == f.support());
        CHECK(right.support() == f.support());
    }
}

TEST_CASE("unitaries compose and invert") {
    const AlgebraElement u1 = AlgebraElement::unit(kGolden, kWeight, 1);
    const AlgebraElement u2 = AlgebraElement::unit(kGolden, kWeight, 2);
    const AlgebraElement um1 = AlgebraElement::unit(kGolden, kWeight, -1);
    CHECK(coeff_gap(u1 * u1, u2) < 1e-15);
    CHECK(coeff_gap(u1 * um1, AlgebraElement::unit(kGolden, kWeight)) < 1e-15);
    CHECK(coeff_gap(u1.adjoint(), um1) < 1e-15);
}

TEST_CASE("twisted product is associative") {
    Rng rng(22);
    for (int i = 0; i < 60; ++i) {
        const AlgebraElement f = testsup::random_element(rng, kGolden, kWeight, 3, 3);
        const AlgebraElement g = testsup::random_element(rng, kGolden, kWeight, 3, 3);
        const AlgebraElement h = testsup::random_element(rng, kGolden, kWeight, 3, 3);
        const double scale =
            f.norm_a().upper * g.norm_a().upper * h.norm_a().upper;
        const double defect = ((f * g) * h - f * (g * h)).norm_a().upper;
        CHECK(defect <= 1e-9 * std::max(scale, 1.0));
    }
}

TEST_CASE("the left-indexed variant is not a crossed product") {
    // Negative control: putting the output index on the left factor keeps
    // the support of the left factor, so the unit law, the composition of
    // the unitaries, and covariance all break. The adopted formula passes
    // all three (tested above and below).
    const AlgebraElement one = AlgebraElement::unit(kGolden, kWeight);
    const AlgebraElement u1 = AlgebraElement::unit(kGolden, kWeight, 1);
    const AlgebraElement u2 = AlgebraElement::unit(kGolden, kWeight, 2);
    TorusFunction::CoeffMap m;
    m[1] = Complex(1.0, 0.0);
    const TorusFunction character = TorusFunction::from_coeffs(std::move(m));
    const AlgebraElement phi = AlgebraElement::embed(character, kGolden, kWeight);

    // Not left-unital: 1 . u_1 collapses onto slot zero.
    CHECK((left_indexed_product(one, u1) - u1).norm_a().upper > 0.5);
    // Unitaries do not compose: u_1 . u_1 stays at slot one.
    CHECK((left_indexed_product(u1, u1) - u2).norm_a().upper > 0.5);
    // Covariance fails: conjugation by u_1 does not rotate the function.
    const AlgebraElement sandwich =
        left_indexed_product(left_indexed_product(u1, phi), u1.adjoint());
    const AlgebraElement rotated =
        AlgebraElement::embed(character.translate(kGolden.value()), kGolden, kWeight);
    CHECK((sandwich - rotated).norm_a().upper > 0.5);
}

TEST_CASE("covariance: conjugating an embedded function rotates it") {
    Rng rng(23);
    const AlgebraElement u1 = AlgebraElement::unit(kGolden, kWeight, 1);
    for (int i = 0; i < 10; ++i) {
        const TorusFunction phi = testsup::random_torus(rng, 5);
        const AlgebraElement lhs =
            u1 * AlgebraElement::embed(phi, kGolden, kWeight) * u1.adjoint();
        const AlgebraElement rhs =
            AlgebraElement::embed(phi.translate(kGolden.value()), kGolden, kWeight);
        CHECK(coeff_gap(lhs, rhs) < 1e-13);
    }
}

TEST_CASE("adjoint is an involutive anti-homomorphism") {
    Rng rng(24);
    for (int i = 0; i < 15; ++i) {
        const AlgebraElement f = testsup::random_element(rng, kGolden, kWeight, 3, 3);
        const AlgebraElement g = testsup::random_element(rng, kGolden, kWeight, 3, 3);
        CHECK(coeff_gap(f.adjoint().adjoint(), f) < 1e-13);
        CHECK(coeff_gap((f * g).adjoint(), g.adjoint() * f.adjoint()) < 1e-12);
        // The weighted norm is a *-norm: both brackets contain the same true
        // value, so they must overlap (bounds differ by grid placement only).
        const Interval nf = f.norm_a();
        const Interval na = f.adjoint().norm_a();
        CHECK(nf.lower <= na.upper * (1.0 + 1e-12));
        CHECK(na.lower <= nf.upper * (1.0 + 1e-12));
    }
}

TEST_CASE("canonical unitaries have exact weighted norm") {
    for (const double sigma : {1.0, 2.0, std::exp(1.0)}) {
        const Weight w(sigma);
        for (int n = -8; n <= 8; ++n) {
            const AlgebraElement u = AlgebraElement::unit(kGolden, w, n);
            const Interval norm = u.norm_a();
            const double expected = std::pow(sigma, std::abs(static_cast<double>(n)));
            CHECK(norm.lower == expected);
            CHECK(norm.upper == expected);
        }
    }
}

TEST_CASE("weighted norm is submultiplicative and subadditive") {
    // Interval discipline: the certified statement compares what is rigorous
    // on each side, the lower bound of the combination against the product
    // (or sum) of upper bounds. Upper-vs-upper can fail by bracket width,
    // since products raise the degree and with it the grid slack.
    Rng rng(25);
    for (int i = 0; i < 40; ++i) {
        const AlgebraElement f = testsup::random_element(rng, kGolden, kWeight, 3, 2);
        const AlgebraElement g = testsup::random_element(rng, kGolden, kWeight, 3, 2);
        const double nf = f.norm_a().upper;
        const double ng = g.norm_a().upper;
        CHECK((f * g).norm_a().lower <= nf * ng * (1.0 + 1e-12));
        CHECK((f + g).norm_a().lower <= (nf + ng) * (1.0 + 1e-12));
        // On a shared fine grid the slack is negligible at these degrees, so
        // the classical inequalities hold with a small relative allowance.
        const double fine_prod = (f * g).norm_a(8192).upper;
        CHECK(fine_prod <= f.norm_a(8192).upper * g.norm_a(8192).upper * (1.0 + 1e-2));
    }
}

TEST_CASE("weighted norm dominates the unweighted one") {
    Rng rng(26);
    for (int i = 0; i < 20; ++i) {
        const AlgebraElement f = testsup::random_element(rng, kGolden, kWeight, 4, 2);
        CHECK(f.norm_l1().upper <= f.norm_a().upper * (1.0 + 1e-12));
    }
}

TEST_CASE("zero-mode projection is a norm contraction") {
    Rng rng(27);
    const Weight w{};
    for (int i = 0; i < 100; ++i) {
        const AlgebraElement f = testsup::random_element(rng, kGolden, w, 4, 3);
        const double projected = f.project_zero().sup_norm().upper;  // omega(0) = 1
        CHECK(projected <= f.norm_a().upper);
        // Projecting twice changes nothing.
        const AlgebraElement once =
            AlgebraElement::embed(f.project_zero(), kGolden, w);
        CHECK(once.project_zero().coeffs() == f.project_zero().coeffs());
    }
}

TEST_CASE("truncation splits the norm budget exactly") {
    Rng rng(28);
    for (int i = 0; i < 20; ++i) {
        const AlgebraElement f = testsup::random_element(rng, kGolden, kWeight, 5, 2);
        const int N = static_cast<int>(rng.next_int(0, 4));
        const auto [head, tail] = f.truncate_support(N);
        CHECK(head.width() <= std::max(N, 0));
        // Discarded part recomputed independently.
        double expected_tail = 0.0;
        for (const auto& [n, fn] : f.terms()) {
            if (std::abs(n) > N) expected_tail += kWeight.omega(n) * fn.sup_norm().upper;
        }
        CHECK(tail == expected_tail);
        CHECK((f - head).norm_a().upper == tail);
        for (const auto& [n, fn] : head.terms()) {
            CHECK(fn.coeffs() == f.term(n).coeffs());
        }
    }
    CHECK_THROWS_AS(AlgebraElement::unit(kGolden, kWeight).truncate_support(-1), DomainError);
}

TEST_CASE("mixing parameters is rejected") {
    const AlgebraElement f = AlgebraElement::unit(kGolden, kWeight, 1);
    const AlgebraElement g = AlgebraElement::unit(RotationParameter(0.25), kWeight, 1);
    const AlgebraElement h = AlgebraElement::unit(kGolden, Weight(2.0), 1);
    CHECK_THROWS_AS(f * g, MismatchedParameters);
    CHECK_THROWS_AS(f + h, MismatchedParameters);
    CHECK(f.same_parameters(f));
    CHECK(!f.same_parameters(g));
}

TEST_CASE("embed is a homomorphism onto the zero slot") {
    Rng rng(29);
    const TorusFunction a = testsup::random_torus(rng, 4);
    const TorusFunction b = testsup::random_torus(rng, 4);
    const AlgebraElement ea = AlgebraElement::embed(a, kGolden, kWeight);
    const AlgebraElement eb = AlgebraElement::embed(b, kGolden, kWeight);
    const AlgebraElement prod = ea * eb;
    CHECK(prod.support() == std::vector<int>{0});
    CHECK(coeff_gap(prod, AlgebraElement::embed(a * b, kGolden, kWeight)) < 1e-13);
    const Interval sup = a.sup_norm();
    const Interval norm = ea.norm_a();
    CHECK(norm.lower == sup.lower);
    CHECK(norm.upper == sup.upper);
}
