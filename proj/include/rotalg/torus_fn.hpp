#pragma once

#include <complex>
#include <cstdint>
#include <map>

namespace rotalg {

using Complex = std::complex<double>;

// Closed interval [lower, upper] bracketing a nonnegative quantity.
// Every norm in this library is reported this way: `lower` is attained by
// evaluation, `upper` is a rigorous bound.
struct Interval {
    double lower = 0.0;
    double upper = 0.0;
};

// z reduced to [0, 1).
double wrap_unit(double z);

// e^{2 pi i k t} with the product k*t reduced mod 1 before the trig call.
// The reduction splits k*t into rounded product plus fma tail, so the phase
// stays accurate to a few ulp even when |k*t| is around 1e9.
Complex unit_phase(std::int64_t k, double t);

/**
 * Trigonometric polynomial on the circle R/Z, stored as finitely many
 * Fourier coefficients: phi(z) = sum_k c_k e^{2 pi i k z}.
 *
 * Construction canonicalizes: coefficients below kDropTol relative to the
 * largest magnitude are dropped, so support queries and degree are stable.
 * Instances are immutable; all arithmetic returns fresh values.
 */
class TorusFunction {
public:
    using CoeffMap = std::map<std::int64_t, Complex>;

    TorusFunction() = default;

    static TorusFunction constant(Complex c);
    static TorusFunction character(std::int64_t k, Complex amplitude = Complex(1.0, 0.0));
    static TorusFunction from_coeffs(CoeffMap coeffs, double drop_tol = kDropTol);

    const CoeffMap& coeffs() const { return coeffs_; }
    Complex coeff(std::int64_t k) const;
    std::int64_t degree() const;  // max |k| over the support, 0 when empty
    bool is_zero() const { return coeffs_.empty(); }

    Complex evaluate(double z) const;
    TorusFunction translate(double t) const;  // z -> phi(z - t)
    TorusFunction conjugate() const;          // pointwise complex conjugate

    TorusFunction operator+(const TorusFunction& rhs) const;
    TorusFunction operator-(const TorusFunction& rhs) const;
    TorusFunction operator*(const TorusFunction& rhs) const;  // pointwise product
    TorusFunction scaled(Complex a) const;

    // Sup norm bracket. Lower bound: max of |phi| over a uniform grid of G
    // points. Upper bound: min of the coefficient l1 norm and the grid max
    // inflated by the derivative bound ||phi'|| <= 2 pi K ||phi||, which is
    // valid once G >= 8 (K+1). grid = 0 picks G = max(8 (K+1), 256); an
    // explicit grid is raised to the validity threshold when feasible.
    Interval sup_norm(std::int64_t grid = 0) const;

    double l1_coeff_norm() const;  // sum_k |c_k|

    static constexpr double kDropTol = 1e-14;

private:
    CoeffMap coeffs_;
};

// Approximate reciprocal of a function bounded away from zero. Returns rho
// with certified sup |rho * phi - 1| < tol, where rho has degree <= maxdeg
// and is obtained by sampling 1/phi on a uniform grid of at least
// 2 maxdeg + 1 points. Throws NotBoundedAway when min |phi| on a refined
// check grid falls below `floor`, and ToleranceNotMet when the certified
// residual does not reach tol at this maxdeg.
TorusFunction reciprocal(const TorusFunction& phi, double tol,
                         std::int64_t maxdeg, double floor_value = 1e-3);

} // namespace rotalg
