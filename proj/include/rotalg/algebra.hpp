#pragma once

#include "rotalg/torus_fn.hpp"

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace rotalg {

// Convergents p/q of the continued fraction of theta, in increasing q, with
// denominators capped by qmax. Entries with p = 0 are skipped.
std::vector<std::pair<long long, long long>>
continued_fraction_convergents(double theta, long long qmax);

/**
 * Rotation angle theta in (0, 1), declared irrational, together with the
 * continued fraction convergents used by equidistribution-sensitive code.
 * Convergents are optional at construction and validated against
 * |theta - p/q| < 1/q^2 when supplied.
 */
class RotationParameter {
public:
    explicit RotationParameter(double theta, bool irrational = true,
                               std::vector<std::pair<long long, long long>> convergents = {});

    // (sqrt 5 - 1)/2 with its Fibonacci convergents up to q <= 10^6.
    static RotationParameter golden();

    double value() const { return theta_; }
    bool declared_irrational() const { return irrational_; }
    const std::vector<std::pair<long long, long long>>& convergents() const {
        return convergents_;
    }

private:
    double theta_ = 0.0;
    bool irrational_ = true;
    std::vector<std::pair<long long, long long>> convergents_;
};

// Exponential weight omega(n) = sigma^{|n|}, sigma >= 1. sigma = 1 recovers
// the plain l1 norm; the default sigma = e is the weight the rest of the
// library is calibrated against.
class Weight {
public:
    Weight();
    explicit Weight(double sigma);

    double sigma() const { return sigma_; }
    double omega(int n) const;        // sigma^{|n|}
    double signed_scale(int n) const; // sigma^{n}

private:
    double sigma_;
};

/**
 * Finitely supported element of the rotation crossed product: a map
 * n -> F(n) from integers to torus functions, together with the rotation
 * parameter and weight it lives under. The product is the twisted
 * convolution
 *
 *   (F G)(n, z) = sum_m F(m, z) G(n - m, z - m theta),
 *
 * the involution is F*(n, z) = conj(F(-n, z - n theta)), and the weighted
 * norm is ||F||_A = sum_n omega(n) ||F(n)||_inf (reported as an interval).
 * u_n denotes the canonical unitary delta_n (x) 1; u_0 is the unit.
 */
class AlgebraElement {
public:
    using TermMap = std::map<int, TorusFunction>;

    AlgebraElement(RotationParameter rotation, Weight weight);

    static AlgebraElement unit(const RotationParameter& rotation, const Weight& weight,
                               int n = 0);
    static AlgebraElement embed(const TorusFunction& phi, const RotationParameter& rotation,
                                const Weight& weight);

    const RotationParameter& rotation() const { return rotation_; }
    const Weight& weight() const { return weight_; }
    const TermMap& terms() const { return terms_; }
    const TorusFunction& term(int n) const;  // zero function when absent
    bool is_zero() const { return terms_.empty(); }
    int width() const;  // max |n| over the support, 0 when empty
    std::vector<int> support() const;

    // Accumulates fn into slot n (used by builders; canonicalizes the slot).
    AlgebraElement& add_term(int n, const TorusFunction& fn);

    AlgebraElement operator+(const AlgebraElement& rhs) const;
    AlgebraElement operator-(const AlgebraElement& rhs) const;
    AlgebraElement operator*(const AlgebraElement& rhs) const;
    AlgebraElement scaled(Complex a) const;
    AlgebraElement adjoint() const;

    Interval norm_a(std::int64_t grid = 0) const;   // weighted norm
    Interval norm_l1(std::int64_t grid = 0) const;  // same sum with omega = 1

    TorusFunction project_zero() const;  // the coefficient F(0)

    // Restriction to |n| <= N plus a certified bound on the discarded tail
    // sum_{|n| > N} omega(n) ||F(n)||_inf (upper bounds per term).
    std::pair<AlgebraElement, double> truncate_support(int N) const;

    bool same_parameters(const AlgebraElement& rhs) const;

private:
    void require_same_parameters(const AlgebraElement& rhs) const;

    RotationParameter rotation_;
    Weight weight_;
    TermMap terms_;
};

} // namespace rotalg
